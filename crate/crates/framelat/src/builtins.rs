//! Built-in example generators and supports used throughout the tests,
//! examples and the command line tool.

use crate::exactnum::{ratio, ComplexQuad, QuadScalar};
use crate::frames::{GeneratorSet, StepFunction};
use crate::sigain::RegionSet;

/// Piecewise-constant Parseval wavelet for dilation 3/2: value 1 on
/// [4/3, 3/2), 1/sqrt(2) on [-1, -2/3), [1, 4/3) and [3/2, 2),
/// -1/sqrt(2) on [-3/2, -1).
pub fn fig1() -> GeneratorSet {
    let pos = ComplexQuad::real(QuadScalar::sqrt_multiple(ratio(1, 2), 2));
    let neg = ComplexQuad::real(-QuadScalar::sqrt_multiple(ratio(1, 2), 2));
    let psi = StepFunction::from_pieces(&[
        (ratio(-3, 2), ratio(-1, 1), neg),
        (ratio(-1, 1), ratio(-2, 3), pos.clone()),
        (ratio(1, 1), ratio(4, 3), pos.clone()),
        (ratio(4, 3), ratio(3, 2), ComplexQuad::one()),
        (ratio(3, 2), ratio(2, 1), pos),
    ]);
    GeneratorSet::new(vec![psi], 3, 2).unwrap()
}

/// The Shannon wavelet on the Fourier side: the indicator of
/// [-1, -1/2) u [1/2, 1), dilation 2.
pub fn shannon() -> GeneratorSet {
    let psi = StepFunction::from_pieces(&[
        (ratio(-1, 1), ratio(-1, 2), ComplexQuad::one()),
        (ratio(1, 2), ratio(1, 1), ComplexQuad::one()),
    ]);
    GeneratorSet::new(vec![psi], 2, 1).unwrap()
}

/// The Journe wavelet set: indicator of
/// [-16/7, -2) u [-1/2, -2/7) u [2/7, 1/2) u [2, 16/7), dilation 2.
pub fn journe() -> GeneratorSet {
    let psi = StepFunction::from_pieces(&[
        (ratio(-16, 7), ratio(-2, 1), ComplexQuad::one()),
        (ratio(-1, 2), ratio(-2, 7), ComplexQuad::one()),
        (ratio(2, 7), ratio(1, 2), ComplexQuad::one()),
        (ratio(2, 1), ratio(16, 7), ComplexQuad::one()),
    ]);
    GeneratorSet::new(vec![psi], 2, 1).unwrap()
}

/// Two disjoint unit intervals [0, 1) u [2, 3), a support with finite
/// invariance class 1 for dilation 2.
pub fn box_pair() -> RegionSet {
    RegionSet::from_intervals(&[
        (ratio(0, 1), ratio(1, 1)),
        (ratio(2, 1), ratio(3, 1)),
    ])
    .unwrap()
}

/// Looks up a generator set by name.
pub fn generator_by_name(name: &str) -> Option<GeneratorSet> {
    match name {
        "fig1" => Some(fig1()),
        "shannon" => Some(shannon()),
        "journe" => Some(journe()),
        _ => None,
    }
}

/// Looks up a support region by name.
pub fn region_by_name(name: &str) -> Option<RegionSet> {
    match name {
        "box-pair" => Some(box_pair()),
        "fig1" => RegionSet::from_step_support(&fig1().generators[0]).ok(),
        "shannon" => RegionSet::from_step_support(&shannon().generators[0]).ok(),
        "journe" => RegionSet::from_step_support(&journe().generators[0]).ok(),
        _ => None,
    }
}
