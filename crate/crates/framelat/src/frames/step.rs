//! Piecewise-constant functions with rational breakpoints and values in a
//! complex quadratic ring: the exact substrate for Fourier-side generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, ComplexQuad, QuadScalar, Rational};
use num::{Signed, Zero};

/// A compactly supported step function: value `values[i]` on
/// `[breakpoints[i], breakpoints[i+1])` and 0 outside `[b_0, b_k)`.
///
/// Canonical form: no empty cells, no adjacent cells with equal values, no
/// zero-valued cells at either end; the zero function has no breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<ComplexQuad>,
}

impl StepFunction {
    pub fn zero() -> StepFunction {
        StepFunction { breakpoints: Vec::new(), values: Vec::new() }
    }

    /// Builds from raw data and canonicalizes.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<ComplexQuad>) -> StepFunction {
        assert_eq!(
            breakpoints.len(),
            values.len() + if values.is_empty() { 0 } else { 1 }
        );
        assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
        let mut f = StepFunction { breakpoints, values };
        f.canonicalize();
        f
    }

    /// Builds from (lo, hi, value) pieces; pieces must not overlap.
    pub fn from_pieces(pieces: &[(Rational, Rational, ComplexQuad)]) -> StepFunction {
        let mut sorted: Vec<_> = pieces
            .iter()
            .filter(|(lo, hi, _)| lo < hi)
            .cloned()
            .collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for w in sorted.windows(2) {
            assert!(w[0].1 <= w[1].0, "pieces overlap");
        }
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        for (lo, hi, v) in sorted {
            if breakpoints.is_empty() {
                breakpoints.push(lo.clone());
            } else if *breakpoints.last().unwrap() < lo {
                values.push(ComplexQuad::zero());
                breakpoints.push(lo.clone());
            }
            values.push(v);
            breakpoints.push(hi);
        }
        StepFunction::new(breakpoints, values)
    }

    pub fn indicator(lo: Rational, hi: Rational) -> StepFunction {
        StepFunction::from_pieces(&[(lo, hi, ComplexQuad::one())])
    }

    fn canonicalize(&mut self) {
        // merge adjacent equal values
        let mut bp = Vec::with_capacity(self.breakpoints.len());
        let mut vals: Vec<ComplexQuad> = Vec::with_capacity(self.values.len());
        for i in 0..self.values.len() {
            if bp.is_empty() {
                bp.push(self.breakpoints[i].clone());
                vals.push(self.values[i].clone());
                bp.push(self.breakpoints[i + 1].clone());
            } else if *vals.last().unwrap() == self.values[i] {
                *bp.last_mut().unwrap() = self.breakpoints[i + 1].clone();
            } else {
                vals.push(self.values[i].clone());
                bp.push(self.breakpoints[i + 1].clone());
            }
        }
        // trim zero-valued cells at the ends
        while vals.first().is_some_and(|v| v.is_zero()) {
            vals.remove(0);
            bp.remove(0);
        }
        while vals.last().is_some_and(|v| v.is_zero()) {
            vals.pop();
            bp.pop();
        }
        if vals.is_empty() {
            bp.clear();
        }
        self.breakpoints = bp;
        self.values = vals;
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_at(&self, x: &Rational) -> ComplexQuad {
        if self.breakpoints.is_empty() {
            return ComplexQuad::zero();
        }
        let k = self.breakpoints.partition_point(|b| b <= x);
        if k == 0 || k == self.breakpoints.len() {
            return ComplexQuad::zero();
        }
        self.values[k - 1].clone()
    }

    /// Nonzero pieces as (lo, hi, value).
    pub fn pieces(&self) -> Vec<(Rational, Rational, ComplexQuad)> {
        let mut out = Vec::new();
        for i in 0..self.values.len() {
            if !self.values[i].is_zero() {
                out.push((
                    self.breakpoints[i].clone(),
                    self.breakpoints[i + 1].clone(),
                    self.values[i].clone(),
                ));
            }
        }
        out
    }

    fn refine_with(&self, other: &StepFunction) -> Vec<Rational> {
        let mut bp: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bp.sort();
        bp.dedup();
        bp
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let bp = self.refine_with(other);
        if bp.len() < 2 {
            return StepFunction::zero();
        }
        let values = bp[..bp.len() - 1]
            .iter()
            .map(|b| self.value_at(b) + other.value_at(b))
            .collect();
        StepFunction::new(bp, values)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.add(&other.scale_value(&ComplexQuad::from_int(-1)))
    }

    pub fn mul(&self, other: &StepFunction) -> StepFunction {
        let bp = self.refine_with(other);
        if bp.len() < 2 {
            return StepFunction::zero();
        }
        let values = bp[..bp.len() - 1]
            .iter()
            .map(|b| self.value_at(b) * other.value_at(b))
            .collect();
        StepFunction::new(bp, values)
    }

    pub fn conj(&self) -> StepFunction {
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn scale_value(&self, c: &ComplexQuad) -> StepFunction {
        let mut f = StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        };
        f.canonicalize();
        f
    }

    /// f(x - tau): shifts the graph right by tau.
    pub fn translate(&self, tau: &Rational) -> StepFunction {
        StepFunction {
            breakpoints: self.breakpoints.iter().map(|b| b + tau).collect(),
            values: self.values.clone(),
        }
    }

    /// x -> f(r x) for rational r > 0.
    pub fn dilate(&self, r: &Rational) -> StepFunction {
        assert!(r.is_positive(), "dilation factor must be positive");
        StepFunction {
            breakpoints: self.breakpoints.iter().map(|b| b / r).collect(),
            values: self.values.clone(),
        }
    }

    /// Restriction to [lo, hi).
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> StepFunction {
        if lo >= hi || self.is_zero() {
            return StepFunction::zero();
        }
        let mut bp = vec![lo.clone()];
        let mut vals = Vec::new();
        for b in &self.breakpoints {
            if b > lo && b < hi {
                vals.push(self.value_at(bp.last().unwrap()));
                bp.push(b.clone());
            }
        }
        vals.push(self.value_at(bp.last().unwrap()));
        bp.push(hi.clone());
        StepFunction::new(bp, vals)
    }

    /// Exact integral over the line.
    pub fn integral(&self) -> ComplexQuad {
        let mut acc = ComplexQuad::zero();
        for i in 0..self.values.len() {
            let width = &self.breakpoints[i + 1] - &self.breakpoints[i];
            acc = acc + self.values[i].scale(&width);
        }
        acc
    }

    /// |f|^2 as a real-valued step function.
    pub fn abs2(&self) -> StepFunction {
        let mut f = StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self
                .values
                .iter()
                .map(|v| ComplexQuad::real(v.norm_sq()))
                .collect(),
        };
        f.canonicalize();
        f
    }

    /// Exact integral of |f|^2.
    pub fn norm_sq(&self) -> QuadScalar {
        self.abs2().integral().re
    }

    /// (lo, hi) of the support, None when f = 0.
    pub fn support_bounds(&self) -> Option<(Rational, Rational)> {
        let p = self.pieces();
        let lo = p.first()?.0.clone();
        let hi = p.last().unwrap().1.clone();
        Some((lo, hi))
    }

    /// Largest magnitude attained over the support.
    pub fn support_radius(&self) -> Option<Rational> {
        let (lo, hi) = self.support_bounds()?;
        Some(lo.abs().max(hi.abs()))
    }

    /// Smallest magnitude of a support point (its closure).
    pub fn support_inner_radius(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for (lo, hi, _) in self.pieces() {
            let m = if lo.is_negative() && hi.is_positive() {
                Rational::zero()
            } else {
                lo.abs().min(hi.abs())
            };
            if best.as_ref().map_or(true, |b| m < *b) {
                best = Some(m);
            }
        }
        best
    }

    /// True when 0 is outside the closure of the support (vacuously for 0).
    pub fn away_from_zero(&self) -> bool {
        self.pieces()
            .iter()
            .all(|(lo, hi, _)| hi.is_negative() || lo.is_positive())
    }

    /// Maximum of the real parts of the values, at least 0 (the off-support
    /// value); imaginary parts must vanish.
    pub fn real_sup(&self) -> QuadScalar {
        let mut best = QuadScalar::zero();
        for (_, _, v) in self.pieces() {
            assert!(v.im.is_zero(), "real_sup needs a real-valued function");
            if v.re > best {
                best = v.re;
            }
        }
        best
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    re: QuadJson,
    im: QuadJson,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    breakpoints: Vec<String>,
    values: Vec<ValueJson>,
    radicand: u32,
}

impl Serialize for StepFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let radicand = self
            .values
            .iter()
            .flat_map(|v| [&v.re, &v.im])
            .find(|q| !q.is_rational())
            .map_or(crate::exactnum::DEFAULT_RADICAND, |q| q.d);
        let quad = |q: &QuadScalar| QuadJson {
            a: format_rational(&q.a),
            b: format_rational(&q.b),
        };
        StepJson {
            breakpoints: self.breakpoints.iter().map(format_rational).collect(),
            values: self
                .values
                .iter()
                .map(|v| ValueJson { re: quad(&v.re), im: quad(&v.im) })
                .collect(),
            radicand,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = StepJson::deserialize(d)?;
        if raw.radicand < 2 {
            return Err(DeError::custom("radicand must be at least 2"));
        }
        if !raw.values.is_empty() && raw.breakpoints.len() != raw.values.len() + 1 {
            return Err(DeError::custom("breakpoint and value counts disagree"));
        }
        let parse = |s: &str| parse_rational(s).map_err(DeError::custom);
        let mut breakpoints = Vec::with_capacity(raw.breakpoints.len());
        for b in &raw.breakpoints {
            breakpoints.push(parse(b)?);
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(DeError::custom("breakpoints must be strictly increasing"));
        }
        let mut values = Vec::with_capacity(raw.values.len());
        for v in &raw.values {
            let quad = |q: &QuadJson| -> std::result::Result<QuadScalar, D::Error> {
                Ok(QuadScalar::new(parse(&q.a)?, parse(&q.b)?, raw.radicand))
            };
            values.push(ComplexQuad::new(quad(&v.re)?, quad(&v.im)?));
        }
        if values.is_empty() {
            return Ok(StepFunction::zero());
        }
        Ok(StepFunction::new(breakpoints, values))
    }
}

/// Reads a step function from the JSON schema above.
pub fn step_from_json(s: &str) -> Result<StepFunction> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        path: "step function".into(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn chi(lo: (i64, i64), hi: (i64, i64)) -> StepFunction {
        StepFunction::indicator(ratio(lo.0, lo.1), ratio(hi.0, hi.1))
    }

    #[test]
    fn canonical_merge_and_trim() {
        let f = StepFunction::new(
            vec![rat(0), rat(1), rat(2), rat(3)],
            vec![ComplexQuad::one(), ComplexQuad::one(), ComplexQuad::zero()],
        );
        assert_eq!(f, chi((0, 1), (2, 1)));
        let z = StepFunction::new(
            vec![rat(0), rat(1)],
            vec![ComplexQuad::zero()],
        );
        assert_eq!(z, StepFunction::zero());
    }

    #[test]
    fn algebra() {
        let f = chi((0, 1), (2, 1));
        let g = chi((1, 1), (3, 1));
        let s = f.add(&g);
        assert_eq!(s.value_at(&ratio(1, 2)), ComplexQuad::one());
        assert_eq!(s.value_at(&ratio(3, 2)), ComplexQuad::from_int(2));
        assert_eq!(s.integral(), ComplexQuad::from_int(4));
        let p = f.mul(&g);
        assert_eq!(p, chi((1, 1), (2, 1)));
        assert_eq!(f.sub(&f), StepFunction::zero());
    }

    #[test]
    fn translate_dilate_restrict() {
        let f = chi((1, 1), (2, 1));
        assert_eq!(f.translate(&rat(3)), chi((4, 1), (5, 1)));
        // x -> f(2x) squeezes the support to [1/2, 1)
        assert_eq!(f.dilate(&rat(2)), chi((1, 2), (1, 1)));
        assert_eq!(f.restrict(&ratio(3, 2), &rat(5)), chi((3, 2), (2, 1)));
    }

    #[test]
    fn support_queries() {
        let f = StepFunction::from_pieces(&[
            (ratio(-3, 2), rat(-1), ComplexQuad::one()),
            (rat(1), rat(2), ComplexQuad::from_int(2)),
        ]);
        assert_eq!(f.support_bounds(), Some((ratio(-3, 2), rat(2))));
        assert_eq!(f.support_radius(), Some(rat(2)));
        assert_eq!(f.support_inner_radius(), Some(rat(1)));
        assert!(f.away_from_zero());
        assert!(!chi((0, 1), (1, 1)).away_from_zero());
        assert!(!chi((-1, 1), (1, 2)).away_from_zero());
        assert!(StepFunction::zero().away_from_zero());
    }

    #[test]
    fn quadratic_values_integrate_exactly() {
        let inv_sqrt2 = ComplexQuad::real(QuadScalar::sqrt_multiple(ratio(1, 2), 2));
        let f = StepFunction::from_pieces(&[(rat(0), rat(2), inv_sqrt2)]);
        assert_eq!(f.norm_sq(), QuadScalar::from_rational(rat(1)));
        assert_eq!(f.real_sup(), QuadScalar::sqrt_multiple(ratio(1, 2), 2));
        assert_eq!(
            f.abs2().value_at(&rat(1)),
            ComplexQuad::from_rational(ratio(1, 2))
        );
    }

    #[test]
    fn json_round_trip() {
        let f = StepFunction::from_pieces(&[
            (
                ratio(-3, 2),
                rat(-1),
                ComplexQuad::real(QuadScalar::sqrt_multiple(ratio(-1, 2), 2)),
            ),
            (rat(1), rat(2), ComplexQuad::one()),
        ]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(step_from_json(&s).unwrap(), f);
        assert_eq!(
            step_from_json(r#"{"breakpoints":[],"values":[],"radicand":2}"#).unwrap(),
            StepFunction::zero()
        );
    }
}
