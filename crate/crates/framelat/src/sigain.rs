//! Shift-invariance gain of principal shift-invariant spaces: exact support
//! overlap measures, the lattice-shift-invariance criterion, the invariance
//! class of a wavelet support, and the oversampled-Parseval cross-check.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::conditions::DilationSpec;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Rational};
use crate::frames::{check_parseval, GeneratorSet, StepFunction};
use crate::lattice::Lattice;

/// A finite union of pairwise disjoint axis-aligned half-open boxes with
/// rational corners, kept sorted with adjacent mergeable boxes merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSet {
    dim: usize,
    boxes: Vec<(Vec<Rational>, Vec<Rational>)>,
}

impl RegionSet {
    pub fn new(dim: usize, boxes: Vec<(Vec<Rational>, Vec<Rational>)>) -> Result<RegionSet> {
        assert!(dim > 0);
        let mut kept = Vec::new();
        for (lo, hi) in boxes {
            if lo.len() != dim || hi.len() != dim {
                return Err(Error::DimError { expected: dim, got: lo.len() });
            }
            if lo.iter().zip(&hi).all(|(l, h)| l < h) {
                kept.push((lo, hi));
            }
        }
        for i in 0..kept.len() {
            for j in (i + 1)..kept.len() {
                if !box_intersection_volume(&kept[i], &kept[j]).is_zero() {
                    return Err(Error::Unsupported("boxes overlap".into()));
                }
            }
        }
        let mut r = RegionSet { dim, boxes: kept };
        r.canonicalize();
        Ok(r)
    }

    /// 1-D region from interval endpoints.
    pub fn from_intervals(intervals: &[(Rational, Rational)]) -> Result<RegionSet> {
        RegionSet::new(
            1,
            intervals
                .iter()
                .map(|(lo, hi)| (vec![lo.clone()], vec![hi.clone()]))
                .collect(),
        )
    }

    /// Support of a 1-D Fourier-side step function.
    pub fn from_step_support(f: &StepFunction) -> Result<RegionSet> {
        let intervals: Vec<_> = f
            .pieces()
            .into_iter()
            .map(|(lo, hi, _)| (lo, hi))
            .collect();
        RegionSet::from_intervals(&intervals)
    }

    fn canonicalize(&mut self) {
        self.boxes.sort();
        // merge boxes that agree on all axes but one and touch along it
        let mut merged = true;
        while merged {
            merged = false;
            'outer: for i in 0..self.boxes.len() {
                for j in 0..self.boxes.len() {
                    if i == j {
                        continue;
                    }
                    if let Some(b) = merge_boxes(&self.boxes[i], &self.boxes[j]) {
                        let (hi, lo) = (i.max(j), i.min(j));
                        self.boxes.remove(hi);
                        self.boxes.remove(lo);
                        self.boxes.push(b);
                        self.boxes.sort();
                        merged = true;
                        break 'outer;
                    }
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[(Vec<Rational>, Vec<Rational>)] {
        &self.boxes
    }

    pub fn measure(&self) -> Rational {
        self.boxes
            .iter()
            .map(|(lo, hi)| {
                lo.iter()
                    .zip(hi)
                    .map(|(l, h)| h - l)
                    .product::<Rational>()
            })
            .sum()
    }

    pub fn translate(&self, k: &[Rational]) -> Result<RegionSet> {
        if k.len() != self.dim {
            return Err(Error::DimError { expected: self.dim, got: k.len() });
        }
        Ok(RegionSet {
            dim: self.dim,
            boxes: self
                .boxes
                .iter()
                .map(|(lo, hi)| {
                    (
                        lo.iter().zip(k).map(|(a, b)| a + b).collect(),
                        hi.iter().zip(k).map(|(a, b)| a + b).collect(),
                    )
                })
                .collect(),
        })
    }

    pub fn intersection_measure(&self, other: &RegionSet) -> Result<Rational> {
        if self.dim != other.dim {
            return Err(Error::DimError { expected: self.dim, got: other.dim });
        }
        let mut acc = Rational::zero();
        for a in &self.boxes {
            for b in &other.boxes {
                acc += box_intersection_volume(a, b);
            }
        }
        Ok(acc)
    }

    /// Per-coordinate extent of the region's bounding box.
    pub fn diameters(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                let lo = self.boxes.iter().map(|(l, _)| &l[i]).min();
                let hi = self.boxes.iter().map(|(_, h)| &h[i]).max();
                match (lo, hi) {
                    (Some(l), Some(h)) => h - l,
                    _ => Rational::zero(),
                }
            })
            .collect()
    }
}

fn box_intersection_volume(
    a: &(Vec<Rational>, Vec<Rational>),
    b: &(Vec<Rational>, Vec<Rational>),
) -> Rational {
    let mut vol = Rational::one();
    for i in 0..a.0.len() {
        let lo = a.0[i].clone().max(b.0[i].clone());
        let hi = a.1[i].clone().min(b.1[i].clone());
        if lo >= hi {
            return Rational::zero();
        }
        vol *= hi - lo;
    }
    vol
}

fn merge_boxes(
    a: &(Vec<Rational>, Vec<Rational>),
    b: &(Vec<Rational>, Vec<Rational>),
) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let n = a.0.len();
    let mut axis = None;
    for i in 0..n {
        if a.0[i] == b.0[i] && a.1[i] == b.1[i] {
            continue;
        }
        if axis.is_some() {
            return None;
        }
        axis = Some(i);
    }
    let i = axis?;
    if a.1[i] == b.0[i] {
        let mut hi = a.1.clone();
        hi[i] = b.1[i].clone();
        Some((a.0.clone(), hi))
    } else if b.1[i] == a.0[i] {
        let mut hi = b.1.clone();
        hi[i] = a.1[i].clone();
        Some((b.0.clone(), hi))
    } else {
        None
    }
}

/// Exact measure of K intersected with K + k.
pub fn overlap_measure(k_region: &RegionSet, k: &[Rational]) -> Result<Rational> {
    k_region.intersection_measure(&k_region.translate(k)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainCheck {
    pub holds: bool,
    pub witness: Option<(Vec<Rational>, Rational)>,
}

impl Serialize for GainCheck {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct WitnessJson {
            k: Vec<String>,
            measure: String,
        }
        #[derive(Serialize)]
        struct CheckJson {
            status: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<WitnessJson>,
        }
        CheckJson {
            status: if self.holds { "Holds" } else { "Violated" },
            witness: self.witness.as_ref().map(|(k, m)| WitnessJson {
                k: k.iter().map(format_rational).collect(),
                measure: format_rational(m),
            }),
        }
        .serialize(s)
    }
}

/// Nonzero integer vectors within the per-coordinate bounds, ordered by
/// Euclidean norm with positive entries preferred on ties.
fn integer_shifts_in_range(diams: &[Rational]) -> Vec<Vec<i64>> {
    let bounds: Vec<i64> = diams
        .iter()
        .map(|d| num::ToPrimitive::to_i64(&d.ceil().numer().clone()).unwrap_or(0))
        .collect();
    let n = bounds.len();
    let mut out = Vec::new();
    let mut counter: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if counter.iter().any(|&c| c != 0) {
            out.push(counter.clone());
        }
        let mut i = 0;
        while i < n {
            counter[i] += 1;
            if counter[i] <= bounds[i] {
                break;
            }
            counter[i] = -bounds[i];
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort_by(|a, b| {
        let na: i64 = a.iter().map(|v| v * v).sum();
        let nb: i64 = b.iter().map(|v| v * v).sum();
        na.cmp(&nb)
            .then_with(|| b.cmp(a)) // positive before negative on equal norm
    });
    out
}

fn to_rational_vec(k: &[i64]) -> Vec<Rational> {
    k.iter().map(|&v| Rational::from_integer(v.into())).collect()
}

/// Lattice shift invariance: the span of integer translates is also
/// invariant under the finer lattice iff no integer shift outside the dual
/// overlaps the support.
pub fn si_gain_check(k_region: &RegionSet, lambda: &Lattice) -> Result<GainCheck> {
    if lambda.dim() != k_region.dim() {
        return Err(Error::DimError { expected: k_region.dim(), got: lambda.dim() });
    }
    if !Lattice::standard(k_region.dim()).is_sublattice(lambda)? {
        return Err(Error::NotSublattice);
    }
    let lstar = lambda.dual();
    for k in integer_shifts_in_range(&k_region.diameters()) {
        let kr = to_rational_vec(&k);
        if lstar.member(&kr)? {
            continue;
        }
        let m = overlap_measure(k_region, &kr)?;
        if !m.is_zero() {
            return Ok(GainCheck { holds: false, witness: Some((kr, m)) });
        }
    }
    Ok(GainCheck { holds: true, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeheraClass {
    Finite(u32),
    Infinite,
}

impl BeheraClass {
    pub fn at_least(&self, r: u32) -> bool {
        match self {
            BeheraClass::Infinite => true,
            BeheraClass::Finite(c) => *c >= r,
        }
    }
}

impl Serialize for BeheraClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BeheraClass::Infinite => s.serialize_str("infinity"),
            BeheraClass::Finite(c) => s.serialize_u32(*c),
        }
    }
}

/// Largest r (up to r_max) such that every integer shift outside B^r Z^n has
/// zero overlap with the support; infinite when every nonzero integer shift
/// misses the support (the MSF case).
pub fn behera_class(
    k_region: &RegionSet,
    dil: &DilationSpec,
    r_max: u32,
) -> Result<BeheraClass> {
    if !dil.is_integer() {
        return Err(Error::Unsupported(
            "invariance class needs an integer dilation".into(),
        ));
    }
    if dil.n != k_region.dim() {
        return Err(Error::DimError { expected: k_region.dim(), got: dil.n });
    }
    let mut overlapping = Vec::new();
    for k in integer_shifts_in_range(&k_region.diameters()) {
        let kr = to_rational_vec(&k);
        if !overlap_measure(k_region, &kr)?.is_zero() {
            overlapping.push(kr);
        }
    }
    if overlapping.is_empty() {
        return Ok(BeheraClass::Infinite);
    }
    let mut r = 0u32;
    while r < r_max {
        let br_zn = Lattice::standard(dil.n).transform(&dil.b_pow(r as i64 + 1))?;
        if overlapping.iter().all(|k| br_zn.member(k).unwrap_or(false)) {
            r += 1;
        } else {
            break;
        }
    }
    Ok(BeheraClass::Finite(r))
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRow {
    pub s: u32,
    pub lambda: u64,
    pub parseval: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub rows: Vec<CrosscheckRow>,
    pub class: BeheraClass,
    pub class_at_least_r: bool,
    pub agreement: bool,
}

/// Compares the support-overlap invariance class with the oversampled
/// Parseval battery: for a semi-orthogonal Parseval generator, the systems
/// oversampled by a^s for s = 1..r are all Parseval iff the class is >= r.
pub fn oversample_crosscheck(
    psi: &GeneratorSet,
    r: u32,
) -> Result<CrosscheckReport> {
    if psi.q != 1 || psi.p < 2 {
        return Err(Error::Unsupported(
            "cross-check needs an integer dilation a >= 2".into(),
        ));
    }
    if !check_parseval(psi, 1)?.holds() {
        return Err(Error::Unsupported(
            "generator is not Parseval at lambda = 1".into(),
        ));
    }
    let mut support = RegionSet::from_intervals(&[])?;
    let mut first = true;
    for g in &psi.generators {
        let s = RegionSet::from_step_support(g)?;
        if first {
            support = s;
            first = false;
        } else {
            // unions of generator supports; overlapping pieces rejected
            let mut boxes = support.boxes().to_vec();
            boxes.extend(s.boxes().iter().cloned());
            support = RegionSet::new(1, boxes)?;
        }
    }
    let dil = DilationSpec::scalar(psi.p as i64, 1)?;
    let class = behera_class(&support, &dil, r.max(1))?;
    let mut rows = Vec::new();
    let mut all_pass = true;
    for s in 1..=r {
        let lambda = (psi.p as u64).pow(s);
        let parseval = check_parseval(psi, lambda)?.holds();
        all_pass &= parseval;
        rows.push(CrosscheckRow { s, lambda, parseval });
    }
    let class_at_least_r = class.at_least(r);
    Ok(CrosscheckReport {
        rows,
        class,
        class_at_least_r,
        agreement: all_pass == class_at_least_r,
    })
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    lo: Vec<String>,
    hi: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RegionJson {
    dim: usize,
    boxes: Vec<BoxJson>,
}

impl Serialize for RegionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RegionJson {
            dim: self.dim,
            boxes: self
                .boxes
                .iter()
                .map(|(lo, hi)| BoxJson {
                    lo: lo.iter().map(format_rational).collect(),
                    hi: hi.iter().map(format_rational).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RegionSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = RegionJson::deserialize(d)?;
        let mut boxes = Vec::with_capacity(raw.boxes.len());
        for b in &raw.boxes {
            let parse = |v: &[String]| -> std::result::Result<Vec<Rational>, D::Error> {
                v.iter()
                    .map(|s| parse_rational(s).map_err(DeError::custom))
                    .collect()
            };
            boxes.push((parse(&b.lo)?, parse(&b.hi)?));
        }
        RegionSet::new(raw.dim, boxes).map_err(DeError::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::exactnum::{rat, ratio};

    fn region_1d(intervals: &[(i64, i64, i64, i64)]) -> RegionSet {
        RegionSet::from_intervals(
            &intervals
                .iter()
                .map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn overlap_examples() {
        let shannon = region_1d(&[(-1, 1, -1, 2), (1, 2, 1, 1)]);
        assert_eq!(overlap_measure(&shannon, &[rat(0)]).unwrap(), rat(1));
        assert_eq!(overlap_measure(&shannon, &[rat(1)]).unwrap(), rat(0));
        let fig1 = region_1d(&[(-3, 2, -2, 3), (1, 1, 2, 1)]);
        assert_eq!(overlap_measure(&fig1, &[rat(2)]).unwrap(), ratio(1, 3));
        // symmetry under negating the shift
        assert_eq!(overlap_measure(&fig1, &[rat(-2)]).unwrap(), ratio(1, 3));
    }

    #[test]
    fn gain_examples() {
        let tiny = region_1d(&[(1, 4, 1, 2)]);
        let half = Lattice::line(ratio(1, 2)).unwrap();
        assert!(si_gain_check(&tiny, &half).unwrap().holds);

        let fig1 = region_1d(&[(-3, 2, -2, 3), (1, 1, 2, 1)]);
        let v = si_gain_check(&fig1, &half).unwrap();
        assert!(!v.holds);
        let (k, m) = v.witness.unwrap();
        assert_eq!((k, m), (vec![rat(3)], ratio(1, 2)));

        let shannon = region_1d(&[(-1, 1, -1, 2), (1, 2, 1, 1)]);
        assert!(si_gain_check(&shannon, &half).unwrap().holds);
    }

    #[test]
    fn class_examples() {
        let a2 = DilationSpec::scalar(2, 1).unwrap();
        let shannon = region_1d(&[(-1, 1, -1, 2), (1, 2, 1, 1)]);
        assert_eq!(behera_class(&shannon, &a2, 5).unwrap(), BeheraClass::Infinite);

        let pair = region_1d(&[(0, 1, 1, 1), (2, 1, 3, 1)]);
        assert_eq!(behera_class(&pair, &a2, 5).unwrap(), BeheraClass::Finite(1));

        let unit = region_1d(&[(0, 1, 2, 1)]);
        assert_eq!(behera_class(&unit, &a2, 5).unwrap(), BeheraClass::Finite(0));
    }

    #[test]
    fn crosscheck_shannon() {
        let psi = builtins::shannon();
        let rep = oversample_crosscheck(&psi, 3).unwrap();
        assert_eq!(rep.class, BeheraClass::Infinite);
        assert!(rep.rows.iter().all(|r| r.parseval));
        assert!(rep.agreement);
    }

    #[test]
    fn region_json_round_trip() {
        let r = region_1d(&[(-3, 2, -2, 3), (1, 1, 2, 1)]);
        let s = serde_json::to_string(&r).unwrap();
        let back: RegionSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        // touching intervals merge on load
        let merged: RegionSet = serde_json::from_str(
            r#"{"dim":1,"boxes":[{"lo":["0"],"hi":["1"]},{"lo":["1"],"hi":["2"]}]}"#,
        )
        .unwrap();
        assert_eq!(merged, region_1d(&[(0, 1, 2, 1)]));
    }
}
