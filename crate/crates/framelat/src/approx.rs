//! Approximate duals, approximate transversals and constellations: float
//! machinery for irrational data, with exact rational routes whenever the
//! inputs are rational.

use num::{Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::conditions::{check_strong, DilationSpec, Status};
use crate::error::{Error, Result};
use crate::exactnum::{dist_to_integers, rational_to_f64, Rational};
use crate::lattice::{self, exact_transversal, quotient_order, Lattice};

/// Machine slack added on top of a requested float tolerance.
const FLOAT_SLACK: f64 = 1e-12;

/// A finite non-empty set of vectors, kept in floats with exact rational
/// coordinates retained when available.
#[derive(Clone, Debug)]
pub struct FiniteSet {
    pub dim: usize,
    pub float: Vec<Vec<f64>>,
    pub exact: Option<Vec<Vec<Rational>>>,
}

impl FiniteSet {
    pub fn from_float(vectors: Vec<Vec<f64>>) -> FiniteSet {
        assert!(!vectors.is_empty());
        let dim = vectors[0].len();
        assert!(vectors.iter().all(|v| v.len() == dim));
        FiniteSet { dim, float: vectors, exact: None }
    }

    pub fn from_rational(vectors: Vec<Vec<Rational>>) -> FiniteSet {
        assert!(!vectors.is_empty());
        let dim = vectors[0].len();
        assert!(vectors.iter().all(|v| v.len() == dim));
        let float = vectors
            .iter()
            .map(|v| v.iter().map(rational_to_f64).collect())
            .collect();
        FiniteSet { dim, float, exact: Some(vectors) }
    }

    /// The basis columns of a lattice as a finite set.
    pub fn from_lattice_basis(l: &Lattice) -> FiniteSet {
        FiniteSet::from_rational(l.basis().columns())
    }
}

fn dist_to_integers_f64(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Membership in the eps-approximate dual of F: every inner product with F
/// lies within eps of an integer (float route, with machine slack).
pub fn approx_dual_member(f: &FiniteSet, eps: f64, x: &[f64]) -> bool {
    assert_eq!(x.len(), f.dim);
    f.float.iter().all(|g| {
        let ip: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
        dist_to_integers_f64(ip) <= eps + FLOAT_SLACK
    })
}

/// Exact variant for rational data: decided with no tolerance slack.
pub fn approx_dual_member_exact(f: &FiniteSet, eps: &Rational, x: &[Rational]) -> Result<bool> {
    let exact = f
        .exact
        .as_ref()
        .ok_or_else(|| Error::Unsupported("finite set has no exact coordinates".into()))?;
    if x.len() != f.dim {
        return Err(Error::DimError { expected: f.dim, got: x.len() });
    }
    Ok(exact.iter().all(|g| {
        let ip: Rational = g.iter().zip(x).map(|(a, b)| a * b).sum();
        dist_to_integers(&ip) <= *eps
    }))
}

/// Integer vectors with sup-norm at most r, ordered by Euclidean norm with
/// lexicographic tie-breaking.
fn integer_box_by_norm(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut counter = vec![-r; n];
    loop {
        out.push(counter.clone());
        let mut i = 0;
        while i < n {
            counter[i] += 1;
            if counter[i] <= r {
                break;
            }
            counter[i] = -r;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort_by(|a, b| {
        let na: i64 = a.iter().map(|v| v * v).sum();
        let nb: i64 = b.iter().map(|v| v * v).sum();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    out
}

/// Searches for an integer vector z with sup-norm at most `radius` such that
/// x - z lies in the eps-approximate dual of F; the minimal-norm valid z is
/// returned, ties broken lexicographically.
pub fn approx_dual_decompose(
    f: &FiniteSet,
    eps: f64,
    x: &[f64],
    radius: i64,
) -> Option<Vec<i64>> {
    assert_eq!(x.len(), f.dim);
    for z in integer_box_by_norm(f.dim, radius) {
        let shifted: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - *b as f64).collect();
        if approx_dual_member(f, eps, &shifted) {
            return Some(z);
        }
    }
    None
}

/// Point count above which the summed multiset is no longer materialized;
/// averages are then taken through the per-factor product form.
const MATERIALIZE_CAP: usize = 1 << 20;

/// A finite multiset serving several quotients at once: for each served pair
/// (parent, sub) the points split into eps-approximate transversals of
/// parent/sub. The multiset is the algebraic sum of the stored factors;
/// `points` is only populated while the product stays small.
#[derive(Clone, Debug)]
pub struct Constellation {
    pub points: Vec<Vec<f64>>,
    pub exact: Option<Vec<Vec<Rational>>>,
    pub factors: Vec<Vec<Vec<Rational>>>,
    pub epsilon: f64,
    pub pairs: Vec<(Lattice, Lattice)>,
    pub warning: Option<String>,
}

impl Constellation {
    /// Multiset cardinality: the product of the factor sizes.
    pub fn len(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, t| acc.saturating_mul(t.len()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (1/|K|) sum over the full multiset of e^{2 pi i <m, d>}, computed as a
    /// product of per-factor averages with the phase reduced exactly.
    pub fn exp_average(&self, m: &[Rational]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for t in &self.factors {
            let mut fac = Complex64::new(0.0, 0.0);
            for d in t {
                let phase: Rational = m.iter().zip(d).map(|(a, b)| a * b).sum();
                let frac = rational_to_f64(&(&phase - phase.round()));
                fac += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * frac);
            }
            acc *= fac / t.len() as f64;
        }
        acc
    }
}

impl Serialize for Constellation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Constellation", 2)?;
        st.serialize_field("epsilon", &self.epsilon)?;
        st.serialize_field("points", &self.points)?;
        st.end()
    }
}

/// Builds a constellation serving all given quotients as the algebraic sum
/// K = D^1 + ... + D^J of per-pair transversals.
///
/// All inputs being rational, the common refinement D0 (the intersection of
/// all parents) plays the role of the delta-thickened intersection: when the
/// hypothesis parent_i inside D0 + sub_i holds, each D^i can be chosen inside
/// D0 exactly, so every other pair sees it modulo its own sublattice as a
/// single point and the coverage identity holds with no error at all.
pub fn build_constellation(pairs: &[(Lattice, Lattice)], eps: f64) -> Result<Constellation> {
    assert!(!pairs.is_empty());
    assert!(eps >= 0.0);
    let n = pairs[0].0.dim();
    for (parent, sub) in pairs {
        if parent.dim() != n || sub.dim() != n {
            return Err(Error::DimError { expected: n, got: sub.dim() });
        }
        if !sub.is_sublattice(parent)? {
            return Err(Error::NotSublattice);
        }
    }
    let mut delta0 = pairs[0].0.clone();
    for (parent, _) in &pairs[1..] {
        delta0 = lattice::intersect(&delta0, parent)?;
    }
    // hypothesis: D0 meets every coset of parent/sub, i.e. D0 + sub = parent
    let mut transversals = Vec::with_capacity(pairs.len());
    for (parent, sub) in pairs {
        if &lattice::sum(&delta0, sub)? != parent {
            return Err(Error::HypothesisUnverifiable);
        }
        let meet = lattice::intersect(&delta0, sub)?;
        let t = exact_transversal(&delta0, &meet)?;
        debug_assert_eq!(
            t.points.len(),
            quotient_order(parent, sub)?.to_usize().unwrap()
        );
        transversals.push(t.points);
    }
    // multiset algebraic sum, materialized only while small
    let total = transversals
        .iter()
        .fold(1usize, |acc, t| acc.saturating_mul(t.len()));
    let (points, exact) = if total <= MATERIALIZE_CAP {
        let mut exact: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]];
        for t in &transversals {
            let mut next = Vec::with_capacity(exact.len() * t.len());
            for base in &exact {
                for d in t {
                    next.push(base.iter().zip(d).map(|(a, b)| a + b).collect());
                }
            }
            exact = next;
        }
        let points = exact
            .iter()
            .map(|v| v.iter().map(rational_to_f64).collect())
            .collect();
        (points, Some(exact))
    } else {
        (Vec::new(), None)
    };
    Ok(Constellation {
        points,
        exact,
        factors: transversals,
        epsilon: eps,
        pairs: pairs.to_vec(),
        warning: None,
    })
}

/// Constellation serving the 2J+1 pairs (A^j parent, A^j Z^n); the strong
/// oversampling condition is probed first and a warning is attached when it
/// is only verified up to the scan bound.
pub fn multiscale_constellation(
    dil: &DilationSpec,
    lambda: &Lattice,
    j: u32,
    eps: f64,
) -> Result<Constellation> {
    let cond = check_strong(dil, lambda, j.max(4))?;
    let warning = match cond.status {
        Status::Violated => {
            return Err(Error::Unsupported(
                "strong oversampling condition is violated".into(),
            ))
        }
        Status::HoldsUpTo(b) => Some(format!(
            "strong condition verified only up to scale {b}, not certified"
        )),
        Status::CertifiedHolds => None,
    };
    let zn = Lattice::standard(dil.n);
    let mut pairs = Vec::new();
    for jj in -(j as i64)..=(j as i64) {
        let aj = dil.b_pow(jj).transpose();
        pairs.push((lambda.transform(&aj)?, zn.transform(&aj)?));
    }
    let mut k = build_constellation(&pairs, eps)?;
    k.warning = warning;
    Ok(k)
}

/// (1/|D|) sum over d in D of e^{2 pi i <m, d>}.
pub fn exp_sum_average(points: &[Vec<f64>], m: &[f64]) -> Complex64 {
    assert!(!points.is_empty());
    let mut acc = Complex64::new(0.0, 0.0);
    for d in points {
        let phase: f64 = m.iter().zip(d).map(|(a, b)| a * b).sum();
        acc += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
    }
    acc / points.len() as f64
}

/// Per-coset coverage counts of a point multiset for the quotient
/// parent/sub: how many points land within eps of each coset, by rounding in
/// the sublattice frame.
pub fn coverage_counts(
    points: &[Vec<f64>],
    parent: &Lattice,
    sub: &Lattice,
    eps: f64,
) -> Result<Vec<usize>> {
    let reps = exact_transversal(parent, sub)?;
    let basis_f: Vec<Vec<f64>> = (0..sub.dim())
        .map(|i| {
            (0..sub.dim())
                .map(|jj| rational_to_f64(&sub.basis()[(i, jj)]))
                .collect()
        })
        .collect();
    let inv = sub.basis().inverse()?;
    let inv_f: Vec<Vec<f64>> = (0..sub.dim())
        .map(|i| {
            (0..sub.dim())
                .map(|jj| rational_to_f64(&inv[(i, jj)]))
                .collect()
        })
        .collect();
    let n = sub.dim();
    let mut counts = vec![0usize; reps.points.len()];
    for p in points {
        for (ci, rep) in reps.points.iter().enumerate() {
            let shifted: Vec<f64> = (0..n)
                .map(|i| p[i] - rational_to_f64(&rep[i]))
                .collect();
            let coords: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|k| inv_f[i][k] * shifted[k]).sum())
                .collect();
            let frac: Vec<f64> = coords.iter().map(|c| c - c.round()).collect();
            let err: f64 = (0..n)
                .map(|i| {
                    let e: f64 = (0..n).map(|k| basis_f[i][k] * frac[k]).sum();
                    e * e
                })
                .sum::<f64>()
                .sqrt();
            if err <= eps + 1e-9 {
                counts[ci] += 1;
            }
        }
    }
    Ok(counts)
}

/// Smallest positive distance-to-integers among the inner products of the
/// probes with the finite set; any eps strictly below it makes approximate
/// dual membership agree with exact dual-lattice membership on the probes.
pub fn dual_membership_threshold(
    f: &FiniteSet,
    probes: &[Vec<Rational>],
) -> Result<Option<Rational>> {
    let exact = f
        .exact
        .as_ref()
        .ok_or_else(|| Error::Unsupported("finite set has no exact coordinates".into()))?;
    let mut best: Option<Rational> = None;
    for x in probes {
        for g in exact {
            let ip: Rational = g.iter().zip(x).map(|(a, b)| a * b).sum();
            let d = dist_to_integers(&ip);
            if d.is_positive() && best.as_ref().map_or(true, |b| d < *b) {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    #[test]
    fn approx_dual_membership() {
        let f = FiniteSet::from_rational(vec![vec![ratio(1, 2)]]);
        assert!(approx_dual_member(&f, 0.0, &[2.0]));
        assert!(approx_dual_member_exact(&f, &rat(0), &[rat(2)]).unwrap());
        let s = FiniteSet::from_float(vec![vec![2f64.sqrt()]]);
        assert!(approx_dual_member(&s, 0.1, &[0.0]));
        assert!(!approx_dual_member(&s, 0.01, &[1.0]));
    }

    #[test]
    fn decompose_examples() {
        let s = FiniteSet::from_float(vec![vec![2f64.sqrt()]]);
        assert_eq!(approx_dual_decompose(&s, 0.05, &[0.0], 10), Some(vec![0]));
        let z = approx_dual_decompose(&s, 0.05, &[0.3], 100).unwrap();
        assert!(dist_to_integers_f64((0.3 - z[0] as f64) * 2f64.sqrt()) <= 0.05 + 1e-9);
        // exact eps = 0 with F = {1/3}: valid z are 5 + 3Z, minimal norm -1
        let t = FiniteSet::from_rational(vec![vec![ratio(1, 3)]]);
        assert_eq!(approx_dual_decompose(&t, 0.0, &[5.0], 10), Some(vec![-1]));
    }

    #[test]
    fn constellation_single_pairs() {
        let half = Lattice::line(ratio(1, 2)).unwrap();
        let z = Lattice::standard(1);
        let k = build_constellation(&[(half, z.clone())], 0.0).unwrap();
        assert_eq!(k.points, vec![vec![0.0], vec![0.5]]);
        let k = build_constellation(&[(z.clone(), z)], 0.25).unwrap();
        assert_eq!(k.points, vec![vec![0.0]]);
    }

    #[test]
    fn multiscale_125_points() {
        let a32 = DilationSpec::scalar(3, 2).unwrap();
        let fifth = Lattice::line(ratio(1, 5)).unwrap();
        let k = multiscale_constellation(&a32, &fifth, 1, 0.01).unwrap();
        assert_eq!(k.len(), 125);
        assert!(k.warning.is_none());
        // coverage: every coset neighborhood of every served pair gets
        // exactly |K| / 5 points
        for (parent, sub) in &k.pairs {
            let counts = coverage_counts(&k.points, parent, sub, k.epsilon).unwrap();
            assert_eq!(counts, vec![25; 5]);
        }

        let z = Lattice::standard(1);
        let k = multiscale_constellation(&a32, &z, 2, 0.01).unwrap();
        assert_eq!(k.points, vec![vec![0.0]]);

        let a3 = DilationSpec::scalar(3, 1).unwrap();
        let half = Lattice::line(ratio(1, 2)).unwrap();
        let k = multiscale_constellation(&a3, &half, 0, 0.0).unwrap();
        assert_eq!(k.points, vec![vec![0.0], vec![0.5]]);
    }

    #[test]
    fn exp_sums() {
        let d = vec![vec![0.0], vec![0.5]];
        assert!((exp_sum_average(&d, &[2.0]) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(exp_sum_average(&d, &[1.0]).norm() < 1e-12);
        let perturbed = vec![vec![0.001], vec![0.502]];
        let bound = 2.0 * std::f64::consts::PI * 1.0 * 0.002;
        assert!(exp_sum_average(&perturbed, &[1.0]).norm() <= bound);
    }

    #[test]
    fn threshold_is_minimal_distance() {
        let l = Lattice::line(ratio(1, 2)).unwrap();
        let f = FiniteSet::from_lattice_basis(&l);
        // probe 1/3: <1/3, 1/2> = 1/6, distance 1/6
        let t = dual_membership_threshold(&f, &[vec![ratio(1, 3)], vec![rat(2)]]).unwrap();
        assert_eq!(t, Some(ratio(1, 6)));
    }
}
