//! Full-rank rational lattices in R^n: canonical bases, duals, sums,
//! intersections, quotient orders, exact coset transversals and Smith bases
//! for sublattice pairs.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    denominator_lcm, format_rational, hnf, hnf_with_kernel, parse_rational, snf, IntMatrix,
    RatMatrix, Rational,
};

/// A full-rank rational lattice, stored as a canonical basis matrix.
///
/// The canonical form is (1/t) * HNF(t * B) where t clears all denominators;
/// it does not depend on the choice of t or of the generating columns, so two
/// lattices are equal iff their canonical bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: RatMatrix,
    det: Rational,
}

impl Lattice {
    /// Lattice generated by the columns of `m` (at least `dim` of them).
    pub fn from_generators(m: &RatMatrix) -> Result<Lattice> {
        let n = m.rows;
        if n == 0 || m.cols < n {
            return Err(Error::NotALattice);
        }
        let t = denominator_lcm(m.entries());
        let scaled = m
            .scale(&Rational::from_integer(t.clone()))
            .to_integer()
            .expect("denominators cleared");
        let dec = hnf(&scaled).map_err(|_| Error::NotALattice)?;
        let mut canonical = RatMatrix::zeros(n, n);
        let tr = Rational::from_integer(t);
        for i in 0..n {
            for j in 0..n {
                canonical[(i, j)] = Rational::from_integer(dec.h[(i, j)].clone()) / &tr;
            }
        }
        let det = canonical.det().abs();
        Ok(Lattice { dim: n, basis: canonical, det })
    }

    pub fn from_basis(basis: RatMatrix) -> Result<Lattice> {
        if basis.rows != basis.cols {
            return Err(Error::DimError { expected: basis.rows, got: basis.cols });
        }
        Self::from_generators(&basis)
    }

    /// The standard lattice Z^n.
    pub fn standard(n: usize) -> Lattice {
        Lattice::from_basis(RatMatrix::identity(n)).unwrap()
    }

    /// Diagonal lattice c1 Z x ... x cn Z.
    pub fn diagonal(scales: &[Rational]) -> Result<Lattice> {
        Lattice::from_basis(RatMatrix::diagonal(scales))
    }

    /// One-dimensional lattice r Z.
    pub fn line(r: Rational) -> Result<Lattice> {
        Lattice::diagonal(&[r])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis matrix; columns generate the lattice.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Covolume d(L) = |det basis|.
    pub fn det(&self) -> &Rational {
        &self.det
    }

    /// For 1-D lattices, the positive generator.
    pub fn generator_1d(&self) -> Rational {
        assert_eq!(self.dim, 1, "generator_1d needs a 1-D lattice");
        self.basis[(0, 0)].clone()
    }

    /// Dual lattice: all eta with <eta, lambda> integral for every lambda.
    pub fn dual(&self) -> Lattice {
        let inv_t = self
            .basis
            .transpose()
            .inverse()
            .expect("canonical basis is nonsingular");
        Lattice::from_basis(inv_t).expect("dual basis is nonsingular")
    }

    /// Image of the lattice under a nonsingular rational matrix.
    pub fn transform(&self, m: &RatMatrix) -> Result<Lattice> {
        if m.rows != self.dim || m.cols != self.dim {
            return Err(Error::DimError { expected: self.dim, got: m.rows });
        }
        Lattice::from_basis(m.mul(&self.basis))
    }

    /// Lattice scaled by a nonzero rational factor.
    pub fn scale(&self, r: &Rational) -> Lattice {
        assert!(!r.is_zero());
        Lattice::from_basis(self.basis.scale(r)).unwrap()
    }

    pub fn member(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimError { expected: self.dim, got: x.len() });
        }
        let coords = self.basis.solve(x)?;
        Ok(coords.iter().all(|c| c.denom().is_one()))
    }

    pub fn is_sublattice(&self, other: &Lattice) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimError { expected: other.dim, got: self.dim });
        }
        for j in 0..self.dim {
            if !other.member(&self.basis.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reduces `x` into the half-open fundamental parallelepiped of this
    /// lattice anchored at 0.
    pub fn reduce_point(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimError { expected: self.dim, got: x.len() });
        }
        let coords = self.basis.solve(x)?;
        let frac: Vec<Rational> = coords.iter().map(|c| c - c.floor()).collect();
        Ok(self.basis.mul_vec(&frac))
    }
}

/// Lattice generated by the union of the bases (the group sum).
pub fn sum(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    if l1.dim != l2.dim {
        return Err(Error::DimError { expected: l1.dim, got: l2.dim });
    }
    let mut cols = l1.basis.columns();
    cols.extend(l2.basis.columns());
    Lattice::from_generators(&RatMatrix::from_columns(&cols))
}

/// Largest common sublattice.
///
/// A point lies in both lattices iff it is B1 u = B2 v for integer u, v, so
/// the integer kernel of [t B1 | -t B2] parametrizes the intersection; the
/// first block of each kernel vector gives its B1-coordinates.
pub fn intersect(l1: &Lattice, l2: &Lattice) -> Result<Lattice> {
    let n = l1.dim;
    if n != l2.dim {
        return Err(Error::DimError { expected: n, got: l2.dim });
    }
    let t = denominator_lcm(l1.basis.entries().chain(l2.basis.entries()));
    let tr = Rational::from_integer(t);
    let b1 = l1.basis.scale(&tr).to_integer().unwrap();
    let b2 = l2.basis.scale(&tr).to_integer().unwrap();
    let mut stacked = IntMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            stacked[(i, j)] = b1[(i, j)].clone();
            stacked[(i, n + j)] = -b2[(i, j)].clone();
        }
    }
    let (_, kernel) = hnf_with_kernel(&stacked).map_err(|_| Error::NotALattice)?;
    if kernel.len() != n {
        return Err(Error::NotALattice);
    }
    let cols: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|k| {
            let u: Vec<Rational> = k[..n]
                .iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect();
            l1.basis.mul_vec(&u)
        })
        .collect();
    Lattice::from_generators(&RatMatrix::from_columns(&cols))
}

/// Order of the quotient group parent/sub, i.e. d(sub)/d(parent).
pub fn quotient_order(parent: &Lattice, sub: &Lattice) -> Result<BigInt> {
    if !sub.is_sublattice(parent)? {
        return Err(Error::NotSublattice);
    }
    let ratio = sub.det() / parent.det();
    debug_assert!(ratio.denom().is_one());
    Ok(ratio.numer().clone())
}

/// Coset representatives of parent/sub, one per coset, inside the half-open
/// fundamental parallelepiped of `sub`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub parent: Lattice,
    pub sub: Lattice,
    pub points: Vec<Vec<Rational>>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Smith basis of a sublattice pair: v_i a basis of the parent with
/// alpha_i v_i a basis of the sublattice and alpha_1 | ... | alpha_n.
#[derive(Clone, Debug)]
pub struct SmithBasis {
    pub v: Vec<Vec<Rational>>,
    pub alphas: Vec<BigInt>,
    /// w_i = v_i + v_n for i < n, w_n = v_n; still a basis of the parent,
    /// and w_i avoids the sublattice whenever alpha_n >= 2.
    pub w: Vec<Vec<Rational>>,
}

fn coefficient_matrix(parent: &Lattice, sub: &Lattice) -> Result<IntMatrix> {
    if !sub.is_sublattice(parent)? {
        return Err(Error::NotSublattice);
    }
    let c = parent.basis.inverse()?.mul(&sub.basis);
    Ok(c.to_integer().expect("sublattice coefficients are integral"))
}

pub fn smith_basis(parent: &Lattice, sub: &Lattice) -> Result<SmithBasis> {
    let c = coefficient_matrix(parent, sub)?;
    let dec = snf(&c)?;
    let n = parent.dim;
    // sub = parent_basis * C Z^n = (parent_basis U^-1) D Z^n
    let u_inv = dec.u.to_rational().inverse()?;
    let w_basis = parent.basis.mul(&u_inv);
    let v: Vec<Vec<Rational>> = w_basis.columns();
    let alphas: Vec<BigInt> = (0..n).map(|i| dec.d[(i, i)].clone()).collect();
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        if i + 1 == n {
            w.push(v[n - 1].clone());
        } else {
            let col: Vec<Rational> = v[i]
                .iter()
                .zip(&v[n - 1])
                .map(|(a, b)| a + b)
                .collect();
            w.push(col);
        }
    }
    Ok(SmithBasis { v, alphas, w })
}

pub fn exact_transversal(parent: &Lattice, sub: &Lattice) -> Result<Transversal> {
    let sb = smith_basis(parent, sub)?;
    let n = parent.dim;
    let order: BigInt = sb.alphas.iter().product();
    let order_usize = order.to_usize().ok_or(Error::Unsupported(
        "quotient order too large to enumerate".into(),
    ))?;
    let mut points = Vec::with_capacity(order_usize);
    let mut counter = vec![BigInt::zero(); n];
    loop {
        let mut x = vec![Rational::zero(); n];
        for i in 0..n {
            for (k, xi) in x.iter_mut().enumerate() {
                *xi += Rational::from_integer(counter[i].clone()) * &sb.v[i][k];
            }
        }
        points.push(sub.reduce_point(&x)?);
        // odometer over prod [0, alpha_i)
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            counter[i] += 1;
            if counter[i] < sb.alphas[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
        if i == n {
            break;
        }
    }
    points.sort();
    points.dedup();
    debug_assert_eq!(points.len(), order_usize);
    Ok(Transversal { parent: parent.clone(), sub: sub.clone(), points })
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    dim: usize,
    basis: Vec<Vec<String>>,
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis = self
            .basis
            .columns()
            .into_iter()
            .map(|col| col.iter().map(format_rational).collect())
            .collect();
        LatticeJson { dim: self.dim, basis }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = LatticeJson::deserialize(d)?;
        let mut cols = Vec::with_capacity(raw.basis.len());
        for col in &raw.basis {
            if col.len() != raw.dim {
                return Err(DeError::custom("basis column has wrong length"));
            }
            let parsed: Result<Vec<Rational>> = col.iter().map(|s| parse_rational(s)).collect();
            cols.push(parsed.map_err(DeError::custom)?);
        }
        Lattice::from_generators(&RatMatrix::from_columns(&cols)).map_err(DeError::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn line(n: i64, d: i64) -> Lattice {
        Lattice::line(ratio(n, d)).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Lattice::standard(3).dual(), Lattice::standard(3));
        assert_eq!(line(1, 5).dual(), line(5, 1));
        let l = Lattice::diagonal(&[rat(2), ratio(1, 3)]).unwrap();
        assert_eq!(l.dual(), Lattice::diagonal(&[ratio(1, 2), rat(3)]).unwrap());
    }

    #[test]
    fn dual_det_product_is_one() {
        let l = Lattice::from_basis(RatMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(3)],
            vec![rat(0), ratio(5, 7)],
        ]))
        .unwrap();
        assert_eq!(l.det() * l.dual().det(), rat(1));
    }

    #[test]
    fn intersect_matches_membership_enumeration() {
        let a = line(1, 2);
        let b = line(1, 3);
        let got = intersect(&a, &b).unwrap();
        // oracle: scan (1/6)Z in [0, 1) for the first positive common point
        let mut first_common = None;
        for k in 1..=6 {
            let x = ratio(k, 6);
            if a.member(&[x.clone()]).unwrap() && b.member(&[x.clone()]).unwrap() {
                first_common = Some(x);
                break;
            }
        }
        assert_eq!(first_common, Some(rat(1)));
        assert_eq!(got, Lattice::standard(1));
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum(&line(2, 1), &line(3, 1)).unwrap(), Lattice::standard(1));
        // sum over j in {-1,0,1} of (3/2)^j * 5Z
        let parts = [line(10, 3), line(5, 1), line(15, 2)];
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = sum(&acc, p).unwrap();
        }
        // oracle: common denominator 6 turns the generators into 20, 30, 45
        // whose gcd is 5, so the sum is (5/6)Z
        assert_eq!(acc, line(5, 6));
    }

    #[test]
    fn membership_and_sublattices() {
        assert!(Lattice::standard(2).member(&[rat(3), rat(-7)]).unwrap());
        assert!(!line(2, 1).member(&[rat(3)]).unwrap());
        assert!(line(6, 1).is_sublattice(&line(3, 2)).unwrap());
        assert!(!line(3, 2).is_sublattice(&line(6, 1)).unwrap());
    }

    #[test]
    fn quotient_orders() {
        let half = Lattice::diagonal(&[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(quotient_order(&half, &Lattice::standard(2)).unwrap(), BigInt::from(4));
        assert_eq!(quotient_order(&line(1, 5), &Lattice::standard(1)).unwrap(), BigInt::from(5));
        assert_eq!(
            quotient_order(&Lattice::standard(1), &Lattice::standard(1)).unwrap(),
            BigInt::one()
        );
        assert!(matches!(
            quotient_order(&line(2, 1), &line(1, 3)),
            Err(Error::NotSublattice)
        ));
    }

    #[test]
    fn transversal_examples() {
        let t = exact_transversal(&line(1, 2), &Lattice::standard(1)).unwrap();
        assert_eq!(t.points, vec![vec![rat(0)], vec![ratio(1, 2)]]);

        let t = exact_transversal(&Lattice::standard(2), &Lattice::diagonal(&[rat(2), rat(2)]).unwrap())
            .unwrap();
        assert_eq!(
            t.points,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1), rat(0)],
                vec![rat(1), rat(1)],
            ]
        );

        let t = exact_transversal(&line(1, 5), &Lattice::standard(1)).unwrap();
        let expect: Vec<Vec<Rational>> = (0..5).map(|k| vec![ratio(k, 5)]).collect();
        assert_eq!(t.points, expect);
    }

    #[test]
    fn smith_basis_examples() {
        let sb = smith_basis(&Lattice::standard(2), &Lattice::diagonal(&[rat(2), rat(2)]).unwrap())
            .unwrap();
        assert_eq!(sb.alphas, vec![BigInt::from(2), BigInt::from(2)]);

        let sub = Lattice::diagonal(&[rat(2), rat(4)]).unwrap();
        let sb = smith_basis(&Lattice::standard(2), &sub).unwrap();
        assert_eq!(sb.alphas, vec![BigInt::from(2), BigInt::from(4)]);
        // {v_i} spans the parent, {alpha_i v_i} spans the sub
        let v = Lattice::from_generators(&RatMatrix::from_columns(&sb.v)).unwrap();
        assert_eq!(v, Lattice::standard(2));
        let scaled: Vec<Vec<Rational>> = sb
            .v
            .iter()
            .zip(&sb.alphas)
            .map(|(col, a)| {
                col.iter()
                    .map(|x| x * Rational::from_integer(a.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(Lattice::from_generators(&RatMatrix::from_columns(&scaled)).unwrap(), sub);
        // modified basis stays a parent basis and avoids the sublattice
        let w = Lattice::from_generators(&RatMatrix::from_columns(&sb.w)).unwrap();
        assert_eq!(w, Lattice::standard(2));
        for i in 0..sb.w.len() - 1 {
            assert!(!sub.member(&sb.w[i]).unwrap());
        }

        let sb = smith_basis(&Lattice::standard(1), &line(6, 1)).unwrap();
        assert_eq!(sb.alphas, vec![BigInt::from(6)]);
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::from_basis(RatMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(0)],
            vec![ratio(1, 4), ratio(1, 3)],
        ]))
        .unwrap();
        let s = serde_json::to_string(&l).unwrap();
        let back: Lattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        // redundant generator lists canonicalize to the same lattice
        let direct: Lattice =
            serde_json::from_str(r#"{"dim":1,"basis":[["2"],["3"]]}"#).unwrap();
        assert_eq!(direct, Lattice::standard(1));
    }
}
