//! Dense integer and rational matrices with the normal forms needed for
//! canonical lattice bases: column-style Hermite normal form (lower
//! triangular, positive pivots) and Smith normal form.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        let data = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        }
    }

    pub fn det(&self) -> BigInt {
        let d = self.to_rational().det();
        assert!(d.denom().is_one());
        d.numer().clone()
    }

    pub fn is_lower_triangular(&self) -> bool {
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if !self[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.data.swap(i * c + a, i * c + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// col_j += q * col_k
    fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, j)] + q * &self[(i, k)];
            self[(i, j)] = v;
        }
    }

    /// Replaces columns (j, k) by (x*cj + y*ck, u*cj + v*ck).
    fn combine_cols(&mut self, j: usize, k: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let cj = self[(i, j)].clone();
            let ck = self[(i, k)].clone();
            self[(i, j)] = x * &cj + y * &ck;
            self[(i, k)] = u * &cj + v * &ck;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row_i += q * row_k
    fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(i, j)] + q * &self[(k, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub struct HnfDecomposition {
    /// Lower-triangular canonical form, same shape as the input; for inputs
    /// with more columns than rows the trailing `cols - rows` columns are zero.
    pub h: IntMatrix,
    /// Unimodular column transform with `h = m * u`.
    pub u: IntMatrix,
}

/// Column-style Hermite normal form of a full-row-rank integer matrix.
///
/// `h = m * u` with `u` unimodular, `h` lower triangular, pivots positive,
/// and every entry left of a pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> Result<HnfDecomposition> {
    let n = m.rows;
    let cols = m.cols;
    if cols < n {
        return Err(Error::RankError);
    }
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);

    for r in 0..n {
        // bring a nonzero entry of row r into column r
        let pivot_col = (r..cols).find(|&j| !h[(r, j)].is_zero());
        let Some(pc) = pivot_col else {
            return Err(Error::RankError);
        };
        h.swap_cols(r, pc);
        u.swap_cols(r, pc);

        // clear row r to the right of the pivot with extended-gcd column ops
        for k in (r + 1)..cols {
            if h[(r, k)].is_zero() {
                continue;
            }
            let a = h[(r, r)].clone();
            let b = h[(r, k)].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            // [cj ck] -> [x*cj + y*ck, -(b/g)*cj + (a/g)*ck], det = 1
            let u21 = -(&b / &g);
            let u22 = &a / &g;
            h.combine_cols(r, k, &x, &y, &u21, &u22);
            u.combine_cols(r, k, &x, &y, &u21, &u22);
        }

        if h[(r, r)].is_negative() {
            h.negate_col(r);
            u.negate_col(r);
        }

        // reduce the entries left of the pivot into [0, pivot)
        let pivot = h[(r, r)].clone();
        for k in 0..r {
            let q = h[(r, k)].div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(k, r, &nq);
                u.add_col_multiple(k, r, &nq);
            }
        }
    }
    Ok(HnfDecomposition { h, u })
}

/// HNF of a wide matrix together with an integer kernel basis.
///
/// The kernel columns are the columns of `u` matched to the zero columns of
/// `h`; for an `n x m` input of rank `n` there are `m - n` of them.
pub fn hnf_with_kernel(m: &IntMatrix) -> Result<(HnfDecomposition, Vec<Vec<BigInt>>)> {
    let dec = hnf(m)?;
    let mut kernel = Vec::new();
    for j in m.rows..m.cols {
        kernel.push(dec.u.column(j));
    }
    Ok((dec, kernel))
}

pub struct SnfDecomposition {
    /// Diagonal with positive entries forming a divisibility chain.
    pub d: IntMatrix,
    /// Left unimodular factor: `d = u * m * v`.
    pub u: IntMatrix,
    /// Right unimodular factor.
    pub v: IntMatrix,
}

/// Smith normal form of a square nonsingular integer matrix.
pub fn snf(m: &IntMatrix) -> Result<SnfDecomposition> {
    assert_eq!(m.rows, m.cols, "snf expects a square matrix");
    let n = m.rows;
    let mut d = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        loop {
            // minimal nonzero |entry| in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d[(i, j)].abs() < d[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::RankError);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in (t + 1)..n {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // enforce that the pivot divides the rest of the submatrix
            let mut fixed = true;
            'scan: for i in (t + 1)..n {
                for j in (t + 1)..n {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SnfDecomposition { d, u, v })
}

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r));
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, r: &Rational) -> RatMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= r;
        }
        out
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|v| v.denom().is_one())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.is_integer() {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.numer().clone()).collect(),
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    let cc = a.cols;
                    a.data.swap(p * cc + j, c * cc + j);
                }
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for i in (c + 1)..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &pivot;
                for j in c..n {
                    let v = &a[(i, j)] - &f * &a[(c, j)];
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Err(Error::RankError);
            };
            for j in 0..n {
                let cc = n;
                a.data.swap(p * cc + j, c * cc + j);
                inv.data.swap(p * cc + j, c * cc + j);
            }
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &pivot;
                inv[(c, j)] /= &pivot;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let av = &a[(i, j)] - &f * &a[(c, j)];
                    a[(i, j)] = av;
                    let iv = &inv[(i, j)] - &f * &inv[(c, j)];
                    inv[(i, j)] = iv;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.inverse()?.mul_vec(b))
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn assert_unimodular(m: &IntMatrix) {
        let d = m.det();
        assert!(d == BigInt::one() || d == -BigInt::one(), "det = {d}");
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(3);
        let dec = hnf(&id).unwrap();
        assert_eq!(dec.h, id);
        assert_eq!(dec.u, IntMatrix::identity(3));

        let diag = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let dec = hnf(&diag).unwrap();
        assert_eq!(dec.h, diag);
    }

    #[test]
    fn hnf_matches_exhaustive_oracle() {
        // columns (2,6) and (4,8); the oracle scans all unimodular U with
        // entries in [-10, 10] for the canonical lower-triangular form
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let dec = hnf(&m).unwrap();
        assert_eq!(dec.h, m.mul(&dec.u));
        assert_unimodular(&dec.u);

        let mut canonical = Vec::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                for c in -10i64..=10 {
                    for d in -10i64..=10 {
                        if a * d - b * c != 1 && a * d - b * c != -1 {
                            continue;
                        }
                        let u = IntMatrix::from_rows(vec![vec![a, b], vec![c, d]]);
                        let h = m.mul(&u);
                        let h00 = &h[(0, 0)];
                        let h01 = &h[(0, 1)];
                        let h10 = &h[(1, 0)];
                        let h11 = &h[(1, 1)];
                        if h01.is_zero()
                            && h00.is_positive()
                            && h11.is_positive()
                            && !h10.is_negative()
                            && h10 < h11
                        {
                            canonical.push(h);
                        }
                    }
                }
            }
        }
        assert!(!canonical.is_empty());
        for h in &canonical {
            assert_eq!(h, &dec.h, "canonical form is unique");
        }
    }

    #[test]
    fn hnf_rejects_rank_deficient() {
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert!(matches!(hnf(&m), Err(Error::RankError)));
    }

    #[test]
    fn snf_examples() {
        let d22 = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let dec = snf(&d22).unwrap();
        assert_eq!(dec.d, d22);

        let id = IntMatrix::identity(2);
        assert_eq!(snf(&id).unwrap().d, id);

        // elementary-divisor oracle: alpha1 = gcd of entries = 2,
        // alpha1*alpha2 = |det| = 8, so D = diag(2, 4)
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let dec = snf(&m).unwrap();
        assert_eq!(dec.d, IntMatrix::from_rows(vec![vec![2, 0], vec![0, 4]]));
        assert_eq!(dec.d, dec.u.mul(&m).mul(&dec.v));
        assert_unimodular(&dec.u);
        assert_unimodular(&dec.v);
    }

    #[test]
    fn rational_inverse_round_trip() {
        let m = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(3)],
            vec![rat(-1), ratio(5, 7)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
    }
}
