//! Scalars in a real quadratic extension Q(sqrt(d)) and complex pairs thereof.
//!
//! The radicand `d` is a per-computation-context constant (default 2); mixing
//! two values with different radicands and both irrational parts nonzero is a
//! construction error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};
use num_complex::Complex64;

use super::{rat, rational_to_f64, Rational};

pub const DEFAULT_RADICAND: u32 = 2;

/// `a + b*sqrt(d)` with exact rational `a`, `b` and square-free `d >= 2`.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: u32) -> Self {
        assert!(d >= 2, "radicand must be a square-free integer >= 2");
        QuadScalar { a, b, d }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadScalar { a, b: rat(0), d: DEFAULT_RADICAND }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `b * sqrt(d)`.
    pub fn sqrt_multiple(b: Rational, d: u32) -> Self {
        Self::new(rat(0), b, d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn unified_radicand(&self, other: &Self) -> u32 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing radicands {} and {}", self.d, other.d);
                self.d
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadScalar { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn galois_conjugate(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Sign of the real number `a + b*sqrt(d)`: -1, 0 or 1, decided exactly.
    pub fn sign(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) => s,
            (0, s) => s,
            (s, t) if s == t => s,
            (s, _) => {
                // opposite signs: compare a^2 against d*b^2
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * rat(self.d as i64);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => -s,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.d == other.d)
    }
}
impl Eq for QuadScalar {}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.clone() - other.clone()).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.unified_radicand(&rhs);
        QuadScalar { a: self.a + rhs.a, b: self.b + rhs.b, d }
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        self + (-rhs)
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.unified_radicand(&rhs);
        let dr = rat(d as i64);
        QuadScalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", super::format_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", super::format_rational(&self.b), self.d)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                super::format_rational(&self.a),
                super::format_rational(&self.b),
                self.d
            )
        }
    }
}

/// Complex number with real and imaginary parts in Q(sqrt(d)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexQuad {
    pub re: QuadScalar,
    pub im: QuadScalar,
}

impl ComplexQuad {
    pub fn new(re: QuadScalar, im: QuadScalar) -> Self {
        ComplexQuad { re, im }
    }

    pub fn real(re: QuadScalar) -> Self {
        ComplexQuad { re, im: QuadScalar::zero() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::real(QuadScalar::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(QuadScalar::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexQuad { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`, an exact element of the same quadratic ring.
    pub fn norm_sq(&self) -> QuadScalar {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexQuad { re: self.re.scale(r), im: self.im.scale(r) }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for ComplexQuad {
    type Output = ComplexQuad;
    fn add(self, rhs: ComplexQuad) -> ComplexQuad {
        ComplexQuad { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexQuad {
    type Output = ComplexQuad;
    fn sub(self, rhs: ComplexQuad) -> ComplexQuad {
        ComplexQuad { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for ComplexQuad {
    type Output = ComplexQuad;
    fn neg(self) -> ComplexQuad {
        ComplexQuad { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexQuad {
    type Output = ComplexQuad;
    fn mul(self, rhs: ComplexQuad) -> ComplexQuad {
        ComplexQuad {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl fmt::Display for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + ({})i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn galois_norm_identity() {
        // (a + b sqrt(d))(a - b sqrt(d)) = a^2 - d b^2
        let x = QuadScalar::new(ratio(3, 5), ratio(-7, 2), 2);
        let p = x.clone() * x.galois_conjugate();
        assert!(p.b.is_zero());
        assert_eq!(p.a, ratio(9, 25) - ratio(49, 4) * rat(2));
    }

    #[test]
    fn exact_sign() {
        // 7/5 - sqrt(2) < 0 but 3/2 - sqrt(2) > 0
        assert_eq!(QuadScalar::new(ratio(7, 5), rat(-1), 2).sign(), -1);
        assert_eq!(QuadScalar::new(ratio(3, 2), rat(-1), 2).sign(), 1);
        assert_eq!(QuadScalar::zero().sign(), 0);
    }

    #[test]
    fn inv_sqrt2_squares_to_half() {
        // 1/sqrt(2) = (1/2) sqrt(2)
        let v = QuadScalar::sqrt_multiple(ratio(1, 2), 2);
        let sq = v.clone() * v;
        assert_eq!(sq, QuadScalar::from_rational(ratio(1, 2)));
    }

    #[test]
    fn complex_norm() {
        let z = ComplexQuad::new(
            QuadScalar::sqrt_multiple(ratio(1, 2), 2),
            QuadScalar::from_rational(ratio(1, 3)),
        );
        assert_eq!(z.norm_sq(), QuadScalar::from_rational(ratio(1, 2) + ratio(1, 9)));
    }
}
