//! Exact scalar and integer-matrix arithmetic: big rationals, quadratic-field
//! scalars, Hermite and Smith normal forms.

mod matrix;
mod quad;

pub use matrix::{hnf, hnf_with_kernel, snf, HnfDecomposition, IntMatrix, RatMatrix, SnfDecomposition};
pub use quad::{ComplexQuad, QuadScalar, DEFAULT_RADICAND};

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational. `num`'s `BigRational` already keeps the
/// canonical form we need: positive denominator, gcd(|num|, den) = 1.
pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, omitting the denominator when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse::<BigInt>().map_err(|e| Error::Parse {
            path: s.to_string(),
            message: e.to_string(),
        })
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse {
                    path: s.to_string(),
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Distance from `r` to the nearest integer, as an exact rational in [0, 1/2].
pub fn dist_to_integers(r: &Rational) -> Rational {
    let f = r - r.floor();
    let g = Rational::one() - f.clone();
    if f <= g {
        f
    } else {
        g
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    num::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

/// Least common multiple of the denominators of an iterator of rationals.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(iter: I) -> BigInt {
    let mut l = BigInt::one();
    for r in iter {
        l = num::Integer::lcm(&l, r.denom());
    }
    l.abs()
}
