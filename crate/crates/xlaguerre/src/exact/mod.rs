//! Exact scalar kernel: big rationals, polynomials and rational functions in
//! α and λ, affine points, quasi-rational series, and factored meromorphic
//! functions. No floating point lives in this module tree except the
//! read-only `eval_f64` accessors consumed by the spectral numerics.

mod affine;
mod mero;
mod poly;
mod ratfun;
mod series;
mod xpoly;

pub use affine::AffinePoint;
pub use mero::{AlphaGamma, FactoredMeromorphic, GammaFactor};
pub use poly::{falling_factorial, rising_factorial, Poly};
pub use ratfun::{poly_gcd, RationalFunction};
pub use series::{determinant, QuasiRationalSeries, Tag};
pub use xpoly::{sturm_roots_halfline, xpoly_gcd, RatX, XPoly};

/// Arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;

/// Integer as a `Rat`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Fraction n/d as a `Rat`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Parses "p/q" or "p" into a `Rat`.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let parse_int = |s: &str| -> Result<num_bigint::BigInt, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("not an integer: {:?}", s))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == num_bigint::BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(text)?)),
    }
}

/// n! as a `Rat`.
pub fn factorial(n: u32) -> Rat {
    let mut acc = num_bigint::BigInt::from(1);
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rat::from_integer(acc)
}
