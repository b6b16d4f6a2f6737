//! Affine points q + s·α: the locations where eigenvalues and λ-roots live.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::poly::Poly;
use super::Rat;

/// A point of the form q + s·α with rational q and integer s.
///
/// Every λ-root and eigenvalue produced by the pipeline has this shape
/// (s ∈ {−1, 0} in practice); two points are equal iff their (q, s) agree,
/// and for non-integer α points with different s never coincide.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint {
    pub q: Rat,
    pub s: i64,
}

impl AffinePoint {
    pub fn new(q: Rat, s: i64) -> Self {
        AffinePoint { q, s }
    }

    pub fn from_int(n: i64) -> Self {
        AffinePoint {
            q: Rat::from_integer(n.into()),
            s: 0,
        }
    }

    /// Offsets the rational part: used for λ → λ + t substitutions, under
    /// which a root ρ of (λ − ρ) moves to ρ − t.
    pub fn offset(&self, t: &Rat) -> Self {
        AffinePoint {
            q: &self.q + t,
            s: self.s,
        }
    }

    pub fn eval(&self, alpha: &Rat) -> Rat {
        &self.q + &(Rat::from_integer(self.s.into()) * alpha)
    }

    pub fn eval_f64(&self, alpha: f64) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN) + self.s as f64 * alpha
    }

    /// The monic linear factor λ − (q + sα) as a polynomial.
    pub fn lambda_factor(&self) -> Poly {
        let mut p = Poly::lambda();
        p = &p - &Poly::constant(self.q.clone());
        p = &p - &Poly::term((1, 0), Rat::from_integer(self.s.into()));
        p
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            0 => write!(f, "{}", self.q),
            _ => {
                if self.q.is_zero() {
                    match self.s {
                        1 => write!(f, "α"),
                        -1 => write!(f, "-α"),
                        s => write!(f, "{}α", s),
                    }
                } else {
                    write!(f, "{}", self.q)?;
                    let mag = self.s.abs();
                    let sign = if self.s < 0 { "-" } else { "+" };
                    if mag == 1 {
                        write!(f, "{}α", sign)
                    } else {
                        write!(f, "{}{}α", sign, mag)
                    }
                }
            }
        }
    }
}

impl fmt::Debug for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratq;

    #[test]
    fn eval_and_offset() {
        let p = AffinePoint::new(ratq(3, 1), -1);
        assert_eq!(p.eval(&ratq(1, 2)), ratq(5, 2));
        let q = p.offset(&ratq(-2, 1));
        assert_eq!(q, AffinePoint::new(ratq(1, 1), -1));
    }

    #[test]
    fn display() {
        assert_eq!(AffinePoint::from_int(2).to_string(), "2");
        assert_eq!(AffinePoint::new(ratq(0, 1), -1).to_string(), "-α");
        assert_eq!(AffinePoint::new(ratq(1, 1), -1).to_string(), "1-α");
    }

    #[test]
    fn lambda_factor_roots() {
        let p = AffinePoint::new(ratq(1, 1), -1);
        let f = p.lambda_factor();
        // At α = 1/3 the factor vanishes at λ = 2/3.
        let v = f.subst_alpha(&ratq(1, 3)).subst_lambda(&ratq(2, 3));
        assert!(v.is_zero());
    }
}
