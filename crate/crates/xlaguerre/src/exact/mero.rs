//! Meromorphic functions of λ kept in factored form: a λ-free prefactor,
//! gamma factors whose arguments are affine in α and λ, and explicit linear
//! root factors. Spectra are read off from pole orders of this shape.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use super::affine::AffinePoint;
use super::ratfun::RationalFunction;
use super::{rat, Rat};

/// Γ(c0 + c1·α − λ).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GammaFactor {
    pub c0: Rat,
    pub c1: i64,
}

impl GammaFactor {
    pub fn new(c0: Rat, c1: i64) -> Self {
        GammaFactor { c0, c1 }
    }

    /// 1 when the factor has a (simple) pole at λ = point, else 0.
    pub fn pole_order_at(&self, point: &AffinePoint) -> i64 {
        if self.c1 != point.s {
            return 0;
        }
        let z = &self.c0 - &point.q;
        if z.is_integer() && !z.is_positive() {
            1
        } else {
            0
        }
    }

    /// The n-th pole location λ = c0 + n + c1·α.
    pub fn pole(&self, n: u32) -> AffinePoint {
        AffinePoint::new(&self.c0 + &rat(n as i64), self.c1)
    }

    pub fn eval_f64(&self, alpha: f64, lambda: f64, gamma: &dyn Fn(f64) -> f64) -> f64 {
        gamma(self.c0.to_f64().unwrap_or(f64::NAN) + self.c1 as f64 * alpha - lambda)
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ(")?;
        if !self.c0.is_zero() {
            write!(f, "{}", self.c0)?;
        }
        match self.c1 {
            0 => {}
            1 => write!(f, "{}α", if self.c0.is_zero() { "" } else { "+" })?,
            -1 => write!(f, "-α")?,
            s if s > 0 => write!(f, "+{}α", s)?,
            s => write!(f, "{}α", s)?,
        }
        if self.c0.is_zero() && self.c1 == 0 {
            write!(f, "-λ)")
        } else {
            write!(f, "-λ)")
        }
    }
}

/// Γ(g0 + g1·α), a λ-free gamma factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AlphaGamma {
    pub g0: Rat,
    pub g1: i64,
}

impl AlphaGamma {
    pub fn new(g0: Rat, g1: i64) -> Self {
        AlphaGamma { g0, g1 }
    }

    pub fn eval_f64(&self, alpha: f64, gamma: &dyn Fn(f64) -> f64) -> f64 {
        gamma(self.g0.to_f64().unwrap_or(f64::NAN) + self.g1 as f64 * alpha)
    }
}

impl fmt::Display for AlphaGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ(")?;
        match (self.g0.is_zero(), self.g1) {
            (true, 0) => write!(f, "0")?,
            (true, 1) => write!(f, "α")?,
            (true, -1) => write!(f, "-α")?,
            (true, s) => write!(f, "{}α", s)?,
            (false, 0) => write!(f, "{}", self.g0)?,
            (false, 1) => write!(f, "{}+α", self.g0)?,
            (false, -1) => write!(f, "{}-α", self.g0)?,
            (false, s) if s > 0 => write!(f, "{}+{}α", self.g0, s)?,
            (false, s) => write!(f, "{}{}α", self.g0, s)?,
        }
        write!(f, ")")
    }
}

/// A meromorphic function of λ in factored form, tracked up to sign when
/// `sign_suppressed` is set (the construction pipeline determines factors
/// only up to an overall ±1; spectra and pole orders are unaffected).
#[derive(Clone, Debug)]
pub struct FactoredMeromorphic {
    pub sign_suppressed: bool,
    /// λ-free rational-in-α prefactor.
    pub constant: RationalFunction,
    pub gamma_alpha_num: Vec<AlphaGamma>,
    pub gamma_alpha_den: Vec<AlphaGamma>,
    pub gamma_num: Vec<GammaFactor>,
    pub gamma_den: Vec<GammaFactor>,
    pub roots_num: Vec<AffinePoint>,
    pub roots_den: Vec<AffinePoint>,
}

impl FactoredMeromorphic {
    pub fn one() -> Self {
        FactoredMeromorphic {
            sign_suppressed: false,
            constant: RationalFunction::one(),
            gamma_alpha_num: vec![],
            gamma_alpha_den: vec![],
            gamma_num: vec![],
            gamma_den: vec![],
            roots_num: vec![],
            roots_den: vec![],
        }
    }

    pub fn constant(c: RationalFunction) -> Self {
        let mut out = Self::one();
        out.constant = c;
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sign_suppressed |= other.sign_suppressed;
        out.constant = &out.constant * &other.constant;
        out.gamma_alpha_num.extend(other.gamma_alpha_num.iter().cloned());
        out.gamma_alpha_den.extend(other.gamma_alpha_den.iter().cloned());
        out.gamma_num.extend(other.gamma_num.iter().cloned());
        out.gamma_den.extend(other.gamma_den.iter().cloned());
        out.roots_num.extend(other.roots_num.iter().cloned());
        out.roots_den.extend(other.roots_den.iter().cloned());
        out.normalize()
    }

    pub fn recip(&self) -> Self {
        FactoredMeromorphic {
            sign_suppressed: self.sign_suppressed,
            constant: self.constant.recip(),
            gamma_alpha_num: self.gamma_alpha_den.clone(),
            gamma_alpha_den: self.gamma_alpha_num.clone(),
            gamma_num: self.gamma_den.clone(),
            gamma_den: self.gamma_num.clone(),
            roots_num: self.roots_den.clone(),
            roots_den: self.roots_num.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.constant = -&out.constant;
        out
    }

    /// Sorts factor lists and cancels identical factors across numerator
    /// and denominator.
    pub fn normalize(&self) -> Self {
        fn cancel<T: Clone + Ord>(num: &mut Vec<T>, den: &mut Vec<T>) {
            num.sort();
            den.sort();
            let mut kept_num = Vec::new();
            let mut kept_den: Vec<T> = den.clone();
            for v in num.drain(..) {
                if let Some(pos) = kept_den.iter().position(|d| *d == v) {
                    kept_den.remove(pos);
                } else {
                    kept_num.push(v);
                }
            }
            *num = kept_num;
            *den = kept_den;
        }
        let mut out = self.clone();
        cancel(&mut out.gamma_alpha_num, &mut out.gamma_alpha_den);
        cancel(&mut out.gamma_num, &mut out.gamma_den);
        cancel(&mut out.roots_num, &mut out.roots_den);
        out
    }

    /// Order of the pole at λ = point (negative for a zero). Gamma factors
    /// in the denominator are counted only in strict mode: they produce
    /// zeros of the function that the tabulated spectra treat as absent.
    pub fn pole_order(&self, point: &AffinePoint, strict: bool) -> i64 {
        let mut order: i64 = 0;
        for g in &self.gamma_num {
            order += g.pole_order_at(point);
        }
        if strict {
            for g in &self.gamma_den {
                order -= g.pole_order_at(point);
            }
        }
        order += self.roots_den.iter().filter(|r| *r == point).count() as i64;
        order -= self.roots_num.iter().filter(|r| *r == point).count() as i64;
        order
    }

    /// Numeric value; `gamma` supplies Γ on the real line. The sign is
    /// meaningless when `sign_suppressed` is set.
    pub fn eval_f64(&self, alpha: f64, lambda: f64, gamma: &dyn Fn(f64) -> f64) -> f64 {
        let mut v = self.constant.eval_f64(alpha, 0.0);
        for g in &self.gamma_alpha_num {
            v *= g.eval_f64(alpha, gamma);
        }
        for g in &self.gamma_alpha_den {
            v /= g.eval_f64(alpha, gamma);
        }
        for g in &self.gamma_num {
            v *= g.eval_f64(alpha, lambda, gamma);
        }
        for g in &self.gamma_den {
            v /= g.eval_f64(alpha, lambda, gamma);
        }
        for r in &self.roots_num {
            v *= lambda - r.eval_f64(alpha);
        }
        for r in &self.roots_den {
            v /= lambda - r.eval_f64(alpha);
        }
        v
    }
}

fn fmt_product(
    f: &mut fmt::Formatter<'_>,
    alpha_gammas: &[AlphaGamma],
    gammas: &[GammaFactor],
    roots: &[AffinePoint],
) -> Result<bool, fmt::Error> {
    let mut any = false;
    for g in alpha_gammas {
        if any {
            write!(f, "·")?;
        }
        write!(f, "{}", g)?;
        any = true;
    }
    for g in gammas {
        if any {
            write!(f, "·")?;
        }
        write!(f, "{}", g)?;
        any = true;
    }
    for r in roots {
        if any {
            write!(f, "·")?;
        }
        write!(f, "(λ-({}))", r)?;
        any = true;
    }
    Ok(any)
}

impl fmt::Display for FactoredMeromorphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign_suppressed {
            write!(f, "±")?;
        }
        write!(f, "({}) · ", self.constant)?;
        let any = fmt_product(f, &self.gamma_alpha_num, &self.gamma_num, &self.roots_num)?;
        if !any {
            write!(f, "1")?;
        }
        if !self.gamma_alpha_den.is_empty()
            || !self.gamma_den.is_empty()
            || !self.roots_den.is_empty()
        {
            write!(f, " / [")?;
            fmt_product(f, &self.gamma_alpha_den, &self.gamma_den, &self.roots_den)?;
            write!(f, "]")?;
        }
        Ok(())
    }
}
