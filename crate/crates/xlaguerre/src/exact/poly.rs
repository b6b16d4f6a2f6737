//! Sparse polynomials in the two symbols α and λ over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rat, Rat};

/// Exponent pair (degree in α, degree in λ).
pub type Exp = (u32, u32);

/// A sparse polynomial in α and λ with `Rat` coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has an
/// empty term map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exp, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    /// The symbol α.
    pub fn alpha() -> Self {
        Poly::term((1, 0), Rat::one())
    }

    /// The symbol λ.
    pub fn lambda() -> Self {
        Poly::term((0, 1), Rat::one())
    }

    /// α + c for an integer offset c.
    pub fn alpha_plus(c: i64) -> Self {
        &Poly::alpha() + &Poly::from_int(c)
    }

    pub fn term(exp: Exp, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.get(&(0, 0)).cloned()
        } else {
            None
        }
    }

    pub fn deg_alpha(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_lambda(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exp) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_add(&mut self, exp: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Substitutes an exact rational for α.
    pub fn subst_alpha(&self, a: &Rat) -> Poly {
        let mut out = Poly::zero();
        for (&(da, dl), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..da {
                v *= a;
            }
            out.insert_add((0, dl), v);
        }
        out
    }

    /// Substitutes an exact rational for λ.
    pub fn subst_lambda(&self, l: &Rat) -> Poly {
        let mut out = Poly::zero();
        for (&(da, dl), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..dl {
                v *= l;
            }
            out.insert_add((da, 0), v);
        }
        out
    }

    /// Substitutes a polynomial for α (used for shifts α → α + t).
    pub fn subst_alpha_poly(&self, a: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(da, dl), c) in &self.terms {
            let mut p = Poly::term((0, dl), c.clone());
            for _ in 0..da {
                p = &p * a;
            }
            out = &out + &p;
        }
        out
    }

    /// Translates both variables: α → α + da, λ → λ + dl.
    pub fn shift_vars(&self, da: i64, dl: i64) -> Poly {
        let mut out = self.clone();
        if da != 0 {
            out = out.subst_alpha_poly(&(&Poly::alpha() + &Poly::from_int(da)));
        }
        if dl != 0 {
            out = out.subst_lambda_poly(&(&Poly::lambda() + &Poly::from_int(dl)));
        }
        out
    }

    /// Substitutes a polynomial for λ (used for shifts λ → λ + t).
    pub fn subst_lambda_poly(&self, l: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(da, dl), c) in &self.terms {
            let mut p = Poly::term((da, 0), c.clone());
            for _ in 0..dl {
                p = &p * l;
            }
            out = &out + &p;
        }
        out
    }

    pub fn eval_f64(&self, alpha: f64, lambda: f64) -> f64 {
        let mut acc = 0.0;
        for (&(da, dl), c) in &self.terms {
            acc += c.to_f64().unwrap_or(f64::NAN)
                * alpha.powi(da as i32)
                * lambda.powi(dl as i32);
        }
        acc
    }

    /// Leading exponent under lexicographic (α, λ) order.
    pub fn leading_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_exp()
            .map(|e| self.terms[&e].clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Exact polynomial division; returns None if the division leaves a
    /// remainder.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (dle, dlc) = (d.leading_exp().unwrap(), d.leading_coeff());
        while !rem.is_zero() {
            let rle = rem.leading_exp().unwrap();
            if rle.0 < dle.0 || rle.1 < dle.1 {
                return None;
            }
            let qe = (rle.0 - dle.0, rle.1 - dle.1);
            let qc = rem.leading_coeff() / &dlc;
            let qt = Poly::term(qe, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Rational content: gcd of the coefficient numerators over the lcm of
    /// their denominators, signed to match the leading coefficient.
    pub fn content(&self) -> Rat {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        content
    }

    /// Divides out the content, leaving integer coefficients with overall
    /// gcd one and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rat::one() / self.content()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a1, l1), c1) in &self.terms {
            for (&(a2, l2), c2) in &rhs.terms {
                out.insert_add((a1 + a2, l1 + l2), c1 * c2);
            }
        }
        out
    }
}

/// Rising factorial base^(n) = base·(base+1)···(base+n−1).
pub fn rising_factorial(base: &Poly, n: u32) -> Poly {
    let mut out = Poly::one();
    for k in 0..n {
        out = &out * &(base + &Poly::from_int(k as i64));
    }
    out
}

/// Falling factorial base_(n) = base·(base−1)···(base−n+1).
pub fn falling_factorial(base: &Poly, n: u32) -> Poly {
    let mut out = Poly::one();
    for k in 0..n {
        out = &out * &(base - &Poly::from_int(k as i64));
    }
    out
}

fn fmt_coeff(f: &mut fmt::Formatter<'_>, c: &Rat, first: bool, has_vars: bool) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if !has_vars || !mag.is_one() {
        write!(f, "{}", mag)?;
        if has_vars {
            write!(f, "*")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(da, dl), c) in self.terms.iter().rev() {
            let has_vars = da > 0 || dl > 0;
            fmt_coeff(f, c, first, has_vars)?;
            first = false;
            let mut star = false;
            if da > 0 {
                write!(f, "α")?;
                if da > 1 {
                    write!(f, "^{}", da)?;
                }
                star = true;
            }
            if dl > 0 {
                if star {
                    write!(f, "*")?;
                }
                write!(f, "λ")?;
                if dl > 1 {
                    write!(f, "^{}", dl)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratq;

    #[test]
    fn arithmetic_basics() {
        let a = Poly::alpha();
        let l = Poly::lambda();
        let p = &(&a + &l) * &(&a - &l);
        let q = &(&a * &a) - &(&l * &l);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn rising_factorial_examples() {
        // (−λ)^(2) = λ² − λ
        let p = rising_factorial(&-&Poly::lambda(), 2);
        let expect = &(&Poly::lambda() * &Poly::lambda()) - &Poly::lambda();
        assert_eq!(p, expect);
        assert_eq!(rising_factorial(&Poly::alpha_plus(1), 0), Poly::one());
        // falling (α)_(2) = α(α−1) = α² − α
        let q = falling_factorial(&Poly::alpha(), 2);
        let expect = &(&Poly::alpha() * &Poly::alpha()) - &Poly::alpha();
        assert_eq!(q, expect);
    }

    #[test]
    fn rising_factorial_concatenation() {
        for m in 0..5u32 {
            for n in 0..5u32 {
                let base = &Poly::alpha() - &Poly::lambda();
                let lhs = rising_factorial(&base, m + n);
                let shifted = &base + &Poly::from_int(m as i64);
                let rhs = &rising_factorial(&base, m) * &rising_factorial(&shifted, n);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn substitution() {
        // p = αλ + 2
        let p = &(&Poly::alpha() * &Poly::lambda()) + &Poly::from_int(2);
        let q = p.subst_alpha(&ratq(1, 2));
        assert_eq!(
            q,
            &Poly::term((0, 1), ratq(1, 2)) + &Poly::from_int(2)
        );
        let r = q.subst_lambda(&ratq(4, 1));
        assert_eq!(r.as_constant(), Some(ratq(4, 1)));
    }

    #[test]
    fn exact_division() {
        let a = Poly::alpha_plus(1);
        let b = &Poly::lambda() - &Poly::alpha();
        let prod = &a * &b;
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
        assert_eq!(prod.divide_exact(&b).unwrap(), a);
        assert!(Poly::one().divide_exact(&a).is_none());
    }

    #[test]
    fn display_readable() {
        let p = &(&Poly::alpha() * &Poly::alpha()) - &Poly::from_int(1);
        assert_eq!(format!("{}", p), "α^2 - 1");
    }
}
