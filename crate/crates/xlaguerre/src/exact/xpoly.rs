//! Univariate polynomials and rational functions in x over the (α, λ)
//! rational-function field. These carry the Laguerre polynomials, the
//! extracted exceptional polynomials, and the §2 operator coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{Rat, RationalFunction};

/// Polynomial in x; `coeffs[d]` is the coefficient of x^d.
#[derive(Clone, PartialEq)]
pub struct XPoly {
    coeffs: Vec<RationalFunction>,
}

impl XPoly {
    pub fn new(coeffs: Vec<RationalFunction>) -> Self {
        // Coefficients are kept fully reduced: the gcd chains running over
        // this type otherwise blow up exponentially in symbolic α.
        let mut p = XPoly {
            coeffs: coeffs.into_iter().map(|c| c.reduced()).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        XPoly {
            coeffs: vec![RationalFunction::one()],
        }
    }

    pub fn constant(c: RationalFunction) -> Self {
        XPoly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        XPoly {
            coeffs: vec![RationalFunction::zero(), RationalFunction::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> RationalFunction {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn leading(&self) -> RationalFunction {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        XPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Substitutes −x for x.
    pub fn negate_argument(&self) -> Self {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return XPoly::zero();
        }
        XPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &RationalFunction::from_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Numeric coefficient vector at exact α, λ; None if a coefficient
    /// denominator vanishes there.
    pub fn subst_numeric(&self, alpha: &Rat, lambda: &Rat) -> Option<Vec<Rat>> {
        self.coeffs
            .iter()
            .map(|c| c.eval_rat(alpha, lambda))
            .collect()
    }

    pub fn eval_f64(&self, x: f64, alpha: f64, lambda: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_f64(alpha, lambda);
        }
        acc
    }

    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        *self == *other || *self == -other
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new(
            (0..n)
                .map(|d| &self.coeff(d) + &rhs.coeff(d))
                .collect(),
        )
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &-rhs
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XPoly::new(out)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*x", c)?;
                if d > 1 {
                    write!(f, "^{}", d)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Remainder of self divided by d over the coefficient field.
fn xrem(a: &XPoly, b: &XPoly) -> XPoly {
    let db = b.degree().expect("division by zero polynomial");
    let lb = b.leading();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let q = &r.leading() / &lb;
        let mut shifted = vec![RationalFunction::zero(); dr - db];
        shifted.extend(b.coeffs.iter().map(|c| c * &q));
        r = &r - &XPoly::new(shifted);
    }
    r
}

/// Monic gcd over the coefficient field.
pub fn xpoly_gcd(a: &XPoly, b: &XPoly) -> XPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = xrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        let lead = a.leading();
        a.scale(&lead.recip())
    }
}

/// Rational function in x over the (α, λ) field, kept reduced.
#[derive(Clone)]
pub struct RatX {
    num: XPoly,
    den: XPoly,
}

impl RatX {
    pub fn new(num: XPoly, den: XPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in RatX");
        if num.is_zero() {
            return RatX {
                num,
                den: XPoly::one(),
            };
        }
        let g = xpoly_gcd(&num, &den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                xdiv_exact(&num, &g),
                xdiv_exact(&den, &g),
            )
        } else {
            (num, den)
        };
        let lead = den.leading();
        num = num.scale(&lead.recip());
        den = den.scale(&lead.recip());
        RatX { num, den }
    }

    pub fn from_xpoly(p: XPoly) -> Self {
        RatX {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_xpoly(XPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_xpoly(XPoly::one())
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero());
        RatX::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        // (n/d)' = (n'd − nd')/d²
        RatX::new(
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            &self.den * &self.den,
        )
    }

    /// The constant value if x-free; None otherwise.
    pub fn as_constant(&self) -> Option<RationalFunction> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0 {
            Some(if self.num.is_zero() {
                RationalFunction::zero()
            } else {
                &self.num.coeff(0) / &self.den.coeff(0)
            })
        } else {
            None
        }
    }
}

fn xdiv_exact(a: &XPoly, b: &XPoly) -> XPoly {
    let db = b.degree().expect("division by zero polynomial");
    let lb = b.leading();
    let mut r = a.clone();
    let mut q = vec![
        RationalFunction::zero();
        a.degree().unwrap_or(0).saturating_sub(db) + 1
    ];
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let qc = &r.leading() / &lb;
        q[dr - db] = qc.clone();
        let mut shifted = vec![RationalFunction::zero(); dr - db];
        shifted.extend(b.coeffs.iter().map(|c| c * &qc));
        r = &r - &XPoly::new(shifted);
    }
    assert!(r.is_zero(), "inexact polynomial division");
    XPoly::new(q)
}

impl PartialEq for RatX {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatX {
    type Output = RatX;
    fn add(self, rhs: &RatX) -> RatX {
        RatX::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatX {
    type Output = RatX;
    fn sub(self, rhs: &RatX) -> RatX {
        RatX::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatX {
    type Output = RatX;
    fn neg(self) -> RatX {
        RatX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatX {
    type Output = RatX;
    fn mul(self, rhs: &RatX) -> RatX {
        RatX::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RatX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree().unwrap_or(0) == 0 && !self.den.is_zero() {
            let scaled = self.num.scale(&self.den.coeff(0).recip());
            write!(f, "{}", scaled)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Sign variations in a sequence of exact rationals, zeros skipped.
fn sign_variations(vals: &[Rat]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in vals {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Exact count of distinct real roots of `p` (rational coefficients) in
/// [0, ∞) by a Sturm chain on the square-free part.
pub fn sturm_roots_halfline(p: &[Rat]) -> usize {
    let poly = XPoly::new(p.iter().map(|c| RationalFunction::from_rat(c.clone())).collect());
    if poly.is_zero() {
        panic!("zero polynomial has no root count");
    }
    if poly.degree().unwrap() == 0 {
        return 0;
    }
    let dp = poly.derivative();
    let g = xpoly_gcd(&poly, &dp);
    let mut sf = if g.degree().unwrap_or(0) > 0 {
        xdiv_exact(&poly, &g)
    } else {
        poly.clone()
    };
    // Deflate a root at 0 so the chain can be evaluated at 0 itself.
    let zero = Rat::from_integer(0.into());
    let mut root_at_zero = 0usize;
    if sf
        .coeff(0)
        .eval_rat(&zero, &zero)
        .unwrap()
        .is_zero()
    {
        root_at_zero = 1;
        sf = xdiv_exact(&sf, &XPoly::x());
    }
    if sf.degree().unwrap_or(0) == 0 {
        return root_at_zero;
    }
    // Sturm chain.
    let mut chain = vec![sf.clone(), sf.derivative()];
    while chain.last().unwrap().degree().unwrap_or(0) > 0 {
        let n = chain.len();
        let r = xrem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    let at_zero: Vec<Rat> = chain
        .iter()
        .map(|q| q.coeff(0).eval_rat(&zero, &zero).unwrap())
        .collect();
    let at_inf: Vec<Rat> = chain
        .iter()
        .map(|q| q.leading().eval_rat(&zero, &zero).unwrap())
        .collect();
    sign_variations(&at_zero) - sign_variations(&at_inf) + root_at_zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratq};

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn xpoly_arithmetic() {
        let p = XPoly::new(vec![c(1), c(2)]); // 1 + 2x
        let q = XPoly::new(vec![c(-1), c(2)]); // −1 + 2x
        let prod = &p * &q;
        assert_eq!(prod, XPoly::new(vec![c(-1), c(0), c(4)]));
        assert_eq!(p.derivative(), XPoly::constant(c(2)));
        assert_eq!(p.negate_argument(), XPoly::new(vec![c(1), c(-2)]));
    }

    #[test]
    fn ratx_reduces() {
        let num = &XPoly::x() * &XPoly::new(vec![c(1), c(1)]); // x(1+x)
        let den = XPoly::new(vec![c(1), c(1)]); // 1+x
        let r = RatX::new(num, den);
        assert_eq!(r, RatX::from_xpoly(XPoly::x()));
    }

    #[test]
    fn ratx_derivative_quotient_rule() {
        // d/dx (1/x) = −1/x²
        let r = RatX::new(XPoly::one(), XPoly::x());
        let expected = RatX::new(
            XPoly::constant(c(-1)),
            &XPoly::x() * &XPoly::x(),
        );
        assert_eq!(r.derivative(), expected);
    }

    #[test]
    fn sturm_counts() {
        // x² − 3x + 2: roots 1, 2 — two roots in [0, ∞).
        assert_eq!(
            sturm_roots_halfline(&[rat(2), rat(-3), rat(1)]),
            2
        );
        // x² + 1: none.
        assert_eq!(sturm_roots_halfline(&[rat(1), rat(0), rat(1)]), 0);
        // x² − 2: one non-negative root.
        assert_eq!(sturm_roots_halfline(&[rat(-2), rat(0), rat(1)]), 1);
        // x(x−1): root at 0 and at 1.
        assert_eq!(sturm_roots_halfline(&[rat(0), rat(-1), rat(1)]), 2);
        // (x−1)²: multiple root counted once.
        assert_eq!(sturm_roots_halfline(&[rat(1), rat(-2), rat(1)]), 1);
        // x + 1: negative root only.
        assert_eq!(sturm_roots_halfline(&[rat(1), rat(1)]), 0);
        // constant
        assert_eq!(sturm_roots_halfline(&[ratq(1, 2)]), 0);
    }
}
