//! Rational functions in α and λ: the scalar field of the library.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Rat;

/// A ratio of two polynomials in α and λ.
///
/// Construction performs a cheap normalization (denominator made primitive
/// with positive leading coefficient). Full gcd cancellation is explicit via
/// [`RationalFunction::reduced`], because most arithmetic in this crate runs
/// over denominator-one values where gcd work would be pure overhead.
/// Equality is decided by cross multiplication and is independent of
/// reduction state.
#[derive(Clone)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(),
            };
        }
        let c = den.content();
        let den = den.scale(&(Rat::one() / &c));
        let num = num.scale(&(Rat::one() / &c));
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_lambda_free(&self) -> bool {
        self.num.deg_lambda() == 0 && self.den.deg_lambda() == 0
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Fully reduced form: gcd(num, den) = 1, denominator primitive with a
    /// positive leading coefficient.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() {
            let c = self.den.as_constant().unwrap();
            return RationalFunction {
                num: self.num.scale(&(Rat::one() / c)),
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&self.num, &self.den);
        let num = self.num.divide_exact(&g).expect("gcd divides numerator");
        let den = self.den.divide_exact(&g).expect("gcd divides denominator");
        RationalFunction::new(num, den)
    }

    pub fn subst_alpha(&self, a: &Rat) -> Self {
        RationalFunction::new(self.num.subst_alpha(a), self.den.subst_alpha(a))
    }

    /// Translates both variables: α → α + da, λ → λ + dl.
    pub fn shift_vars(&self, da: i64, dl: i64) -> Self {
        RationalFunction::new(self.num.shift_vars(da, dl), self.den.shift_vars(da, dl))
    }

    pub fn subst_lambda(&self, l: &Rat) -> Self {
        RationalFunction::new(self.num.subst_lambda(l), self.den.subst_lambda(l))
    }

    pub fn eval_f64(&self, alpha: f64, lambda: f64) -> f64 {
        self.num.eval_f64(alpha, lambda) / self.den.eval_f64(alpha, lambda)
    }

    /// Exact rational value for numeric inputs; None on a denominator zero.
    pub fn eval_rat(&self, alpha: &Rat, lambda: &Rat) -> Option<Rat> {
        let d = self.den.subst_alpha(alpha).subst_lambda(lambda).as_constant()?;
        if d.is_zero() {
            return None;
        }
        let n = self.num.subst_alpha(alpha).subst_lambda(lambda).as_constant()?;
        Some(n / d)
    }

    /// Equality up to an overall sign, as used throughout the sign-suppressed
    /// identities.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        *self == *other || *self == -other
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den.is_constant() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "({}) / ({})", r.num, r.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Views a bivariate polynomial as a polynomial in λ with ℚ[α] coefficients.
fn lambda_coeffs(p: &Poly) -> Vec<Poly> {
    let d = p.deg_lambda() as usize;
    let mut out = vec![Poly::zero(); d + 1];
    for (&(da, dl), c) in p.terms() {
        out[dl as usize] = &out[dl as usize] + &Poly::term((da, 0), c.clone());
    }
    out
}

fn from_lambda_coeffs(cs: &[Poly]) -> Poly {
    let mut out = Poly::zero();
    for (dl, c) in cs.iter().enumerate() {
        out = &out + &(c * &Poly::term((0, dl as u32), Rat::one()));
    }
    out
}

/// Gcd of two univariate polynomials in α (deg_λ = 0), primitive form.
fn alpha_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.primitive(), b.primitive());
    while !b.is_zero() {
        let r = alpha_rem(&a, &b);
        a = b;
        b = r.primitive();
    }
    a
}

/// Remainder of univariate division in α over ℚ.
fn alpha_rem(a: &Poly, b: &Poly) -> Poly {
    let db = b.deg_alpha();
    if db == 0 {
        return Poly::zero();
    }
    let lb = b.leading_coeff();
    let mut r = a.clone();
    while !r.is_zero() && r.deg_alpha() >= db {
        let q = Poly::term((r.deg_alpha() - db, 0), r.leading_coeff() / &lb);
        r = &r - &(&q * b);
    }
    r
}

/// Content of p (as a poly in λ) in ℚ[α].
fn alpha_content(cs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.primitive() } else { alpha_gcd(&g, c) };
        if g.is_constant() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

fn primitive_part(cs: &[Poly]) -> (Poly, Vec<Poly>) {
    let cont = alpha_content(cs);
    let pp = cs
        .iter()
        .map(|c| c.divide_exact(&cont).expect("content divides"))
        .collect();
    (cont, pp)
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(Poly::zero());
    }
    v
}

/// Pseudo-remainder of a by b, both as λ-coefficient vectors over ℚ[α];
/// b must have λ-degree ≥ 1.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    debug_assert!(db >= 1 && !b[db].is_zero());
    let lb = b[db].clone();
    let mut r = trim(a.to_vec());
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r ← lb·r − lr·λ^{dr−db}·b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] = &r[dr - db + i] - &(&lr * bc);
        }
        r = trim(r);
    }
    r
}

/// Gcd of two bivariate polynomials via the primitive pseudo-remainder
/// sequence in λ over ℚ[α].
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.deg_lambda() == 0 && b.deg_lambda() == 0 {
        return alpha_gcd(a, b);
    }
    let (ca, pa) = primitive_part(&trim(lambda_coeffs(a)));
    let (cb, pb) = primitive_part(&trim(lambda_coeffs(b)));
    let cont = alpha_gcd(&ca, &cb);
    let (mut u, mut v) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    while v.len() > 1 {
        let r = pseudo_rem(&u, &v);
        u = v;
        if r.len() == 1 && r[0].is_zero() {
            v = r;
            break;
        }
        v = primitive_part(&r).1;
    }
    // A λ-primitive polynomial has no nonconstant λ-free divisor, so a
    // nonzero λ-free remainder forces a constant λ-part of the gcd.
    let g_pp = if v[0].is_zero() { u } else { vec![Poly::one()] };
    (&from_lambda_coeffs(&g_pp).primitive() * &cont).primitive()
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
