//! Seed functions and solutions: classical Laguerre polynomials, the four
//! quasi-rational seed families, the hypergeometric solutions h and h̃ as
//! truncated series, and the one-step Darboux partner operator.

use crate::exact::{
    rising_factorial, factorial, Poly, QuasiRationalSeries, Rat, RatX, RationalFunction, Tag,
    XPoly,
};

/// Rising factorial of a rational-function base.
pub fn rising_rf(base: &RationalFunction, n: u32) -> RationalFunction {
    let mut out = RationalFunction::one();
    for k in 0..n {
        out = &out * &(base + &RationalFunction::from_int(k as i64));
    }
    out
}

/// Classical Laguerre polynomial L_n^param(x) from the explicit
/// hypergeometric sum; coefficient of x^k is
/// (−1)^k (param+k+1)^{(n−k)} / ((n−k)!·k!).
pub fn laguerre(n: u32, param: &RationalFunction) -> XPoly {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let num = rising_rf(
            &(param + &RationalFunction::from_int(k as i64 + 1)),
            n - k,
        );
        let den = &factorial(n - k) * &factorial(k);
        let mut c = &num * &RationalFunction::from_rat(Rat::from_integer(1.into()) / den);
        if k % 2 == 1 {
            c = -&c;
        }
        coeffs.push(c);
    }
    XPoly::new(coeffs)
}

/// One of the four seed families.
///
/// kind 1: L_d^{a}(x); kind 2: e^x L_d^{a}(−x); kind 3: x^{−a} L_d^{−a}(x);
/// kind 4: e^x x^{−a} L_d^{−a}(−x), where a = α + alpha_offset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SeedSpec {
    pub kind: u8,
    pub degree: u32,
    pub alpha_offset: i64,
}

impl SeedSpec {
    pub fn new(kind: u8, degree: u32, alpha_offset: i64) -> Self {
        assert!((1..=4).contains(&kind), "seed kind must be 1..4");
        SeedSpec {
            kind,
            degree,
            alpha_offset,
        }
    }

    /// Prefactor tag (j, k) of the family.
    pub fn tag(&self) -> Tag {
        match self.kind {
            1 => Tag::new(0, 0),
            2 => Tag::new(0, 1),
            3 => Tag::new(-1, 0),
            _ => Tag::new(-1, 1),
        }
    }
}

/// The seed as an exact quasi-rational series over the exponent unit
/// (the symbol α, or a rational constant in numeric mode).
pub fn seed(spec: &SeedSpec, unit: &Poly) -> QuasiRationalSeries {
    let a = RationalFunction::from_poly(
        &unit.clone() + &Poly::from_int(spec.alpha_offset),
    );
    let (param, negate, tag) = match spec.kind {
        1 => (a, false, Tag::new(0, 0)),
        2 => (a, true, Tag::new(0, 1)),
        3 => (-&a, false, Tag::new(-1, 0)),
        _ => (-&a, true, Tag::new(-1, 1)),
    };
    let mut poly = laguerre(spec.degree, &param);
    if negate {
        poly = poly.negate_argument();
    }
    let base = QuasiRationalSeries::from_xpoly(unit.clone(), Tag::new(0, tag.k), &poly);
    if tag.j == 0 {
        base
    } else {
        base.mul_power(-1, -spec.alpha_offset)
    }
}

fn check_denominator(den: &Poly, what: &str) -> Result<(), String> {
    if den.is_zero() {
        Err(format!(
            "parameter of {} hits a pole (rising factorial vanishes identically)",
            what
        ))
    } else {
        Ok(())
    }
}

/// Truncated series of h = M(−λ_expr, α_expr + 1, x) with
/// α_expr = unit + alpha_offset; coefficient of xⁿ is
/// (−λ_expr)^{(n)} / ((α_expr+1)^{(n)} · n!).
pub fn solution_h(
    unit: &Poly,
    alpha_offset: i64,
    lambda_expr: &Poly,
    trunc: i64,
) -> Result<QuasiRationalSeries, String> {
    let b = &unit.clone() + &Poly::from_int(alpha_offset + 1);
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    for n in 0..=trunc as u32 {
        let num = rising_factorial(&-lambda_expr, n).scale(&(Rat::from_integer(1.into()) / factorial(n)));
        let den = rising_factorial(&b, n);
        check_denominator(&den, "solution of the first kind")?;
        coeffs.push(RationalFunction::new(num, den));
    }
    Ok(QuasiRationalSeries::truncated(
        unit.clone(),
        Tag::new(0, 0),
        coeffs,
        trunc,
    ))
}

/// Like [`solution_h`] but scaled by K = (α_expr+1)^{(trunc)}, so every
/// coefficient is polynomial; returns the series and K.
pub fn solution_h_scaled(
    unit: &Poly,
    alpha_offset: i64,
    lambda_expr: &Poly,
    trunc: i64,
) -> Result<(QuasiRationalSeries, Poly), String> {
    let b = &unit.clone() + &Poly::from_int(alpha_offset + 1);
    let k_full = rising_factorial(&b, trunc as u32 + 1);
    check_denominator(&k_full, "solution of the first kind")?;
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    for n in 0..=trunc as u32 {
        let shifted = &b + &Poly::from_int(n as i64);
        let tail = rising_factorial(&shifted, trunc as u32 + 1 - n);
        let num = &rising_factorial(&-lambda_expr, n) * &tail;
        coeffs.push(RationalFunction::from_poly(
            num.scale(&(Rat::from_integer(1.into()) / factorial(n))),
        ));
    }
    Ok((
        QuasiRationalSeries::truncated(unit.clone(), Tag::new(0, 0), coeffs, trunc),
        k_full,
    ))
}

/// Truncated series of h̃ = x^{−α_expr} M(−λ_expr − α_expr, 1 − α_expr, x).
pub fn solution_htilde(
    unit: &Poly,
    alpha_offset: i64,
    lambda_expr: &Poly,
    trunc: i64,
) -> Result<QuasiRationalSeries, String> {
    let alpha_expr = &unit.clone() + &Poly::from_int(alpha_offset);
    let b = &Poly::from_int(1) - &alpha_expr;
    let a = &(-lambda_expr) - &alpha_expr;
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    for n in 0..=trunc as u32 {
        let num = rising_factorial(&a, n).scale(&(Rat::from_integer(1.into()) / factorial(n)));
        let den = rising_factorial(&b, n);
        check_denominator(&den, "solution of the second kind")?;
        coeffs.push(RationalFunction::new(num, den));
    }
    Ok(QuasiRationalSeries::truncated(
        unit.clone(),
        Tag::new(0, 0),
        coeffs,
        trunc,
    )
    .mul_power(-1, -alpha_offset))
}

/// Like [`solution_htilde`] but scaled by K = (1 − α_expr)^{(trunc)}.
pub fn solution_htilde_scaled(
    unit: &Poly,
    alpha_offset: i64,
    lambda_expr: &Poly,
    trunc: i64,
) -> Result<(QuasiRationalSeries, Poly), String> {
    let alpha_expr = &unit.clone() + &Poly::from_int(alpha_offset);
    let b = &Poly::from_int(1) - &alpha_expr;
    let a = &(-lambda_expr) - &alpha_expr;
    let k_full = rising_factorial(&b, trunc as u32 + 1);
    check_denominator(&k_full, "solution of the second kind")?;
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    for n in 0..=trunc as u32 {
        let shifted = &b + &Poly::from_int(n as i64);
        let tail = rising_factorial(&shifted, trunc as u32 + 1 - n);
        let num = &rising_factorial(&a, n) * &tail;
        coeffs.push(RationalFunction::from_poly(
            num.scale(&(Rat::from_integer(1.into()) / factorial(n))),
        ));
    }
    Ok((
        QuasiRationalSeries::truncated(unit.clone(), Tag::new(0, 0), coeffs, trunc)
            .mul_power(-1, -alpha_offset),
        k_full,
    ))
}

/// A rational factorization ℓ = B∘A + λ₀ of the expression
/// ℓ[y] = p·y″ + q·y′ + r·y, with A[y] = b(y′ − wy), B[z] = b̂(z′ − ŵz).
#[derive(Clone, Debug)]
pub struct OneStepFactorization {
    pub p: RatX,
    pub q: RatX,
    pub r: RatX,
    pub b: RatX,
    pub w: RatX,
    pub bhat: RatX,
    pub what: RatX,
    pub lambda0: RatX,
}

impl OneStepFactorization {
    /// Builds the factorization from the expression, the gauge factor b,
    /// and the logarithmic derivative w = φ′/φ of the quasi-rational
    /// eigenfunction.
    pub fn new(p: RatX, q: RatX, r: RatX, b: RatX, w: RatX) -> Self {
        assert!(!b.is_zero(), "gauge factor b must be nonzero");
        let bhat = &p * &b.recip();
        // Matching the y′ coefficient of B[A[y]] to q forces
        // ŵ = −w − q/p + b′/b.
        let what = &(&(-&w) - &(&q * &p.recip())) + &(&b.derivative() * &b.recip());
        // λ₀ = ℓ[φ]/φ = r + p(w′ + w²) + qw.
        let lambda0 = &(&r + &(&p * &(&w.derivative() + &(&w * &w)))) + &(&q * &w);
        OneStepFactorization {
            p,
            q,
            r,
            b,
            w,
            bhat,
            what,
            lambda0,
        }
    }

    /// w for a quasi-rational φ = x^e · e^{cx} · poly(x).
    pub fn log_derivative(poly: &XPoly, x_exponent: &RationalFunction, exp_coeff: i64) -> RatX {
        let rational_part = RatX::new(poly.derivative().clone(), poly.clone());
        let power_part = RatX::new(
            XPoly::constant(x_exponent.clone()),
            XPoly::x(),
        );
        &(&rational_part + &power_part) + &RatX::from_xpoly(XPoly::constant(
            RationalFunction::from_int(exp_coeff),
        ))
    }

    pub fn apply_ell(&self, y: &RatX) -> RatX {
        let dy = y.derivative();
        &(&(&self.p * &dy.derivative()) + &(&self.q * &dy)) + &(&self.r * y)
    }

    pub fn apply_a(&self, y: &RatX) -> RatX {
        &self.b * &(&y.derivative() - &(&self.w * y))
    }

    pub fn apply_b(&self, z: &RatX) -> RatX {
        &self.bhat * &(&z.derivative() - &(&self.what * z))
    }

    /// ℓ[y] − (B[A[y]] + λ₀y); zero when the factorization is exact.
    pub fn factorization_defect(&self, y: &RatX) -> RatX {
        let lhs = self.apply_ell(y);
        let rhs = &self.apply_b(&self.apply_a(y)) + &(&self.lambda0 * y);
        &lhs - &rhs
    }
}

/// Coefficients of the partner expression 𝓛 = A∘B + λ₀, as
/// 𝓛[y] = p·y″ + 𝒬·y′ + ℛ·y, together with the weight multiplier:
/// the partner weight is weight_factor · P for the classical density P.
#[derive(Clone, Debug)]
pub struct PartnerCoefficients {
    pub q_partner: RatX,
    pub r_partner: RatX,
    pub weight_factor: RatX,
}

/// Computes the partner coefficients two ways and cross-checks them:
/// 𝒬 = q + p′ − 2pb′/b, and ℛ both as
/// −p(ŵ′+ŵ²) − 𝒬ŵ + λ₀ and as
/// r + q′ + wp′ − (b′/b)(q+p′) + (2(b′/b)² − b″/b + 2w′)p.
pub fn partner_operator(f: &OneStepFactorization) -> Result<PartnerCoefficients, String> {
    let two = RatX::from_xpoly(XPoly::constant(RationalFunction::from_int(2)));
    let bl = &f.b.derivative() * &f.b.recip();
    let q_partner = &(&f.q + &f.p.derivative())
        - &(&(&two * &f.p) * &bl);

    let what = &f.what;
    let r_first = &(&(&(-&f.p) * &(&what.derivative() + &(what * what)))
        - &(&q_partner * what))
        + &f.lambda0;

    let qppp = &f.q + &f.p.derivative();
    let b_over = &bl * &qppp;
    let curvature = &(&(&two * &(&bl * &bl))
        - &(&f.b.derivative().derivative() * &f.b.recip()))
        + &(&two * &f.w.derivative());
    let r_second = &(&(&(&f.r + &f.q.derivative()) + &(&f.w * &f.p.derivative())) - &b_over)
        + &(&curvature * &f.p);

    if r_first != r_second {
        return Err("partner coefficient formulas disagree".into());
    }
    let weight_factor = (&f.b * &f.b).recip();
    Ok(PartnerCoefficients {
        q_partner,
        r_partner: r_second,
        weight_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn alpha_rf() -> RationalFunction {
        RationalFunction::from_poly(Poly::alpha())
    }

    fn rfc(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    fn unit() -> Poly {
        Poly::alpha()
    }

    #[test]
    fn laguerre_values_at_zero() {
        for n in 0..=10u32 {
            let p = laguerre(n, &alpha_rf());
            let expect = &rising_rf(&(&alpha_rf() + &rfc(1)), n)
                * &RationalFunction::from_rat(Rat::from_integer(1.into()) / factorial(n));
            assert_eq!(p.coeff(0), expect, "n = {}", n);
            assert_eq!(p.degree(), Some(n as usize));
        }
    }

    #[test]
    fn laguerre_small_cases() {
        assert_eq!(laguerre(0, &alpha_rf()), XPoly::one());
        // L₁^α = 1 + α − x
        let l1 = laguerre(1, &alpha_rf());
        assert_eq!(l1.coeff(0), &rfc(1) + &alpha_rf());
        assert_eq!(l1.coeff(1), rfc(-1));
        // L₁^{−α} = 1 − α − x
        let l1n = laguerre(1, &-&alpha_rf());
        assert_eq!(l1n.coeff(0), &rfc(1) - &alpha_rf());
        assert_eq!(l1n.coeff(1), rfc(-1));
        // L₂^α constant term (α+1)(α+2)/2
        let l2 = laguerre(2, &alpha_rf());
        let expect = &(&(&alpha_rf() + &rfc(1)) * &(&alpha_rf() + &rfc(2)))
            * &RationalFunction::from_rat(crate::exact::ratq(1, 2));
        assert_eq!(l2.coeff(0), expect);
    }

    #[test]
    fn seed_prefactors() {
        // kind 3, degree 0 → x^{−α}
        let s3 = seed(&SeedSpec::new(3, 0, 0), &unit());
        assert_eq!(s3.coeff(Tag::new(-1, 0), 0), rfc(1));
        assert_eq!(s3.single_tag(), Some(Tag::new(-1, 0)));
        // kind 4, degree 0 → e^x x^{−α}
        let s4 = seed(&SeedSpec::new(4, 0, 0), &unit());
        assert_eq!(s4.coeff(Tag::new(-1, 1), 0), rfc(1));
        // kind 1, degree 3 has the trivial tag and degree 3
        let s1 = seed(&SeedSpec::new(1, 3, 0), &unit());
        assert_eq!(s1.single_tag(), Some(Tag::new(0, 0)));
        assert_eq!(s1.coeff(Tag::new(0, 0), 3), RationalFunction::from_rat(crate::exact::ratq(-1, 6)));
        // kind 2 negates the argument: coefficient of x is +L-coefficient.
        let s2 = seed(&SeedSpec::new(2, 1, 0), &unit());
        assert_eq!(s2.coeff(Tag::new(0, 1), 1), rfc(1));
        assert_eq!(s2.coeff(Tag::new(0, 1), 0), &rfc(1) + &alpha_rf());
    }

    #[test]
    fn seed_derivative_identities() {
        for n in 1..=6u32 {
            // (L_n^α)′ = −L_{n−1}^{α+1}
            let lhs = seed(&SeedSpec::new(1, n, 0), &unit()).differentiate();
            let rhs = seed(&SeedSpec::new(1, n - 1, 1), &unit()).neg();
            assert!(lhs.sub(&rhs).is_known_zero(), "kind 1, n = {}", n);
        }
        for n in 0..=6u32 {
            // (e^x L_n^α(−x))′ = e^x L_n^{α+1}(−x)
            let lhs = seed(&SeedSpec::new(2, n, 0), &unit()).differentiate();
            let rhs = seed(&SeedSpec::new(2, n, 1), &unit());
            assert!(lhs.sub(&rhs).is_known_zero(), "kind 2, n = {}", n);
            // (x^{−α} L_n^{−α}(x))′ = (n−α) x^{−α−1} L_n^{−α−1}(x)
            let lhs = seed(&SeedSpec::new(3, n, 0), &unit()).differentiate();
            let factor = &rfc(n as i64) - &alpha_rf();
            let rhs = seed(&SeedSpec::new(3, n, 1), &unit()).scale(&factor);
            assert!(lhs.sub(&rhs).is_known_zero(), "kind 3, n = {}", n);
            // (x^{−α} e^x L_n^{−α}(−x))′ = (n+1) x^{−α−1} e^x L_{n+1}^{−α−1}(−x)
            let lhs = seed(&SeedSpec::new(4, n, 0), &unit()).differentiate();
            let rhs = seed(&SeedSpec::new(4, n + 1, 1), &unit()).scale(&rfc(n as i64 + 1));
            assert!(lhs.sub(&rhs).is_known_zero(), "kind 4, n = {}", n);
        }
    }

    #[test]
    fn solution_h_leading_coefficients() {
        let h = solution_h(&unit(), 0, &Poly::lambda(), 4).unwrap();
        let t = Tag::new(0, 0);
        assert_eq!(h.coeff(t, 0), rfc(1));
        // coefficient of x: −λ/(α+1)
        let expect = RationalFunction::new(-&Poly::lambda(), Poly::alpha_plus(1));
        assert_eq!(h.coeff(t, 1), expect);
    }

    #[test]
    fn solution_h_terminates_at_integer_lambda() {
        let h = solution_h(&unit(), 0, &Poly::from_int(2), 8).unwrap();
        let t = Tag::new(0, 0);
        assert!(!h.coeff(t, 2).is_zero());
        for d in 3..=8 {
            assert!(h.coeff(t, d).is_zero(), "degree {}", d);
        }
    }

    #[test]
    fn scaled_solution_matches_plain() {
        let trunc = 5;
        let (hs, k) = solution_h_scaled(&unit(), -2, &Poly::lambda(), trunc).unwrap();
        let h = solution_h(&unit(), -2, &Poly::lambda(), trunc).unwrap();
        let kf = RationalFunction::from_poly(k);
        let t = Tag::new(0, 0);
        for d in 0..=trunc {
            assert_eq!(hs.coeff(t, d), &h.coeff(t, d) * &kf, "degree {}", d);
        }
        let (ts, k2) = solution_htilde_scaled(&unit(), 2, &Poly::lambda(), trunc).unwrap();
        let tt = solution_htilde(&unit(), 2, &Poly::lambda(), trunc).unwrap();
        let kf2 = RationalFunction::from_poly(k2);
        let tg = Tag::new(-1, 0);
        for d in -2..=trunc - 2 {
            assert_eq!(ts.coeff(tg, d), &tt.coeff(tg, d) * &kf2, "degree {}", d);
        }
    }

    #[test]
    fn solution_htilde_prefactor_and_numeric() {
        // α = 1/2, λ = 0: x^{−1/2}(1 − x + …)
        let half = Poly::constant(crate::exact::ratq(1, 2));
        let ht = solution_htilde(&half, 0, &Poly::from_int(0), 3).unwrap();
        let t = Tag::new(-1, 0);
        assert_eq!(ht.coeff(t, 0), rfc(1));
        assert_eq!(ht.coeff(t, 1), rfc(-1));
    }

    #[test]
    fn solution_h_derivative_identity() {
        // (e^{−x} x^{α} M(−λ, α+1, x))′ = α e^{−x} x^{α−1} M(−λ−1, α, x)
        let trunc = 8;
        let h = solution_h(&unit(), 0, &Poly::lambda(), trunc).unwrap();
        let lhs = h.mul_exp(-1).mul_power(1, 0).differentiate();
        let hr = solution_h(&unit(), -1, &(&Poly::lambda() + &Poly::from_int(1)), trunc).unwrap();
        let rhs = hr
            .mul_exp(-1)
            .mul_power(1, -1)
            .scale(&alpha_rf());
        assert!(lhs.sub(&rhs).is_known_zero());
    }

    #[test]
    fn parameter_pole_detection() {
        // α forced to −1 makes (α+1)^{(n)} vanish identically.
        let bad = Poly::constant(rat(-1));
        assert!(solution_h(&bad, 0, &Poly::lambda(), 3).is_err());
        let bad2 = Poly::constant(rat(1));
        assert!(solution_htilde(&bad2, 0, &Poly::lambda(), 3).is_err());
    }

    fn laguerre_ell() -> (RatX, RatX, RatX) {
        // −ℓ^α: p = x, q = α + 1 − x, r = 0 (eigenvalue n on L_n^α).
        let p = RatX::from_xpoly(XPoly::x());
        let q = RatX::from_xpoly(XPoly::new(vec![
            &alpha_rf() + &rfc(1),
            rfc(-1),
        ]));
        (p, q, RatX::zero())
    }

    #[test]
    fn trivial_partner_is_shifted_expression() {
        // ℓ = Laguerre α in the (−x) convention: p=−x, q=x−α−1, φ=1, b=1.
        let p = RatX::from_xpoly(&XPoly::zero() - &XPoly::x());
        let q = RatX::from_xpoly(XPoly::new(vec![
            &(-&alpha_rf()) - &rfc(1),
            rfc(1),
        ]));
        let f = OneStepFactorization::new(p, q, RatX::zero(), RatX::one(), RatX::zero());
        assert_eq!(f.lambda0, RatX::zero());
        let pc = partner_operator(&f).unwrap();
        // 𝒬 = x − α − 2, ℛ = 1.
        let expect_q = RatX::from_xpoly(XPoly::new(vec![
            &(-&alpha_rf()) - &rfc(2),
            rfc(1),
        ]));
        assert_eq!(pc.q_partner, expect_q);
        assert_eq!(pc.r_partner, RatX::one());
        assert_eq!(pc.weight_factor, RatX::one());
    }

    fn type_one_factorization(m: u32) -> OneStepFactorization {
        // −ℓ^α = B∘A + α + m + 1 with A[f] = L_m^α(−x)f′ − L_m^{α+1}(−x)f.
        let (p, q, r) = laguerre_ell();
        let b = RatX::from_xpoly(laguerre(m, &alpha_rf()).negate_argument());
        let w = RatX::new(
            laguerre(m, &(&alpha_rf() + &rfc(1))).negate_argument(),
            laguerre(m, &alpha_rf()).negate_argument(),
        );
        OneStepFactorization::new(p, q, r, b, w)
    }

    #[test]
    fn type_one_factorization_constants() {
        for m in 1..=2u32 {
            let f = type_one_factorization(m);
            let expect = RatX::from_xpoly(XPoly::constant(
                &alpha_rf() + &rfc(m as i64 + 1),
            ));
            assert_eq!(f.lambda0, expect, "m = {}", m);
            // ŵ = −(α+1)/x
            let expect_what = RatX::new(
                XPoly::constant(&(-&alpha_rf()) - &rfc(1)),
                XPoly::x(),
            );
            assert_eq!(f.what, expect_what, "m = {}", m);
            for y in [
                RatX::one(),
                RatX::from_xpoly(XPoly::x()),
                RatX::from_xpoly(&XPoly::x() * &XPoly::x()),
                RatX::from_xpoly(&XPoly::x() * &(&XPoly::x() * &XPoly::x())),
            ] {
                assert!(f.factorization_defect(&y).is_zero(), "m = {}", m);
            }
        }
    }

    #[test]
    fn type_one_intertwining() {
        // A∘ℓ = 𝓛∘A on classical eigenpolynomials, with 𝓛 the partner of
        // the factorization at parameter α−1.
        let am1 = &alpha_rf() - &rfc(1);
        let p = RatX::from_xpoly(XPoly::x());
        let q = RatX::from_xpoly(XPoly::new(vec![&am1 + &rfc(1), rfc(-1)]));
        let m = 1;
        let b = RatX::from_xpoly(laguerre(m, &am1).negate_argument());
        let w = RatX::new(
            laguerre(m, &alpha_rf()).negate_argument(),
            laguerre(m, &am1).negate_argument(),
        );
        let f = OneStepFactorization::new(p.clone(), q, RatX::zero(), b, w);
        let pc = partner_operator(&f).unwrap();
        let apply_partner = |z: &RatX| -> RatX {
            let dz = z.derivative();
            &(&(&p * &dz.derivative()) + &(&pc.q_partner * &dz)) + &(&pc.r_partner * z)
        };
        for n in 0..=5u32 {
            let y = RatX::from_xpoly(laguerre(n, &am1));
            let lhs = f.apply_a(&f.apply_ell(&y));
            let rhs = apply_partner(&f.apply_a(&y));
            assert!((&lhs - &rhs).is_zero(), "n = {}", n);
        }
    }

    #[test]
    fn partner_weight_factor() {
        let f = type_one_factorization(1);
        let pc = partner_operator(&f).unwrap();
        let b2 = &f.b * &f.b;
        assert_eq!(&pc.weight_factor * &b2, RatX::one());
    }
}
