//! Brute-force ground truth: assemble the Wronskians of seed functions
//! directly as quasi-rational series, with or without an extra column for a
//! solution of the first or second kind, and read off evaluations at the
//! origin, exceptional polynomials, and zero-freeness on the half line.

use crate::exact::{
    determinant, factorial, rising_factorial, sturm_roots_halfline, Poly,
    QuasiRationalSeries, Rat, RationalFunction, Tag, XPoly,
};
use crate::maya::DiagramPair;
use crate::seeds::{seed, solution_h_scaled, solution_htilde_scaled, SeedSpec};

/// Extra series coefficients kept beyond the seed count by default, so that
/// cancellation bugs surface as wrong guard terms instead of silent zeros.
const GUARD: i64 = 8;

/// An x-power exponent of the form j·(unit + offset-corrected α) recorded as
/// j·u + b with u the symbolic exponent unit and b an integer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PowerExponent {
    pub j: i64,
    pub b: i64,
}

/// Builder for the Wronskians attached to a diagram pair.
///
/// The seed parameter is u + alpha_offset, where the exponent unit u is the
/// symbol α for symbolic computations or a rational constant for numeric
/// ones. Column order is: first-family seeds from the included entries of
/// the first diagram, second-family seeds from the included entries of the
/// second, third-family seeds from the excluded entries of the second, and
/// fourth-family seeds from the excluded entries of the first; a solution
/// column, when present, comes last.
#[derive(Clone)]
pub struct WronskianBuild {
    pair: DiagramPair,
    unit: Poly,
    alpha_offset: i64,
    lambda_expr: Poly,
    trunc: i64,
    exp_coeff: i64,
    power_plain: PowerExponent,
    power_first: PowerExponent,
    power_second: PowerExponent,
}

impl WronskianBuild {
    pub fn new(pair: DiagramPair, unit: Poly, alpha_offset: i64) -> Self {
        let r = pair.r() as i64;
        let b = WronskianBuild {
            pair,
            unit,
            alpha_offset,
            lambda_expr: Poly::lambda(),
            trunc: r + GUARD,
            exp_coeff: 0,
            power_plain: PowerExponent { j: 0, b: 0 },
            power_first: PowerExponent { j: 0, b: 0 },
            power_second: PowerExponent { j: 0, b: 0 },
        };
        b.with_recomputed_prefactors()
    }

    pub fn with_trunc(mut self, trunc: i64) -> Self {
        self.trunc = trunc;
        self
    }

    /// Replaces the spectral-parameter expression used in the solution
    /// column (for instance λ + t when comparing against a shifted build).
    pub fn with_lambda_expr(mut self, lambda_expr: Poly) -> Self {
        self.lambda_expr = lambda_expr;
        self
    }

    fn with_recomputed_prefactors(mut self) -> Self {
        let (e, p, f, s) = self.recompute_prefactors();
        self.exp_coeff = e;
        self.power_plain = p;
        self.power_first = f;
        self.power_second = s;
        self
    }

    /// Prefactor exponents from the seed counts: e^{exp_coeff·x} and the
    /// three x-power variants.
    pub fn recompute_prefactors(&self) -> (i64, PowerExponent, PowerExponent, PowerExponent) {
        let (r1, r2, r3, r4) = (
            self.pair.r1() as i64,
            self.pair.r2() as i64,
            self.pair.r3() as i64,
            self.pair.r4() as i64,
        );
        let a = self.alpha_offset + r1 + r2;
        (
            -(r2 + r4),
            PowerExponent {
                j: r3 + r4,
                b: a * (r3 + r4),
            },
            PowerExponent {
                j: r3 + r4,
                b: (a + 1) * (r3 + r4),
            },
            PowerExponent {
                j: r3 + r4 + 1,
                b: a * (r3 + r4 + 1),
            },
        )
    }

    pub fn pair(&self) -> &DiagramPair {
        &self.pair
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// The seed series in Wronskian column order.
    pub fn seed_columns(&self) -> Vec<QuasiRationalSeries> {
        let mut specs = Vec::new();
        for &n in self.pair.m1.included_nonnegative() {
            specs.push(SeedSpec::new(1, n, self.alpha_offset));
        }
        for &m in self.pair.m2.included_nonnegative() {
            specs.push(SeedSpec::new(2, m, self.alpha_offset));
        }
        for &mp in self.pair.m2.excluded_negative() {
            specs.push(SeedSpec::new(3, mp, self.alpha_offset));
        }
        for &np in self.pair.m1.excluded_negative() {
            specs.push(SeedSpec::new(4, np, self.alpha_offset));
        }
        specs.iter().map(|s| seed(s, &self.unit)).collect()
    }

    fn prefactored(
        &self,
        det: QuasiRationalSeries,
        power: PowerExponent,
    ) -> QuasiRationalSeries {
        det.mul_exp(self.exp_coeff).mul_power(power.j, power.b)
    }

    /// The plain Wronskian polynomial as a series; exact, single tag.
    pub fn omega_plain(&self) -> Result<QuasiRationalSeries, String> {
        let cols = self.seed_columns();
        if cols.is_empty() {
            return Ok(QuasiRationalSeries::one(self.unit.clone()));
        }
        let det = determinant(&wronskian_matrix(&cols), None);
        let out = self.prefactored(det, self.power_plain);
        match out.as_xpoly() {
            Some((tag, _)) if tag == Tag::new(0, 0) => Ok(out),
            _ => Err(format!(
                "Wronskian of pair {} did not reduce to a polynomial",
                self.pair
            )),
        }
    }

    /// The plain Wronskian as an exact polynomial in x.
    pub fn omega_plain_poly(&self) -> Result<XPoly, String> {
        Ok(self.omega_plain()?.as_xpoly().unwrap().1)
    }

    /// Wronskian with a first-kind solution column, divided by its series
    /// scale; coefficients kept up to integer degree `cap` when given.
    pub fn omega_h(&self, cap: Option<i64>) -> Result<QuasiRationalSeries, String> {
        let mut cols = self.seed_columns();
        let (h, k) =
            solution_h_scaled(&self.unit, self.alpha_offset, &self.lambda_expr, self.trunc)?;
        cols.push(h);
        let det_cap = cap.map(|c| c - self.power_first.b);
        let det = determinant(&wronskian_matrix(&cols), det_cap);
        let out = self.prefactored(det, self.power_first);
        Ok(out.scale(&RationalFunction::new(Poly::one(), k)))
    }

    /// Wronskian with a second-kind solution column, divided by its scale.
    pub fn omega_htilde(&self, cap: Option<i64>) -> Result<QuasiRationalSeries, String> {
        let mut cols = self.seed_columns();
        let (ht, k) =
            solution_htilde_scaled(&self.unit, self.alpha_offset, &self.lambda_expr, self.trunc)?;
        cols.push(ht);
        let det_cap = cap.map(|c| c - self.power_second.b);
        let det = determinant(&wronskian_matrix(&cols), det_cap);
        let out = self.prefactored(det, self.power_second);
        Ok(out.scale(&RationalFunction::new(Poly::one(), k)))
    }

    /// First-kind Wronskian with λ = n substituted, as an exact polynomial
    /// in x. `Ok(None)` signals an identically-zero result: the state n is
    /// deleted from the family.
    pub fn exceptional_polynomial(&self, n: u32) -> Result<Option<XPoly>, String> {
        let b = &self.unit + &Poly::from_int(self.alpha_offset + 1);
        let scale = rising_factorial(&b, n);
        if scale.is_zero() {
            return Err("solution parameter hits a pole".to_string());
        }
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let minus_n = Poly::from_int(-(n as i64));
        for kk in 0..=n {
            let head = rising_factorial(&minus_n, kk)
                .scale(&(Rat::from_integer(1.into()) / factorial(kk)));
            let tail = rising_factorial(&(&b + &Poly::from_int(kk as i64)), n - kk);
            coeffs.push(RationalFunction::from_poly(&head * &tail));
        }
        let h = QuasiRationalSeries::from_xpoly(
            self.unit.clone(),
            Tag::new(0, 0),
            &XPoly::new(coeffs),
        );
        let mut cols = self.seed_columns();
        cols.push(h);
        let det = determinant(&wronskian_matrix(&cols), None);
        let out = self.prefactored(det, self.power_first);
        match out.as_xpoly() {
            Some((_, p)) if p.is_zero() => Ok(None),
            Some((tag, p)) if tag == Tag::new(0, 0) => {
                Ok(Some(p.scale(&RationalFunction::new(Poly::one(), scale))))
            }
            _ => Err(format!(
                "terminated Wronskian of pair {} at index {} is not a polynomial",
                self.pair, n
            )),
        }
    }
}

/// Square Wronskian matrix: row i holds the i-th derivatives of the columns.
pub fn wronskian_matrix(cols: &[QuasiRationalSeries]) -> Vec<Vec<QuasiRationalSeries>> {
    let mut rows = vec![cols.to_vec()];
    for _ in 1..cols.len() {
        let prev = rows.last().unwrap();
        rows.push(prev.iter().map(|c| c.differentiate()).collect());
    }
    rows
}

/// Constant coefficient of a series that has collapsed to the trivial
/// exponent tag with no negative powers.
pub fn eval_zero(series: &QuasiRationalSeries) -> Result<RationalFunction, String> {
    if series.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let tag = series
        .single_tag()
        .ok_or_else(|| "series carries more than one exponent tag".to_string())?;
    if tag != Tag::new(0, 0) {
        return Err(format!(
            "series carries a residual exponent tag ({}, {})",
            tag.j, tag.k
        ));
    }
    if series.min_degree().is_some_and(|d| d < 0) {
        return Err("series has a pole at the origin".to_string());
    }
    series.coeff_checked(tag, 0)
}

/// Exact statement that the Wronskian polynomial of the pair, brought to
/// canonical position, has no roots in [0,∞) at the given numeric
/// parameter, by Sturm-sequence counting. The canonical position matters:
/// the un-shifted Wronskian is the same polynomial up to a constant but at
/// parameter α−t₁−t₂, which can leave the range where the evenness
/// criterion applies.
pub fn zero_free_on_halfline(pair: &DiagramPair, alpha_value: &Rat) -> Result<bool, String> {
    let canonical = DiagramPair::new(
        pair.m1.shift(pair.m1.canonical_shift()),
        pair.m2.shift(pair.m2.canonical_shift()),
    );
    let build = WronskianBuild::new(canonical, Poly::constant(alpha_value.clone()), 0);
    let poly = build.omega_plain_poly()?;
    let (mu, nu) = pair.partitions();
    let expected: u32 = mu.parts().iter().sum::<u32>() + nu.parts().iter().sum::<u32>();
    let coeffs = poly
        .subst_numeric(alpha_value, &Rat::from_integer(0.into()))
        .ok_or_else(|| "coefficient denominator vanishes at this parameter".to_string())?;
    if coeffs.len() as i64 - 1 != expected as i64 {
        return Err(format!(
            "degree dropped from {} to {} at this parameter",
            expected,
            coeffs.len() as i64 - 1
        ));
    }
    Ok(sturm_roots_halfline(&coeffs) == 0)
}
