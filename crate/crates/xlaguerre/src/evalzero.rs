//! Closed-form evaluation at x = 0 of the Wronskians attached to a pair of
//! partitions in canonical (or conjugate canonical) position: the plain
//! polynomial case and the cases with a first- or second-kind solution
//! column, whose values carry a single run of λ-linear factors from a
//! Vandermonde determinant.

use num_traits::ToPrimitive;

use crate::exact::{factorial, rising_factorial, AffinePoint, Poly, Rat, RationalFunction};
use crate::maya::Partition;

/// The index sequence n_i = μ_i + r(μ) − i recovered from a partition
/// (1-based i), strictly decreasing.
pub fn recovered_indices(p: &Partition) -> Vec<i64> {
    let r = p.len() as i64;
    p.parts()
        .iter()
        .enumerate()
        .map(|(i, &part)| part as i64 + r - (i as i64 + 1))
        .collect()
}

/// The smallest 1-based s with n_i < bound for all i ≥ s; equals
/// (number of entries ≥ bound) + 1, which is len + 1 when every entry
/// clears the bound.
pub fn threshold(indices: &[i64], bound: i64) -> usize {
    indices.iter().filter(|&&n| n >= bound).count() + 1
}

/// Δ(a₁,…,a_r) = ∏_{i<j}(a_j − a_i); empty and singleton lists give 1.
pub fn vandermonde(nodes: &[Poly]) -> Poly {
    let mut out = Poly::one();
    for j in 1..nodes.len() {
        for i in 0..j {
            out = &out * &(&nodes[j] - &nodes[i]);
        }
    }
    out
}

fn affine_from_poly(p: &Poly) -> Result<AffinePoint, String> {
    if p.deg_lambda() != 0 || p.deg_alpha() > 1 {
        return Err(format!("{} is not affine in α alone", p));
    }
    let s = p.coeff((1, 0));
    if !s.is_integer() {
        return Err(format!("{} has a non-integer α slope", p));
    }
    Ok(AffinePoint::new(
        p.coeff((0, 0)),
        s.to_integer().to_i64().ok_or("α slope overflow")?,
    ))
}

/// A Wronskian value at the origin split into a λ-free rational function
/// and the λ-roots of its Vandermonde factors, so that λ-root locations
/// are available without polynomial factorization.
#[derive(Clone, Debug)]
pub struct ZeroEvaluation {
    pub lambda_free: RationalFunction,
    pub lambda_roots: Vec<AffinePoint>,
}

impl ZeroEvaluation {
    /// The full value: lambda_free times ∏(λ − root), up to sign.
    pub fn value(&self) -> RationalFunction {
        let mut out = self.lambda_free.clone();
        for root in &self.lambda_roots {
            out = &out * &RationalFunction::from_poly(root.lambda_factor());
        }
        out
    }

    /// The value with λ replaced by λ + t.
    pub fn value_shifted(&self, t: i64) -> RationalFunction {
        self.value().shift_vars(0, t)
    }

    /// The λ-roots after the substitution λ → λ + t.
    pub fn roots_shifted(&self, t: i64) -> Vec<AffinePoint> {
        let offset = Rat::from_integer((-t).into());
        self.lambda_roots.iter().map(|r| r.offset(&offset)).collect()
    }
}

/// Shared core of the evaluations: the value of a Wronskian of plain
/// Laguerre seeds (degrees `n`, parameter `alpha_expr`) and mirrored seeds
/// (degrees `m`), differentiated `derivs` times, with an optional final
/// solution column represented by its Vandermonde node `z`.
fn eval_core(
    n: &[i64],
    m: &[i64],
    alpha_expr: &Poly,
    derivs: i64,
    solution_node: Option<&Poly>,
) -> Result<ZeroEvaluation, String> {
    let a = alpha_expr;
    let rise = |base: &Poly, len: i64, what: &str| -> Result<Poly, String> {
        u32::try_from(len)
            .map(|l| rising_factorial(base, l))
            .map_err(|_| format!("negative rising-factorial length {} at {}", len, what))
    };
    let s = threshold(n, derivs);
    let sp = threshold(m, derivs);

    let mut num = Poly::one();
    for k in 1..=derivs + 1 {
        num = &num * &rise(&(a + &Poly::from_int(k)), derivs + 1 - k, "leading product")?;
    }
    for &ni in &n[..s - 1] {
        num = &num * &rise(&(a + &Poly::from_int(derivs + 1)), ni - derivs, "first-list head")?;
    }
    for &mj in &m[..sp - 1] {
        num = &num * &rise(&(a + &Poly::from_int(derivs + 1)), mj - derivs, "second-list head")?;
    }

    let mut nodes: Vec<Poly> = n.iter().rev().map(|&ni| Poly::from_int(-ni)).collect();
    nodes.extend(
        m.iter()
            .map(|&mj| a + &Poly::from_int(1 + mj)),
    );
    num = &num * &vandermonde(&nodes);

    let mut den = Poly::one();
    let mut roots = Vec::new();
    if let Some(z) = solution_node {
        den = rise(&(a + &Poly::from_int(1)), derivs, "solution column")?;
        for node in &nodes {
            // Factor z − node of the Vandermonde, recorded by its λ-root.
            let f = z - node;
            if f.coeff((0, 1)) != -Rat::from_integer(1.into()) {
                return Err(format!("solution-node factor {} is not linear in λ", f));
            }
            roots.push(affine_from_poly(&f.subst_lambda(&Rat::from_integer(0.into())))?);
        }
    }
    for &ni in &n[s - 1..] {
        den = &den * &rise(&(a + &Poly::from_int(1 + ni)), derivs - ni, "first-list tail")?;
    }
    for &mj in &m[sp - 1..] {
        den = &den * &rise(&(a + &Poly::from_int(1 + mj)), derivs - mj, "second-list tail")?;
    }
    for &ni in n {
        den = &den * &Poly::constant(factorial(ni as u32));
    }
    for &mj in m {
        den = &den * &Poly::constant(factorial(mj as u32));
    }

    Ok(ZeroEvaluation {
        lambda_free: RationalFunction::new(num, den),
        lambda_roots: roots,
    })
}

/// Value at the origin of the Wronskian with a first-kind solution column,
/// for canonical-position partitions (μ, ν) at the given parameter; up to
/// sign.
pub fn eval_first_kind(
    mu: &Partition,
    nu: &Partition,
    alpha_expr: &Poly,
) -> Result<ZeroEvaluation, String> {
    let n = recovered_indices(mu);
    let m = recovered_indices(nu);
    let r = (n.len() + m.len()) as i64;
    let z = Poly::lambda().scale(&-Rat::from_integer(1.into()));
    eval_core(&n, &m, alpha_expr, r, Some(&z))
}

/// Value at the origin of the Wronskian with a second-kind solution
/// column, for conjugate-canonical partitions (μ′, ν′); up to sign. The
/// list roles swap and the parameter flips sign relative to the first
/// kind, and the solution node becomes −λ − α.
pub fn eval_second_kind(
    mup: &Partition,
    nup: &Partition,
    alpha_expr: &Poly,
) -> Result<ZeroEvaluation, String> {
    let np = recovered_indices(mup);
    let mp = recovered_indices(nup);
    let r = (np.len() + mp.len()) as i64;
    let minus_a = alpha_expr.scale(&-Rat::from_integer(1.into()));
    let z = &Poly::lambda().scale(&-Rat::from_integer(1.into())) - alpha_expr;
    eval_core(&mp, &np, &minus_a, r, Some(&z))
}

/// Value at the origin of the plain Wronskian polynomial for canonical
/// partitions (μ, ν); λ-free, up to sign.
pub fn eval_plain_canonical(
    mu: &Partition,
    nu: &Partition,
    alpha_expr: &Poly,
) -> Result<RationalFunction, String> {
    let n = recovered_indices(mu);
    let m = recovered_indices(nu);
    let r = (n.len() + m.len()) as i64;
    Ok(eval_core(&n, &m, alpha_expr, r - 1, None)?.lambda_free)
}

/// Value at the origin of the plain Wronskian polynomial for conjugate
/// canonical partitions (μ′, ν′); λ-free, up to sign.
pub fn eval_plain_conjugate(
    mup: &Partition,
    nup: &Partition,
    alpha_expr: &Poly,
) -> Result<RationalFunction, String> {
    let np = recovered_indices(mup);
    let mp = recovered_indices(nup);
    let r = (np.len() + mp.len()) as i64;
    let minus_a = alpha_expr.scale(&-Rat::from_integer(1.into()));
    Ok(eval_core(&mp, &np, &minus_a, r - 1, None)?.lambda_free)
}
