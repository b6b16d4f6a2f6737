//! Closed-form constants relating the Wronskian of a general diagram pair
//! to the Wronskian of its canonical (or conjugate canonical) position, and
//! a step-by-step reduction driver that derives the same constants by
//! composing single-box shifts.

use crate::exact::{falling_factorial, rat, rising_factorial, Poly, RationalFunction};
use crate::maya::{DiagramPair, Partition};

/// a·α + l·λ + c as a polynomial.
fn lc(a: i64, l: i64, c: i64) -> Poly {
    &(&Poly::alpha().scale(&rat(a)) + &Poly::lambda().scale(&rat(l))) + &Poly::from_int(c)
}

fn poly_prod(factors: impl IntoIterator<Item = Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(), |acc, f| &acc * &f)
}

/// Constants and bookkeeping for moving both diagrams of a pair into
/// canonical and conjugate canonical position.
#[derive(Clone, Debug)]
pub struct ShiftReport {
    pub t1: i64,
    pub t2: i64,
    pub t1p: i64,
    pub t2p: i64,
    pub mu: Partition,
    pub nu: Partition,
    pub mup: Partition,
    pub nup: Partition,
    pub c1: RationalFunction,
    pub c2: RationalFunction,
    pub c3: RationalFunction,
    pub d1: RationalFunction,
    pub d2: RationalFunction,
    pub d3: RationalFunction,
    pub canonical: DiagramPair,
    pub conjugate: DiagramPair,
}

impl ShiftReport {
    /// Offset of the first-kind reduced parameter: α′ = α − t₁ − t₂.
    pub fn alpha_prime_offset(&self) -> i64 {
        -(self.t1 + self.t2)
    }

    /// Offset of the second-kind reduced parameter: α″ = α − t₁′ − t₂′.
    pub fn alpha_second_offset(&self) -> i64 {
        -(self.t1p + self.t2p)
    }

    /// Product of the first-kind constants.
    pub fn c_total(&self) -> RationalFunction {
        &(&self.c1 * &self.c2) * &self.c3
    }

    /// Product of the second-kind constants.
    pub fn d_total(&self) -> RationalFunction {
        &(&self.d1 * &self.d2) * &self.d3
    }
}

/// The first constant of the first-kind reduction, from the shift t₁ of the
/// first diagram; valid up to sign.
pub fn first_kind_c1(pair: &DiagramPair) -> RationalFunction {
    let t1 = pair.m1.canonical_shift();
    if t1 == 0 {
        return RationalFunction::one();
    }
    if t1 < 0 {
        let k = (-t1) as u32;
        return RationalFunction::new(
            rising_factorial(&lc(0, -1, 0), k),
            rising_factorial(&lc(1, 0, 1), k),
        );
    }
    let num = falling_factorial(&Poly::alpha(), t1 as u32);
    let den = poly_prod(
        (0..t1)
            .filter(|k| !pair.m1.excluded_negative().contains(&(*k as u32)))
            .map(|k| lc(0, -1, -k - 1)),
    );
    RationalFunction::new(num, den)
}

/// The second constant of the first-kind reduction, from the shift t₂ of
/// the second diagram; valid up to sign.
pub fn first_kind_c2(pair: &DiagramPair) -> RationalFunction {
    let t1 = pair.m1.canonical_shift();
    let t2 = pair.m2.canonical_shift();
    if t2 == 0 {
        return RationalFunction::one();
    }
    if t2 < 0 {
        let k = (-t2) as u32;
        return RationalFunction::new(
            rising_factorial(&lc(1, 1, 1), k),
            rising_factorial(&lc(1, 0, 1 - t1), k),
        );
    }
    let num = falling_factorial(&lc(1, 0, -t1), t2 as u32);
    let den = poly_prod(
        (0..t2)
            .filter(|k| !pair.m2.excluded_negative().contains(&(*k as u32)))
            .map(|k| lc(1, 1, -k)),
    );
    RationalFunction::new(num, den)
}

/// The parameter-only constant of the first-kind reduction; valid up to
/// sign.
pub fn first_kind_c3(pair: &DiagramPair) -> RationalFunction {
    let mut p = Poly::one();
    for &n in pair.m1.included_nonnegative() {
        for &mp in pair.m2.excluded_negative() {
            p = &p * &lc(-1, 0, mp as i64 - n as i64);
        }
        for &np in pair.m1.excluded_negative() {
            p = &p * &Poly::from_int(n as i64 + np as i64 + 1);
        }
    }
    for &m in pair.m2.included_nonnegative() {
        for &np in pair.m1.excluded_negative() {
            p = &p * &lc(-1, 0, np as i64 - m as i64);
        }
        for &mp in pair.m2.excluded_negative() {
            p = &p * &Poly::from_int(m as i64 + mp as i64 + 1);
        }
    }
    RationalFunction::from_poly(p)
}

/// The first constant of the second-kind reduction, from the shift t₁′ of
/// the first diagram; valid up to sign.
pub fn second_kind_d1(pair: &DiagramPair) -> RationalFunction {
    let t1p = pair.m1.conjugate_canonical_shift();
    if t1p == 0 {
        return RationalFunction::one();
    }
    if t1p > 0 {
        let k = t1p as u32;
        return RationalFunction::new(
            rising_factorial(&lc(0, 1, 1), k),
            rising_factorial(&lc(-1, 0, 1), k),
        );
    }
    let num = falling_factorial(&lc(-1, 0, 0), (-t1p) as u32);
    let den = poly_prod(
        (0..-t1p)
            .filter(|k| !pair.m1.included_nonnegative().contains(&(*k as u32)))
            .map(|k| lc(0, 1, -k)),
    );
    RationalFunction::new(num, den)
}

/// The second constant of the second-kind reduction, from the shift t₂′ of
/// the second diagram; valid up to sign.
pub fn second_kind_d2(pair: &DiagramPair) -> RationalFunction {
    let t1p = pair.m1.conjugate_canonical_shift();
    let t2p = pair.m2.conjugate_canonical_shift();
    if t2p == 0 {
        return RationalFunction::one();
    }
    if t2p > 0 {
        let k = t2p as u32;
        return RationalFunction::new(
            rising_factorial(&lc(-1, -1, 0), k),
            rising_factorial(&lc(-1, 0, 1 + t1p), k),
        );
    }
    let num = falling_factorial(&lc(-1, 0, t1p), (-t2p) as u32);
    let den = poly_prod(
        (0..-t2p)
            .filter(|k| !pair.m2.included_nonnegative().contains(&(*k as u32)))
            .map(|k| lc(-1, -1, -1 - k)),
    );
    RationalFunction::new(num, den)
}

/// The parameter-only constant of the second-kind reduction; valid up to
/// sign.
pub fn second_kind_d3(pair: &DiagramPair) -> RationalFunction {
    let mut p = Poly::one();
    for &n in pair.m1.included_nonnegative() {
        for &mp in pair.m2.excluded_negative() {
            p = &p * &lc(1, 0, n as i64 - mp as i64);
        }
        for &np in pair.m1.excluded_negative() {
            p = &p * &Poly::from_int(n as i64 + np as i64 + 1);
        }
    }
    for &m in pair.m2.included_nonnegative() {
        for &np in pair.m1.excluded_negative() {
            p = &p * &lc(1, 0, m as i64 - np as i64);
        }
        for &mp in pair.m2.excluded_negative() {
            p = &p * &Poly::from_int(m as i64 + mp as i64 + 1);
        }
    }
    RationalFunction::from_poly(p)
}

/// The full set of shift constants and reduced diagrams for a pair.
pub fn shift_report(pair: &DiagramPair) -> ShiftReport {
    let (t1, t2, t1p, t2p) = pair.shifts();
    let (mu, nu) = pair.partitions();
    let (mup, nup) = pair.conjugate_partitions();
    ShiftReport {
        t1,
        t2,
        t1p,
        t2p,
        mu,
        nu,
        mup,
        nup,
        c1: first_kind_c1(pair),
        c2: first_kind_c2(pair),
        c3: first_kind_c3(pair),
        d1: second_kind_d1(pair),
        d2: second_kind_d2(pair),
        d3: second_kind_d3(pair),
        canonical: DiagramPair::new(pair.m1.shift(t1), pair.m2.shift(t2)),
        conjugate: DiagramPair::new(pair.m1.shift(t1p), pair.m2.shift(t2p)),
    }
}

/// One of the four single-box reductions: A removes a filled box at the
/// origin of the first diagram, B an empty box just below it, C and D do
/// the same for the second diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepCase {
    A,
    B,
    C,
    D,
}

/// Result of one single-box reduction; the constant is expressed in the
/// parameters before the step, and valid up to sign.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub pair: DiagramPair,
    pub constant: RationalFunction,
    pub d_alpha: i64,
    pub d_lambda: i64,
}

fn require(cond: bool, msg: &str, pair: &DiagramPair) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(format!("{} for pair {}", msg, pair))
    }
}

fn shifted_pair(pair: &DiagramPair, first: bool, t: i64) -> DiagramPair {
    if first {
        DiagramPair::new(pair.m1.shift(t), pair.m2.clone())
    } else {
        DiagramPair::new(pair.m1.clone(), pair.m2.shift(t))
    }
}

/// One single-box reduction of a first-kind Wronskian.
pub fn step_reduce_first(pair: &DiagramPair, case: StepCase) -> Result<StepOutcome, String> {
    let n_list = pair.m1.included_nonnegative();
    let np_list = pair.m1.excluded_negative();
    let m_list = pair.m2.included_nonnegative();
    let mp_list = pair.m2.excluded_negative();
    match case {
        StepCase::A => {
            require(n_list.contains(&0), "no included 0 in the first diagram", pair)?;
            let mut c = RationalFunction::new(lc(0, -1, 0), lc(1, 0, 1));
            for &mp in mp_list {
                c = &c * &RationalFunction::from_poly(lc(-1, 0, mp as i64));
            }
            for &np in np_list {
                c = &c * &RationalFunction::from_rat(rat(np as i64 + 1));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, true, -1),
                constant: c,
                d_alpha: 1,
                d_lambda: -1,
            })
        }
        StepCase::B => {
            require(np_list.contains(&0), "no excluded 0 in the first diagram", pair)?;
            let mut c = RationalFunction::from_poly(Poly::alpha());
            for &n in n_list {
                c = &c * &RationalFunction::from_rat(rat(n as i64 + 1));
            }
            for &m in m_list {
                c = &c * &RationalFunction::from_poly(lc(1, 0, m as i64));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, true, 1),
                constant: c,
                d_alpha: -1,
                d_lambda: 1,
            })
        }
        StepCase::C => {
            require(m_list.contains(&0), "no included 0 in the second diagram", pair)?;
            let mut c = RationalFunction::new(lc(1, 1, 1), lc(-1, 0, -1));
            for &mp in mp_list {
                c = &c * &RationalFunction::from_rat(rat(mp as i64 + 1));
            }
            for &np in np_list {
                c = &c * &RationalFunction::from_poly(lc(-1, 0, np as i64));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, false, -1),
                constant: c,
                d_alpha: 1,
                d_lambda: 0,
            })
        }
        StepCase::D => {
            require(mp_list.contains(&0), "no excluded 0 in the second diagram", pair)?;
            let mut c = RationalFunction::from_poly(Poly::alpha());
            for &n in n_list {
                c = &c * &RationalFunction::from_poly(lc(1, 0, n as i64));
            }
            for &m in m_list {
                c = &c * &RationalFunction::from_rat(rat(m as i64 + 1));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, false, 1),
                constant: c,
                d_alpha: -1,
                d_lambda: 0,
            })
        }
    }
}

/// One single-box reduction of a second-kind Wronskian.
pub fn step_reduce_second(pair: &DiagramPair, case: StepCase) -> Result<StepOutcome, String> {
    let n_list = pair.m1.included_nonnegative();
    let np_list = pair.m1.excluded_negative();
    let m_list = pair.m2.included_nonnegative();
    let mp_list = pair.m2.excluded_negative();
    match case {
        StepCase::A => {
            require(n_list.contains(&0), "no included 0 in the first diagram", pair)?;
            let mut c = RationalFunction::from_poly(lc(-1, 0, 0));
            for &mp in mp_list {
                c = &c * &RationalFunction::from_poly(lc(-1, 0, mp as i64));
            }
            for &np in np_list {
                c = &c * &RationalFunction::from_rat(rat(np as i64 + 1));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, true, -1),
                constant: c,
                d_alpha: 1,
                d_lambda: -1,
            })
        }
        StepCase::B => {
            require(np_list.contains(&0), "no excluded 0 in the first diagram", pair)?;
            let mut c = RationalFunction::new(lc(0, 1, 1), lc(-1, 0, 1));
            for &n in n_list {
                c = &c * &RationalFunction::from_rat(rat(n as i64 + 1));
            }
            for &m in m_list {
                c = &c * &RationalFunction::from_poly(lc(1, 0, m as i64));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, true, 1),
                constant: c,
                d_alpha: -1,
                d_lambda: 1,
            })
        }
        StepCase::C => {
            require(m_list.contains(&0), "no included 0 in the second diagram", pair)?;
            let mut c = RationalFunction::from_poly(lc(-1, 0, 0));
            for &mp in mp_list {
                c = &c * &RationalFunction::from_rat(rat(mp as i64 + 1));
            }
            for &np in np_list {
                c = &c * &RationalFunction::from_poly(lc(-1, 0, np as i64));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, false, -1),
                constant: c,
                d_alpha: 1,
                d_lambda: 0,
            })
        }
        StepCase::D => {
            require(mp_list.contains(&0), "no excluded 0 in the second diagram", pair)?;
            let mut c = RationalFunction::new(lc(-1, -1, 0), lc(-1, 0, 1));
            for &n in n_list {
                c = &c * &RationalFunction::from_poly(lc(1, 0, n as i64));
            }
            for &m in m_list {
                c = &c * &RationalFunction::from_rat(rat(m as i64 + 1));
            }
            Ok(StepOutcome {
                pair: shifted_pair(pair, false, 1),
                constant: c,
                d_alpha: -1,
                d_lambda: 0,
            })
        }
    }
}

/// A reduction step run in reverse: the pair moves opposite to `case`, and
/// the constant is the reciprocal of the forward constant re-expressed in
/// the parameters before this inverse step.
fn inverse_step(
    pair: &DiagramPair,
    case: StepCase,
    reduce: fn(&DiagramPair, StepCase) -> Result<StepOutcome, String>,
) -> Result<StepOutcome, String> {
    let (first, t) = match case {
        StepCase::A => (true, 1),
        StepCase::B => (true, -1),
        StepCase::C => (false, 1),
        StepCase::D => (false, -1),
    };
    let source = shifted_pair(pair, first, t);
    let fwd = reduce(&source, case)?;
    if fwd.pair != *pair {
        return Err(format!(
            "inverse step from {} does not return to {}",
            source, pair
        ));
    }
    Ok(StepOutcome {
        pair: source,
        constant: fwd
            .constant
            .shift_vars(-fwd.d_alpha, -fwd.d_lambda)
            .recip(),
        d_alpha: -fwd.d_alpha,
        d_lambda: -fwd.d_lambda,
    })
}

/// Accumulated outcome of a chain of single-box reductions; the constant
/// is expressed in the original parameters, and valid up to sign.
#[derive(Clone, Debug)]
pub struct Composition {
    pub pair: DiagramPair,
    pub constant: RationalFunction,
    pub d_alpha: i64,
    pub d_lambda: i64,
    pub steps: usize,
}

fn compose(
    pair: &DiagramPair,
    reduce: fn(&DiagramPair, StepCase) -> Result<StepOutcome, String>,
    next_step: fn(&DiagramPair) -> Option<(StepCase, bool)>,
) -> Result<Composition, String> {
    let mut out = Composition {
        pair: pair.clone(),
        constant: RationalFunction::one(),
        d_alpha: 0,
        d_lambda: 0,
        steps: 0,
    };
    while let Some((case, inverted)) = next_step(&out.pair) {
        let step = if inverted {
            inverse_step(&out.pair, case, reduce)?
        } else {
            reduce(&out.pair, case)?
        };
        out.constant = &out.constant * &step.constant.shift_vars(out.d_alpha, out.d_lambda);
        out.d_alpha += step.d_alpha;
        out.d_lambda += step.d_lambda;
        out.pair = step.pair;
        out.steps += 1;
    }
    Ok(out)
}

/// Reduces both diagrams to canonical position one box at a time; the
/// accumulated constant matches the product of the closed-form first-kind
/// constants up to sign.
pub fn compose_to_canonical_first(pair: &DiagramPair) -> Result<Composition, String> {
    compose(pair, step_reduce_first, |p| {
        if !p.m1.is_canonical() {
            if !p.m1.excluded_negative().is_empty() {
                if p.m1.excluded_negative().contains(&0) {
                    Some((StepCase::B, false))
                } else {
                    Some((StepCase::A, true))
                }
            } else {
                Some((StepCase::A, false))
            }
        } else if !p.m2.is_canonical() {
            if !p.m2.excluded_negative().is_empty() {
                if p.m2.excluded_negative().contains(&0) {
                    Some((StepCase::D, false))
                } else {
                    Some((StepCase::C, true))
                }
            } else {
                Some((StepCase::C, false))
            }
        } else {
            None
        }
    })
}

/// Reduces both diagrams to conjugate canonical position one box at a
/// time; the accumulated constant matches the product of the closed-form
/// second-kind constants up to sign.
pub fn compose_to_conjugate_second(pair: &DiagramPair) -> Result<Composition, String> {
    compose(pair, step_reduce_second, |p| {
        if !p.m1.is_conjugate_canonical() {
            if !p.m1.included_nonnegative().is_empty() {
                if p.m1.included_nonnegative().contains(&0) {
                    Some((StepCase::A, false))
                } else {
                    Some((StepCase::B, true))
                }
            } else {
                Some((StepCase::B, false))
            }
        } else if !p.m2.is_conjugate_canonical() {
            if !p.m2.included_nonnegative().is_empty() {
                if p.m2.included_nonnegative().contains(&0) {
                    Some((StepCase::C, false))
                } else {
                    Some((StepCase::D, true))
                }
            } else {
                Some((StepCase::D, false))
            }
        } else {
            None
        }
    })
}
