//! Acceptance gate: one test per criterion, each printing a PASS line with
//! its runtime and asserting the stated budget where one is stated.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use xlaguerre::evalzero::{eval_first_kind, eval_second_kind};
use xlaguerre::exact::{rat, ratq, AffinePoint, GammaFactor, Poly, Rat, RationalFunction};
use xlaguerre::maya::{all_diagrams, DiagramPair, MayaDiagram};
use xlaguerre::oracle::{self, WronskianBuild};
use xlaguerre::shifts::{shift_report, step_reduce_first, step_reduce_second, StepCase};
use xlaguerre::spectral::{
    gamma_numeric, identify_friedrichs, Convention, Extension, OperatorData,
};

fn pair(m1: &str, m2: &str) -> DiagramPair {
    DiagramPair::new(MayaDiagram::parse(m1).unwrap(), MayaDiagram::parse(m2).unwrap())
}

fn worked_example() -> DiagramPair {
    pair("(|3,2)", "(1,0|)")
}

/// a·α + l·λ + c.
fn lc(a: i64, l: i64, c: i64) -> Poly {
    &(&Poly::alpha().scale(&rat(a)) + &Poly::lambda().scale(&rat(l))) + &Poly::from_int(c)
}

fn rf(p: Poly) -> RationalFunction {
    RationalFunction::from_poly(p)
}

/// The sweep set shared by the oracle-equivalence and disjointness
/// criteria: every pair with entries < 4 and at most 3 seeds, together with
/// every pair with entries < 3 and at most 4 seeds.
fn sweep_pairs() -> Vec<DiagramPair> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |p: DiagramPair| {
        if seen.insert(p.to_string()) {
            out.push(p);
        }
    };
    let wide = all_diagrams(4);
    for m1 in &wide {
        for m2 in &wide {
            let p = DiagramPair::new(m1.clone(), m2.clone());
            if p.r() <= 3 {
                push(p);
            }
        }
    }
    let narrow = all_diagrams(3);
    for m1 in &narrow {
        for m2 in &narrow {
            let p = DiagramPair::new(m1.clone(), m2.clone());
            if p.r() <= 4 {
                push(p);
            }
        }
    }
    out
}

fn eval_zero_adaptive(
    p: &DiagramPair,
    second_kind: bool,
) -> Result<RationalFunction, String> {
    let mut last = String::new();
    for guard in [4, 8, 14] {
        let build =
            WronskianBuild::new(p.clone(), Poly::alpha(), 0).with_trunc(p.r() as i64 + guard);
        let series = if second_kind {
            build.omega_htilde(Some(2))?
        } else {
            build.omega_h(Some(2))?
        };
        match oracle::eval_zero(&series) {
            Ok(v) => return Ok(v),
            Err(e) if e.contains("beyond truncation") => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn check_oracle_equivalence(p: &DiagramPair) -> Result<(), String> {
    let rep = shift_report(p);

    let got = eval_zero_adaptive(p, false)?;
    let e1 = eval_first_kind(
        &rep.mu,
        &rep.nu,
        &(&Poly::alpha() + &Poly::from_int(rep.alpha_prime_offset())),
    )?;
    let want = &rep.c_total() * &e1.value_shifted(rep.t1);
    if !got.eq_up_to_sign(&want) {
        return Err(format!("first kind, pair {}: {} vs {}", p, got, want));
    }

    let got = eval_zero_adaptive(p, true)?;
    let e2 = eval_second_kind(
        &rep.mup,
        &rep.nup,
        &(&Poly::alpha() + &Poly::from_int(rep.alpha_second_offset())),
    )?;
    let want = &rep.d_total() * &e2.value_shifted(rep.t1p);
    if !got.eq_up_to_sign(&want) {
        return Err(format!("second kind, pair {}: {} vs {}", p, got, want));
    }
    Ok(())
}

#[test]
fn criterion_1_type_one_golden() {
    let start = Instant::now();
    for m in 1..=3u32 {
        let op = OperatorData::new(pair("(|)", &format!("(|{})", m)), -1).unwrap();
        for conv in [Convention::Paper, Convention::Strict] {
            let si = op.spectrum(Extension::Infinity, conv).unwrap();
            assert_eq!(si.families.len(), 1, "m={}", m);
            assert_eq!(si.families[0].base, AffinePoint::new(rat(1), -1));
            assert!(si.families[0].excluded.is_empty());
            assert_eq!(si.points, vec![AffinePoint::new(rat(-(m as i64)), -1)]);

            let s0 = op.spectrum(Extension::Zero, conv).unwrap();
            assert_eq!(s0.families.len(), 1);
            assert_eq!(s0.families[0].base, AffinePoint::from_int(0));
            assert!(s0.families[0].excluded.is_empty());
            assert!(s0.points.is_empty());
        }
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 5.0, "took {:.2}s", dt);
    println!(
        "criterion 1 (Type I golden spectra, m=1..3, both conventions): PASS in {:.2}s",
        dt
    );
}

#[test]
fn criterion_2_worked_example_golden() {
    let start = Instant::now();
    let op = OperatorData::new(worked_example(), 0).unwrap();
    let rep = &op.report;
    assert_eq!((rep.t1, rep.t2, rep.t1p, rep.t2p), (0, 2, -4, 2));
    assert_eq!(rep.mu.parts(), &[2, 2]);
    assert!(rep.nu.parts().is_empty());
    assert_eq!(rep.mup.parts(), &[2, 2]);
    assert!(rep.nup.parts().is_empty());

    assert!(rep.c1.eq_up_to_sign(&RationalFunction::one()));
    assert!(rep.c2.eq_up_to_sign(&rf(&lc(1, 0, 0) * &lc(1, 0, -1))));
    let c3 = &(&(&lc(1, 0, 1) * &lc(1, 0, 2)) * &lc(1, 0, 2)) * &lc(1, 0, 3);
    assert!(rep.c3.eq_up_to_sign(&rf(c3.clone())));
    let d1 = RationalFunction::new(
        &(&(&lc(1, 0, 0) * &lc(1, 0, 1)) * &lc(1, 0, 2)) * &lc(1, 0, 3),
        &lc(0, 1, 0) * &lc(0, 1, -1),
    );
    assert!(rep.d1.eq_up_to_sign(&d1));
    let d2 = RationalFunction::new(&lc(1, 1, 0) * &lc(1, 1, -1), &lc(1, 0, 2) * &lc(1, 0, 3));
    assert!(rep.d2.eq_up_to_sign(&d2), "D2 = {}", rep.d2);
    assert!(rep.d3.eq_up_to_sign(&rf(c3)));

    let e1 = eval_first_kind(&rep.mu, &rep.nu, &lc(1, 0, -2)).unwrap();
    let want_e1 = RationalFunction::new(
        &(&(&lc(1, 0, 0) * &lc(1, 0, 1)) * &lc(0, -1, 3)) * &lc(0, -1, 2),
        Poly::from_int(12),
    );
    assert!(
        e1.value_shifted(rep.t1).eq_up_to_sign(&want_e1),
        "E1 = {}",
        e1.value_shifted(rep.t1)
    );
    let e2 = eval_second_kind(&rep.mup, &rep.nup, &lc(1, 0, 2)).unwrap();
    let want_e2 = RationalFunction::new(
        &(&(&lc(1, 0, -1) * &lc(1, 0, 0)) * &lc(0, 1, -1)) * &lc(0, 1, 0),
        Poly::from_int(12),
    );
    assert!(
        e2.value_shifted(rep.t1p).eq_up_to_sign(&want_e2),
        "E2 = {}",
        e2.value_shifted(rep.t1p)
    );

    let m = op.m_infinity().unwrap();
    assert_eq!(m.gamma_num, vec![GammaFactor::new(rat(0), -1)]);
    assert_eq!(m.gamma_den, vec![GammaFactor::new(rat(0), 0)]);
    let mut rational = m.constant.clone();
    for r in &m.roots_num {
        rational = &rational * &rf(r.lambda_factor());
    }
    for r in &m.roots_den {
        rational = &rational * &rf(r.lambda_factor()).recip();
    }
    let want = RationalFunction::new(
        &lc(1, 1, 0) * &lc(1, 1, -1),
        &(&lc(1, 0, 0) * &lc(0, -1, 3)) * &lc(0, -1, 2),
    );
    let quotient = &rational * &want.recip();
    assert_eq!(
        quotient,
        quotient.shift_vars(0, 1),
        "M_inf rational part differs by a λ-dependent factor: {}",
        quotient
    );

    let si = op.spectrum(Extension::Infinity, Convention::Paper).unwrap();
    assert_eq!(si.families.len(), 1);
    assert_eq!(si.families[0].base, AffinePoint::new(rat(0), -1));
    assert_eq!(si.families[0].excluded, BTreeSet::from([0, 1]));
    assert_eq!(si.points, vec![AffinePoint::from_int(2), AffinePoint::from_int(3)]);
    let s0 = op.spectrum(Extension::Zero, Convention::Paper).unwrap();
    assert_eq!(s0.families[0].base, AffinePoint::from_int(0));
    assert_eq!(s0.families[0].excluded, BTreeSet::from([2, 3]));
    assert_eq!(
        s0.points,
        vec![AffinePoint::new(rat(0), -1), AffinePoint::new(rat(1), -1)]
    );

    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 5.0, "took {:.2}s", dt);
    println!(
        "criterion 2 (worked-example shifts, constants, zero values, M_inf, spectra): PASS in {:.2}s",
        dt
    );
}

#[test]
fn criterion_3_oracle_equivalence_sweep() {
    let start = Instant::now();
    let pairs = sweep_pairs();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|p| check_oracle_equivalence(p).err())
        .collect();
    assert!(failures.is_empty(), "{} mismatches; first: {}", failures.len(), failures[0]);
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 180.0, "took {:.2}s", dt);
    println!(
        "criterion 3 (oracle equivalence, {} pairs, both kinds): PASS in {:.2}s",
        pairs.len(),
        dt
    );
}

#[test]
fn criterion_4_step_reduction_series() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(20260823);
    let diagrams = all_diagrams(4);

    let random_pair = |rng: &mut StdRng| -> DiagramPair {
        loop {
            let m1 = diagrams[rng.gen_range(0..diagrams.len())].clone();
            let m2 = diagrams[rng.gen_range(0..diagrams.len())].clone();
            let p = DiagramPair::new(m1, m2);
            if p.r() >= 1 && p.r() <= 4 {
                return p;
            }
        }
    };

    for case in [StepCase::A, StepCase::B, StepCase::C, StepCase::D] {
        for second in [false, true] {
            let mut done = 0;
            let mut attempts = 0;
            while done < 30 {
                attempts += 1;
                assert!(attempts < 20_000, "could not sample case {:?}/{}", case, second);
                let p = random_pair(&mut rng);
                let step = if second {
                    step_reduce_second(&p, case)
                } else {
                    step_reduce_first(&p, case)
                };
                let out = match step {
                    Ok(o) => o,
                    Err(_) => continue,
                };
                let trunc = p.r() as i64 + 8;
                let shifted_lambda = &Poly::lambda() + &Poly::from_int(out.d_lambda);
                let (lhs, rhs) = if second {
                    (
                        WronskianBuild::new(p.clone(), Poly::alpha(), 0)
                            .with_trunc(trunc)
                            .omega_htilde(Some(2))
                            .unwrap(),
                        WronskianBuild::new(out.pair.clone(), Poly::alpha(), out.d_alpha)
                            .with_lambda_expr(shifted_lambda)
                            .with_trunc(trunc + 4)
                            .omega_htilde(Some(2))
                            .unwrap()
                            .scale(&out.constant),
                    )
                } else {
                    (
                        WronskianBuild::new(p.clone(), Poly::alpha(), 0)
                            .with_trunc(trunc)
                            .omega_h(Some(2))
                            .unwrap(),
                        WronskianBuild::new(out.pair.clone(), Poly::alpha(), out.d_alpha)
                            .with_lambda_expr(shifted_lambda)
                            .with_trunc(trunc + 4)
                            .omega_h(Some(2))
                            .unwrap()
                            .scale(&out.constant),
                    )
                };
                assert!(
                    lhs.eq_up_to_sign(&rhs),
                    "case {:?} (second kind: {}) fails on {}",
                    case,
                    second,
                    p
                );
                done += 1;
            }
        }
    }
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 4 (eight single-step cases, 30 random instances each): PASS in {:.2}s",
        dt
    );
}

#[test]
fn criterion_5_evenness_zero_freeness() {
    let start = Instant::now();
    let alphas = [ratq(1, 3), ratq(1, 2), ratq(3, 4)];
    let diagrams = all_diagrams(5);
    let mut cache: HashMap<(Vec<u32>, Vec<u32>, Rat), bool> = HashMap::new();
    let mut tested = 0usize;
    for m1 in &diagrams {
        for m2 in &diagrams {
            let p = DiagramPair::new(m1.clone(), m2.clone());
            if p.r() > 4 {
                continue;
            }
            let (mu, nu) = p.partitions();
            let expected = mu.is_even();
            for a in &alphas {
                let key = (mu.parts().to_vec(), nu.parts().to_vec(), a.clone());
                let zero_free = match cache.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = oracle::zero_free_on_halfline(&p, a).unwrap();
                        cache.insert(key, v);
                        v
                    }
                };
                assert_eq!(
                    zero_free, expected,
                    "pair {} at α={}: zero-free {} but μ={:?}",
                    p, a, zero_free, mu.parts()
                );
                tested += 1;
            }
        }
    }
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 5 (zero count 0 iff μ even; {} pair/α checks, {} distinct Sturm runs): PASS in {:.2}s",
        tested,
        cache.len(),
        dt
    );
}

#[test]
fn criterion_6_orthogonality() {
    let start = Instant::now();
    let half = ratq(1, 2);

    let classical = OperatorData::new(pair("(|)", "(|)"), 0).unwrap();
    let worst = classical.orthogonality_check(&half, 5).unwrap();
    assert!(worst < 1e-8, "classical worst off-diagonal {}", worst);

    let type_one = OperatorData::new(pair("(|)", "(|1)"), -1).unwrap();
    let worst = type_one.orthogonality_check(&half, 5).unwrap();
    assert!(worst < 1e-8, "Type I worst off-diagonal {}", worst);

    // The worked example's own parameter position puts the weight at
    // α−2 = −3/2, where the denominator polynomial has a positive real
    // root: the literal inner products diverge and the check must refuse.
    let literal = OperatorData::new(worked_example(), 0).unwrap();
    assert!(literal.orthogonality_check(&half, 5).is_err());

    // In canonical position the weight is zero-free at α = 1/2 and the
    // family is orthogonal.
    let canonical = OperatorData::new(shift_report(&worked_example()).canonical, 0).unwrap();
    let worst = canonical.orthogonality_check(&half, 5).unwrap();
    assert!(worst < 1e-8, "worked-example worst off-diagonal {}", worst);

    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 30.0, "took {:.2}s", dt);
    println!(
        "criterion 6 (orthogonality of first 5 polynomials, three weights): PASS in {:.2}s",
        dt
    );
}

#[test]
fn criterion_7_classical_limit() {
    let start = Instant::now();
    let op = OperatorData::new(pair("(|)", "(|)"), 0).unwrap();
    let m = op.m_infinity().unwrap();
    assert_eq!(m.gamma_num, vec![GammaFactor::new(rat(0), -1)]);
    assert_eq!(m.gamma_den, vec![GammaFactor::new(rat(0), 0)]);
    assert!(m.roots_num.is_empty() && m.roots_den.is_empty());
    for conv in [Convention::Paper, Convention::Strict] {
        let si = op.spectrum(Extension::Infinity, conv).unwrap();
        assert_eq!(si.families.len(), 1);
        assert_eq!(si.families[0].base, AffinePoint::new(rat(0), -1));
        assert!(si.families[0].excluded.is_empty() && si.points.is_empty());
        let s0 = op.spectrum(Extension::Zero, conv).unwrap();
        assert_eq!(s0.families[0].base, AffinePoint::from_int(0));
        assert!(s0.families[0].excluded.is_empty() && s0.points.is_empty());
    }
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 7 (classical limit: M_inf ∝ Γ(-λ-α)/Γ(-λ), spectra {{n-α}}, {{n}}): PASS in {:.2}s",
        dt
    );
}

#[test]
fn criterion_8_disjointness_and_friedrichs() {
    let start = Instant::now();
    let pairs = sweep_pairs();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|p| {
            let op = match OperatorData::new(p.clone(), 0) {
                Ok(op) => op,
                Err(e) => return Some(format!("{}: {}", p, e)),
            };
            for conv in [Convention::Paper, Convention::Strict] {
                let s0 = match op.spectrum(Extension::Zero, conv) {
                    Ok(s) => s,
                    Err(e) => return Some(format!("{}: {}", p, e)),
                };
                let si = match op.spectrum(Extension::Infinity, conv) {
                    Ok(s) => s,
                    Err(e) => return Some(format!("{}: {}", p, e)),
                };
                if !s0.is_disjoint(&si) {
                    return Some(format!("{} ({:?}): {} meets {}", p, conv, s0, si));
                }
            }
            None
        })
        .collect();
    assert!(failures.is_empty(), "{} overlaps; first: {}", failures.len(), failures[0]);

    let op = OperatorData::new(worked_example(), 0).unwrap();
    let s0 = op.spectrum(Extension::Zero, Convention::Paper).unwrap();
    let si = op.spectrum(Extension::Infinity, Convention::Paper).unwrap();
    for a in [ratq(1, 4), ratq(1, 2), ratq(3, 4)] {
        assert_eq!(
            identify_friedrichs(&s0, &si, &a).unwrap(),
            Extension::Infinity,
            "α = {}",
            a
        );
    }
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 8 (disjoint spectra on {} pairs; Friedrichs = ∞-extension): PASS in {:.2}s",
        pairs.len(),
        dt
    );
}

#[test]
fn criterion_9_numeric_level_curves() {
    let start = Instant::now();
    assert!((gamma_numeric(5.0) - 24.0).abs() / 24.0 < 1e-12);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    assert!((gamma_numeric(0.5) - sqrt_pi).abs() / sqrt_pi < 1e-12);
    assert!((gamma_numeric(-0.5) + 2.0 * sqrt_pi).abs() / (2.0 * sqrt_pi) < 1e-12);

    let op = OperatorData::new(pair("(|)", "(|1)"), -1).unwrap();
    let m = op.m_infinity().unwrap();
    let alpha = 0.5;
    for lambda_star in [0.3, 1.7, 4.2] {
        let tau = m.eval_f64(alpha, lambda_star, &gamma_numeric);
        let roots = op
            .eigenvalues_tau_numeric(alpha, tau, (lambda_star - 0.4, lambda_star + 0.4))
            .unwrap();
        let hit = roots.iter().any(|r| (r - lambda_star).abs() < 1e-8);
        assert!(hit, "λ*={} not recovered: {:?}", lambda_star, roots);
    }
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 9 (τ level-curve round trip and Γ reference values): PASS in {:.2}s",
        dt
    );
}
