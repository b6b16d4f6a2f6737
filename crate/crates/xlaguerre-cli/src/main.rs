//! Command-line front end: parse Maya diagram pairs, run the exact spectral
//! pipeline, and emit text, JSON, or CSV reports.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use xlaguerre::evalzero::{eval_first_kind, eval_second_kind};
use xlaguerre::exact::{parse_rat, rat, Poly, Rat};
use xlaguerre::maya::{all_diagrams, DiagramPair, MayaDiagram};
use xlaguerre::oracle::{self, WronskianBuild};
use xlaguerre::shifts::shift_report;
use xlaguerre::spectral::{
    gamma_numeric, Convention, Extension, OperatorData,
};

#[derive(Parser)]
#[command(name = "xlaguerre", about = "Exact spectra of exceptional Laguerre operators from Maya diagram pairs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionFlag {
    Paper,
    Strict,
    Both,
}

#[derive(Args)]
struct PairArgs {
    /// First Maya diagram, e.g. "(|3,2)".
    #[arg(long)]
    m1: String,
    /// Second Maya diagram, e.g. "(1,0|)".
    #[arg(long)]
    m2: String,
    /// Integer offset: the seed parameter is α + offset.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    alpha_offset: i64,
}

impl PairArgs {
    fn operator(&self) -> Result<OperatorData, String> {
        let m1 = MayaDiagram::parse(&self.m1)?;
        let m2 = MayaDiagram::parse(&self.m2)?;
        OperatorData::new(DiagramPair::new(m1, m2), self.alpha_offset)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline report: shifts, constants, m-functions, spectra.
    Analyze {
        #[command(flatten)]
        pair: PairArgs,
        /// Numeric value for α as a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        alpha_value: Option<String>,
        #[arg(long, value_enum, default_value_t = ConventionFlag::Paper)]
        convention: ConventionFlag,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
    /// Sweep admissible pairs and compare closed forms against the series
    /// oracle.
    OracleCheck {
        /// All diagram entries strictly below this bound.
        #[arg(long, default_value_t = 3)]
        max_index: u32,
        /// Extra series truncation guard beyond the default.
        #[arg(long, default_value_t = 0)]
        trunc: i64,
        /// Skip pairs with more than this many seed functions in total.
        #[arg(long, default_value_t = 4)]
        max_seeds: u32,
    },
    /// Eigenvalues of the τ-extension in a window, by level-curve search.
    Spectrum {
        #[command(flatten)]
        pair: PairArgs,
        /// Boundary parameter τ, or "inf" for the ∞-extension.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Numeric value for α as a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        alpha_value: String,
        /// Window "lo,hi".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = ConventionFlag::Paper)]
        convention: ConventionFlag,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out: OutFormat,
    },
    /// CSV of (λ, M∞(λ)) on a grid; NaN within 1e−6 of a pole.
    PlotData {
        #[command(flatten)]
        pair: PairArgs,
        /// Numeric value for α as a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        alpha_value: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 601)]
        grid: usize,
        /// Window "lo,hi".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// First k non-deleted eigenpolynomials with exact coefficients.
    Polys {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SpectraReport {
    convention: String,
    sigma_zero: String,
    sigma_infinity: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct AnalysisReport {
    m1: String,
    m2: String,
    alpha_offset: i64,
    alpha_value: Option<String>,
    t1: i64,
    t2: i64,
    t1_prime: i64,
    t2_prime: i64,
    mu: Vec<u32>,
    nu: Vec<u32>,
    mu_prime: Vec<u32>,
    nu_prime: Vec<u32>,
    c1: String,
    c2: String,
    c3: String,
    d1: String,
    d2: String,
    d3: String,
    bold_alpha: String,
    admissible: bool,
    limit_circle: Option<bool>,
    weight: Option<String>,
    frak_c: String,
    frak_d: String,
    m_infinity: String,
    m_zero: String,
    spectra: Vec<SpectraReport>,
    convention_diff: Option<String>,
    warnings: Vec<String>,
}

fn build_report(
    op: &OperatorData,
    raw: &PairArgs,
    alpha_value: &Option<Rat>,
    convention: ConventionFlag,
) -> Result<AnalysisReport, String> {
    let r = &op.report;
    let n = op.normalization()?;
    let mi = op.m_infinity()?;
    let m0 = op.m_zero()?;

    let conventions: Vec<Convention> = match convention {
        ConventionFlag::Paper => vec![Convention::Paper],
        ConventionFlag::Strict => vec![Convention::Strict],
        ConventionFlag::Both => vec![Convention::Paper, Convention::Strict],
    };
    let mut spectra = Vec::new();
    for conv in &conventions {
        spectra.push(SpectraReport {
            convention: match conv {
                Convention::Paper => "paper".to_string(),
                Convention::Strict => "strict".to_string(),
            },
            sigma_zero: op.spectrum(Extension::Zero, *conv)?.to_string(),
            sigma_infinity: op.spectrum(Extension::Infinity, *conv)?.to_string(),
        });
    }
    let convention_diff = if spectra.len() == 2 && spectra[0].sigma_zero == spectra[1].sigma_zero
        && spectra[0].sigma_infinity == spectra[1].sigma_infinity
    {
        Some("conventions agree".to_string())
    } else if spectra.len() == 2 {
        Some(format!(
            "paper σ(L0)={} σ(Linf)={} vs strict σ(L0)={} σ(Linf)={}",
            spectra[0].sigma_zero,
            spectra[0].sigma_infinity,
            spectra[1].sigma_zero,
            spectra[1].sigma_infinity
        ))
    } else {
        None
    };

    let mut warnings =
        vec!["all constants are tracked up to overall sign".to_string()];
    if let Some(a) = alpha_value {
        if a.is_integer() {
            warnings.push(format!("α = {} is an integer: spectra assume generic α", a));
        }
    }

    Ok(AnalysisReport {
        m1: raw.m1.clone(),
        m2: raw.m2.clone(),
        alpha_offset: raw.alpha_offset,
        alpha_value: alpha_value.as_ref().map(|a| a.to_string()),
        t1: r.t1,
        t2: r.t2,
        t1_prime: r.t1p,
        t2_prime: r.t2p,
        mu: r.mu.parts().to_vec(),
        nu: r.nu.parts().to_vec(),
        mu_prime: r.mup.parts().to_vec(),
        nu_prime: r.nup.parts().to_vec(),
        c1: r.c1.to_string(),
        c2: r.c2.to_string(),
        c3: r.c3.to_string(),
        d1: r.d1.to_string(),
        d2: r.d2.to_string(),
        d3: r.d3.to_string(),
        bold_alpha: op.bold_alpha().to_string(),
        admissible: op.is_admissible(),
        limit_circle: alpha_value.as_ref().map(|a| op.is_limit_circle(a)),
        weight: op.weight().ok().map(|w| w.to_string()),
        frak_c: n.frak_c.to_string(),
        frak_d: n.frak_d.to_string(),
        m_infinity: mi.to_string(),
        m_zero: m0.to_string(),
        spectra,
        convention_diff,
        warnings,
    })
}

fn print_report_text(rep: &AnalysisReport) {
    println!("pair: {} , {}   (seed parameter α{:+})", rep.m1, rep.m2, rep.alpha_offset);
    if let Some(a) = &rep.alpha_value {
        println!("alpha value: {}", a);
    }
    println!(
        "shifts: t1={} t2={} t1'={} t2'={}",
        rep.t1, rep.t2, rep.t1_prime, rep.t2_prime
    );
    println!(
        "partitions: mu={:?} nu={:?} mu'={:?} nu'={:?}",
        rep.mu, rep.nu, rep.mu_prime, rep.nu_prime
    );
    println!("admissible (mu even): {}", rep.admissible);
    println!("weight exponent: {}", rep.bold_alpha);
    if let Some(lc) = rep.limit_circle {
        println!("limit-circle at 0: {}", lc);
    }
    if let Some(w) = &rep.weight {
        println!("weight: {}", w);
    }
    println!("C1={}  C2={}  C3={}", rep.c1, rep.c2, rep.c3);
    println!("D1={}  D2={}  D3={}", rep.d1, rep.d2, rep.d3);
    println!("frak_c = {}", rep.frak_c);
    println!("frak_d = {}", rep.frak_d);
    println!("M_inf = {}", rep.m_infinity);
    println!("M_0   = {}", rep.m_zero);
    for s in &rep.spectra {
        println!("[{}] σ(L0)   = {}", s.convention, s.sigma_zero);
        println!("[{}] σ(Linf) = {}", s.convention, s.sigma_infinity);
    }
    if let Some(d) = &rep.convention_diff {
        println!("convention diff: {}", d);
    }
    for w in &rep.warnings {
        println!("warning: {}", w);
    }
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("window must be \"lo,hi\", got {:?}", s));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad window: {}", e))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad window: {}", e))?;
    if !(lo < hi) {
        return Err(format!("empty window ({}, {})", lo, hi));
    }
    Ok((lo, hi))
}

fn rat_to_f64(r: &Rat) -> Result<f64, String> {
    r.to_f64().ok_or_else(|| "rational out of f64 range".to_string())
}

fn cmd_analyze(
    pair: &PairArgs,
    alpha_value: &Option<String>,
    convention: ConventionFlag,
    out: OutFormat,
) -> Result<u8, String> {
    let op = pair.operator()?;
    let alpha: Option<Rat> = match alpha_value {
        Some(s) => Some(parse_rat(s)?),
        None => None,
    };
    if !op.is_admissible() {
        eprintln!(
            "inadmissible pair: partition {:?} is odd, the weight has interior zeros",
            op.report.mu.parts()
        );
        return Ok(2);
    }
    if let Some(a) = &alpha {
        let bold = a + &rat(op.bold_offset);
        if bold <= rat(-1) {
            eprintln!(
                "weight exponent {} ≤ −1 at α={}: outside the operator's parameter domain",
                bold, a
            );
            return Ok(3);
        }
    }
    let rep = build_report(&op, pair, &alpha, convention)?;
    match out {
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
        _ => print_report_text(&rep),
    }
    Ok(0)
}

fn eval_zero_adaptive(
    p: &DiagramPair,
    second_kind: bool,
    extra: i64,
) -> Result<xlaguerre::exact::RationalFunction, String> {
    let mut last = String::new();
    for guard in [4, 8, 14] {
        let build = WronskianBuild::new(p.clone(), Poly::alpha(), 0)
            .with_trunc(p.r() as i64 + guard + extra);
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

fn oracle_check_pair(p: &DiagramPair, trunc: i64) -> Result<(), String> {
    let rep = shift_report(p);

    let got = eval_zero_adaptive(p, false, trunc)?;
    let e1 = eval_first_kind(
        &rep.mu,
        &rep.nu,
        &(&Poly::alpha() + &Poly::from_int(rep.alpha_prime_offset())),
    )?;
    let want = &rep.c_total() * &e1.value_shifted(rep.t1);
    if !got.eq_up_to_sign(&want) {
        return Err(format!(
            "first-kind mismatch for {}: oracle {} vs closed form {}",
            p, got, want
        ));
    }

    let got = eval_zero_adaptive(p, true, trunc)?;
    let e2 = eval_second_kind(
        &rep.mup,
        &rep.nup,
        &(&Poly::alpha() + &Poly::from_int(rep.alpha_second_offset())),
    )?;
    let want = &rep.d_total() * &e2.value_shifted(rep.t1p);
    if !got.eq_up_to_sign(&want) {
        return Err(format!(
            "second-kind mismatch for {}: oracle {} vs closed form {}",
            p, got, want
        ));
    }
    Ok(())
}

fn cmd_oracle_check(max_index: u32, trunc: i64, max_seeds: u32) -> Result<u8, String> {
    use rayon::prelude::*;
    let diagrams = all_diagrams(max_index);
    let mut pairs = Vec::new();
    for m1 in &diagrams {
        for m2 in &diagrams {
            let p = DiagramPair::new(m1.clone(), m2.clone());
            if p.r() <= max_seeds as usize {
                pairs.push(p);
            }
        }
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|p| oracle_check_pair(p, trunc).err())
        .collect();
    if let Some(first) = failures.first() {
        eprintln!("{}", first);
        return Ok(1);
    }
    println!(
        "oracle check: {} pairs with entries < {} agree with the closed forms (both kinds, up to sign)",
        pairs.len(),
        max_index
    );
    Ok(0)
}

#[derive(Serialize)]
struct SpectrumReport {
    tau: String,
    alpha: String,
    window: (f64, f64),
    eigenvalues: Vec<f64>,
    residuals: Vec<f64>,
}

fn cmd_spectrum(
    pair: &PairArgs,
    tau: &str,
    alpha_value: &str,
    window: &str,
    convention: ConventionFlag,
    out: OutFormat,
) -> Result<u8, String> {
    let op = pair.operator()?;
    let alpha = parse_rat(alpha_value)?;
    let alpha_f = rat_to_f64(&alpha)?;
    let win = parse_window(window)?;
    if &alpha + &rat(op.bold_offset) <= rat(-1) {
        eprintln!("weight exponent ≤ −1 at α={}", alpha);
        return Ok(3);
    }
    if tau == "inf" {
        let conv = match convention {
            ConventionFlag::Strict => Convention::Strict,
            _ => Convention::Paper,
        };
        let s = op.spectrum(Extension::Infinity, conv)?;
        println!("σ(Linf) = {}", s);
        let pts = s.points_in_window(alpha_f, win.0, win.1);
        let list: Vec<String> = pts.iter().map(|v| format!("{:.12}", v)).collect();
        println!("in window [{}, {}]: {}", win.0, win.1, list.join(", "));
        return Ok(0);
    }
    let tau_f: f64 = tau.parse().map_err(|e| format!("bad tau: {}", e))?;
    let eigenvalues = op.eigenvalues_tau_numeric(alpha_f, tau_f, win)?;
    let m = op.m_infinity()?;
    let residuals: Vec<f64> = eigenvalues
        .iter()
        .map(|&l| (m.eval_f64(alpha_f, l, &gamma_numeric) - tau_f).abs())
        .collect();
    match out {
        OutFormat::Json => {
            let rep = SpectrumReport {
                tau: tau.to_string(),
                alpha: alpha.to_string(),
                window: win,
                eigenvalues,
                residuals,
            };
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
        }
        _ => {
            println!("eigenvalues of the τ={} extension, α={}:", tau, alpha);
            for (l, r) in eigenvalues.iter().zip(&residuals) {
                println!("  λ = {:.12}   |M∞(λ)−τ| = {:.3e}", l, r);
            }
        }
    }
    Ok(0)
}

fn cmd_plot_data(
    pair: &PairArgs,
    alpha_value: &str,
    grid: usize,
    window: &str,
) -> Result<u8, String> {
    let op = pair.operator()?;
    let alpha = rat_to_f64(&parse_rat(alpha_value)?)?;
    let (lo, hi) = parse_window(window)?;
    let m = op.m_infinity()?;
    let poles = op
        .spectrum(Extension::Infinity, Convention::Strict)?
        .points_in_window(alpha, lo - 1.0, hi + 1.0);
    println!("lambda,m_infinity");
    if grid == 0 {
        return Ok(0);
    }
    for i in 0..grid {
        let l = if grid == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (grid - 1) as f64
        };
        let near_pole = poles.iter().any(|p| (l - p).abs() < 1e-6);
        let v = if near_pole {
            f64::NAN
        } else {
            m.eval_f64(alpha, l, &gamma_numeric)
        };
        println!("{},{}", l, v);
    }
    Ok(0)
}

fn cmd_polys(pair: &PairArgs, count: usize) -> Result<u8, String> {
    let op = pair.operator()?;
    if !op.is_admissible() {
        eprintln!(
            "inadmissible pair: partition {:?} is odd",
            op.report.mu.parts()
        );
        return Ok(2);
    }
    let mut found = 0usize;
    let mut n = 0u32;
    while found < count {
        if n > 500 {
            return Err("ran out of candidate indices".to_string());
        }
        match op.exceptional_polynomial(n)? {
            Some(p) => {
                println!("n={} degree={:?}: {}", n, p.degree(), p);
                found += 1;
            }
            None => println!("n={}: deleted state", n),
        }
        n += 1;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze {
            pair,
            alpha_value,
            convention,
            out,
        } => cmd_analyze(pair, alpha_value, *convention, *out),
        Command::OracleCheck {
            max_index,
            trunc,
            max_seeds,
        } => cmd_oracle_check(*max_index, *trunc, *max_seeds),
        Command::Spectrum {
            pair,
            tau,
            alpha_value,
            window,
            convention,
            out,
        } => cmd_spectrum(pair, tau, alpha_value, window, *convention, *out),
        Command::PlotData {
            pair,
            alpha_value,
            grid,
            window,
        } => cmd_plot_data(pair, alpha_value, *grid, window),
        Command::Polys { pair, count } => cmd_polys(pair, *count),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
