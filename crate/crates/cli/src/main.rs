//! `btk`: command-line front end for the verification workbench.
//!
//! One subcommand per library operation. Reports are JSON envelopes that
//! embed the fully resolved configuration (defaults included) plus wall
//! time, so any run can be reproduced from its report alone; `--format csv`
//! emits the bare data rows instead. Exit codes: 0 success, 2 domain error,
//! 3 resource (budget/memory) error, 1 numerical or I/O failure, 64 unknown
//! subcommand, 65 invalid configuration.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use btk_core::error::Error;
use btk_core::expsums::{self, StrataThresholds};
use btk_core::kloosterman::{self, KloostermanTable};
use btk_core::smoothweight::TentWeight;
use btk_core::{apsieve, bounds, PrimeModulus, QuintConfig, ShiftConfig, SmoothWeight};

#[derive(Parser)]
#[command(
    name = "btk",
    about = "Verification workbench for Kloosterman sums, prime counts in \
             progressions, exponential-sum moments, and explicit constants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Clone, Serialize)]
struct GlobalArgs {
    /// RNG seed for generated coefficients (SplitMix64 stream)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// worker threads; 0 = automatic
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// cap on enumeration cardinality for census/moment commands
    #[arg(long, global = true, default_value_t = expsums::DEFAULT_ENUM_BUDGET)]
    budget: u64,
    /// output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// output format
    #[arg(long, global = true, default_value = "json")]
    format: Format,
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Kloosterman sum Kl(z, q) = S(z, 1; q)/sqrt(q)
    Kl {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
    },
    /// Build the full table a -> Kl(a, q); csv, json, or raw binary
    Table {
        #[arg(long)]
        q: u64,
        /// write the packed binary format instead of csv/json
        #[arg(long)]
        binary: bool,
    },
    /// Randomized Weil-bound scan |S(m,n;q)| <= 2 sqrt(q)
    Weil {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Exact prime count pi(x; q, a)
    PiAp {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
    },
    /// Scan all residues mod q and report normalized count ratios
    BtScan {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        q: u64,
        /// also write the per-residue rows (a, count, ratio) to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare the exact remainder r(d) with its Poisson truncation
    PoissonCheck {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 20)]
        d_max: u64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Quintilinear Kloosterman sum from a JSON config
    Quint {
        #[arg(long)]
        config: PathBuf,
    },
    /// Averaged sum Sigma with the k = 0 discard, from a JSON config
    Sigma {
        #[arg(long)]
        config: PathBuf,
    },
    /// Exactness check of the shift reindexing, from a JSON config
    ShiftCheck {
        #[arg(long)]
        config: PathBuf,
    },
    /// Multiplicity census sigma_1, sigma_2 with recorded bounds
    Rho {
        #[arg(long)]
        config: PathBuf,
    },
    /// Complete-sum 2nu-th moment sigma_3 with its bound ratio
    Moments {
        #[arg(long)]
        config: PathBuf,
    },
    /// Stratification of tuples by the size of the sum-product moment
    Strata {
        #[arg(long)]
        config: PathBuf,
    },
    /// Explicit constants at (nu, varpi); optional comparison curve
    Bounds {
        /// exponent as a fraction "1/2" or decimal "0.5" (parsed exactly)
        #[arg(long)]
        varpi: String,
        #[arg(long, default_value_t = 8)]
        nu: u32,
        /// emit a (varpi, classical, sharpened) curve with this many points
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Best moment order nu for a given exponent
    Optimize {
        #[arg(long)]
        varpi: String,
        #[arg(long, default_value_t = bounds::DEFAULT_NU_CAP)]
        nu_max: u32,
    },
    /// Derived working parameters M, N, D, H, K, R, S with constraint flags
    Plan {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        nu: u32,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 0.01)]
        eps_prime: f64,
    },
}

/// Shared JSON configuration for the exponential-sum subcommands. Unused
/// fields are simply ignored by commands that do not need them.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ExpConfig {
    q: u64,
    a: u64,
    h: u64,
    k: u64,
    m: u64,
    n: u64,
    #[serde(default)]
    seed: u64,
    /// scale of the smooth weight (sigma / shift-check)
    #[serde(default)]
    x: Option<f64>,
    /// truncation exponent for sigma
    #[serde(default)]
    eps: Option<f64>,
    /// shift ranges (rho / shift-check); must satisfy 4rs = h
    #[serde(default)]
    r: Option<u64>,
    #[serde(default)]
    s: Option<u64>,
    /// number of random shifts to test (shift-check)
    #[serde(default)]
    shifts: Option<u64>,
    /// moment order (moments / strata)
    #[serde(default)]
    nu: Option<u32>,
    /// stratification thresholds (strata)
    #[serde(default)]
    c1: Option<f64>,
    #[serde(default)]
    c2: Option<f64>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    std::process::exit(0);
                }
                ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument
                    if e.to_string().contains("unrecognized subcommand") =>
                {
                    64
                }
                _ => 65,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if cli.global.threads > 0 {
        // module reductions are ordered, so the pool size only affects speed
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global();
    }
    let started = Instant::now();
    match run(&cli, started) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Domain(_) => 2,
                Error::Resource(_) => 3,
                Error::Numerical(_) => 1,
            };
            std::process::exit(code);
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::numerical(format!("i/o failure: {e}"))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        // invalid configuration is its own exit class
        eprintln!("error: invalid config {}: {e}", path.display());
        std::process::exit(65);
    })
}

/// Exact rational from "p/q" or a finite decimal string.
fn parse_varpi(text: &str) -> Result<Rational64, Error> {
    let bad = |_| Error::domain(format!("cannot parse exponent '{text}'"));
    if let Some((p, q)) = text.split_once('/') {
        let num: i64 = p.trim().parse().map_err(bad)?;
        let den: i64 = q.trim().parse().map_err(bad)?;
        if den == 0 {
            return Err(Error::domain("exponent denominator is zero"));
        }
        return Ok(Rational64::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: i64 = digits.parse().map_err(bad)?;
        let den = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| Error::domain(format!("exponent '{text}' has too many digits")))?;
        return Ok(Rational64::new(num, den));
    }
    let num: i64 = text.trim().parse().map_err(bad)?;
    Ok(Rational64::new(num, 1))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut f = File::create(path).map_err(io_err)?;
            f.write_all(content.as_bytes()).map_err(io_err)
        }
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(io_err)
        }
    }
}

/// JSON envelope: command, resolved config, wall time, result payload.
fn emit(
    cli: &Cli,
    started: Instant,
    command: &str,
    config: serde_json::Value,
    result: serde_json::Value,
    csv: String,
) -> Result<(), Error> {
    match cli.global.format {
        Format::Csv => write_output(&cli.global.out, &csv),
        Format::Json => {
            let envelope = serde_json::json!({
                "command": command,
                "config": config,
                "globals": &cli.global,
                "wall_time_ms": started.elapsed().as_secs_f64() * 1e3,
                "result": result,
            });
            let mut text = serde_json::to_string_pretty(&envelope)
                .map_err(|e| Error::numerical(format!("serialization: {e}")))?;
            text.push('\n');
            write_output(&cli.global.out, &text)
        }
    }
}

fn unimodular_coeffs(len: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = btk_core::SplitMix64::new(seed);
    (0..len).map(|_| rng.next_unimodular()).collect()
}

fn quint_config(cfg: &ExpConfig, seed: u64) -> Result<QuintConfig, Error> {
    let q = PrimeModulus::new(cfg.q)?;
    QuintConfig::with_random_coeffs(q, cfg.a, cfg.h, cfg.k, cfg.m, cfg.n, seed)
}

fn run(cli: &Cli, started: Instant) -> Result<(), Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Kl { q, z } => {
            let modulus = PrimeModulus::new(*q)?;
            let value = kloosterman::kl(*z, &modulus);
            emit(
                cli,
                started,
                "kl",
                serde_json::json!({"q": q, "z": z}),
                serde_json::json!({"kl": value}),
                format!("q,z,kl\n{q},{z},{value:.17e}\n"),
            )
        }
        Command::Table { q, binary } => {
            let modulus = PrimeModulus::new(*q)?;
            let table = KloostermanTable::build(&modulus)?;
            if *binary {
                let path = g.out.as_ref().ok_or_else(|| {
                    Error::domain("--binary requires --out (refusing to write bytes to stdout)")
                })?;
                let mut f = File::create(path).map_err(io_err)?;
                table.write_binary(&mut f).map_err(io_err)?;
                return Ok(());
            }
            let mut csv = Vec::new();
            table.write_csv(&mut csv).map_err(io_err)?;
            let csv = String::from_utf8(csv).expect("csv is ascii");
            emit(
                cli,
                started,
                "table",
                serde_json::json!({"q": q}),
                serde_json::json!({"values": table.values()}),
                csv,
            )
        }
        Command::Weil { q, trials } => {
            let modulus = PrimeModulus::new(*q)?;
            let report = kloosterman::weil_check(&modulus, *trials, g.seed)?;
            let csv = format!(
                "q,trials,max_ratio,argmax_m,argmax_n\n{},{},{:.17e},{},{}\n",
                report.q, report.trials, report.max_ratio, report.argmax.0, report.argmax.1
            );
            emit(
                cli,
                started,
                "weil",
                serde_json::json!({"q": q, "trials": trials, "seed": g.seed}),
                serde_json::to_value(&report).unwrap(),
                csv,
            )
        }
        Command::PiAp { x, q, a } => {
            let count = apsieve::pi_ap(*x, *q, *a)?;
            emit(
                cli,
                started,
                "pi-ap",
                serde_json::json!({"x": x, "q": q, "a": a}),
                serde_json::json!({"count": count}),
                format!("x,q,a,count\n{x},{q},{a},{count}\n"),
            )
        }
        Command::BtScan { x, q, csv } => {
            let report = apsieve::bt_ratio_scan(*x, *q)?;
            if let Some(path) = csv {
                let rows = apsieve::bt_scan_rows(*x, *q)?;
                let mut f = File::create(path).map_err(io_err)?;
                writeln!(f, "a,count,ratio").map_err(io_err)?;
                for (a, count, ratio) in rows {
                    writeln!(f, "{a},{count},{ratio:.17e}").map_err(io_err)?;
                }
            }
            let summary_csv = format!(
                "x,q,max_ratio,argmax_a,max_count,total_coprime,pi_x\n\
                 {},{},{:.17e},{},{},{},{}\n",
                report.x,
                report.q,
                report.max_ratio,
                report.argmax_a,
                report.max_count,
                report.total_coprime,
                report.pi_x
            );
            emit(
                cli,
                started,
                "bt-scan",
                serde_json::json!({"x": x, "q": q}),
                serde_json::to_value(&report).unwrap(),
                summary_csv,
            )
        }
        Command::PoissonCheck { x, q, a, d_max, eps } => {
            let modulus = PrimeModulus::new(*q)?;
            let w = SmoothWeight::with_standard_width(*x)?;
            let mut rows = String::from("d,remainder,truncated,abs_diff\n");
            let mut max_diff = 0.0f64;
            for d in 1..=*d_max {
                if d % *q == 0 {
                    continue;
                }
                // truncation H = x^{eps-1} * (dq) * q mirrors H = x^{eps-1}MNq
                // with the dyadic level replaced by the actual modulus dq
                let big_h = x.powf(*eps - 1.0) * (d * q * q) as f64;
                let r = apsieve::remainder(d, &modulus, *a, &w)?;
                let t = apsieve::remainder_truncated(d, &modulus, *a, &w, big_h)?;
                max_diff = max_diff.max((r - t).abs());
                rows.push_str(&format!("{d},{r:.17e},{t:.17e},{:.17e}\n", (r - t).abs()));
            }
            emit(
                cli,
                started,
                "poisson-check",
                serde_json::json!({"x": x, "q": q, "a": a, "d_max": d_max, "eps": eps}),
                serde_json::json!({"max_abs_diff": max_diff}),
                rows,
            )
        }
        Command::Quint { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let seed = if cfg.seed != 0 { cfg.seed } else { g.seed };
            let qc = quint_config(&cfg, seed)?;
            let table = KloostermanTable::build(&qc.q)?;
            let value = expsums::quint_sum_sharp(&qc, &table)?;
            emit(
                cli,
                started,
                "quint",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::json!({"re": value.re, "im": value.im, "seed": seed}),
                format!("re,im\n{:.17e},{:.17e}\n", value.re, value.im),
            )
        }
        Command::Sigma { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let seed = if cfg.seed != 0 { cfg.seed } else { g.seed };
            let x = cfg
                .x
                .ok_or_else(|| Error::domain("sigma config requires the scale field 'x'"))?;
            let eps = cfg
                .eps
                .ok_or_else(|| Error::domain("sigma config requires the field 'eps'"))?;
            let qc = quint_config(&cfg, seed)?;
            let w = SmoothWeight::with_standard_width(x)?;
            let table = KloostermanTable::build(&qc.q)?;
            let report = expsums::sigma_weighted(&qc, &w, &table, eps)?;
            let csv = format!(
                "sigma,big_k,eps,k_zero_term,k_zero_bound\n{:.17e},{},{},{:.17e},{:.17e}\n",
                report.sigma, report.big_k, report.eps, report.k_zero_term, report.k_zero_bound
            );
            emit(
                cli,
                started,
                "sigma",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::to_value(&report).unwrap(),
                csv,
            )
        }
        Command::ShiftCheck { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let seed = if cfg.seed != 0 { cfg.seed } else { g.seed };
            let x = cfg.x.unwrap_or(1.0e4);
            let qc = quint_config(&cfg, seed)?;
            let w = SmoothWeight::with_standard_width(x)?;
            let table = KloostermanTable::build(&qc.q)?;
            let tent = TentWeight::new(cfg.h as f64)?;
            let n_shifts = cfg.shifts.unwrap_or(20);
            let mut rng = btk_core::SplitMix64::new(seed ^ 0x5151_5151);
            let shifts: Vec<(i64, i64, i64)> = (0..n_shifts)
                .map(|_| {
                    (
                        rng.next_range(1, 3) as i64,
                        rng.next_range(1, 4) as i64,
                        rng.next_range(1, 4) as i64,
                    )
                })
                .collect();
            let (disc, base) = expsums::shift_identity_check(&qc, &w, &table, &tent, &shifts)?;
            emit(
                cli,
                started,
                "shift-check",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::json!({"max_discrepancy": disc, "base_norm": base,
                                   "shifts": shifts}),
                format!("max_discrepancy,base_norm\n{disc:.17e},{base:.17e}\n"),
            )
        }
        Command::Rho { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let seed = if cfg.seed != 0 { cfg.seed } else { g.seed };
            let (r, s) = match (cfg.r, cfg.s) {
                (Some(r), Some(s)) => (r, s),
                _ => return Err(Error::domain("rho config requires shift ranges 'r' and 's'")),
            };
            let qc = quint_config(&cfg, seed)?;
            let shift = ShiftConfig::new(r, s, cfg.h)?;
            let report = expsums::rho_census(&qc, &shift, g.budget)?;
            let csv = format!(
                "sigma1,sigma2,bound1,bound2,ratio1,ratio2,rho_support\n\
                 {},{},{:.17e},{:.17e},{:.17e},{:.17e},{}\n",
                report.sigma1,
                report.sigma2,
                report.bound1,
                report.bound2,
                report.ratios[0],
                report.ratios[1],
                report.rho_support
            );
            emit(
                cli,
                started,
                "rho",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::to_value(&report).unwrap(),
                csv,
            )
        }
        Command::Moments { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let nu = cfg
                .nu
                .ok_or_else(|| Error::domain("moments config requires the field 'nu'"))?;
            let modulus = PrimeModulus::new(cfg.q)?;
            let table = KloostermanTable::build(&modulus)?;
            let alpha = if cfg.seed != 0 {
                unimodular_coeffs(cfg.m as usize, cfg.seed)
            } else {
                vec![Complex64::new(1.0, 0.0); cfg.m as usize]
            };
            let report = expsums::sigma3_moment(&table, cfg.m, nu, &alpha, g.budget)?;
            let csv = format!(
                "q,m,nu,value,bound,ratio\n{},{},{},{:.17e},{:.17e},{:.17e}\n",
                cfg.q, cfg.m, nu, report.value, report.bound, report.ratio
            );
            emit(
                cli,
                started,
                "moments",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::to_value(&report).unwrap(),
                csv,
            )
        }
        Command::Strata { config } => {
            let cfg: ExpConfig = parse_json(config)?;
            let nu = cfg
                .nu
                .ok_or_else(|| Error::domain("strata config requires the field 'nu'"))?;
            let modulus = PrimeModulus::new(cfg.q)?;
            let table = KloostermanTable::build(&modulus)?;
            let mut thresholds = StrataThresholds::default();
            if let Some(c1) = cfg.c1 {
                thresholds.c1 = c1;
            }
            if let Some(c2) = cfg.c2 {
                thresholds.c2 = c2;
            }
            let report = expsums::strata_census(&table, cfg.m, nu, thresholds, g.budget)?;
            let csv = format!(
                "q,m,nu,v_like,w_like,generic,v_ratio,w_ratio\n\
                 {},{},{},{},{},{},{:.17e},{:.17e}\n",
                cfg.q,
                cfg.m,
                nu,
                report.v_like,
                report.w_like,
                report.generic,
                report.v_ratio,
                report.w_ratio
            );
            emit(
                cli,
                started,
                "strata",
                serde_json::to_value(&cfg).unwrap(),
                serde_json::to_value(&report).unwrap(),
                csv,
            )
        }
        Command::Bounds { varpi, nu, grid } => {
            let w = parse_varpi(varpi)?;
            let plan = bounds::c_new(*nu, w)?;
            let classical = bounds::c_iwaniec_exact(w)?;
            let mut csv = String::from("varpi,c_iwaniec,c_new\n");
            if let Some(points) = grid {
                let lo = Rational64::new(1, 2);
                let hi = bounds::range_hi_exact(*nu);
                let step = (hi - lo) / Rational64::from_integer(*points as i64);
                for i in 0..*points as i64 {
                    let v = lo + step * Rational64::from_integer(i);
                    let c = bounds::c_new(*nu, v)?;
                    let (ci, _) = bounds::c_iwaniec_exact(v)?;
                    csv.push_str(&format!(
                        "{:.17e},{:.17e},{:.17e}\n",
                        c.varpi,
                        num_traits::ToPrimitive::to_f64(&ci).unwrap(),
                        c.c
                    ));
                }
            } else {
                csv.push_str(&format!(
                    "{:.17e},{:.17e},{:.17e}\n",
                    plan.varpi,
                    num_traits::ToPrimitive::to_f64(&classical.0).unwrap(),
                    plan.c
                ));
            }
            emit(
                cli,
                started,
                "bounds",
                serde_json::json!({"varpi": varpi, "nu": nu, "grid": grid}),
                serde_json::json!({
                    "C": plan.rational_form,
                    "plan": serde_json::to_value(&plan).unwrap(),
                    "c_iwaniec": format!("{}/{}", classical.0.numer(), classical.0.denom()),
                    "c_iwaniec_in_range": classical.1,
                }),
                csv,
            )
        }
        Command::Optimize { varpi, nu_max } => {
            let w = parse_varpi(varpi)?;
            let best = bounds::optimize_nu(w, *nu_max)?;
            let (result, csv) = match best {
                Some((nu, plan)) => (
                    serde_json::json!({"feasible": true, "nu": nu,
                                       "plan": serde_json::to_value(&plan).unwrap()}),
                    format!(
                        "varpi,nu,c,rational_form\n{:.17e},{},{:.17e},{}\n",
                        plan.varpi, nu, plan.c, plan.rational_form
                    ),
                ),
                None => (
                    serde_json::json!({"feasible": false}),
                    String::from("varpi,nu,c,rational_form\n"),
                ),
            };
            emit(
                cli,
                started,
                "optimize",
                serde_json::json!({"varpi": varpi, "nu_max": nu_max}),
                result,
                csv,
            )
        }
        Command::Plan { x, q, nu, eps, eps_prime } => {
            let plan = bounds::parameter_plan(*x, *q, *nu, *eps, *eps_prime)?;
            let csv = format!(
                "x,q,nu,m,n,d,h,k,r,s,all_flags_pass\n\
                 {},{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}\n",
                plan.x,
                plan.q,
                plan.nu,
                plan.m,
                plan.n,
                plan.d,
                plan.h,
                plan.k,
                plan.r,
                plan.s,
                plan.flags.all_pass()
            );
            emit(
                cli,
                started,
                "plan",
                serde_json::json!({"x": x, "q": q, "nu": nu, "eps": eps,
                                   "eps_prime": eps_prime}),
                serde_json::to_value(&plan).unwrap(),
                csv,
            )
        }
    }
}
