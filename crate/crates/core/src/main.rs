//! Command-line front end. Exit codes are the machine contract:
//! 0 verified, 2 gate refused, 3 attempts exhausted / not verified,
//! 1 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigUint;

use reduction_lab::bounds::{contracted_jrv, es_check};
use reduction_lab::certificate::{replay, Certificate};
use reduction_lab::error::{Error, Result};
use reduction_lab::files::{FiltrationFile, IdealFile};
use reduction_lab::filtration::FiltrationSpec;
use reduction_lab::ring::MultiIndex;
use reduction_lab::search::{
    find_joint_reduction, find_reduction, reduction_number, SearchOptions,
    DEFAULT_COEFF_BOUND, DEFAULT_MAX_ATTEMPTS,
};
use reduction_lab::registry;
use reduction_lab::truncated::{smallest_m_power_inside, TruncatedAlgebra};

const SEED_ENV: &str = "REDUCTION_LAB_SEED";

#[derive(Parser)]
#[command(
    name = "reduction-lab",
    version,
    about = "Exact certification of reductions and joint reductions of ideal filtrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchFlags {
    /// RNG seed; REDUCTION_LAB_SEED overrides the built-in default
    #[arg(long)]
    seed: Option<u64>,
    /// Coefficient range [-B, B] for sampled elements
    #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
    coeff_bound: i64,
    /// Sampling attempts before giving up (the range doubles each retry)
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    attempts: u32,
    /// Run even when a hypothesis gate refuses; the certificate is marked
    #[arg(long)]
    force: bool,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        let seed = self.seed.or_else(|| {
            std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok())
        });
        SearchOptions {
            seed: seed.unwrap_or(1),
            coeff_bound: self.coeff_bound,
            max_attempts: self.attempts,
            force: self.force,
            ..SearchOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generator count, order, and generators of an ideal
    Mu { ideal: PathBuf },
    /// Integral closure of a monomial ideal
    Closure { ideal: PathBuf },
    /// Compare a generator count against the product-of-binomials bound
    EsCheck {
        /// Generator count to test (decimal, any size)
        #[arg(long)]
        mu: String,
        /// Degree vector, comma-separated
        #[arg(long)]
        n: String,
        /// Element-count vector, comma-separated
        #[arg(long)]
        r: String,
    },
    /// Search for r general elements with (x_1..x_r) I_{n-1} = I_n
    FindReduction {
        filtration: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        search: SearchFlags,
        /// Write the certificate JSON here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a joint reduction at a multidegree
    JointReduction {
        filtration: PathBuf,
        #[arg(long)]
        n: String,
        #[arg(long)]
        r: String,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest degree after which J I_{m-1} = I_m holds up to --nmax
    ReductionNumber {
        filtration: PathBuf,
        /// Ideal file whose generators form J
        #[arg(long)]
        j: PathBuf,
        #[arg(long)]
        nmax: u32,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trigger degrees for a pair of contracted plane ideals
    JrvContracted { i: PathBuf, j: PathBuf },
    /// Re-run a stored certificate and check it reproduces its verdict
    Replay { certificate: PathBuf },
    /// Re-run built-in examples against their recorded values
    Reproduce {
        /// Example id, or "all"
        id: String,
        #[command(flatten)]
        search: SearchFlags,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_vec(text: &str) -> Result<MultiIndex> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<u32>, _>>()
        .map_err(|_| Error::Input(format!("bad vector '{text}'; expected e.g. 2,1")))?;
    if parts.is_empty() {
        return Err(Error::Input("empty vector".into()));
    }
    Ok(MultiIndex(parts))
}

fn write_certificate(cert: &Certificate, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        fs::write(path, cert.to_json())
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

/// 0 verified, 3 not verified.
fn verdict_code(verified: bool) -> u8 {
    if verified {
        0
    } else {
        3
    }
}

fn cmd_mu(path: &Path) -> Result<u8> {
    let file = IdealFile::parse(&read_text(path)?)?;
    if file.ring.hypersurface.is_none() {
        if let Some(ideal) = file.monomial()? {
            println!("mu = {}", ideal.mu());
            println!("order = {}", ideal.order()?);
            println!("generators: {}", ideal.render(&file.ring.vars));
            return Ok(0);
        }
    }
    // quotient ring or polynomial generators: count via Nakayama rank drop
    let gens = file.gens_as_polys()?;
    let relation = file.ring.hypersurface.clone();
    let t = smallest_m_power_inside(file.nvars(), relation.as_ref(), &gens, 24)?;
    let alg = TruncatedAlgebra::build(file.nvars(), t + 2, relation)?;
    println!("mu = {}", alg.mu_in_quotient(&gens, t)?);
    println!("absorption degree = {t}");
    Ok(0)
}

fn cmd_closure(path: &Path) -> Result<u8> {
    let file = IdealFile::parse(&read_text(path)?)?;
    if file.ring.hypersurface.is_some() {
        return Err(Error::Input(
            "unsupported ideal kind: closure works in the polynomial ring only".into(),
        ));
    }
    let Some(ideal) = file.monomial()? else {
        return Err(Error::Input(
            "unsupported ideal kind: closure needs a monomial ideal".into(),
        ));
    };
    let closed = reduction_lab::newton::integral_closure(&ideal)?;
    println!("closure: {}", closed.render(&file.ring.vars));
    println!("mu = {}", closed.mu());
    Ok(0)
}

fn cmd_es_check(mu: &str, n: &str, r: &str) -> Result<u8> {
    let mu: BigUint = mu
        .parse()
        .map_err(|_| Error::Input(format!("bad generator count '{mu}'")))?;
    let report = es_check(mu, &parse_vec(n)?, &parse_vec(r)?)?;
    println!(
        "mu = {} vs bound = {} at n = {}, r = {}",
        report.mu, report.bound, report.n, report.r
    );
    if report.triggered {
        println!("triggered: general elements in these counts suffice");
        Ok(0)
    } else {
        println!("not triggered");
        Ok(2)
    }
}

fn load_filtration(path: &Path) -> Result<(FiltrationSpec, Vec<String>)> {
    let file = FiltrationFile::parse(&read_text(path)?)?;
    let vars = file.ring.vars.clone();
    Ok((file.to_spec()?, vars))
}

fn summarize_equation(cert: &Certificate, vars: &[String]) {
    let (Certificate::Reduction(c) | Certificate::JointReduction(c)) = cert else {
        return;
    };
    println!(
        "gates: bound {} vs {} ({}){}",
        c.gates.es.mu,
        c.gates.es.bound,
        if c.gates.es.triggered { "triggered" } else { "not triggered" },
        if c.gates.forced { ", forced" } else { "" },
    );
    if let Some(g) = &c.gates.degree {
        println!(
            "degree gate: threshold {} from scan over {} ({})",
            g.required,
            g.scan_box,
            if g.satisfied { "met" } else { "not met" },
        );
    }
    for s in &c.summands {
        for e in &s.elements {
            println!("element from degree {}: {}", s.source_degree, e.render(vars));
        }
    }
    if c.verified {
        println!(
            "verified at attempt {} (seed {}, coefficients in [-{}, {}])",
            c.attempt, c.seed, c.coeff_bound, c.coeff_bound
        );
    } else {
        println!(
            "not verified after {} attempts (seed {}); failing target indices: {:?}",
            c.attempts_allowed, c.seed, c.failing_targets
        );
    }
}

fn cmd_find_reduction(
    path: &Path,
    n: u32,
    r: u32,
    flags: &SearchFlags,
    out: Option<&Path>,
) -> Result<u8> {
    let (spec, vars) = load_filtration(path)?;
    let cert = find_reduction(&spec, &vars, n, r, &flags.options())?;
    summarize_equation(&cert, &vars);
    write_certificate(&cert, out)?;
    Ok(verdict_code(cert.verified()))
}

fn cmd_joint_reduction(
    path: &Path,
    n: &str,
    r: &str,
    flags: &SearchFlags,
    out: Option<&Path>,
) -> Result<u8> {
    let (spec, vars) = load_filtration(path)?;
    let cert = find_joint_reduction(&spec, &vars, &parse_vec(n)?, &parse_vec(r)?, &flags.options())?;
    summarize_equation(&cert, &vars);
    write_certificate(&cert, out)?;
    Ok(verdict_code(cert.verified()))
}

fn cmd_reduction_number(
    path: &Path,
    j_path: &Path,
    nmax: u32,
    flags: &SearchFlags,
    out: Option<&Path>,
) -> Result<u8> {
    let (spec, vars) = load_filtration(path)?;
    let j_file = IdealFile::parse(&read_text(j_path)?)?;
    if j_file.ring.vars != vars {
        return Err(Error::Input(format!(
            "J lives in {:?} but the filtration uses {:?}",
            j_file.ring.vars, vars
        )));
    }
    let cert = reduction_number(&spec, &vars, &j_file.gens_as_polys()?, nmax, &flags.options())?;
    let Certificate::ReductionNumber(c) = &cert else { unreachable!() };
    for ch in &c.checks {
        println!(
            "degree {}: J * I_{} {} I_{}",
            ch.m,
            ch.m - 1,
            if ch.holds { "=" } else { "<" },
            ch.m
        );
    }
    match c.r {
        Some(r) => println!("reduction number = {r} (exact up to degree {nmax})"),
        None => println!("no stabilization degree found up to {nmax}"),
    }
    write_certificate(&cert, out)?;
    Ok(verdict_code(cert.verified()))
}

fn cmd_jrv_contracted(i_path: &Path, j_path: &Path) -> Result<u8> {
    let mut ideals = Vec::new();
    for path in [i_path, j_path] {
        let file = IdealFile::parse(&read_text(path)?)?;
        if file.ring.hypersurface.is_some() {
            return Err(Error::Input("contracted pairs live in the polynomial ring".into()));
        }
        let Some(ideal) = file.monomial()? else {
            return Err(Error::Input("contracted pairs must be monomial ideals".into()));
        };
        ideals.push(ideal);
    }
    let n = contracted_jrv(&ideals[0], &ideals[1])?;
    println!("joint reduction vector: {n}");
    Ok(0)
}

fn cmd_replay(path: &Path) -> Result<u8> {
    let cert = Certificate::from_json(&read_text(path)?)?;
    let reproduced = replay(&cert)?;
    if !reproduced {
        println!("MISMATCH: stored verdict does not replay");
        return Ok(1);
    }
    println!(
        "verdict reproduced: {}",
        if cert.verified() { "verified" } else { "not verified" }
    );
    Ok(verdict_code(cert.verified()))
}

fn cmd_reproduce(id: &str, flags: &SearchFlags) -> Result<u8> {
    let opts = flags.options();
    let reports = if id == "all" {
        registry::run_all(&opts)?
    } else {
        vec![registry::run_example(id, &opts)?]
    };
    let mut all_pass = true;
    for report in &reports {
        println!("{} — {}", report.id, report.title);
        for c in &report.checks {
            if c.pass {
                println!("  PASS {} | {}", c.label, c.actual);
            } else {
                all_pass = false;
                println!("  FAIL {} | expected: {} | actual: {}", c.label, c.expected, c.actual);
            }
        }
    }
    Ok(verdict_code(all_pass))
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Mu { ideal } => cmd_mu(ideal),
        Command::Closure { ideal } => cmd_closure(ideal),
        Command::EsCheck { mu, n, r } => cmd_es_check(mu, n, r),
        Command::FindReduction { filtration, n, r, search, out } => {
            cmd_find_reduction(filtration, *n, *r, search, out.as_deref())
        }
        Command::JointReduction { filtration, n, r, search, out } => {
            cmd_joint_reduction(filtration, n, r, search, out.as_deref())
        }
        Command::ReductionNumber { filtration, j, nmax, search, out } => {
            cmd_reduction_number(filtration, j, *nmax, search, out.as_deref())
        }
        Command::JrvContracted { i, j } => cmd_jrv_contracted(i, j),
        Command::Replay { certificate } => cmd_replay(certificate),
        Command::Reproduce { id, search } => cmd_reproduce(id, search),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::GateRefused(_) | Error::Hypothesis(_))) => {
            eprintln!("refused: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
