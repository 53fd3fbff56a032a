//! Command-line front end: verification suites, bracket evaluation,
//! reduction reports, Wong simulations and root-system tables.
//!
//! Exit codes: 0 success, 1 check or drift failure, 2 configuration error,
//! 3 numerical blow-up.

mod checks;
mod config;
mod fields;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liepoisson::dynamics::{integrate_wong, invariant_report, write_csv, DriftThresholds};
use liepoisson::expr::Expr;
use liepoisson::group::exp;
use liepoisson::poisson::{
    expr_field, BivectorBracket, BivectorSpec, LiePoisson, TStarG, WedgeTermSpec,
};
use liepoisson::reduce::{
    kernel_rank, omega_f_matrix, orbit_dimension, root_system, CartanGauged, CartanReduced, Gauged,
    MomentumSpec,
};
use liepoisson::{load_algebra, Bracket, Error, GroupElement, LieAlgebra, PhasePoint};
use serde_json::json;

use crate::config::{RunConfig, DEFAULT_SEED};

#[derive(Debug)]
pub enum Failure {
    Check(String),
    Config(String),
    BlowUp(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Config(_) => 2,
            Failure::BlowUp(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Config(m) | Failure::BlowUp(m) => m,
        }
    }
}

/// Input problems are configuration errors; everything else is a failed check.
fn classify(e: Error) -> Failure {
    match e {
        Error::ExpressionParse { .. }
        | Error::UnknownVariable(_)
        | Error::InvalidSpec(_)
        | Error::InvalidArgument(_)
        | Error::DimensionMismatch { .. }
        | Error::UnresolvableFrameField(_)
        | Error::UnsupportedAlgebra(_)
        | Error::NoMatrixBasis(_) => Failure::Config(e.to_string()),
        other => Failure::Check(format!("{other}")),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "liepoisson",
    version,
    about = "Poisson structures on T*G, their reductions and Wong dynamics"
)]
struct Cli {
    /// JSON run configuration; built-in defaults (so3) when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random sample (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for reports and trajectories.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Engine {
    LiePoisson,
    TstarG,
    Bivector,
    Gauged,
    Cartan,
    CartanGauged,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every structural check on seeded random data.
    Verify,
    /// Evaluate one bracket `{f, g}` at a point.
    Bracket {
        #[arg(long, value_enum)]
        engine: Engine,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Comma-separated `x` (or `I`, or `zh`) coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        p: Vec<f64>,
        /// Exponential coordinates of the group element (identity when omitted).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        group: Vec<f64>,
        /// JSON file with a list of wedge terms, for `--engine bivector`.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Rank and kernel of `ω_f` for the configured generalized momentum.
    Reduce,
    /// Integrate Wong's equations from the configured initial state.
    Simulate,
    /// Cartan subalgebra, positive roots and root vectors.
    Rootsys,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let seed = cli.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let out = cli.out.clone();
    if let Some(dir) = &out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))?;
    }
    match &cli.command {
        Command::Verify => verify(&cfg, seed, out.as_deref()),
        Command::Bracket {
            engine,
            f,
            g,
            x,
            q,
            p,
            group,
            spec,
        } => {
            let alg = load_algebra(&cfg.algebra).map_err(classify)?;
            let value = bracket(&cfg, &alg, *engine, f, g, x, q, p, group, spec.as_deref())?;
            println!("{value}");
            Ok(())
        }
        Command::Reduce => reduce(&cfg, seed, out.as_deref()),
        Command::Simulate => simulate(&cfg, out.as_deref()),
        Command::Rootsys => rootsys(&cfg, out.as_deref()),
    }
}

fn write_report(out: Option<&Path>, name: &str, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    if let Some(dir) = out {
        let path = dir.join(name);
        fs::write(&path, &text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    println!("{text}");
    Ok(())
}

fn verify(cfg: &RunConfig, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let alg = match load_algebra(&cfg.algebra) {
        Ok(a) => a,
        Err(e @ (Error::JacobiViolation { .. } | Error::AntisymmetryViolation { .. })) => {
            let report = json!({
                "seed": seed,
                "pass": false,
                "checks": [{"name": "algebra.structure_constants", "pass": false, "error": format!("{e:?}")}],
            });
            eprintln!("FAIL algebra.structure_constants: {e}");
            write_report(out, &cfg.outputs.report, &report)?;
            return Err(Failure::Check(format!("{e:?}")));
        }
        Err(e) => return Err(Failure::Config(e.to_string())),
    };
    let mut rng = checks::seeded_rng(seed);
    let suite = checks::run(cfg, &alg, &mut rng);
    for c in &suite.checks {
        eprintln!(
            "{} {:<40} defect {:.3e} (tol {:.1e}){}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.defect,
            c.tol,
            c.error
                .as_deref()
                .map(|e| format!(" {e}"))
                .unwrap_or_default()
        );
    }
    let report = json!({
        "seed": seed,
        "algebra": alg.name(),
        "pass": suite.pass(),
        "checks": suite.checks,
    });
    write_report(out, &cfg.outputs.report, &report)?;
    if suite.pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = suite
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure::Check(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn bracket(
    cfg: &RunConfig,
    alg: &LieAlgebra,
    engine: Engine,
    f: &str,
    g: &str,
    x: &[f64],
    q: &[f64],
    p: &[f64],
    group: &[f64],
    spec: Option<&Path>,
) -> Result<f64, Failure> {
    let ff = expr_field(Expr::parse(f).map_err(classify)?);
    let gf = expr_field(Expr::parse(g).map_err(classify)?);
    let group_element = || -> Result<GroupElement, Failure> {
        if group.is_empty() {
            GroupElement::identity_of(alg).map_err(classify)
        } else {
            exp(alg, group).map_err(classify)
        }
    };
    let mut pt = PhasePoint {
        q: q.to_vec(),
        p: p.to_vec(),
        x: x.to_vec(),
        g: None,
    };
    let engine: Box<dyn Bracket> = match engine {
        Engine::LiePoisson => Box::new(LiePoisson::new(alg)),
        Engine::TstarG => {
            pt.g = Some(group_element()?);
            Box::new(TStarG::new(alg))
        }
        Engine::Bivector => {
            let path =
                spec.ok_or_else(|| Failure::Config("--engine bivector needs --spec".into()))?;
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            let terms: Vec<WedgeTermSpec> =
                serde_json::from_str(&text).map_err(|e| Failure::Config(e.to_string()))?;
            if alg.matrix_basis().is_some() {
                pt.g = Some(group_element()?);
            }
            Box::new(BivectorBracket::new(
                BivectorSpec::from_json_terms(&terms).map_err(classify)?,
                Some(alg),
            ))
        }
        Engine::Gauged => {
            let a = cfg.potential.build(alg, q.len()).map_err(classify)?;
            Box::new(Gauged::new(alg, &a).map_err(classify)?)
        }
        Engine::Cartan => {
            pt.g = Some(group_element()?);
            Box::new(CartanReduced::new(&root_system(alg).map_err(classify)?))
        }
        Engine::CartanGauged => {
            pt.g = Some(group_element()?);
            let a = cfg.potential.build(alg, q.len()).map_err(classify)?;
            Box::new(CartanGauged::new(&root_system(alg).map_err(classify)?, &a).map_err(classify)?)
        }
    };
    engine.bracket(&ff, &gf, &pt).map_err(classify)
}

fn reduce(cfg: &RunConfig, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let alg = load_algebra(&cfg.algebra).map_err(classify)?;
    let src = cfg
        .f_spec
        .as_ref()
        .ok_or_else(|| Failure::Config("reduce needs f_spec".into()))?;
    let spec = MomentumSpec::parse(&alg, src).map_err(classify)?;
    let zr = match &cfg.zr {
        Some(z) => z.clone(),
        None => fields::uniform(&mut checks::seeded_rng(seed), alg.dim(), 1.0),
    };
    let f = |z: &[f64]| spec.eval(z);
    let m = omega_f_matrix(&alg, &f, &zr).map_err(classify)?;
    let tol = cfg.tolerances.rank_tol;
    let report = kernel_rank(&m, tol);
    let n = alg.dim();
    let constant = (0..n).all(|r| (0..n).all(|c| m[(n + r, c)] == 0.0));
    let orbit_dim =
        orbit_dimension(&alg, &spec.eval(&zr).map_err(classify)?, tol).map_err(classify)?;
    let consistent = report.rank.is_multiple_of(2) && (!constant || report.rank == orbit_dim);
    let value = json!({
        "rank": report.rank,
        "kernel_dim": report.kernel_dim,
        "kernel_basis": report.kernel_basis,
        "orbit_dim_check": {
            "momentum_constant": constant,
            "orbit_dim": orbit_dim,
            "consistent": consistent,
        },
        "zr": zr,
    });
    write_report(out, &cfg.outputs.report, &value)?;
    if consistent {
        Ok(())
    } else {
        Err(Failure::Check(
            "rank does not match the orbit dimension".into(),
        ))
    }
}

fn simulate(cfg: &RunConfig, out: Option<&Path>) -> Result<(), Failure> {
    let alg = load_algebra(&cfg.algebra).map_err(classify)?;
    let s0 = cfg
        .initial
        .as_ref()
        .ok_or_else(|| Failure::Config("simulate needs an initial state".into()))?;
    let a = cfg.potential.build(&alg, s0.q.len()).map_err(classify)?;
    let traj = integrate_wong(&alg, &a, s0, cfg.dt, cfg.steps).map_err(classify)?;
    let dir = out.unwrap_or(Path::new("."));
    let path = dir.join(&cfg.outputs.trajectory);
    let file = fs::File::create(&path)
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    write_csv(&traj, std::io::BufWriter::new(file))
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    if let Some(b) = traj.blow_up {
        return Err(Failure::BlowUp(format!(
            "non-finite state at step {} (t = {}); partial trajectory in {}",
            b.step,
            b.time,
            path.display()
        )));
    }
    let thresholds = DriftThresholds {
        energy: cfg.tolerances.drift_tol,
        casimir: cfg.tolerances.casimir_drift_tol,
    };
    let report = invariant_report(&traj, thresholds).map_err(classify)?;
    let value = json!({ "trajectory": path.display().to_string(), "drift": report });
    write_report(out, &cfg.outputs.report, &value)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("invariant drift exceeds tolerance".into()))
    }
}

fn rootsys(cfg: &RunConfig, out: Option<&Path>) -> Result<(), Failure> {
    let alg = load_algebra(&cfg.algebra).map_err(classify)?;
    let r = root_system(&alg).map_err(classify)?;
    let rows = |m: &nalgebra::DMatrix<f64>| -> Vec<Vec<f64>> {
        (0..m.nrows())
            .map(|i| m.row(i).iter().copied().collect())
            .collect()
    };
    let value = json!({
        "algebra": alg.name(),
        "rank": r.rank(),
        "cartan_indices": r.cartan_indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "positive_roots": r.positive_roots,
        "root_vectors": r.root_vectors,
        "cartan_killing": rows(&r.cartan_killing),
        "killing_dual": rows(&r.killing_dual),
        "commutator_defect": r.commutator_defect().map_err(classify)?,
    });
    write_report(out, &cfg.outputs.report, &value)
}
