//! Command-line front end. Exit codes: 0 success, 1 check failure, 2 usage error.
//!
//! Solver settings resolve in order: built-in defaults, `AMBARZUMIAN_*`
//! environment variables, `--config` file (`key=value` lines), then flags.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{
    certificate_checks_with, classify_case, sweep, CertificateTolerances, Classification, SystemChoice,
};
use crate::error::Error;
use crate::matrix::{eigenvalues, free_matrix, free_spectrum};
use crate::poly::QuadExtRational;
use crate::report::{self, fmt15, to_json};
use crate::solver::{parse_bounds, real_roots_univariate, SolverConfig};
use crate::system::{grouped_charpoly_5_3, parse_positions, symbolic_charpoly, CaseSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ambarzumian", version, about = "Rigidity of discrete Schrödinger matrices under shared ordered eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Subst,
    Coeff,
    Both,
}

impl From<SystemArg> for SystemChoice {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Subst => SystemChoice::Subst,
            SystemArg::Coeff => SystemChoice::Coeff,
            SystemArg::Both => SystemChoice::Both,
        }
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// `key=value` solver config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start box, `lo,hi` for every unknown or `lo,hi;lo,hi;...`
    #[arg(long = "box", allow_hyphen_values = true)]
    bounds: Option<String>,
    #[arg(long)]
    starts: Option<usize>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    step_tol: Option<f64>,
    #[arg(long)]
    residual_tol: Option<f64>,
    #[arg(long)]
    dedup_radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl SolverArgs {
    fn resolve(&self) -> Result<SolverConfig, Error> {
        let mut cfg = SolverConfig::default().with_env_overrides(std::env::vars())?;
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            cfg = SolverConfig::parse_key_values(&text, cfg)?;
        }
        if let Some(b) = &self.bounds {
            cfg.bounds = parse_bounds(b)?;
        }
        if let Some(v) = self.starts {
            cfg.starts = v;
        }
        if let Some(v) = self.max_iter {
            cfg.max_iter = v;
        }
        if let Some(v) = self.step_tol {
            cfg.step_tol = v;
        }
        if let Some(v) = self.residual_tol {
            cfg.residual_tol = v;
        }
        if let Some(v) = self.dedup_radius {
            cfg.dedup_radius = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form and computed spectrum of F_n
    FreeSpectrum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Expanded det(S_{n,m} - L I)
    Charpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Also expand the grouped (n=5, m=3) form and compare
        #[arg(long)]
        grouped_check: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Classify every eigenvalue-position case up to mirror symmetry
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "subst")]
        system: SystemArg,
        /// Require the (5,3) pattern: {1,3,4} flexible, every other class rigid
        #[arg(long)]
        expect_reference: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Classify a single case
    Case {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Fixed ordered positions, e.g. 1,3,4
        #[arg(long)]
        fix: String,
        #[arg(long, value_enum, default_value = "subst")]
        system: SystemArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Polish the printed counterexample and run all certificates
    VerifyCounterexample {
        /// Use one tolerance for every check instead of the defaults
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Real roots of a univariate polynomial, coefficients highest degree first
    Roots {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn usage(err: &Error) -> (i32, String) {
    (EXIT_USAGE, format!("error: {err}\n"))
}

/// Run with `args` (program name first). Returns the exit code; normal output
/// goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let (code, text) = match execute(cli.command) {
        Ok(r) => r,
        Err(e) => {
            let (code, msg) = usage(&e);
            let _ = err.write_all(msg.as_bytes());
            return code;
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn execute(command: Command) -> Result<(i32, String), Error> {
    match command {
        Command::FreeSpectrum { n, format } => free_spectrum_cmd(n as usize, format),
        Command::Charpoly {
            n,
            m,
            grouped_check,
            format,
        } => charpoly_cmd(n, m, grouped_check, format),
        Command::Sweep {
            n,
            m,
            system,
            expect_reference,
            solver,
            format,
        } => {
            let cfg = solver.resolve()?;
            let rep = sweep(n, m, &cfg, system.into())?;
            let mut code = EXIT_OK;
            let mut text = match format {
                OutputFormat::Json => to_json(&rep),
                OutputFormat::Csv => report::case_reports_csv(rep.all_case_reports()),
                OutputFormat::Text => report::sweep_text(&rep),
            };
            if expect_reference {
                let mismatch = reference_pattern_mismatch(&rep);
                if !mismatch.is_empty() {
                    code = EXIT_CHECK_FAILED;
                }
                if format == OutputFormat::Text {
                    text.push_str(&if mismatch.is_empty() {
                        "reference pattern: MATCH\n".to_string()
                    } else {
                        format!("reference pattern: MISMATCH ({})\n", mismatch.join("; "))
                    });
                }
            }
            Ok((code, text))
        }
        Command::Case {
            n,
            m,
            fix,
            system,
            solver,
            format,
        } => {
            let case = CaseSpec::new(n, m, &parse_positions(&fix)?)?;
            let cfg = solver.resolve()?;
            let rep = classify_case(&case, &cfg, system.into())?;
            let text = match format {
                OutputFormat::Json => to_json(&rep),
                OutputFormat::Csv => report::case_reports_csv([&rep]),
                OutputFormat::Text => report::case_report_text(&rep),
            };
            let disagree = rep
                .cross_check
                .as_ref()
                .is_some_and(|x| !x.classifications_agree);
            let code = if disagree || rep.classification == Classification::Inconclusive {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            Ok((code, text))
        }
        Command::VerifyCounterexample { tol, solver, format } => {
            let cfg = solver.resolve()?;
            let tols = match tol {
                Some(t) if t.is_nan() || t <= 0.0 => {
                    return Err(Error::InvalidConfig("--tol must be positive".into()))
                }
                Some(t) => CertificateTolerances::uniform(t),
                None => CertificateTolerances::default(),
            };
            let rep = certificate_checks_with(&cfg, tols)?;
            let text = match format {
                OutputFormat::Json => to_json(&rep),
                OutputFormat::Csv => {
                    let mut s = String::from("check,value,tolerance,pass\n");
                    for c in &rep.checks {
                        s.push_str(&format!("{},{},{},{}\n", c.name, fmt15(c.value), fmt15(c.tolerance), c.pass));
                    }
                    s
                }
                OutputFormat::Text => report::certificate_text(&rep),
            };
            Ok((if rep.passed { EXIT_OK } else { EXIT_CHECK_FAILED }, text))
        }
        Command::Roots { coeffs, format } => {
            let roots = real_roots_univariate(&coeffs)?;
            let text = match format {
                OutputFormat::Json => to_json(&serde_json::json!({ "coeffs": coeffs, "real_roots": roots })),
                OutputFormat::Csv => {
                    let mut s = String::from("root\n");
                    for r in &roots {
                        s.push_str(&fmt15(*r));
                        s.push('\n');
                    }
                    s
                }
                OutputFormat::Text => roots.iter().map(|r| fmt15(*r) + "\n").collect(),
            };
            Ok((EXIT_OK, text))
        }
    }
}

fn free_spectrum_cmd(n: usize, format: OutputFormat) -> Result<(i32, String), Error> {
    let closed = free_spectrum(n)?;
    let computed = eigenvalues(&free_matrix(n)?)?;
    let dev = closed.max_deviation(&computed);
    let text = match format {
        OutputFormat::Json => to_json(&serde_json::json!({
            "n": n,
            "closed_form": closed.values(),
            "computed": computed.values(),
            "max_deviation": dev,
        })),
        OutputFormat::Csv => {
            let mut s = String::from("position,closed_form,computed\n");
            for (i, (a, b)) in closed.values().iter().zip(computed.values()).enumerate() {
                s.push_str(&format!("{},{},{}\n", i + 1, fmt15(*a), fmt15(*b)));
            }
            s
        }
        OutputFormat::Text => {
            let mut s: String = closed.values().iter().map(|v| fmt15(*v) + "\n").collect();
            s.push_str(&format!("max deviation from computed: {}\n", fmt15(dev)));
            s
        }
    };
    Ok((EXIT_OK, text))
}

fn charpoly_cmd(n: usize, m: usize, grouped: bool, format: OutputFormat) -> Result<(i32, String), Error> {
    let p = symbolic_charpoly::<QuadExtRational>(n, m)?;
    let grouped_match = if grouped {
        if (n, m) != (5, 3) {
            return Err(Error::InvalidConfig("--grouped-check needs --n 5 --m 3".into()));
        }
        Some(grouped_charpoly_5_3::<QuadExtRational>() == p)
    } else {
        None
    };
    let code = if grouped_match == Some(false) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    let text = match format {
        OutputFormat::Json => to_json(&serde_json::json!({
            "n": n,
            "m": m,
            "variables": p.vars(),
            "polynomial": p.to_string(),
            "grouped_match": grouped_match,
        })),
        OutputFormat::Csv => {
            let mut s = String::from("n,m,polynomial,grouped_match\n");
            s.push_str(&format!(
                "{n},{m},{},{}\n",
                p,
                grouped_match.map(|b| b.to_string()).unwrap_or_default()
            ));
            s
        }
        OutputFormat::Text => {
            let mut s = format!("{p}\n");
            match grouped_match {
                Some(true) => s.push_str("MATCH\n"),
                Some(false) => s.push_str("MISMATCH\n"),
                None => {}
            }
            s
        }
    };
    Ok((code, text))
}

/// Differences from the (5,3) works/fails pattern; empty on a match.
pub fn reference_pattern_mismatch(rep: &crate::classify::SweepReport) -> Vec<String> {
    if (rep.n, rep.m) != (5, 3) {
        return vec![format!("pattern is defined for n=5 m=3, got n={} m={}", rep.n, rep.m)];
    }
    let expected: [(&[usize], Classification); 6] = [
        (&[1, 2, 3], Classification::Rigid),
        (&[1, 2, 4], Classification::Rigid),
        (&[1, 2, 5], Classification::Rigid),
        (&[1, 3, 4], Classification::Flexible),
        (&[1, 3, 5], Classification::Rigid),
        (&[2, 3, 4], Classification::Rigid),
    ];
    let mut out = Vec::new();
    if rep.classes.len() != expected.len() {
        out.push(format!("expected 6 classes, got {}", rep.classes.len()));
    }
    for (positions, want) in expected {
        match rep.class(positions) {
            Some(c) if c.classification == want => {}
            Some(c) => out.push(format!(
                "{:?}: expected {}, got {}",
                positions,
                want.as_str(),
                c.classification.as_str()
            )),
            None => out.push(format!("{positions:?}: missing")),
        }
    }
    out
}
