//! Command-line front end for the verification library.
//!
//! Exit codes: 0 = all checks passed, 1 = at least one check failed,
//! 2 = usage or configuration error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tautcheck::checks;
use tautcheck::model::{ModelSpec, Space, VarietyModel};
use tautcheck::rat::rat_str;
use tautcheck::scenario::{parse_check, parse_scenario, CheckSpec, Scenario, VarietySpec};
use tautcheck::taut::TautRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "tautcheck",
    version,
    about = "Exact-arithmetic verification of tautological-ring and projector identities in finite cohomology models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check listed in a scenario file
    Run {
        /// Path to the scenario file
        scenario: PathBuf,
    },
    /// Normalize a cycle expression in the tautological ring
    Normalize {
        /// Ambient power m (indices run over 1..=m)
        #[arg(long)]
        m: usize,
        /// Cycle expression, e.g. "h(1)^3 - 18*o(1)"
        #[arg(long)]
        expr: String,
        /// Variety model: y18 | z4 | curve2 | ab2 | custom(n,d,b)
        #[arg(long)]
        variety: String,
    },
    /// Run a single named check
    Verify {
        /// Check name: projectors | mck | relations | injectivity | yf | zf |
        /// andthis | matching-sum | delta-h | pure-degree
        check: String,
        /// Ambient power (injectivity)
        #[arg(long)]
        m: Option<usize>,
        /// Number of matched pairs (matching-sum)
        #[arg(long)]
        k: Option<usize>,
        /// Odd middle rank (matching-sum)
        #[arg(long)]
        b: Option<usize>,
        /// Variety model: y18 | z4 | curve2 | ab2 | custom(n,d,b)
        #[arg(long)]
        variety: String,
    },
    /// List the normal-monomial basis in one codimension
    Basis {
        /// Ambient power m
        #[arg(long)]
        m: usize,
        /// Codimension (0..=3m)
        #[arg(long)]
        codim: usize,
        /// Variety model: y18 | z4 | curve2 | ab2 | custom(n,d,b)
        #[arg(long)]
        variety: String,
    },
    /// Print the graded data of a variety model
    ModelInfo {
        /// Variety model: y18 | z4 | curve2 | ab2 | custom(n,d,b)
        #[arg(long)]
        variety: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Run { scenario } => {
            let text = fs::read_to_string(scenario)
                .map_err(|e| format!("cannot read {}: {e}", scenario.display()))?;
            let sc = parse_scenario(&text).map_err(|e| e.to_string())?;
            run_scenario(cli, &sc)
        }
        Command::Normalize { m, expr, variety } => {
            let sc = Scenario {
                variety: variety.parse().map_err(|e: tautcheck::scenario::ScenarioError| e.to_string())?,
                checks: vec![CheckSpec::Normalize { m: *m, expr: expr.clone() }],
            };
            run_scenario(cli, &sc)
        }
        Command::Verify { check, m, k, b, variety } => {
            let mut args: Vec<(String, String)> = Vec::new();
            if let Some(m) = m {
                args.push(("m".into(), m.to_string()));
            }
            if let Some(k) = k {
                args.push(("k".into(), k.to_string()));
            }
            if let Some(b) = b {
                args.push(("b".into(), b.to_string()));
            }
            let spec = parse_check(check, &args, 0).map_err(|e| e.to_string())?;
            let sc = Scenario {
                variety: variety.parse().map_err(|e: tautcheck::scenario::ScenarioError| e.to_string())?,
                checks: vec![spec],
            };
            run_scenario(cli, &sc)
        }
        Command::Basis { m, codim, variety } => {
            let vspec: VarietySpec = variety.parse().map_err(|e: tautcheck::scenario::ScenarioError| e.to_string())?;
            let model = vspec.model().map_err(|e| e.to_string())?;
            if *codim > 3 * m {
                return Err(format!("codim {codim} out of range 0..={}", 3 * m));
            }
            let ring = TautRing::bootstrap(&model).map_err(|e| e.to_string())?;
            let basis = ring.basis(*m, *codim);
            let rendered: Vec<String> = basis.iter().map(|b| b.render()).collect();
            let output = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "variety": vspec.to_string(),
                    "m": m,
                    "codim": codim,
                    "count": rendered.len(),
                    "monomials": rendered,
                }))
                .unwrap(),
                Format::Text => {
                    let mut s = format!(
                        "basis of codimension {codim} on power {m} of {vspec}: {} monomial(s)\n",
                        rendered.len()
                    );
                    for r in &rendered {
                        s.push_str(&format!("  {r}\n"));
                    }
                    s
                }
            };
            emit(cli, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ModelInfo { variety } => {
            let vspec: VarietySpec = variety.parse().map_err(|e: tautcheck::scenario::ScenarioError| e.to_string())?;
            let model = vspec.model().map_err(|e| e.to_string())?;
            let output = model_info(cli, &vspec, &model);
            emit(cli, &output)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_scenario(cli: &Cli, sc: &Scenario) -> Result<ExitCode, String> {
    let report = checks::run(sc).map_err(|e| e.to_string())?;
    let output = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    emit(cli, &output)?;
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn model_info(cli: &Cli, vspec: &VarietySpec, model: &Arc<VarietyModel>) -> String {
    let space = Space::single(model.clone());
    let betti = model.betti();
    let euler = space.euler_char();
    match cli.format {
        Format::Json => {
            let mut obj = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "variety": vspec.to_string(),
                "model": model.to_string(),
                "betti": betti,
                "total_dim": model.dim(),
                "top_degree": model.top_degree(),
                "euler_characteristic": euler,
            });
            if let ModelSpec::TateOdd { n, d, b } = model.spec() {
                obj["polarization_degree"] = json!(rat_str(d));
                obj["dimension"] = json!(n);
                obj["odd_rank"] = json!(b);
            }
            serde_json::to_string_pretty(&obj).unwrap()
        }
        Format::Text => {
            let mut s = format!("{vspec}: {model}\n");
            s.push_str(&format!("betti: {betti:?}\n"));
            s.push_str(&format!(
                "total dim: {}, top degree: {}, euler characteristic: {euler}\n",
                model.dim(),
                model.top_degree()
            ));
            if let ModelSpec::TateOdd { n, d, .. } = model.spec() {
                s.push_str(&format!("∫ h^{n} = {}\n", rat_str(d)));
            }
            s
        }
    }
}

fn emit(cli: &Cli, output: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => fs::write(path, output)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{output}");
            if !output.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}
