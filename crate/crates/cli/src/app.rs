//! Command-line parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qfiber::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::input::{from_toml_file, InputEcho, Instance};
use crate::presets::{self, Preset, CATALOG};
use crate::report::{self, analyze, DualSection, Options, RMatrixSection, TwistSection, VerdictBlock, SCHEMA};
use crate::{exit_code, selftest, text};

#[derive(Parser, Debug)]
#[command(name = "qfiber", version, about = "Exact invariants of quantum groups at roots of unity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report: center tower, dual groups, twisting forms, dimensions.
    Analyze(AnalyzeArgs),
    /// Dual root data G* and Ǧ with the Langlands verdict.
    Dual(Common),
    /// Admissible R-matrix terms with exact coefficients.
    Rmatrix(RmatrixArgs),
    /// Scalar identities for twisting by κ; exits 2 if any fails.
    VerifyTwist(Common),
    /// List the built-in presets.
    Presets {
        #[arg(long)]
        json: bool,
    },
    /// Run the presets and randomized consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Dynkin type such as A2 or A1xB3.
    #[arg(long = "type")]
    pub dynkin: Option<String>,
    /// sc, adjoint, or generator rows like "2,0;1,1".
    #[arg(long, default_value = "sc")]
    pub lattice: String,
    /// Scale per factor: a/b, pi/l:L or 2pi/l:L; one value applies to all factors.
    #[arg(long)]
    pub param: Option<String>,
    /// Named preset, optionally with arguments: sl2n-odd:n=3,l=5.
    #[arg(long, conflicts_with_all = ["dynkin", "param", "input"])]
    pub preset: Option<String>,
    /// TOML file with type, lattice and param keys.
    #[arg(long, conflicts_with_all = ["dynkin", "param"])]
    pub input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also list up to this many R-matrix terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RmatrixArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 256)]
    pub max_terms: usize,
}

impl Common {
    pub fn resolve(&self) -> Result<(Instance, Option<Preset>)> {
        if let Some(p) = &self.preset {
            let preset = presets::parse(p)?;
            return Ok((preset.instance.clone(), Some(preset)));
        }
        if let Some(path) = &self.input {
            return Ok((from_toml_file(path)?, None));
        }
        let dynkin = self.dynkin.as_deref().ok_or_else(|| Error::InvalidInput("--type is required".into()))?;
        let param = self.param.as_deref().ok_or_else(|| Error::InvalidInput("--param is required".into()))?;
        Ok((Instance::new(dynkin, &self.lattice, param)?, None))
    }
}

#[derive(Serialize, Deserialize)]
struct DualOutput {
    schema: u32,
    input: InputEcho,
    dual: DualSection,
    verdicts: VerdictBlock,
}

#[derive(Serialize, Deserialize)]
struct RmatrixOutput {
    schema: u32,
    input: InputEcho,
    rmatrix: RMatrixSection,
}

#[derive(Serialize, Deserialize)]
struct TwistOutput {
    schema: u32,
    input: InputEcho,
    twist_check: TwistSection,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

/// Output and exit status of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, code: 0 }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(a) => {
            let (instance, preset) = a.common.resolve()?;
            let mut analysis = analyze(&instance, Options { max_terms: a.max_terms })?;
            let mut code = 0;
            if let Some(p) = &preset {
                let outcome = p.evaluate(&analysis);
                if !outcome.all_hold() {
                    code = 2;
                }
                analysis.report.preset = Some(outcome);
            }
            let r = &analysis.report;
            let stdout = if a.common.json { r.to_json() } else { text::render(r) };
            Ok(Outcome { stdout, code })
        }
        Command::Dual(c) => {
            let (instance, _) = c.resolve()?;
            let r = analyze(&instance, Options::default())?.report;
            if c.json {
                Ok(ok(json(&DualOutput { schema: SCHEMA, input: r.input, dual: r.dual, verdicts: r.centers.verdicts })))
            } else {
                let mut s = text::render(&r);
                s.truncate(s.find("\ntwisting").unwrap_or(s.len()));
                s.push('\n');
                Ok(ok(s))
            }
        }
        Command::Rmatrix(a) => {
            let (instance, _) = a.common.resolve()?;
            let q = instance.build()?;
            let rm = report::rmatrix_section(&q, a.max_terms)?;
            if a.common.json {
                Ok(ok(json(&RmatrixOutput { schema: SCHEMA, input: instance.echo(&q), rmatrix: rm })))
            } else {
                let mut s = String::new();
                text::rmatrix(&mut s, &rm);
                Ok(ok(s.trim_start().to_string()))
            }
        }
        Command::VerifyTwist(c) => {
            let (instance, _) = c.resolve()?;
            let analysis = analyze(&instance, Options::default())?;
            let tw = match (&analysis.duals, analysis.report.twist_check) {
                (Ok(_), Some(tw)) => tw,
                (Err(why), _) => return Err(Error::OutsideEnvelope(why.clone())),
                (Ok(_), None) => return Err(Error::Invariant("twist checks missing".into())),
            };
            let code = if tw.all_pass { 0 } else { 2 };
            let stdout = if c.json {
                json(&TwistOutput { schema: SCHEMA, input: analysis.report.input, twist_check: tw })
            } else {
                let mut s = String::new();
                text::twist(&mut s, &tw);
                s.trim_start().to_string()
            };
            Ok(Outcome { stdout, code })
        }
        Command::Presets { json: as_json } => {
            if *as_json {
                let list: Vec<serde_json::Value> = CATALOG
                    .iter()
                    .map(|p| serde_json::json!({"name": p.name, "defaults": p.defaults, "summary": p.summary}))
                    .collect();
                Ok(ok(json(&list)))
            } else {
                let mut s = String::new();
                for p in CATALOG {
                    s.push_str(&format!("{:<22} {:<10} {}\n", p.name, p.defaults, p.summary));
                }
                Ok(ok(s))
            }
        }
        Command::Selftest { seed, cases } => {
            let summary = selftest::run(*seed, *cases)?;
            let code = if summary.failures.is_empty() { 0 } else { 2 };
            Ok(Outcome { stdout: summary.to_string(), code })
        }
    }
}

/// Parses arguments, runs, prints and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
