//! Command-line surface. `run` is a pure function from argument vector
//! to (exit code, stdout, stderr) so the whole surface is testable;
//! the binary wrapper prints and exits.
//!
//! Exit-code policy: verdicts are data, so a NOT_CM result still exits 0
//! unless `--assert` is given, which turns NOT_CM/UNKNOWN into exit 2.
//! Computational errors exit 1.

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::algebra::parse::parse_homogeneous;
use crate::algebra::Ideal;
use crate::cm::{
    check_cm_at_prime, check_cm_global, check_cm_nonneg, check_local_cm, check_triv_ext_cm,
    dualizing_dg, dualizing_structure_report, find_regular_sequence, verify_theorem_suite,
    Verdict,
};
use crate::dg::{DgKind, DgModule, DgRing};
use crate::error::KernelError;
use crate::invariants::{
    invariants_of_module, invariants_of_ring, koszul_colimit_profile_oracle,
};
use crate::io::{
    build_problem, bundled_example, bundled_examples, parse_problem, BuiltProblem,
    DualizingSection, ModuleSection, Report,
};
use crate::KResult;

const DEFAULT_SEED: u64 = 1;
const DEFAULT_MAX_TRIES: u32 = 64;
const DEFAULT_T_MAX: u32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "dgcm",
    version,
    about = "Cohen-Macaulay analysis of graded differential models",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Problem file (.dgcm), or the name of a bundled example.
    file: String,
    /// Output format: `text` or `json`.
    #[arg(long, default_value = "text")]
    format: String,
    /// Exit with code 2 when any reported verdict is NOT_CM or UNKNOWN.
    #[arg(long, default_value_t = false)]
    assert: bool,
    /// Override the coefficient field characteristic (default 32003).
    #[arg(long)]
    field_char: Option<u64>,
    /// Seed for randomized searches (default 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Random-candidate budget per search step (default 64).
    #[arg(long)]
    max_tries: Option<u32>,
    /// Koszul-stage bound for the torsion oracle (default 4).
    #[arg(long)]
    t_max: Option<u32>,
    /// Candidate prime as a comma-separated list of polynomials;
    /// repeatable.
    #[arg(long = "prime")]
    primes: Vec<String>,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// Output format: `text` or `json`.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology table, invariants, the applicable verdict, and any
    /// named modules' invariants and torsion oracle.
    Analyze(CommonArgs),
    /// Local Cohen-Macaulay check (non-positive models).
    #[command(name = "check-cm")]
    CheckCm(CommonArgs),
    /// Cohen-Macaulay check at one candidate prime (give --prime).
    #[command(name = "check-cm-at")]
    CheckCmAt(CommonArgs),
    /// Stratified global check over candidate primes.
    #[command(name = "check-cm-global")]
    CheckCmGlobal(CommonArgs),
    /// Cohen-Macaulay criterion for non-negative models.
    #[command(name = "check-cm-nonneg")]
    CheckCmNonneg(CommonArgs),
    /// Regular-sequence search with a step-by-step certificate.
    Regseq {
        #[command(flatten)]
        common: CommonArgs,
        /// Require each step to drop the degree-zero dimension by one.
        #[arg(long, default_value_t = false)]
        sop: bool,
    },
    /// Normalized dualizing model and its structure facts.
    Dualizing(CommonArgs),
    /// Run every applicable cross-check on the model.
    Verify(CommonArgs),
    /// List the bundled example problems and their expected verdicts.
    Examples(ExamplesArgs),
}

/// Entry point used by the binary and by tests. Returns (exit code,
/// stdout, stderr).
pub fn run(argv: &[String]) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (0, e.to_string(), String::new())
                }
                _ => (1, String::new(), e.to_string()),
            };
        }
    };
    match cli.command {
        Command::Examples(args) => run_examples(&args),
        Command::Analyze(c) => run_model_command("analyze", c, false),
        Command::CheckCm(c) => run_model_command("check-cm", c, false),
        Command::CheckCmAt(c) => run_model_command("check-cm-at", c, false),
        Command::CheckCmGlobal(c) => run_model_command("check-cm-global", c, false),
        Command::CheckCmNonneg(c) => run_model_command("check-cm-nonneg", c, false),
        Command::Regseq { common, sop } => run_model_command("regseq", common, sop),
        Command::Dualizing(c) => run_model_command("dualizing", c, false),
        Command::Verify(c) => run_model_command("verify", c, false),
    }
}

fn load_problem_text(file: &str) -> KResult<String> {
    match std::fs::read_to_string(file) {
        Ok(text) => Ok(text),
        Err(io_err) => {
            let stem = file.strip_suffix(".dgcm").unwrap_or(file);
            if let Some(ex) = bundled_example(stem) {
                Ok(ex.text.to_string())
            } else {
                Err(KernelError::Io(format!(
                    "cannot read '{}' ({}) and no bundled example has that name",
                    file, io_err
                )))
            }
        }
    }
}

fn parse_prime_flag(model: &DgRing, text: &str) -> KResult<Ideal> {
    let ring = model.ring().clone();
    let parts: Vec<&str> = text
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let gens = parts
        .iter()
        .map(|s| parse_homogeneous(&ring, s))
        .collect::<KResult<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

fn attach_module_sections(
    report: &mut Report,
    model: &DgRing,
    built: &BuiltProblem,
    t_max: u32,
) -> KResult<()> {
    for (name, module) in &built.modules {
        let dg_module = DgModule::from_module_at(model, module.clone(), 0)?;
        let invariants = invariants_of_module(&dg_module)?;
        let oracle = koszul_colimit_profile_oracle(module, t_max)?;
        let profile_degrees: Vec<i64> = invariants.rgamma.iter().map(|e| e.degree).collect();
        let contained = oracle.iter().all(|d| profile_degrees.contains(d));
        report.modules.push(ModuleSection {
            name: name.clone(),
            invariants,
            colimit_oracle: Some(oracle),
            oracle_contained_in_profile: Some(contained),
        });
    }
    Ok(())
}

fn build_report(command: &str, common: &CommonArgs, sop: bool) -> KResult<Report> {
    let text = load_problem_text(&common.file)?;
    let problem = parse_problem(&text)?;
    let built = build_problem(&problem, common.field_char)?;
    let model = &built.model;
    let seed = common.seed.or(built.options.seed).unwrap_or(DEFAULT_SEED);
    let max_tries = common
        .max_tries
        .or(built.options.max_tries)
        .unwrap_or(DEFAULT_MAX_TRIES);
    let t_max = common.t_max.or(built.options.t_max).unwrap_or(DEFAULT_T_MAX);
    let mut report = Report::new(command, model);
    match command {
        "analyze" => {
            report.invariants = Some(invariants_of_ring(model)?);
            if model.is_nonnegative() {
                report.nonneg_cm = Some(check_cm_nonneg(model)?);
            } else {
                report.local_cm = Some(check_local_cm(model)?);
                if matches!(model.kind(), DgKind::TrivialExtension { .. }) {
                    report.triv_ext = Some(check_triv_ext_cm(model)?);
                }
            }
            attach_module_sections(&mut report, model, &built, t_max)?;
        }
        "check-cm" => {
            report.invariants = Some(invariants_of_ring(model)?);
            report.local_cm = Some(check_local_cm(model)?);
            if matches!(model.kind(), DgKind::TrivialExtension { .. }) {
                report.triv_ext = Some(check_triv_ext_cm(model)?);
            }
        }
        "check-cm-at" => {
            if common.primes.len() != 1 {
                return Err(KernelError::unsupported(
                    "check-cm-at needs exactly one --prime",
                ));
            }
            let prime = parse_prime_flag(model, &common.primes[0])?;
            report.at_prime = Some(check_cm_at_prime(model, &prime)?);
        }
        "check-cm-global" => {
            let mut primes = built.primes.clone();
            for text in &common.primes {
                primes.push(parse_prime_flag(model, text)?);
            }
            report.global_cm = Some(check_cm_global(model, &primes)?);
        }
        "check-cm-nonneg" => {
            report.invariants = Some(invariants_of_ring(model)?);
            report.nonneg_cm = Some(check_cm_nonneg(model)?);
        }
        "regseq" => {
            report.regseq = Some(find_regular_sequence(model, sop, seed, max_tries)?);
        }
        "dualizing" => {
            let dualizing = dualizing_dg(model)?;
            let structure = dualizing_structure_report(model)?;
            report.dualizing = Some(DualizingSection {
                shift: dualizing.shift,
                cohomology: dualizing.degree_dims(),
                structure,
            });
        }
        "verify" => {
            report.invariants = Some(invariants_of_ring(model)?);
            report.theorem_suite = Some(verify_theorem_suite(model)?);
        }
        other => {
            return Err(KernelError::structural(format!(
                "unknown command '{}'",
                other
            )));
        }
    }
    Ok(report)
}

fn run_model_command(command: &str, common: CommonArgs, sop: bool) -> (i32, String, String) {
    if common.format != "text" && common.format != "json" {
        return (
            1,
            String::new(),
            format!("error: unknown format '{}'\n", common.format),
        );
    }
    let started = Instant::now();
    match build_report(command, &common, sop) {
        Ok(mut report) => {
            report.timing_ms = started.elapsed().as_millis() as u64;
            let rendered = if common.format == "json" {
                report.render_json()
            } else {
                report.render_text()
            };
            let verdicts = report.verdicts();
            let code = if common.assert
                && verdicts
                    .iter()
                    .any(|v| matches!(v, Verdict::NotCm | Verdict::Unknown))
            {
                2
            } else {
                0
            };
            (code, rendered, String::new())
        }
        Err(e) => (1, String::new(), format!("error: {}\n", e)),
    }
}

#[derive(Serialize)]
struct ExampleListEntry {
    name: String,
    description: String,
    command: String,
    verdict: Verdict,
}

#[derive(Serialize)]
struct ExampleList {
    schema: u32,
    examples: Vec<ExampleListEntry>,
}

fn run_examples(args: &ExamplesArgs) -> (i32, String, String) {
    let entries: Vec<ExampleListEntry> = bundled_examples()
        .into_iter()
        .map(|e| ExampleListEntry {
            name: e.name.to_string(),
            description: e.description.to_string(),
            command: e.expected.command.to_string(),
            verdict: e.expected.verdict,
        })
        .collect();
    match args.format.as_str() {
        "json" => {
            let list = ExampleList {
                schema: 1,
                examples: entries,
            };
            let mut s = serde_json::to_string_pretty(&list).expect("example list serializes");
            s.push('\n');
            (0, s, String::new())
        }
        "text" => {
            let mut out = String::new();
            for e in &entries {
                out.push_str(&format!(
                    "{:<24} {:<16} {:<8} {}\n",
                    e.name, e.command, e.verdict, e.description
                ));
            }
            (0, out, String::new())
        }
        other => (
            1,
            String::new(),
            format!("error: unknown format '{}'\n", other),
        ),
    }
}
