//! Command dispatch for the `voa-forge` binary. `run` returns the exit code
//! and the rendered report so the commands can be driven in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use voa_forge::examples::{analyze_datum, build_lattice_shift, build_sl2, lattice_report, sl2_report, BuildError};
use voa_forge::exactla::{Matrix, Subspace};
use voa_forge::fock::{FockVector, ModeEngine};
use voa_forge::frobalg::{self, de_rham_check, is_local, jacobson_radical, minimal_ideal, DeRhamReport, GradingOperator};
use voa_forge::lattice::{shift_admissible, ShiftInput};
use voa_forge::leibniz::{self, levi_subalgebra, lie_quotient, radical_tower, RadicalTower};
use voa_forge::onetrunc::TruncatedConformalDatum;
use voa_forge::report::{full_report, Envelope};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "voa-forge", version, about = "Exact checks for graded vertex operator algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub output: OutputFormat,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest test-state weight used by the Fock suites.
    #[arg(long, default_value_t = 2, global = true)]
    pub weight_cap: u32,
    /// Input file (alternative to the positional argument).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leibniz identity, radical tower and Levi subalgebra of a bracket table.
    AnalyzeLeibniz { file: Option<PathBuf> },
    /// Frobenius laws, Jacobson radical, minimal ideal and optional de Rham grading.
    AnalyzeFrobenius { file: Option<PathBuf> },
    /// Full pipeline for a shifted lattice (TOML or JSON).
    LatticeShift { file: Option<PathBuf> },
    /// The shifted affine sl2 model at a positive level.
    Sl2Shift {
        #[arg(long)]
        level: i64,
    },
    /// Evaluate `a(mode) v` on a lattice Fock space.
    FockEval { file: Option<PathBuf> },
    /// Every built-in check and property suite, optionally with a user datum.
    Report,
}

/// Resolved command-line configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub input_path: Option<PathBuf>,
    pub output: OutputFormat,
    pub seed: u64,
    pub weight_cap: u32,
    pub level: Option<i64>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, file, level) = match cli.command {
            Command::AnalyzeLeibniz { file } => ("analyze-leibniz", file, None),
            Command::AnalyzeFrobenius { file } => ("analyze-frobenius", file, None),
            Command::LatticeShift { file } => ("lattice-shift", file, None),
            Command::Sl2Shift { level } => ("sl2-shift", None, Some(level)),
            Command::FockEval { file } => ("fock-eval", file, None),
            Command::Report => ("report", None, None),
        };
        RunConfig {
            command: command.into(),
            input_path: file.or(cli.input),
            output: cli.output,
            seed: cli.seed,
            weight_cap: cli.weight_cap,
            level,
        }
    }
}

/// Exit code and rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Rendered {
    passed: bool,
    json: String,
    text: Vec<String>,
}

fn render<T: Serialize>(command: &str, passed: bool, result: T, text: Vec<String>) -> Rendered {
    Rendered { passed, json: Envelope::new(command, passed, result).to_json(), text }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.command.as_str() {
        "analyze-leibniz" => read_input(cfg).and_then(|s| analyze_leibniz_cmd(&s)),
        "analyze-frobenius" => read_input(cfg).and_then(|s| analyze_frobenius_cmd(&s)),
        "lattice-shift" => read_input(cfg).and_then(|s| lattice_shift_cmd(&s, input_is_toml(cfg))),
        "sl2-shift" => sl2_shift_cmd(cfg.level.unwrap_or(0)),
        "fock-eval" => read_input(cfg).and_then(|s| fock_eval_cmd(&s)),
        "report" => report_cmd(cfg),
        other => Err(InputError(format!("unknown command {other}"))),
    };
    match result {
        Ok(r) => {
            let stdout = match cfg.output {
                OutputFormat::Json => r.json + "\n",
                OutputFormat::Text => {
                    let mut lines = vec![format!("{}: {}", cfg.command, verdict(r.passed))];
                    lines.extend(r.text);
                    lines.join("\n") + "\n"
                }
            };
            Outcome { code: if r.passed { EXIT_PASS } else { EXIT_MATH }, stdout, stderr: String::new() }
        }
        Err(InputError(msg)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn read_input(cfg: &RunConfig) -> Result<String, InputError> {
    let path = cfg.input_path.as_ref().ok_or_else(|| InputError(format!("{} requires an input file", cfg.command)))?;
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn input_is_toml(cfg: &RunConfig) -> bool {
    cfg.input_path.as_deref().and_then(Path::extension).is_some_and(|e| e == "toml")
}

#[derive(Serialize)]
struct LeibnizAnalysis {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_lie: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tower: Option<RadicalTower>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lie_quotient_dim: Option<usize>,
    /// Levi subalgebra of the Lie quotient, in quotient coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    levi_of_quotient: Option<Subspace>,
}

fn analyze_leibniz_cmd(src: &str) -> Result<Rendered, InputError> {
    let l = leibniz::parse_table(src)?;
    if let Some(t) = l.leibniz_violation() {
        let text = vec![format!("left Leibniz identity fails on basis triple ({}, {}, {})", t[0], t[1], t[2])];
        let a = LeibnizAnalysis {
            dim: l.dim(),
            violation: Some(t),
            is_lie: None,
            tower: None,
            lie_quotient_dim: None,
            levi_of_quotient: None,
        };
        return Ok(render("analyze-leibniz", false, a, text));
    }
    let tower = radical_tower(&l);
    let quotient = lie_quotient(&l);
    let levi = levi_subalgebra(&quotient);
    let passed = levi.is_ok();
    let mut text = vec![
        format!("dim {} lie {}", l.dim(), l.is_lie()),
        format!(
            "kernel {} | solvable radical {} | nilpotent radical {} | nilradical {}",
            tower.kernel_n.dim(),
            tower.solvable_b.dim(),
            tower.nilpotent_n1.dim(),
            tower.nil_n0.dim()
        ),
    ];
    match &levi {
        Ok(s) => text.push(format!("levi subalgebra of the Lie quotient: dim {}", s.dim())),
        Err(e) => text.push(format!("levi subalgebra: {e}")),
    }
    let a = LeibnizAnalysis {
        dim: l.dim(),
        violation: None,
        is_lie: Some(l.is_lie()),
        lie_quotient_dim: Some(quotient.dim()),
        tower: Some(tower),
        levi_of_quotient: levi.ok(),
    };
    Ok(render("analyze-leibniz", passed, a, text))
}

#[derive(Deserialize)]
struct GradingInput {
    #[serde(default)]
    degrees: Option<Vec<i64>>,
    #[serde(default)]
    grading: Option<Matrix>,
}

#[derive(Serialize)]
struct FrobeniusAnalysis {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    law_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jacobson_radical: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    local: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_ideal: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_ideal_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    de_rham: Option<DeRhamReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    de_rham_failure: Option<String>,
}

fn analyze_frobenius_cmd(src: &str) -> Result<Rendered, InputError> {
    let mut value: serde_json::Value = serde_json::from_str(src)?;
    let extra = match value.as_object_mut() {
        Some(obj) => {
            let g = serde_json::json!({
                "degrees": obj.remove("degrees"),
                "grading": obj.remove("grading"),
            });
            serde_json::from_value::<GradingInput>(g)?
        }
        None => return Err(InputError("expected a JSON object".into())),
    };
    let a = frobalg::parse_table(&value.to_string())?;
    let grading = match (extra.degrees, extra.grading) {
        (Some(_), Some(_)) => return Err(InputError("give either degrees or grading, not both".into())),
        (Some(d), None) => {
            if d.len() != a.dim() {
                return Err(InputError("degrees has the wrong length".into()));
            }
            Some(GradingOperator::diagonal(&d))
        }
        (None, Some(m)) => {
            if m.rows() != a.dim() || m.cols() != a.dim() {
                return Err(InputError("grading has the wrong shape".into()));
            }
            Some(GradingOperator::new(m))
        }
        (None, None) => None,
    };
    let mut out = FrobeniusAnalysis {
        dim: a.dim(),
        law_failure: None,
        jacobson_radical: None,
        local: None,
        minimal_ideal: None,
        minimal_ideal_failure: None,
        de_rham: None,
        de_rham_failure: None,
    };
    if let Err(e) = a.check_laws() {
        out.law_failure = Some(e.to_string());
        return Ok(render("analyze-frobenius", false, out, vec![e.to_string()]));
    }
    let j = jacobson_radical(&a);
    let local = is_local(&a);
    let mut text = vec![format!("dim {} | jacobson radical dim {} | local {}", a.dim(), j.dim(), local)];
    out.jacobson_radical = Some(j);
    out.local = Some(local);
    let mut passed = local;
    match minimal_ideal(&a) {
        Ok(t) => {
            text.push(format!("minimal ideal dim {}", t.dim()));
            out.minimal_ideal = Some(t);
        }
        Err(e) => {
            passed = false;
            text.push(format!("minimal ideal: {e}"));
            out.minimal_ideal_failure = Some(e.to_string());
        }
    }
    if let Some(g) = grading {
        match de_rham_check(&a, &g) {
            Ok(r) => {
                passed &= r.all_pass();
                text.push(format!("de rham {} nu {} eigenvalues {:?}", verdict(r.all_pass()), r.nu, r.eigenvalues));
                out.de_rham = Some(r);
            }
            Err(e) => {
                passed = false;
                text.push(format!("de rham: {e}"));
                out.de_rham_failure = Some(e.to_string());
            }
        }
    }
    Ok(render("analyze-frobenius", passed, out, text))
}

fn lattice_shift_cmd(src: &str, toml_input: bool) -> Result<Rendered, InputError> {
    let input: ShiftInput = if toml_input { toml::from_str(src)? } else { serde_json::from_str(src)? };
    let s = input.into_datum()?;
    if !shift_admissible(&s) {
        return Err(InputError("shift is not admissible: a lattice point is closer to h than 0".into()));
    }
    let bundle = match build_lattice_shift(&s) {
        Ok(b) => b,
        Err(e @ BuildError::Mismatch(_)) => {
            return Ok(render("lattice-shift", false, e.to_string(), vec![e.to_string()]));
        }
        Err(e) => return Err(e.into()),
    };
    if s.is_unshifted() {
        let r = analyze_datum(&bundle.datum)?;
        let text = vec![format!("classical branch: dim V0 {} dim V1 {}", r.dim_v0, r.dim_v1)];
        return Ok(render("lattice-shift", r.passed, r, text));
    }
    let r = lattice_report(&bundle)?;
    let mut text = vec![
        format!("set A {:?}", r.set_a),
        format!("dim V0 {} dim V1 {}", r.datum.dim_v0, r.datum.dim_v1),
        format!("de rham {} nu {}", verdict(r.de_rham.all_pass()), r.nu),
        format!("central charge {} shifted {}", r.central_charge, r.shifted_central_charge),
    ];
    if let Some(t) = &r.datum.trichotomy {
        text.push(format!("trichotomy case {}", serde_json::to_value(t.case)?.as_str().unwrap_or("?")));
    }
    for c in r.datum.axioms.iter().filter(|c| c.failed()) {
        text.push(format!("axiom {} failed: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    Ok(render("lattice-shift", r.passed, r, text))
}

fn sl2_shift_cmd(level: i64) -> Result<Rendered, InputError> {
    let m = build_sl2(level)?;
    let r = sl2_report(&m)?;
    let text = vec![
        format!("level {} dim V0 {}", r.level, r.dim_v0),
        format!("de rham {} nu {}", verdict(r.de_rham.all_pass()), r.de_rham.nu),
        format!("self dual {} (image codimension {})", r.self_dual, r.image_codimension),
    ];
    Ok(render("sl2-shift", r.passed, r, text))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FockEvalInput {
    gram: Vec<Vec<i64>>,
    a: FockVector,
    mode: i64,
    v: FockVector,
}

#[derive(Serialize)]
struct FockEvalResult {
    mode: i64,
    result: FockVector,
}

fn fock_eval_cmd(src: &str) -> Result<Rendered, InputError> {
    let input: FockEvalInput = serde_json::from_str(src)?;
    let lattice = voa_forge::lattice::EvenLattice::new(input.gram)?;
    let rank = lattice.rank();
    for st in input.a.states().chain(input.v.states()) {
        if st.point.len() != rank || st.heis.iter().any(|(_, d)| *d >= rank) {
            return Err(InputError(format!("state does not match lattice rank {rank}")));
        }
    }
    let mut eng = ModeEngine::new(lattice);
    let result = eng.iterate_mode(&input.a, input.mode, &input.v);
    let text = vec![serde_json::to_string(&result)?];
    Ok(render("fock-eval", true, FockEvalResult { mode: input.mode, result }, text))
}

fn report_cmd(cfg: &RunConfig) -> Result<Rendered, InputError> {
    let datum = match &cfg.input_path {
        Some(_) => {
            let d: TruncatedConformalDatum = serde_json::from_str(&read_input(cfg)?)?;
            d.check_shapes()?;
            Some(d)
        }
        None => None,
    };
    let r = full_report(cfg.seed, cfg.weight_cap as i64, datum.as_ref())?;
    let mut text = Vec::new();
    for s in &r.sl2 {
        text.push(format!("sl2 level {}: {}", s.level, verdict(s.passed)));
    }
    for l in &r.lattices {
        text.push(format!("lattice {}: {}", l.name, verdict(l.report.passed)));
    }
    text.push(format!("unshifted A1: {}", verdict(r.classical.passed)));
    for s in &r.suites.suites {
        text.push(format!("suite {} ({} cases): {}", s.name, s.cases, verdict(s.passed)));
        text.extend(s.failures.iter().map(|f| format!("  {f}")));
    }
    if let Some(d) = &r.input {
        text.push(format!("input datum: {}", verdict(d.passed)));
    }
    Ok(render("report", r.passed, r, text))
}
