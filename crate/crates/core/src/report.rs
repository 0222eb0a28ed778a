//! Versioned JSON envelopes and the full suite report.

use serde::Serialize;

use crate::examples::{
    analyze_datum, build_lattice_shift, build_sl2, default_shifts, lattice_report, sl2_report, BuildError,
    DatumReport, LatticeReport, Sl2Report,
};
use crate::lattice::{EvenLattice, ShiftDatum};
use crate::onetrunc::TruncatedConformalDatum;
use crate::suites::{run_all, SuiteReport};

pub const SCHEMA: &str = "voa-forge/1";

/// Top-level JSON document emitted by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub command: String,
    pub passed: bool,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, passed: bool, result: T) -> Self {
        Envelope { schema: SCHEMA, command: command.into(), passed, result }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedLatticeReport {
    pub name: String,
    pub report: LatticeReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub seed: u64,
    pub weight_cap: i64,
    pub sl2: Vec<Sl2Report>,
    pub lattices: Vec<NamedLatticeReport>,
    /// Unshifted `A1`: the classical branch with `dim V0 = 1`.
    pub classical: DatumReport,
    pub suites: SuiteReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<DatumReport>,
    pub passed: bool,
}

/// sl2 models for levels 1 to 5, every default lattice shift, the unshifted
/// `A1` bundle, all property suites, and optionally a user datum.
pub fn full_report(
    seed: u64,
    weight_cap: i64,
    input: Option<&TruncatedConformalDatum>,
) -> Result<FullReport, BuildError> {
    let sl2 = (1..=5).map(|k| build_sl2(k).and_then(|m| sl2_report(&m))).collect::<Result<Vec<_>, _>>()?;
    let mut lattices = Vec::new();
    let mut shifts = Vec::new();
    for (name, s) in default_shifts() {
        let report = lattice_report(&build_lattice_shift(&s)?)?;
        lattices.push(NamedLatticeReport { name, report });
        shifts.push(s);
    }
    let classical = analyze_datum(&build_lattice_shift(&ShiftDatum::unshifted(EvenLattice::a1()))?.datum)?;
    let suites = run_all(seed, weight_cap, &shifts);
    let input = input.map(analyze_datum).transpose()?;
    let passed = sl2.iter().all(|r| r.passed)
        && lattices.iter().all(|l| l.report.passed)
        && classical.passed
        && suites.passed
        && input.as_ref().map_or(true, |r| r.passed);
    Ok(FullReport { seed, weight_cap, sl2, lattices, classical, suites, input, passed })
}
