//! Implication checks "antecedent ⇒ complete intersection" at desk scale.
//!
//! - C1: `pd_S(I/I²) < ∞`
//! - C2: `pd_S Ω_{S/k} < ∞`
//! - C3: `T_i(S/R, S) = 0` for `i0 <= i <= D - 1`, some `2 <= i0 <= D - 2`
//!
//! Finite projective dimension is probed by resolving over `S` to the
//! bound; a resolution that has not stopped counts as a failed antecedent.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use super::problem::ProblemSpec;
use super::run::DEFAULT_BOUND;
use super::{AnalysisReport, Block};
use crate::cotangent::{conormal_presentation, cotangent_modules_with_cap, kaehler_module};
use crate::error::{Error, Result};
use crate::modules::{classify_ideal, resolve, PresentedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "vacuous (antecedent fails)")]
    Vacuous,
    #[serde(rename = "COUNTEREXAMPLE CANDIDATE")]
    CounterexampleCandidate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Consistent => "consistent",
            Status::Vacuous => "vacuous (antecedent fails)",
            Status::CounterexampleCandidate => "COUNTEREXAMPLE CANDIDATE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCheck {
    pub name: &'static str,
    pub antecedent: bool,
    pub consequent: bool,
    pub status: Status,
    pub detail: String,
}

impl ConjectureCheck {
    fn new(name: &'static str, antecedent: bool, consequent: bool, detail: String) -> Self {
        let status = match (antecedent, consequent) {
            (false, _) => Status::Vacuous,
            (true, true) => Status::Consistent,
            (true, false) => Status::CounterexampleCandidate,
        };
        ConjectureCheck {
            name,
            antecedent,
            consequent,
            status,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessOutcome {
    pub bound: usize,
    pub complete_intersection: bool,
    pub checks: Vec<ConjectureCheck>,
}

impl HarnessOutcome {
    pub fn has_counterexample_candidate(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.status == Status::CounterexampleCandidate)
    }

    pub fn check(&self, name: &str) -> Option<&ConjectureCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn pd_probe(m: &PresentedModule, bound: usize) -> Result<(bool, Vec<usize>)> {
    let r = resolve(m, bound)?;
    Ok((r.is_complete(), r.betti.totals()))
}

/// The harness checks without report wrapping.
pub fn harness_outcome(spec: &ProblemSpec) -> Result<HarnessOutcome> {
    let i = spec.ideal.trimmed();
    let d = spec.bound.unwrap_or(DEFAULT_BOUND);
    if d < 4 {
        return Err(Error::precondition("the harness needs a bound D >= 4"));
    }
    let ci = classify_ideal(&i)?.complete_intersection;
    let conormal = conormal_presentation(&i)?.module;
    let (c1, betti1) = pd_probe(&conormal, d)?;
    let omega = kaehler_module(&i)?.module;
    let (c2, betti2) = pd_probe(&omega, d)?;
    let cot = cotangent_modules_with_cap(&i, d, spec.degree_cap)?;
    let top = d - 1;
    // largest window i0..=D-1 of vanishing T_i
    let mut i0 = top + 1;
    while i0 > 2 && cot.vanishes(i0 - 1) == Some(true) {
        i0 -= 1;
    }
    let c3 = i0 <= d - 2;
    let first_nonzero = (2..d).find(|&k| cot.vanishes(k) == Some(false));
    let probe = |ok: bool, betti: &[usize]| {
        if ok {
            format!("resolution over S stops; Betti numbers {betti:?}")
        } else {
            format!("no termination through {d}; Betti numbers {betti:?}")
        }
    };
    let c3_detail = if c3 {
        format!("T_i = 0 for {i0} <= i <= {top}")
    } else {
        match first_nonzero {
            Some(k) => format!("no vanishing window reaching T_{top}; first nonvanishing T_{k}"),
            None => format!("no vanishing window of length two below {d}"),
        }
    };
    Ok(HarnessOutcome {
        bound: d,
        complete_intersection: ci,
        checks: vec![
            ConjectureCheck::new("C1", c1, ci, probe(c1, &betti1)),
            ConjectureCheck::new("C2", c2, ci, probe(c2, &betti2)),
            ConjectureCheck::new("C3", c3, ci, c3_detail),
        ],
    })
}

pub fn run_conjecture_harness(spec: &ProblemSpec) -> Result<AnalysisReport> {
    let start = Instant::now();
    let o = harness_outcome(spec)?;
    let mut report = AnalysisReport::new(spec);
    let mut text = format!("complete intersection: {}\n", o.complete_intersection);
    for c in &o.checks {
        text.push_str(&format!("{}: {} ({})\n", c.name, c.status, c.detail));
    }
    if o.has_counterexample_candidate() {
        report.caveats.push(
            "harness: COUNTEREXAMPLE CANDIDATE reported; this indicates an engine defect".into(),
        );
    }
    report.blocks.push(Block {
        name: "harness".into(),
        json: json!(o),
        text,
    });
    report.timing = Some(start.elapsed());
    Ok(report)
}
