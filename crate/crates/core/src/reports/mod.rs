//! Problem files, analysis dispatch, report emission, and the conjecture
//! harness.

mod harness;
mod problem;
mod run;

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub use harness::{
    harness_outcome, run_conjecture_harness, ConjectureCheck, HarnessOutcome, Status,
};
pub use problem::{
    parse_polynomial, parse_polynomial_list, parse_problem, Analysis, ProblemSpec, DEFAULT_ANALYSES,
};
pub use run::{run_analyses, run_analysis, DEFAULT_BOUND, DEFAULT_SERIES_ORDER};

/// Engine name and version stamped on every report.
pub const ENGINE_VERSION: &str = concat!("calg ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

/// Output of one analysis.
#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    pub json: Value,
    pub text: String,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub version: String,
    /// The problem file the report was computed from.
    pub input: String,
    pub blocks: Vec<Block>,
    pub caveats: Vec<String>,
    /// Wall-clock time; shown in text reports only.
    pub timing: Option<Duration>,
}

impl AnalysisReport {
    pub fn new(spec: &ProblemSpec) -> Self {
        AnalysisReport {
            version: ENGINE_VERSION.to_string(),
            input: spec.emit(),
            blocks: Vec::new(),
            caveats: Vec::new(),
            timing: None,
        }
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }
}

#[derive(Serialize)]
struct JsonView<'a> {
    engine: &'a str,
    input: &'a str,
    analyses: serde_json::Map<String, Value>,
    caveats: &'a [String],
}

pub fn emit_report(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let view = JsonView {
                engine: &report.version,
                input: &report.input,
                analyses: report
                    .blocks
                    .iter()
                    .map(|b| (b.name.clone(), b.json.clone()))
                    .collect(),
                caveats: &report.caveats,
            };
            let mut s = serde_json::to_string_pretty(&view).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("{}\n", report.version);
            for line in report.input.lines() {
                out.push_str(&format!("  {line}\n"));
            }
            for b in &report.blocks {
                out.push_str(&format!("\n== {} ==\n", b.name));
                out.push_str(&b.text);
                if !b.text.ends_with('\n') {
                    out.push('\n');
                }
            }
            if !report.caveats.is_empty() {
                out.push_str("\ncaveats:\n");
                for c in &report.caveats {
                    out.push_str(&format!("  {c}\n"));
                }
            }
            if let Some(t) = report.timing {
                out.push_str(&format!("\nelapsed: {} ms\n", t.as_millis()));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> ProblemSpec {
        parse_problem(text).unwrap()
    }

    #[test]
    fn empty_analysis_set_gives_header_only() {
        let s = spec("ring Q[x]; ideal (x^2); analyze ;");
        let r = run_analyses(&s).unwrap();
        assert!(r.blocks.is_empty());
        let j: Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(j["engine"], ENGINE_VERSION);
        assert!(j["analyses"].as_object().unwrap().is_empty());
        assert!(emit_report(&r, Format::Text).starts_with(ENGINE_VERSION));
    }

    #[test]
    fn json_is_deterministic_and_echoes_input() {
        let s = spec("ring Q[x,y]; ideal (x^2, x*y, y^2); analyze classify, cotangent, series; bound D=6; series N=24;");
        let a = emit_report(&run_analyses(&s).unwrap(), Format::Json);
        let b = emit_report(&run_analyses(&s).unwrap(), Format::Json);
        assert_eq!(a, b);
        let j: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parse_problem(j["input"].as_str().unwrap()).unwrap(), s);
        assert_eq!(j["analyses"]["cotangent"]["T"]["3"]["zero"], true);
        assert_eq!(j["analyses"]["cotangent"]["T"]["4"]["zero"], false);
        assert_eq!(j["analyses"]["classify"]["complete_intersection"], false);
        assert_eq!(j["analyses"]["series"]["poincare"][1], "2/1");
    }

    #[test]
    fn every_analysis_runs_on_twisted_cubic() {
        let s = spec(
            "ring Q[x,y,z,w]; ideal (xz - y^2, xw - yz, yw - z^2); \
             analyze classify, resolve, koszul, tate, cotangent, deviations, series, link; bound D=5; series N=12;",
        );
        let r = run_analyses(&s).unwrap();
        assert_eq!(r.blocks.len(), 8);
        let text = emit_report(&r, Format::Text);
        assert!(
            text.contains("first nonvanishing T_i with i >= 2: T_4"),
            "{text}"
        );
        let link = &r.block("link").unwrap().json;
        assert_eq!(link["verification"]["J_perfect"], true);
        let resolve = &r.block("resolve").unwrap().json;
        assert_eq!(resolve["over_R"]["betti"]["1,2"], 3);
        assert_eq!(resolve["over_R"]["betti"]["2,3"], 2);
    }

    #[test]
    fn harness_statuses() {
        let o = harness_outcome(&spec("ring Q[x,y]; ideal (x^2, y^3);")).unwrap();
        assert!(o
            .checks
            .iter()
            .all(|c| c.status != Status::CounterexampleCandidate));
        assert_eq!(o.check("C1").unwrap().status, Status::Consistent);
        assert_eq!(o.check("C3").unwrap().status, Status::Consistent);
        let o = harness_outcome(&spec("ring Q[x,y]; ideal (x^2, x*y, y^2);")).unwrap();
        assert!(o.checks.iter().all(|c| c.status == Status::Vacuous));
        let r = run_conjecture_harness(&spec(
            "ring Q[x,y,z,w]; ideal (xz - y^2, xw - yz, yw - z^2);",
        ))
        .unwrap();
        let text = emit_report(&r, Format::Text);
        assert!(text.contains("first nonvanishing T_4"), "{text}");
        assert!(!text.contains("COUNTEREXAMPLE"));
    }
}
