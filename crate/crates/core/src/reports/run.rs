//! One block per requested analysis.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use super::problem::{Analysis, ProblemSpec};
use super::{AnalysisReport, Block};
use crate::cotangent::cotangent_modules_with_cap;
use crate::error::{Error, Result};
use crate::groebner::{Base, Ideal};
use crate::koszul_tate::{koszul_complex, minimal_resolvent_with_cap};
use crate::linkage::{find_regular_sequence, link};
use crate::modules::{classify_ideal, residue_field_betti, resolve, PresentedModule};
use crate::series::{
    alpha_coefficients, ci_series_test, deviations, deviations_from_betti_table,
    odd_alpha_coefficients, poincare_from_deviations,
};

pub const DEFAULT_BOUND: usize = 6;
pub const DEFAULT_SERIES_ORDER: usize = 40;
/// Homological bound for resolutions over `S`.
const QUOTIENT_RESOLUTION_BOUND: usize = 8;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payload serializes")
}

fn hilbert_top(spec: &ProblemSpec) -> i32 {
    spec.degree_cap.unwrap_or(8).max(6)
}

pub fn run_analyses(spec: &ProblemSpec) -> Result<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport::new(spec);
    for &a in &spec.analyses {
        let (block, caveats) = run_analysis(spec, a)?;
        report
            .caveats
            .extend(caveats.into_iter().map(|c| format!("{a}: {c}")));
        report.blocks.push(block);
    }
    report.timing = Some(start.elapsed());
    Ok(report)
}

/// Runs one analysis; returns its block and any caveats it raised.
pub fn run_analysis(spec: &ProblemSpec, a: Analysis) -> Result<(Block, Vec<String>)> {
    let i = spec.ideal.trimmed();
    let d = spec.bound.unwrap_or(DEFAULT_BOUND);
    let mut caveats = Vec::new();
    let (json, text) = match a {
        Analysis::Classify => classify_block(&i)?,
        Analysis::Resolve => resolve_block(&i, spec.bound)?,
        Analysis::Koszul => koszul_block(&i, hilbert_top(spec))?,
        Analysis::Tate => {
            let x = minimal_resolvent_with_cap(&i, d, spec.degree_cap)?;
            caveats.extend(x.caveats().iter().cloned());
            let json = json!({
                "bound": d,
                "counts": x.counts(),
                "minimal": x.is_minimal(),
                "variables": x.dump().lines().collect::<Vec<_>>(),
            });
            let text = format!("variables per degree: {:?}\n{}", x.counts(), x.dump());
            (json, text)
        }
        Analysis::Cotangent => {
            let r = cotangent_modules_with_cap(&i, d.max(2), spec.degree_cap)?;
            caveats.extend(r.caveats.iter().cloned());
            let first_nonzero = (2..r.bound).find(|&k| r.vanishes(k) == Some(false));
            let mut text = String::new();
            for (k, e) in &r.entries {
                let _ = writeln!(
                    text,
                    "T_{k}: mu={} zero={} hilbert={:?}",
                    e.mu, e.zero, e.hilbert
                );
            }
            let _ = writeln!(
                text,
                "syzygetic (T_2 = 0): {}",
                r.vanishes(2).unwrap_or(false)
            );
            match first_nonzero {
                Some(k) => {
                    let _ = writeln!(text, "first nonvanishing T_i with i >= 2: T_{k}");
                }
                None => {
                    let _ = writeln!(text, "T_i = 0 for 2 <= i <= {}", r.bound - 1);
                }
            }
            let mut json = to_json(&r);
            json["first_nonvanishing"] = to_json(&first_nonzero);
            (json, text)
        }
        Analysis::Deviations => {
            let x = minimal_resolvent_with_cap(&i, d.max(2), spec.degree_cap)?;
            let eps = deviations(&x)?;
            let json = json!({
                "epsilon": eps.values(),
                "source": eps.source,
                "rigid": eps.is_rigid(),
                "first_vanishing": eps.first_vanishing(3),
            });
            let text = format!(
                "epsilon_1..{}: {:?}\nrigid: {}\n",
                eps.horizon(),
                eps.values(),
                eps.is_rigid()
            );
            (json, text)
        }
        Analysis::Series => series_block(&i, d, spec.series_order.unwrap_or(DEFAULT_SERIES_ORDER))?,
        Analysis::Link => {
            let xs = match &spec.regseq {
                Some(xs) => xs.clone(),
                None => find_regular_sequence(&i, i.height().max(0) as usize, spec.seed)?,
            };
            let l = link(&i, &xs)?;
            if l.improper {
                caveats.push("improper link: ((x):J) differs from I".to_string());
            }
            (to_json(&l), l.render())
        }
    };
    Ok((
        Block {
            name: a.name().to_string(),
            json,
            text,
        },
        caveats,
    ))
}

fn classify_block(i: &Ideal) -> Result<(Value, String)> {
    let c = classify_ideal(i)?;
    let mut json = to_json(&c);
    json["dimension"] = json!(i.krull_dimension());
    let text = format!(
        "mu={} height={} pd={} betti={:?} dim={}\ncomplete intersection: {}\nalmost complete intersection: {}\nperfect: {}\nGorenstein: {}\nquasi-Gorenstein: {}\n",
        c.mu,
        c.height,
        c.projective_dimension,
        c.betti,
        i.krull_dimension(),
        c.complete_intersection,
        c.almost_complete_intersection,
        c.perfect,
        c.gorenstein,
        c.quasi_gorenstein
    );
    Ok((json, text))
}

fn resolve_block(i: &Ideal, bound: Option<usize>) -> Result<(Value, String)> {
    let ring = i.ring();
    let rb = bound.unwrap_or(ring.nvars() + 2);
    let over_r = resolve(&PresentedModule::cyclic(&Base::Poly(ring.clone()), i)?, rb)?;
    let mut text = format!("R/I over R (bound {rb}):\n{}", over_r.betti.render());
    let mut json = json!({
        "over_R": {
            "bound": rb,
            "betti": to_json(&over_r.betti),
            "complete": over_r.is_complete(),
            "pd": over_r.projective_dimension(),
        }
    });
    if i.in_square_of_maximal() {
        let sb = bound.unwrap_or(QUOTIENT_RESOLUTION_BOUND);
        let k = residue_field_betti(i, sb)?;
        let _ = write!(text, "\nresidue field over S (bound {sb}):\n{}", k.render());
        json["residue_field_over_S"] = json!({
            "bound": sb,
            "betti": to_json(&k),
            "totals": k.totals(),
        });
    }
    Ok((json, text))
}

fn koszul_block(i: &Ideal, top: i32) -> Result<(Value, String)> {
    let k = koszul_complex(i.ring(), i.gens())?;
    let mut rows = serde_json::Map::new();
    let mut text = String::new();
    for h in 0..=k.length() {
        let m = k.homology_at(h)?.minimal_presentation();
        let hilbert = m.hilbert_prefix(0, top);
        let zero = m.is_zero()?;
        let _ = writeln!(text, "H_{h}: mu={} zero={zero} hilbert={hilbert:?}", m.mu());
        rows.insert(
            h.to_string(),
            json!({"mu": m.mu(), "hilbert": hilbert, "zero": zero}),
        );
    }
    Ok((json!({ "H": rows }), text))
}

fn series_block(i: &Ideal, d: usize, n: usize) -> Result<(Value, String)> {
    let verdict = ci_series_test(i, d)?;
    // deviations through n/3 suffice for odd α through n
    let h = (d + 1).max(n.div_ceil(3)).max(2);
    let betti = residue_field_betti(i, h)?;
    let eps = deviations_from_betti_table(&betti)?;
    if eps.values().len() >= verdict.deviations.horizon() {
        let agree = verdict.deviations.values() == &eps.values()[..verdict.deviations.horizon()];
        if !agree {
            return Err(Error::invariant(
                "deviations from the resolvent and from Betti inversion differ",
            ));
        }
    }
    let p = poincare_from_deviations(&eps, h, false)?;
    let alpha = alpha_coefficients(&eps, (2 * h).min(n))?;
    let odd = odd_alpha_coefficients(&eps, (n.saturating_sub(1)) / 2)?;
    let json = json!({
        "verdict": to_json(&verdict),
        "epsilon": eps.values(),
        "poincare": p.to_fractions(),
        "alpha": alpha.to_fractions(),
        "odd_alpha": odd.to_fractions(),
    });
    let text = format!(
        "CI certified: {} (direct: {})\nepsilon: {:?}\nPoincare series of k: {}\nalpha: {}\nzero pattern: {}\n",
        verdict.is_ci_certified,
        verdict.direct_ci,
        eps.values(),
        p.to_strings().join(", "),
        alpha.to_strings().join(", "),
        verdict.mahler_flag
    );
    Ok((json, text))
}
