//! The cotangent modules `T_i(S/R, S)` of `S = R/I`, computed from the
//! linear part of a minimal resolvent, together with the conormal and
//! Kähler modules and comparisons with Koszul homology and `Tor^R(S, S)`.

mod checks;
mod conormal;
mod tor;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{Base, GradedMatrix, Ideal};
use crate::koszul_tate::{minimal_resolvent_with_cap, DgMonomial, ResolventKind, TateResolvent};
use crate::modules::{ChainComplex, PresentedModule};

pub use checks::{
    eta_kernel_hilbert, filtration_homology_hilbert, low_degree_sequence_check, t3_cross_check,
    t3_from_koszul, SequenceCheck,
};
pub use conormal::{conormal_presentation, kaehler_module, Conormal, Kaehler};
pub use tor::{tor_algebra, tor_module, wedge_to_tor2, WedgeToTor};

/// The complex `L` with `L_i` free over `S` on the variables of
/// homological degree `i` and differential the linear part of `δ` mod `I`.
#[derive(Clone, Debug)]
pub struct LComplex {
    resolvent: TateResolvent,
    /// Spot `k` of the inner complex is `L_{k+1}`.
    complex: ChainComplex,
}

/// Builds `L` from a minimal resolvent of `R -> R/I`.
pub fn l_complex(x: &TateResolvent) -> Result<LComplex> {
    if x.kind() != ResolventKind::Quotient {
        return Err(Error::precondition(
            "L is built from a resolvent of R -> R/I",
        ));
    }
    if x.bound() < 2 {
        return Err(Error::precondition("resolvent bound must be at least 2"));
    }
    let defects = x.minimality_defects();
    if !defects.is_empty() {
        return Err(Error::precondition(format!(
            "resolvent is not minimal ({})",
            defects.join(", ")
        )));
    }
    let base = Base::Quotient(x.ideal().clone());
    let ring = x.ideal().ring();
    let alg = x.algebra();
    let spot = |i: usize| alg.variables_of_degree(i).collect::<Vec<_>>();
    let mut diffs = Vec::new();
    for i in 2..=x.bound() {
        let rows = spot(i - 1);
        let cols = spot(i);
        let columns: Vec<Vec<_>> = cols
            .iter()
            .map(|t| {
                rows.iter()
                    .map(|u| match t.diff.coefficient(&DgMonomial::var(u.id)) {
                        Some(c) => base.reduce(c),
                        None => ring.zero(),
                    })
                    .collect()
            })
            .collect();
        diffs.push(GradedMatrix::from_columns(
            ring,
            rows.iter().map(|u| u.ideg).collect(),
            cols.iter().map(|t| t.ideg).collect(),
            columns,
        )?);
    }
    let f1 = spot(1).iter().map(|u| u.ideg).collect();
    let complex = ChainComplex::new(&base, f1, diffs)?;
    complex.check_complex()?;
    Ok(LComplex {
        resolvent: x.clone(),
        complex,
    })
}

impl LComplex {
    pub fn resolvent(&self) -> &TateResolvent {
        &self.resolvent
    }

    pub fn bound(&self) -> usize {
        self.resolvent.bound()
    }

    /// `rank_S L_i = e_i`.
    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.complex.rank(i - 1)
        }
    }

    /// `δ_i : L_i -> L_{i-1}` for `i >= 2`.
    pub fn d(&self, i: usize) -> Option<&GradedMatrix> {
        if i < 2 {
            None
        } else {
            self.complex.d(i - 1)
        }
    }

    /// True when every differential entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.complex.differentials().iter().all(|d| {
            d.columns()
                .iter()
                .flatten()
                .all(|p| p.is_zero() || !p.is_constant())
        })
    }

    /// `H_i(L)` for `1 <= i <= bound`; at the top spot the kernel is only
    /// as complete as the resolvent.
    pub fn homology(&self, i: usize) -> Result<PresentedModule> {
        if i == 0 || i > self.bound() {
            return Err(Error::precondition(format!(
                "L has spots 1..={}, not {i}",
                self.bound()
            )));
        }
        self.complex.homology_at(i - 1)
    }
}

/// One cotangent module with its numerical data.
#[derive(Clone, Debug, Serialize)]
pub struct CotangentEntry {
    #[serde(skip)]
    pub module: PresentedModule,
    pub mu: usize,
    pub hilbert: Vec<i64>,
    pub zero: bool,
}

/// `T_i(S/R, S)` for `1 <= i <= D - 1`.
#[derive(Clone, Debug)]
pub struct CotangentReport {
    pub bound: usize,
    /// Hilbert functions are listed for internal degrees `0..=hilbert_top`.
    pub hilbert_top: i32,
    pub entries: BTreeMap<usize, CotangentEntry>,
    pub caveats: Vec<String>,
    pub l: LComplex,
}

impl CotangentReport {
    pub fn t(&self, i: usize) -> Option<&CotangentEntry> {
        self.entries.get(&i)
    }

    /// `Some(true)` if `T_i = 0`, `None` if `i` is outside the report.
    pub fn vanishes(&self, i: usize) -> Option<bool> {
        self.t(i).map(|e| e.zero)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, e) in &self.entries {
            out.push_str(&format!(
                "T_{i}: mu={} zero={} hilbert={:?}\n",
                e.mu, e.zero, e.hilbert
            ));
        }
        for c in &self.caveats {
            out.push_str(&format!("caveat: {c}\n"));
        }
        out
    }
}

impl Serialize for CotangentReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            #[serde(rename = "T")]
            t: BTreeMap<String, &'a CotangentEntry>,
            caveats: &'a [String],
        }
        View {
            t: self
                .entries
                .iter()
                .map(|(i, e)| (i.to_string(), e))
                .collect(),
            caveats: &self.caveats,
        }
        .serialize(s)
    }
}

fn entry(m: PresentedModule, top: i32) -> Result<CotangentEntry> {
    let m = m.minimal_presentation();
    let zero = m.is_zero()?;
    Ok(CotangentEntry {
        mu: m.mu(),
        hilbert: m.hilbert_prefix(0, top),
        zero,
        module: m,
    })
}

/// `T_i(S/R, S)` for `1 <= i <= D - 1` from the minimal resolvent to
/// homological degree `D`.
pub fn cotangent_modules(i: &Ideal, d: usize) -> Result<CotangentReport> {
    cotangent_modules_with_cap(i, d, None)
}

pub fn cotangent_modules_with_cap(
    i: &Ideal,
    d: usize,
    cap: Option<i32>,
) -> Result<CotangentReport> {
    if d < 2 {
        return Err(Error::precondition("cotangent modules need a bound D >= 2"));
    }
    let x = minimal_resolvent_with_cap(i, d, cap)?;
    cotangent_from_resolvent(&x)
}

pub fn cotangent_from_resolvent(x: &TateResolvent) -> Result<CotangentReport> {
    let l = l_complex(x)?;
    let d = x.bound();
    let top = x.rate_cap(d).max(6);
    let mut entries = BTreeMap::new();
    let conormal = conormal_presentation(x.ideal())?;
    let t1 = entry(conormal.module.clone(), top)?;
    let h1 = l.homology(1)?;
    if h1.hilbert() != t1.module.hilbert() {
        return Err(Error::invariant(
            "coker of the first differential of L differs from the conormal module",
        ));
    }
    entries.insert(1, t1);
    for k in 2..d {
        entries.insert(k, entry(l.homology(k)?, top)?);
    }
    let mut caveats: Vec<String> = x.caveats().to_vec();
    if d >= 2 {
        if let Some(e) = entries.get(&(d - 1)) {
            if e.mu > 0 && d >= 3 {
                caveats.push(format!(
                    "T_{}: boundary effect possible (the resolvent stops at degree {d})",
                    d - 1
                ));
            }
        }
    }
    Ok(CotangentReport {
        bound: d,
        hilbert_top: top,
        entries,
        caveats,
        l,
    })
}

/// `T_2(S/R, S) = 0`.
pub fn syzygetic_test(i: &Ideal) -> Result<bool> {
    let r = cotangent_modules(i, 3)?;
    Ok(r.vanishes(2) == Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::test_corpus::twisted_cubic;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::with_vars(vars).unwrap()
    }

    #[test]
    fn hypersurface_has_free_conormal_module() {
        let r = ring(&["x"]);
        let i = Ideal::new(&r, vec![r.var(0).pow(2)]).unwrap();
        let rep = cotangent_modules(&i, 5).unwrap();
        let t1 = rep.t(1).unwrap();
        assert_eq!(t1.mu, 1);
        assert!(t1.module.presentation().ncols() == 0);
        for k in 2..5 {
            assert_eq!(rep.vanishes(k), Some(true));
        }
        assert!(rep.caveats.is_empty());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::maximal(&r).power(2);
        let rep = cotangent_modules(&i, 6).unwrap();
        assert_eq!(rep.l.rank(1), 3);
        assert_eq!(rep.l.rank(2), 2);
        assert!(rep.l.is_minimal());
        assert_eq!(rep.vanishes(3), Some(true));
        assert_eq!(rep.vanishes(4), Some(false));
        assert_eq!(rep.vanishes(5), Some(false));
        assert!(!rep.caveats.is_empty());
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["T"]["3"]["zero"], serde_json::json!(true));
        assert_eq!(json["T"]["1"]["mu"], serde_json::json!(3));
    }

    #[test]
    fn twisted_cubic_low_cotangent_modules() {
        let rep = cotangent_modules(&twisted_cubic(), 5).unwrap();
        assert_eq!(rep.vanishes(2), Some(true));
        assert_eq!(rep.vanishes(3), Some(true));
        assert_eq!(rep.vanishes(4), Some(false));
        assert!(syzygetic_test(&twisted_cubic()).unwrap());
    }

    #[test]
    fn small_bound_is_rejected() {
        let r = ring(&["x"]);
        let i = Ideal::new(&r, vec![r.var(0).pow(2)]).unwrap();
        assert!(cotangent_modules(&i, 1).is_err());
    }
}
