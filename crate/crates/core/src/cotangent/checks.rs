//! Independent descriptions of the low cotangent modules: the kernel of the
//! linear-part map on `H(F_{i-1}X)`, the homology of the filtration pieces,
//! and Koszul homology.

use super::{cotangent_modules, CotangentReport};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::koszul_tate::{koszul_complex, koszul_homology_algebra, TateResolvent, Window};
use crate::linalg::{kernel_basis, rank, sparse_from};
use crate::modules::{GradedPieces, PresentedModule};

/// Dimensions, for internal degrees `lo..=hi`, of the classes in
/// `H_{i-1}(F_{i-1}X)` whose coefficients along the variables of degree
/// `i - 1` all lie in `I`.
pub fn eta_kernel_hilbert(x: &TateResolvent, i: usize, lo: i32, hi: i32) -> Result<Vec<i64>> {
    if i < 2 || x.bound() < i - 1 {
        return Err(Error::precondition(format!(
            "linear-part kernel at index {i} needs 2 <= i <= bound + 1"
        )));
    }
    let alg = x.algebra();
    let mut w = Window::new(alg, i - 1);
    let mut pieces = GradedPieces::new(x.ideal());
    let mut out = Vec::new();
    for j in lo..=hi {
        let sp = w.space(i - 1, j);
        let below = w.space(i - 2, j);
        let mut cols = w.differential(&sp, &below);
        // coordinates of the linear coefficients modulo I, after the rows of δ
        let mut offsets = vec![None; sp.monomials.len()];
        let mut rows = below.dim();
        for (k, mu) in sp.monomials.iter().enumerate() {
            if let Some(v) = mu.as_variable() {
                if alg.variable(v).hdeg == i - 1 {
                    offsets[k] = Some(rows);
                    rows += pieces.dim(j - alg.variable(v).ideg);
                }
            }
        }
        for (c, (k, m)) in cols.iter_mut().zip(&sp.basis) {
            if let Some(off) = offsets[*k] {
                let extra: Vec<_> = pieces
                    .reduce_monomial(m)
                    .into_iter()
                    .map(|(r, a)| (off + r, a))
                    .collect();
                let mut all = std::mem::take(c);
                all.extend(extra);
                *c = sparse_from(all);
            }
        }
        let nullity = kernel_basis(&cols, rows).len();
        let above = w.space(i, j);
        let boundaries = rank(&w.differential(&above, &sp));
        out.push(nullity as i64 - boundaries as i64);
    }
    Ok(out)
}

/// Dimensions of `H_i(F_{i-1}X)` in internal degrees `lo..=hi`.
pub fn filtration_homology_hilbert(
    x: &TateResolvent,
    i: usize,
    lo: i32,
    hi: i32,
) -> Result<Vec<i64>> {
    if i < 2 || x.bound() < i - 1 {
        return Err(Error::precondition(format!(
            "filtration homology at index {i} needs the resolvent to degree {}",
            i - 1
        )));
    }
    let mut w = Window::new(x.algebra(), i - 1);
    let mut out = Vec::new();
    for j in lo..=hi {
        let sp = w.space(i, j);
        let below = w.space(i - 1, j);
        let above = w.space(i + 1, j);
        let nullity = kernel_basis(&w.differential(&sp, &below), below.dim()).len();
        let boundaries = rank(&w.differential(&above, &sp));
        out.push(nullity as i64 - boundaries as i64);
    }
    Ok(out)
}

/// `H_2 / H_1²` of the Koszul complex on the generators of `I`.
pub fn t3_from_koszul(i: &Ideal) -> Result<PresentedModule> {
    let kh = koszul_homology_algebra(i.ring(), i.gens(), 2)?;
    Ok(kh
        .quotient
        .expect("quotient computed for index 2")
        .minimal_presentation())
}

/// `T_3` from `L` and `H_2/H_1²` agree in Hilbert function (degrees
/// `0..=top`) and minimal number of generators.
pub fn t3_cross_check(i: &Ideal) -> Result<bool> {
    let report = cotangent_modules(i, 4)?;
    t3_matches(&report, i)
}

pub(crate) fn t3_matches(report: &CotangentReport, i: &Ideal) -> Result<bool> {
    let t3 = report
        .t(3)
        .ok_or_else(|| Error::precondition("report does not reach T_3"))?;
    let q = t3_from_koszul(i)?;
    Ok(q.mu() == t3.mu && q.hilbert_prefix(0, report.hilbert_top) == t3.hilbert)
}

/// Outcome of comparing `0 -> T_4 -> ∧²H_1 -> H_2 -> T_3 -> 0` by Hilbert series.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SequenceCheck {
    pub h3_zero: bool,
    /// Alternating sum of Hilbert series vanishes; `None` when `H_3 != 0`.
    pub exact: Option<bool>,
}

pub fn low_degree_sequence_check(report: &CotangentReport, i: &Ideal) -> Result<SequenceCheck> {
    let (t3, t4) = match (report.t(3), report.t(4)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::precondition(
                "the sequence needs T_3 and T_4 (bound D >= 5)",
            ))
        }
    };
    let k = koszul_complex(i.ring(), i.gens())?;
    let h3_zero = k.homology_at(3)?.is_zero()?;
    if !h3_zero {
        return Ok(SequenceCheck {
            h3_zero,
            exact: None,
        });
    }
    let h1 = k.homology_at(1)?.minimal_presentation();
    let h2 = k.homology_at(2)?;
    let wedge = h1.exterior_power(2);
    let lhs = t4.module.hilbert().add(&h2.hilbert());
    let rhs = wedge.hilbert().add(&t3.module.hilbert());
    Ok(SequenceCheck {
        h3_zero,
        exact: Some(lhs.add(&rhs.negate()).is_zero()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::test_corpus::twisted_cubic;

    #[test]
    fn alternative_descriptions_agree_on_maximal_square() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let i = Ideal::maximal(&r).power(2);
        let rep = cotangent_modules(&i, 6).unwrap();
        let top = rep.hilbert_top;
        let x = rep.l.resolvent();
        for k in 2..6 {
            assert_eq!(
                eta_kernel_hilbert(x, k, 0, top).unwrap(),
                rep.t(k).unwrap().hilbert,
                "index {k}"
            );
        }
        for k in 3..5 {
            assert_eq!(
                filtration_homology_hilbert(x, k, 0, top).unwrap(),
                rep.t(k + 1).unwrap().hilbert
            );
        }
        assert!(t3_matches(&rep, &i).unwrap());
        let s = low_degree_sequence_check(&rep, &i).unwrap();
        assert_eq!(s.exact, Some(true));
    }

    #[test]
    fn twisted_cubic_sequence() {
        let i = twisted_cubic();
        let rep = cotangent_modules(&i, 5).unwrap();
        assert!(t3_matches(&rep, &i).unwrap());
        assert_eq!(
            low_degree_sequence_check(&rep, &i).unwrap().exact,
            Some(true)
        );
    }
}
