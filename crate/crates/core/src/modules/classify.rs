//! Length, classification predicates for quotient rings, and the
//! Cohen–Macaulay length test.

use serde::Serialize;

use super::ext::ext_module;
use super::presented::PresentedModule;
use super::resolution::{depth, euler_rank, resolve};
use crate::error::{Error, Result};
use crate::groebner::{Base, Ideal};
use crate::poly::Polynomial;

/// Total dimension over the field; `None` when infinite.
pub fn module_length(m: &PresentedModule) -> Option<i64> {
    m.length()
}

/// Structural predicates of `S = R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub mu: usize,
    pub height: i64,
    pub projective_dimension: usize,
    pub betti: Vec<usize>,
    pub complete_intersection: bool,
    pub almost_complete_intersection: bool,
    pub perfect: bool,
    pub gorenstein: bool,
    pub quasi_gorenstein: bool,
}

pub fn classify_ideal(i: &Ideal) -> Result<Classification> {
    if i.is_unit() {
        return Err(Error::precondition("the unit ideal has no quotient ring"));
    }
    let ring = i.ring();
    let base = Base::Poly(ring.clone());
    let s = PresentedModule::cyclic(&base, i)?;
    let n = ring.nvars();
    let res = resolve(&s, n + 1)?;
    let pd = res
        .projective_dimension()
        .ok_or_else(|| Error::invariant("resolution over the polynomial ring did not terminate"))?;
    let betti = res.betti.totals();
    let mu = i.mu();
    let height = i.height();
    let perfect = pd as i64 == height;
    let top = betti.get(pd).copied().unwrap_or(0);
    let ext = ext_module(i, height as usize)?;
    Ok(Classification {
        mu,
        height,
        projective_dimension: pd,
        complete_intersection: mu as i64 == height,
        almost_complete_intersection: mu as i64 <= height + 1,
        perfect,
        gorenstein: perfect && top == 1,
        quasi_gorenstein: ext.is_cyclic_with_annihilator(i),
        betti,
    })
}

/// Depth, projective dimension and number of variables of a module over
/// the polynomial ring; the Auslander–Buchsbaum formula says the first two
/// sum to the third.
pub fn auslander_buchsbaum(m: &PresentedModule, seed: u64) -> Result<(usize, usize, usize)> {
    let n = m.ring().nvars();
    let res = resolve(m, n + 1)?;
    let pd = res
        .projective_dimension()
        .ok_or_else(|| Error::invariant("resolution over the polynomial ring did not terminate"))?;
    Ok((depth(m, seed)?, pd, n))
}

/// Rank of a module over its base: the Euler characteristic of a finite
/// resolution, or otherwise the multiplicity ratio `e(M)/e(S)`, which is
/// the rank whenever `M` has one.
pub fn module_rank(m: &PresentedModule, bound: usize) -> Result<i64> {
    match euler_rank(m, bound) {
        Ok(r) => Ok(r),
        Err(Error::Undetermined(_)) => {
            let hs = m.base().hilbert();
            let hm = m.hilbert();
            if hm.dimension() < hs.dimension() {
                return Ok(0);
            }
            let (es, em) = (hs.multiplicity(), hm.multiplicity());
            if es == 0 || em % es != 0 {
                return Err(Error::Undetermined("module has no rank".into()));
            }
            Ok(em / es)
        }
        Err(e) => Err(e),
    }
}

/// `ℓ(M/(s)M) = rank(M) · ℓ(S/(s)S)` for a homogeneous system of
/// parameters `s` of `S`.
pub fn cm_length_criterion(m: &PresentedModule, sop: &[Polynomial]) -> Result<bool> {
    let base = m.base().clone();
    let s_dim = base.hilbert().dimension();
    if sop.iter().any(|f| !f.is_homogeneous() || f.is_zero()) {
        return Err(Error::precondition(
            "system of parameters must be homogeneous and nonzero",
        ));
    }
    if sop.len() as i64 != s_dim {
        return Err(Error::precondition(format!(
            "system of parameters has {} elements but the ring has dimension {s_dim}",
            sop.len()
        )));
    }
    let s_free = PresentedModule::free(&base, vec![0]);
    let ls = s_free
        .quotient_by(sop)?
        .length()
        .ok_or_else(|| Error::precondition("quotient by the parameters is not Artinian"))?;
    let lm = m
        .quotient_by(sop)?
        .length()
        .expect("finite over an Artinian quotient");
    let rank = module_rank(m, m.ring().nvars() + 6)?;
    Ok(lm == rank * ls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn complete_intersection_predicates() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let c = classify_ideal(&Ideal::new(&r, vec![x.pow(2), y.pow(3)]).unwrap()).unwrap();
        assert!(c.complete_intersection && c.almost_complete_intersection);
        assert!(c.perfect && c.gorenstein && c.quasi_gorenstein);
        let c = classify_ideal(&Ideal::maximal(&r).power(2)).unwrap();
        assert!(!c.complete_intersection && c.almost_complete_intersection);
        assert!(c.perfect && !c.gorenstein && !c.quasi_gorenstein);
        assert_eq!(c.betti, vec![1, 3, 2]);
        assert!(classify_ideal(&Ideal::unit(&r)).is_err());
    }

    #[test]
    fn length_test_on_free_and_torsion_modules() {
        let r = PolyRing::with_vars(&["x"]).unwrap();
        let base = Base::Poly(r.clone());
        let x = r.var(0);
        let free = PresentedModule::free(&base, vec![0, 0]);
        assert!(cm_length_criterion(&free, std::slice::from_ref(&x)).unwrap());
        let k = PresentedModule::cyclic(&base, &Ideal::maximal(&r)).unwrap();
        assert!(!cm_length_criterion(&k, std::slice::from_ref(&x)).unwrap());
        assert!(cm_length_criterion(&k, &[]).is_err());
        assert_eq!(module_length(&k), Some(1));
        assert_eq!(module_length(&free), None);
    }
}
