//! Ext into the base ring, duals and exterior powers.

use super::presented::PresentedModule;
use super::resolution::resolve;
use crate::error::{Error, Result};
use crate::groebner::{kernel, Base, GradedMatrix, Ideal};

/// `Ext^i_B(M, B)` as the homology of the dualized minimal resolution.
///
/// Dualizing transposes the differentials and negates the degree shifts, so
/// `Ext^i` is `ker(d_{i+1}^T) / im(d_i^T)` on `F_i^*`.
pub fn ext_into_base(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    let base = m.base().clone();
    let res = resolve(m, i + 1)?;
    let c = &res.complex;
    if i > c.length() {
        return Ok(PresentedModule::zero(&base));
    }
    let ring = base.ring();
    let dual_degrees: Vec<i32> = c.degrees(i).iter().map(|d| -d).collect();
    let z = match c.d(i + 1) {
        Some(d) => kernel(&d.transpose(), &base),
        None => GradedMatrix::identity(ring, dual_degrees.clone()),
    };
    let b = match (i, c.d(i)) {
        (0, _) | (_, None) => GradedMatrix::zero(ring, dual_degrees, Vec::new()),
        (_, Some(d)) => d.transpose(),
    };
    PresentedModule::subquotient(&base, &z, &b)
}

/// `Ext^i_R(R/I, R)` over the polynomial ring.
pub fn ext_module(i: &Ideal, k: usize) -> Result<PresentedModule> {
    if i.is_unit() {
        return Err(Error::precondition("Ext of the zero ring"));
    }
    let base = Base::Poly(i.ring().clone());
    let s = PresentedModule::cyclic(&base, i)?;
    let e = ext_into_base(&s, k)?;
    Ok(e.minimal_presentation())
}

/// The canonical module `K_S = Ext^g_R(S, R)` with `g = height I`, as a
/// module over `S = R/I`.
pub fn canonical_module(i: &Ideal) -> Result<PresentedModule> {
    let g = i.height();
    if g < 0 {
        return Err(Error::precondition("canonical module of the zero ring"));
    }
    let e = ext_module(i, g as usize)?;
    Ok(e.over_quotient(i).minimal_presentation())
}

/// `Hom_B(M, B)`.
pub fn dual_module(m: &PresentedModule) -> PresentedModule {
    m.dual().minimal_presentation()
}

/// `∧^r M`.
pub fn exterior_power(m: &PresentedModule, r: usize) -> PresentedModule {
    m.exterior_power(r)
}
