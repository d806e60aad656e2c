//! Koszul complexes and the low-degree structure of Koszul homology.

use std::sync::Arc;

use super::dg::{DgAlgebra, DgElement, DgMonomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel, minimal_columns_modulo, Base, GradedMatrix};
use crate::modules::{ChainComplex, PresentedModule};
use crate::poly::{PolyRing, Polynomial};

/// The exterior dg algebra `R<T_1..T_m | δT_k = a_k>`.
pub fn koszul_algebra(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<DgAlgebra> {
    let mut alg = DgAlgebra::new(&Base::Poly(ring.clone()));
    for g in gens {
        if g.is_zero() {
            return Err(Error::precondition("Koszul generators must be nonzero"));
        }
        crate::groebner::check_homogeneous(g)?;
        let d = g.degree().unwrap() as i32;
        alg.push_variable(1, d, DgElement::term(DgMonomial::one(), g.clone()));
    }
    Ok(alg)
}

/// The Koszul complex on `gens` over the polynomial ring.
pub fn koszul_complex(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<ChainComplex> {
    let alg = koszul_algebra(ring, gens)?;
    alg.complex(1, gens.len(), alg.base())
}

/// Koszul homology `H_i`, and for `i = 2` the products of 1-cycles.
#[derive(Clone, Debug)]
pub struct KoszulHomology {
    pub index: usize,
    pub homology: PresentedModule,
    /// Cycles representing minimal generators of `H_1` (when `i = 2`).
    pub one_cycles: Vec<DgElement>,
    /// Columns `z_a z_b` (`a < b`) in the basis of `K_2`: the map
    /// `∧²H_1 -> H_2` on generators (when `i = 2`).
    pub products: Option<GradedMatrix>,
    /// `H_1^2 ⊆ H_2` (when `i = 2`).
    pub square: Option<PresentedModule>,
    /// `H_2 / H_1^2` (when `i = 2`).
    pub quotient: Option<PresentedModule>,
}

/// Minimal generators of `H_h` of a complex as cycle columns.
pub(crate) fn homology_generators(c: &ChainComplex, h: usize) -> Result<GradedMatrix> {
    let ring = c.base().ring();
    let z = match c.d(h) {
        Some(d) => kernel(d, c.base()),
        None => GradedMatrix::identity(ring, c.degrees(h).to_vec()),
    };
    let b = match c.d(h + 1) {
        Some(d) => d.clone(),
        None => GradedMatrix::zero(ring, c.degrees(h).to_vec(), Vec::new()),
    };
    let idx = minimal_columns_modulo(&z, &b, c.base());
    Ok(z.select_columns(&idx))
}

pub fn koszul_homology_algebra(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    i: usize,
) -> Result<KoszulHomology> {
    let alg = koszul_algebra(ring, gens)?;
    let base = alg.base().clone();
    let top = gens.len().max(i + 1);
    let c = alg.complex(1, top, &base)?;
    let homology = c.homology_at(i)?;
    if i != 2 {
        return Ok(KoszulHomology {
            index: i,
            homology,
            one_cycles: Vec::new(),
            products: None,
            square: None,
            quotient: None,
        });
    }
    let k1 = alg.monomials(1, i32::MAX, 1);
    let k2 = alg.monomials(2, i32::MAX, 1);
    let gens1 = homology_generators(&c, 1)?;
    let one_cycles: Vec<DgElement> = gens1
        .columns()
        .iter()
        .map(|col| alg.element_from_column(&k1, col))
        .collect();
    let mut cols = Vec::new();
    let mut col_degrees = Vec::new();
    for a in 0..one_cycles.len() {
        for b in a + 1..one_cycles.len() {
            let p = alg.mul(&one_cycles[a], &one_cycles[b]);
            cols.push(alg.column_of(&k2, &p));
            col_degrees.push(gens1.col_degrees()[a] + gens1.col_degrees()[b]);
        }
    }
    let row_degrees: Vec<i32> = k2.iter().map(|m| alg.ideg(m)).collect();
    let products = GradedMatrix::from_columns(ring, row_degrees.clone(), col_degrees, cols)?;
    let boundaries = match c.d(3) {
        Some(d) => d.clone(),
        None => GradedMatrix::zero(ring, row_degrees.clone(), Vec::new()),
    };
    let z2 = match c.d(2) {
        Some(d) => kernel(d, &base),
        None => GradedMatrix::identity(ring, row_degrees.clone()),
    };
    let square = PresentedModule::subquotient(&base, &products, &boundaries)?;
    let quotient = PresentedModule::subquotient(&base, &z2, &boundaries.hconcat(&products)?)?;
    Ok(KoszulHomology {
        index: 2,
        homology,
        one_cycles,
        products: Some(products),
        square: Some(square),
        quotient: Some(quotient),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;

    #[test]
    fn koszul_ranks_and_homology() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let c = koszul_complex(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(c.ranks(), vec![1, 2, 1]);
        assert!(c.homology_at(1).unwrap().is_zero().unwrap());
        let m2 = Ideal::maximal(&r).power(2);
        let c = koszul_complex(&r, m2.gens()).unwrap();
        assert_eq!(c.ranks(), vec![1, 3, 3, 1]);
        let h1 = c.homology_at(1).unwrap();
        assert_eq!(h1.mu(), 2);
        assert!(c.homology_at(2).unwrap().is_zero().unwrap());
        assert!(c.homology_at(3).unwrap().is_zero().unwrap());
        let h0 = c.homology_at(0).unwrap();
        assert_eq!(h0.length(), Some(3));
    }

    #[test]
    fn square_of_one_cycles_for_maximal_square() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let m2 = Ideal::maximal(&r).power(2);
        let kh = koszul_homology_algebra(&r, m2.gens(), 2).unwrap();
        assert_eq!(kh.one_cycles.len(), 2);
        assert!(kh.homology.is_zero().unwrap());
        assert!(kh.quotient.unwrap().is_zero().unwrap());
    }
}
