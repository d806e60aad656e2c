//! `Tor^R(S, S)` as the homology of `X ⊗_R S`, and the comparison of
//! `∧²(I/I²)` with `Tor_2`.

use super::conormal::conormal_presentation;
use crate::error::{Error, Result};
use crate::groebner::{image_contains, kernel, Base, GradedMatrix, Ideal};
use crate::koszul_tate::{minimal_resolvent, DgMonomial, TateResolvent};
use crate::modules::{k_subsets, PresentedModule};

/// `Tor_i^R(S, S) = H_i(X ⊗_R S)`; needs variables through degree `i + 1`.
pub fn tor_module(x: &TateResolvent, i: usize) -> Result<PresentedModule> {
    if x.bound() < i + 1 {
        return Err(Error::precondition(format!(
            "Tor_{i} needs a resolvent to degree {}",
            i + 1
        )));
    }
    let base = Base::Quotient(x.ideal().clone());
    let c = x.complex(i + 1, i + 1, &base)?;
    c.homology_at(i)
}

pub fn tor_algebra(i: &Ideal, k: usize) -> Result<PresentedModule> {
    let x = minimal_resolvent(i, (k + 1).max(2))?;
    tor_module(&x, k)
}

/// The map `∧²(I/I²) -> Tor_2`, `e_a ∧ e_b -> [T_a T_b]`.
#[derive(Clone, Debug)]
pub struct WedgeToTor {
    /// Columns: the products `T_a T_b` in the basis of `(X ⊗ S)_2`.
    pub map: GradedMatrix,
    pub wedge: PresentedModule,
    pub tor2: PresentedModule,
    pub surjective: bool,
    pub injective: bool,
}

pub fn wedge_to_tor2(i: &Ideal) -> Result<WedgeToTor> {
    let x = minimal_resolvent(i, 3)?;
    let ring = i.ring();
    let base = Base::Quotient(i.clone());
    let c = x.complex(3, 3, &base)?;
    let basis = x.monomial_basis(2, 3);
    let ones: Vec<_> = x.algebra().variables_of_degree(1).collect();
    let pairs = k_subsets(ones.len(), 2);
    let mut cols = Vec::new();
    let mut col_degrees = Vec::new();
    for p in &pairs {
        let (a, b) = (ones[p[0]], ones[p[1]]);
        let mon = DgMonomial::from_factors(vec![(a.id, 1), (b.id, 1)]);
        let k = basis
            .iter()
            .position(|m| *m == mon)
            .ok_or_else(|| Error::invariant("product of degree-one variables missing"))?;
        let mut col = vec![ring.zero(); basis.len()];
        col[k] = ring.one();
        cols.push(col);
        col_degrees.push(a.ideg + b.ideg);
    }
    let d2 = c.d(2).expect("degree-two differential");
    let row_degrees = d2.col_degrees().to_vec();
    let map = GradedMatrix::from_columns(ring, row_degrees.clone(), col_degrees, cols)?;
    let z2 = kernel(d2, &base);
    let b2 = match c.d(3) {
        Some(d) => d.clone(),
        None => GradedMatrix::zero(ring, row_degrees, Vec::new()),
    };
    let tor2 = PresentedModule::subquotient(&base, &z2, &b2)?;
    let wedge = conormal_presentation(i)?.module.exterior_power(2);
    let surjective = image_contains(&b2.hconcat(&map)?, &z2, &base)?;
    let injective = if map.ncols() == 0 {
        true
    } else {
        let syz = kernel(&map.hconcat(&b2)?, &base);
        let rows: Vec<usize> = (0..map.ncols()).collect();
        let all: Vec<usize> = (0..syz.ncols()).collect();
        let k = syz.submatrix(&rows, &all);
        image_contains(wedge.presentation(), &k, &base)?
    };
    Ok(WedgeToTor {
        map,
        wedge,
        tor2,
        surjective,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn tor_of_complete_intersection() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let i = Ideal::new(&r, vec![r.var(0).pow(2), r.var(1).pow(2)]).unwrap();
        let t0 = tor_algebra(&i, 0).unwrap();
        assert_eq!(t0.hilbert(), i.quotient_hilbert());
        let t2 = tor_algebra(&i, 2).unwrap().minimal_presentation();
        assert_eq!(t2.mu(), 1);
        assert_eq!(t2.generator_degrees(), &[4]);
        let w = wedge_to_tor2(&i).unwrap();
        assert!(w.surjective && w.injective);
    }

    #[test]
    fn tor_one_is_conormal() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let i = Ideal::maximal(&r).power(2);
        let t1 = tor_algebra(&i, 1).unwrap();
        let c = conormal_presentation(&i).unwrap();
        assert_eq!(t1.hilbert(), c.module.hilbert());
    }

    #[test]
    fn twisted_cubic_wedge_is_tor_two() {
        let i = crate::test_corpus::twisted_cubic();
        let w = wedge_to_tor2(&i).unwrap();
        assert!(w.surjective && w.injective);
        assert_eq!(w.wedge.hilbert_prefix(0, 8), w.tor2.hilbert_prefix(0, 8));
        let k = crate::modules::canonical_module(&i).unwrap();
        assert_eq!(k.dual().hilbert_prefix(0, 8), w.tor2.hilbert_prefix(0, 8));
    }
}
