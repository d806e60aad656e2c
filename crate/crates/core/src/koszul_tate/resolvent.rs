//! Minimal resolvents by Tate's adjunction of variables.

use std::fmt::Write as _;

use super::dg::{DgAlgebra, DgElement, DgMonomial, TateVariable};
use super::window::{homology_pieces, Window};
use crate::error::{Error, Result};
use crate::groebner::{Base, GradedMatrix, Ideal};
use crate::modules::ChainComplex;
use crate::poly::Polynomial;

/// What the resolvent resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolventKind {
    /// `R -> R/I` over the polynomial ring.
    Quotient,
    /// The residue field over `S = R/I` (the acyclic closure).
    ResidueField,
}

/// A free dg algebra `X` with `H_0(X)` the target and `H_i(X) = 0` for
/// `0 < i < bound`, built one homological degree at a time.
#[derive(Clone, Debug)]
pub struct TateResolvent {
    alg: DgAlgebra,
    ideal: Ideal,
    kind: ResolventKind,
    bound: usize,
    rate: i32,
    cap_override: Option<i32>,
    caveats: Vec<String>,
}

/// Largest degree in the reduced Gröbner basis, at least 2.
fn groebner_degree(i: &Ideal) -> i32 {
    i.groebner_basis()
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(2)
        .max(2) as i32
}

fn check_input(i: &Ideal) -> Result<()> {
    if i.is_unit() {
        return Err(Error::precondition("the unit ideal has no resolvent"));
    }
    if !i.is_minimally_generated() {
        return Err(Error::precondition(
            "generators are not minimal (one lies in the ideal of the others); trim first",
        ));
    }
    if !i.in_square_of_maximal() {
        return Err(Error::precondition(
            "ideal has a generator of degree one (not contained in the square of the maximal ideal); trim first",
        ));
    }
    Ok(())
}

impl TateResolvent {
    /// The Koszul complex `F_1 X` on the generators of `I` over `R`.
    pub fn koszul(i: &Ideal) -> Result<Self> {
        check_input(i)?;
        let ring = i.ring().clone();
        let mut alg = DgAlgebra::new(&Base::Poly(ring.clone()));
        for g in i.gens() {
            let d = g.degree().unwrap() as i32;
            alg.push_variable(1, d, DgElement::term(DgMonomial::one(), g.clone()));
        }
        Ok(TateResolvent {
            alg,
            ideal: i.clone(),
            kind: ResolventKind::Quotient,
            bound: 1,
            rate: groebner_degree(i) - 1,
            cap_override: None,
            caveats: Vec::new(),
        })
    }

    /// The Koszul complex on the variables over `S = R/I`.
    pub fn residue_koszul(i: &Ideal) -> Result<Self> {
        if i.is_unit() {
            return Err(Error::precondition("the unit ideal has no residue field"));
        }
        if !i.in_square_of_maximal() {
            return Err(Error::precondition(
                "ideal has a generator of degree one; trim first",
            ));
        }
        let ring = i.ring().clone();
        let mut alg = DgAlgebra::new(&Base::Quotient(i.clone()));
        for v in ring.vars() {
            alg.push_variable(1, 1, DgElement::term(DgMonomial::one(), v));
        }
        Ok(TateResolvent {
            alg,
            ideal: i.clone(),
            kind: ResolventKind::ResidueField,
            bound: 1,
            rate: groebner_degree(i) - 1,
            cap_override: None,
            caveats: Vec::new(),
        })
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.alg
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn kind(&self) -> ResolventKind {
        self.kind
    }

    pub fn base(&self) -> &Base {
        self.alg.base()
    }

    /// Largest homological degree of adjoined variables considered complete.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn caveats(&self) -> &[String] {
        &self.caveats
    }

    pub fn variables(&self) -> &[TateVariable] {
        self.alg.variables()
    }

    /// `e_i`: number of variables of homological degree `i`, for
    /// `1 <= i <= bound`.
    pub fn counts(&self) -> Vec<usize> {
        (1..=self.bound)
            .map(|i| self.alg.count_of_degree(i))
            .collect()
    }

    /// Largest internal degree of a variable of homological degree `i` in
    /// a minimal resolvent. It follows from the rate of `S` being at most
    /// (largest Gröbner basis degree) − 1.
    pub fn rate_cap(&self, i: usize) -> i32 {
        let i = i as i32;
        match self.kind {
            ResolventKind::Quotient => 1 + i * self.rate,
            ResolventKind::ResidueField => 1 + (i - 1).max(0) * self.rate,
        }
    }

    /// Internal-degree window used when searching for variables of
    /// homological degree `i`.
    pub fn cap(&self, i: usize) -> i32 {
        self.cap_override.unwrap_or_else(|| self.rate_cap(i))
    }

    /// Uses a fixed internal-degree window instead of the rate bound.
    pub fn set_degree_cap(&mut self, cap: Option<i32>) {
        self.cap_override = cap;
    }

    /// Adjoins a variable killing the cycle `z`.
    pub fn adjoin_variable(&mut self, z: DgElement) -> Result<usize> {
        let h = self
            .alg
            .element_hdeg(&z)
            .ok_or_else(|| Error::precondition("cycle must be nonzero and homogeneous"))?;
        let d = self
            .alg
            .element_ideg(&z)
            .ok_or_else(|| Error::precondition("cycle must be homogeneous in internal degree"))?;
        if h == 0 && self.kind == ResolventKind::Quotient {
            return Err(Error::precondition(
                "degree-zero elements are not killed by adjunction",
            ));
        }
        if !self.alg.is_cycle(&z) {
            return Err(Error::precondition(format!(
                "{} is not a cycle",
                self.alg.render(&z)
            )));
        }
        let id = self.alg.push_variable(h + 1, d, z);
        self.alg.check_square_zero()?;
        self.bound = self.bound.max(h + 1);
        Ok(id)
    }

    /// Adjoins variables of homological degree `i` killing a minimal
    /// generating set of `H_{i-1}(F_{i-1} X)`.
    fn extend(&mut self, i: usize) -> Result<()> {
        let cap = self.cap(i);
        if cap < self.rate_cap(i) {
            self.caveats.push(format!(
                "internal-degree window {cap} is below the bound {} for homological degree {i}",
                self.rate_cap(i)
            ));
        }
        let mut fresh = Vec::new();
        {
            let mut w = Window::new(&self.alg, i - 1);
            let pieces = homology_pieces(&mut w, i - 1, (i - 1) as i32, cap);
            for mut p in pieces {
                for z in &p.cycles {
                    let r = p.decomposable.reduce(z);
                    if !r.is_empty() {
                        fresh.push(w.element(&p.space, &r));
                        p.decomposable.insert_reduced(r);
                    }
                }
            }
        }
        for z in fresh {
            let d = self.alg.element_ideg(&z).expect("homogeneous cycle");
            self.alg.push_variable(i, d, z);
        }
        self.bound = i;
        Ok(())
    }

    pub fn extend_to(&mut self, bound: usize) -> Result<()> {
        while self.bound < bound {
            let next = self.bound + 1;
            self.extend(next)?;
        }
        self.alg.check_square_zero()
    }

    /// Checks `H_h(X) = 0` for `0 < h < bound` and `H_0(X)` equal to the
    /// target, in each internal degree of the search windows.
    pub fn verify_acyclic(&self) -> Result<()> {
        let mut w = Window::new(&self.alg, self.bound);
        let mut pieces_src = crate::modules::GradedPieces::new(&self.ideal);
        for h in 0..self.bound {
            let hi = self.cap(h + 1);
            for p in homology_pieces(&mut w, h, h as i32, hi) {
                let expected = if h > 0 {
                    0
                } else {
                    match self.kind {
                        ResolventKind::Quotient => pieces_src.dim(p.space.ideg),
                        ResolventKind::ResidueField => usize::from(p.space.ideg == 0),
                    }
                };
                let homology = p.cycles.len() - p.boundary_rank;
                if homology != expected {
                    return Err(Error::invariant(format!(
                        "H_{h} has dimension {homology} in internal degree {} (expected {expected})",
                        p.space.ideg
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that each variable of homological degree `i >= 2` kills a
    /// class that is nonzero and not generated by lower-degree classes or
    /// the other new variables; returns the offending variables.
    pub fn minimality_defects(&self) -> Vec<String> {
        let mut bad = Vec::new();
        // first-stage variables must minimally generate the kernel of the augmentation
        if self.kind == ResolventKind::Quotient && !self.ideal.is_minimally_generated() {
            bad.push("degree-one variables do not map to minimal generators".into());
        }
        for i in 2..=self.alg.max_hdeg() {
            let vars: Vec<&TateVariable> = self.alg.variables_of_degree(i).collect();
            if vars.is_empty() {
                continue;
            }
            let lo = vars.iter().map(|v| v.ideg).min().unwrap();
            let hi = vars.iter().map(|v| v.ideg).max().unwrap();
            let mut w = Window::new(&self.alg, i - 1);
            let pieces = homology_pieces(&mut w, i - 1, (i - 1) as i32, hi);
            for mut p in pieces {
                let j = p.space.ideg;
                if j < lo {
                    continue;
                }
                for v in vars.iter().filter(|v| v.ideg == j) {
                    let c = w.coordinates(&p.space, &v.diff);
                    if !p.decomposable.insert(&c) {
                        bad.push(v.name());
                    }
                }
            }
        }
        bad
    }

    pub fn is_minimal(&self) -> bool {
        self.minimality_defects().is_empty()
    }

    /// One line per variable: `T[i][j] : hdeg=i, idet=d, diff=<...>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in self.alg.variables() {
            let _ = writeln!(
                out,
                "{} : hdeg={}, idet={}, diff={}",
                v.name(),
                v.hdeg,
                v.ideg,
                self.alg.render(&v.diff)
            );
        }
        out
    }

    /// `δ : X_h -> X_{h-1}` on the subalgebra generated by variables of
    /// homological degree at most `max_var_hdeg`, over `over`.
    pub fn differential_matrix(
        &self,
        h: usize,
        max_var_hdeg: usize,
        over: &Base,
    ) -> Result<GradedMatrix> {
        self.alg.differential_matrix(h, max_var_hdeg, over)
    }

    /// The complex `F_k X` (or `F_k X ⊗ S` when `over` is the quotient) in
    /// homological degrees `0..=top`.
    pub fn complex(&self, max_var_hdeg: usize, top: usize, over: &Base) -> Result<ChainComplex> {
        self.alg.complex(max_var_hdeg, top, over)
    }

    /// Basis monomials of `X_h` in the subalgebra on variables of degree at
    /// most `max_var_hdeg`, in the order used by [`Self::differential_matrix`].
    pub fn monomial_basis(&self, h: usize, max_var_hdeg: usize) -> Vec<DgMonomial> {
        self.alg.monomials(h, i32::MAX, max_var_hdeg)
    }

    /// Linear part of `δT` along variables of degree `hdeg(T) - 1`.
    pub fn linear_part(&self, v: &TateVariable) -> Vec<(usize, Polynomial)> {
        v.diff
            .terms()
            .filter_map(|(m, c)| {
                let u = m.as_variable()?;
                (self.alg.variable(u).hdeg + 1 == v.hdeg).then(|| (u, c.clone()))
            })
            .collect()
    }
}

/// The minimal resolvent of `R -> R/I` with variables through homological
/// degree `bound`.
pub fn minimal_resolvent(i: &Ideal, bound: usize) -> Result<TateResolvent> {
    minimal_resolvent_with_cap(i, bound, None)
}

pub fn minimal_resolvent_with_cap(
    i: &Ideal,
    bound: usize,
    cap: Option<i32>,
) -> Result<TateResolvent> {
    if bound < 2 {
        return Err(Error::precondition("resolvent bound must be at least 2"));
    }
    let mut x = TateResolvent::koszul(i)?;
    x.set_degree_cap(cap);
    x.extend_to(bound)?;
    Ok(x)
}

/// The acyclic closure of the residue field over `S = R/I` through
/// homological degree `bound`.
pub fn acyclic_closure(i: &Ideal, bound: usize) -> Result<TateResolvent> {
    let mut x = TateResolvent::residue_koszul(i)?;
    x.extend_to(bound.max(1))?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::residue_field_betti;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::with_vars(vars).unwrap()
    }

    #[test]
    fn complete_intersection_needs_no_higher_variables() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![r.var(0).pow(2), r.var(1).pow(3)]).unwrap();
        let x = minimal_resolvent(&i, 6).unwrap();
        assert_eq!(x.counts(), vec![2, 0, 0, 0, 0, 0]);
        x.verify_acyclic().unwrap();
        assert!(x.is_minimal());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::maximal(&r).power(2);
        let x = minimal_resolvent(&i, 4).unwrap();
        let e = x.counts();
        assert_eq!(&e[..2], &[3, 2]);
        x.verify_acyclic().unwrap();
        x.algebra().check_square_zero().unwrap();
        assert!(x.is_minimal());
        assert!(x.dump().contains("T[2][1] : hdeg=2, idet=3, diff="));
    }

    #[test]
    fn twisted_cubic_low_degrees() {
        let r = ring(&["x", "y", "z", "w"]);
        let (a, b, c, d) = (r.var(0), r.var(1), r.var(2), r.var(3));
        let gens = vec![
            &(&a * &c) - &b.pow(2),
            &(&a * &d) - &(&b * &c),
            &(&b * &d) - &c.pow(2),
        ];
        let i = Ideal::new(&r, gens).unwrap();
        let x = minimal_resolvent(&i, 4).unwrap();
        let e = x.counts();
        assert_eq!(&e[..2], &[3, 2]);
        x.verify_acyclic().unwrap();
        assert!(x.is_minimal());
    }

    #[test]
    fn adjoining_a_boundary_is_not_minimal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![r.var(0).pow(2), r.var(1).pow(2)]).unwrap();
        let mut x = minimal_resolvent(&i, 2).unwrap();
        assert!(x.is_minimal());
        let t1 = DgElement::term(DgMonomial::var(0), r.var(1).pow(2));
        let t2 = DgElement::term(DgMonomial::var(1), -&r.var(0).pow(2));
        x.adjoin_variable(t1.add(&t2)).unwrap();
        assert_eq!(x.minimality_defects(), vec!["T[2][1]".to_string()]);
    }

    #[test]
    fn adjoining_a_non_cycle_is_rejected() {
        let r = ring(&["x"]);
        let i = Ideal::new(&r, vec![r.var(0).pow(2)]).unwrap();
        let mut x = TateResolvent::koszul(&i).unwrap();
        let z = DgElement::term(DgMonomial::var(0), r.var(0));
        assert!(x.adjoin_variable(z).is_err());
        let mut y = TateResolvent::residue_koszul(&i).unwrap();
        let z = DgElement::term(DgMonomial::var(0), r.var(0));
        let id = y.adjoin_variable(z).unwrap();
        assert_eq!(y.algebra().variable(id).hdeg, 2);
        y.verify_acyclic().unwrap();
    }

    #[test]
    fn rejects_untrimmed_input() {
        let r = ring(&["x", "y"]);
        let i = Ideal::new(&r, vec![r.var(0), r.var(1).pow(2)]).unwrap();
        assert!(minimal_resolvent(&i, 3).is_err());
        assert!(minimal_resolvent(&Ideal::maximal(&r).power(2), 1).is_err());
    }

    #[test]
    fn acyclic_closure_matches_residue_betti_inversion() {
        let r = ring(&["x", "y"]);
        let i = Ideal::maximal(&r).power(2);
        let x = acyclic_closure(&i, 5).unwrap();
        x.verify_acyclic().unwrap();
        // 1/(1-2t) = prod (1+t^{2k-1})^{e_{2k-1}} / (1-t^{2k})^{e_{2k}}
        assert_eq!(x.counts(), vec![2, 3, 2, 3, 6]);
        let b = residue_field_betti(&i, 5).unwrap();
        assert_eq!(b.totals(), vec![1, 2, 4, 8, 16, 32]);
    }
}
