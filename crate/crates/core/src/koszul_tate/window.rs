//! Graded pieces of a dg algebra in a fixed homological and internal
//! degree, as finite-dimensional vector spaces over the rationals.

use rustc_hash::FxHashMap;

use super::dg::{DgAlgebra, DgElement, DgMonomial};
use crate::groebner::Ideal;
use crate::linalg::{kernel_basis, sparse_from, Echelon, SparseVec};
use crate::modules::GradedPieces;
use crate::poly::{Monomial, Polynomial, Term};

/// Basis `(μ, m)` of `(X_h)_j`: algebra monomials `μ` of homological degree
/// `h` times standard monomials `m` of degree `j - ideg μ`.
pub struct Space {
    pub ideg: i32,
    pub basis: Vec<(usize, Monomial)>,
    pub monomials: Vec<DgMonomial>,
    index: FxHashMap<(usize, Monomial), usize>,
    mon_index: FxHashMap<DgMonomial, usize>,
}

impl Space {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Builds and caches spaces, differentials and products for one algebra.
pub struct Window<'a> {
    pub alg: &'a DgAlgebra,
    pieces: GradedPieces,
    max_var_hdeg: usize,
    diff_cache: FxHashMap<DgMonomial, DgElement>,
}

impl<'a> Window<'a> {
    /// Works in the subalgebra generated by variables of homological
    /// degree at most `max_var_hdeg`.
    pub fn new(alg: &'a DgAlgebra, max_var_hdeg: usize) -> Self {
        let base = alg.base();
        let ideal = match base.ideal() {
            Some(i) => i.clone(),
            None => Ideal::zero(base.ring()),
        };
        Window {
            alg,
            pieces: GradedPieces::new(&ideal),
            max_var_hdeg,
            diff_cache: FxHashMap::default(),
        }
    }

    pub fn space(&mut self, h: usize, j: i32) -> Space {
        let monomials = self.alg.monomials(h, j, self.max_var_hdeg);
        let mut basis = Vec::new();
        let mut index = FxHashMap::default();
        let mut mon_index = FxHashMap::default();
        for (k, mu) in monomials.iter().enumerate() {
            mon_index.insert(mu.clone(), k);
            let d = j - self.alg.ideg(mu);
            for m in self.pieces.basis(d).to_vec() {
                index.insert((k, m.clone()), basis.len());
                basis.push((k, m));
            }
        }
        Space {
            ideg: j,
            basis,
            monomials,
            index,
            mon_index,
        }
    }

    /// Coordinates of a homogeneous element lying in `sp`.
    pub fn coordinates(&mut self, sp: &Space, e: &DgElement) -> SparseVec {
        let mut entries = Vec::new();
        for (mu, c) in e.terms() {
            let k = sp.mon_index[mu];
            for t in c.terms() {
                for (b, a) in self.pieces.reduce_monomial(&t.mon) {
                    let m = self.pieces.basis(t.mon.degree() as i32)[b].clone();
                    entries.push((sp.index[&(k, m)], &a * &t.coef));
                }
            }
        }
        sparse_from(entries)
    }

    /// The element with coordinates `v` in `sp`.
    pub fn element(&self, sp: &Space, v: &SparseVec) -> DgElement {
        let ring = self.alg.base().ring();
        let mut by_mon: FxHashMap<usize, Vec<Term>> = FxHashMap::default();
        for (i, c) in v {
            let (k, m) = &sp.basis[*i];
            by_mon.entry(*k).or_default().push(Term {
                mon: m.clone(),
                coef: c.clone(),
            });
        }
        let mut keys: Vec<usize> = by_mon.keys().copied().collect();
        keys.sort_unstable();
        let mut out = DgElement::zero();
        for k in keys {
            let p = Polynomial::from_terms(ring, by_mon.remove(&k).unwrap());
            out.add_term(sp.monomials[k].clone(), &p);
        }
        out
    }

    fn diff_of(&mut self, mu: &DgMonomial) -> DgElement {
        if let Some(d) = self.diff_cache.get(mu) {
            return d.clone();
        }
        let d = self.alg.diff_monomial(mu).reduce(self.alg.base());
        self.diff_cache.insert(mu.clone(), d.clone());
        d
    }

    /// Columns of `δ : src -> dst` (images of the basis of `src`).
    pub fn differential(&mut self, src: &Space, dst: &Space) -> Vec<SparseVec> {
        let mut cols = Vec::with_capacity(src.dim());
        let mut current: Option<(usize, DgElement)> = None;
        for (k, m) in &src.basis {
            if current.as_ref().map(|c| c.0) != Some(*k) {
                current = Some((*k, self.diff_of(&src.monomials[*k])));
            }
            let d = &current.as_ref().unwrap().1;
            let mut entries = Vec::new();
            for (nu, c) in d.terms() {
                let kk = dst.mon_index[nu];
                for t in c.terms() {
                    let prod = t.mon.mul(m);
                    for (b, a) in self.pieces.reduce_monomial(&prod) {
                        let mm = self.pieces.basis(prod.degree() as i32)[b].clone();
                        entries.push((dst.index[&(kk, mm)], &a * &t.coef));
                    }
                }
            }
            cols.push(sparse_from(entries));
        }
        cols
    }

    /// `x_v · w` for `w` in `src`, as coordinates in `dst` (one degree up).
    pub fn multiply_by_variable(
        &mut self,
        src: &Space,
        dst: &Space,
        w: &SparseVec,
        v: usize,
    ) -> SparseVec {
        let n = self.alg.base().ring().nvars();
        let x = Monomial::variable(n, v);
        let mut entries = Vec::new();
        for (i, c) in w {
            let (k, m) = &src.basis[*i];
            let kk = dst.mon_index[&src.monomials[*k]];
            let prod = m.mul(&x);
            for (b, a) in self.pieces.reduce_monomial(&prod) {
                let mm = self.pieces.basis(prod.degree() as i32)[b].clone();
                entries.push((dst.index[&(kk, mm)], &a * c));
            }
        }
        sparse_from(entries)
    }
}

/// Cycles, boundaries and the part generated from lower degrees in one
/// bidegree `(h, j)`.
pub struct HomologyPiece {
    pub space: Space,
    pub cycles: Vec<SparseVec>,
    /// Echelon form of boundaries plus `R_1`-multiples of lower cycles.
    pub decomposable: Echelon,
    pub boundary_rank: usize,
}

/// Walks internal degrees `lo..=hi` at homological degree `h`, computing
/// cycles and the span of boundaries and multiples of lower cycles.
pub fn homology_pieces(w: &mut Window, h: usize, lo: i32, hi: i32) -> Vec<HomologyPiece> {
    let n = w.alg.base().ring().nvars();
    let mut out: Vec<HomologyPiece> = Vec::new();
    for j in lo..=hi {
        let sp = w.space(h, j);
        let cycles = if h == 0 {
            (0..sp.dim())
                .map(|i| vec![(i, crate::rational::Rational::ONE)])
                .collect()
        } else {
            let below = w.space(h - 1, j);
            let d = w.differential(&sp, &below);
            kernel_basis(&d, below.dim())
        };
        let above = w.space(h + 1, j);
        let bd = w.differential(&above, &sp);
        let mut ech = Echelon::new();
        for c in &bd {
            ech.insert(c);
        }
        let boundary_rank = ech.rank();
        if let Some(prev) = out.last() {
            for z in &prev.cycles {
                for v in 0..n {
                    let m = w.multiply_by_variable(&prev.space, &sp, z, v);
                    ech.insert(&m);
                }
            }
        }
        out.push(HomologyPiece {
            space: sp,
            cycles,
            decomposable: ech,
            boundary_rank,
        });
    }
    out
}
