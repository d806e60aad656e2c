//! Graded pieces of `S = R/I` as vector spaces, and the minimal resolution
//! of the residue field computed one internal degree at a time.

use rustc_hash::FxHashMap;

use super::resolution::BettiTable;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, ModOrder, Reducer, Vector};
use crate::linalg::{kernel_basis, sparse_axpy, sparse_from, Echelon, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

/// Standard-monomial bases of the graded pieces `S_d` with cached normal
/// forms of monomial products.
pub struct GradedPieces {
    ideal: Ideal,
    ord: ModOrder,
    reducer: Reducer,
    basis: Vec<Vec<Monomial>>,
    index: Vec<FxHashMap<Monomial, usize>>,
    nf_cache: FxHashMap<Monomial, SparseVec>,
}

impl GradedPieces {
    pub fn new(ideal: &Ideal) -> Self {
        let ord = ModOrder::new(ideal.ring().order(), vec![0]);
        GradedPieces {
            reducer: ideal.reducer().clone(),
            ideal: ideal.clone(),
            ord,
            basis: Vec::new(),
            index: Vec::new(),
            nf_cache: FxHashMap::default(),
        }
    }

    fn ensure(&mut self, d: usize) {
        if self.basis.len() > d {
            return;
        }
        let leads = self.ideal.leading_monomials();
        while self.basis.len() <= d {
            let k = self.basis.len() as u32;
            let ring = self.ideal.ring();
            let std: Vec<Monomial> = ring
                .monomials_of_degree(k)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .collect();
            self.index.push(
                std.iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect(),
            );
            self.basis.push(std);
        }
    }

    pub fn dim(&mut self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        self.ensure(d as usize);
        self.basis[d as usize].len()
    }

    pub fn basis(&mut self, d: i32) -> &[Monomial] {
        if d < 0 {
            return &[];
        }
        self.ensure(d as usize);
        &self.basis[d as usize]
    }

    /// Coordinates of the normal form of a monomial in its degree's basis.
    pub fn reduce_monomial(&mut self, m: &Monomial) -> SparseVec {
        if let Some(v) = self.nf_cache.get(m) {
            return v.clone();
        }
        let d = m.degree() as usize;
        self.ensure(d);
        let out = if let Some(&i) = self.index[d].get(m) {
            vec![(i, Rational::ONE)]
        } else {
            let ring = self.ideal.ring();
            let p = Polynomial::monomial(ring, m.clone(), Rational::ONE);
            let v = Vector::from_polys(&self.ord, std::slice::from_ref(&p));
            let nf = self.reducer.normal_form(&self.ord, &v);
            sparse_from(
                nf.terms
                    .iter()
                    .map(|t| (self.index[d][&t.mon], t.coef.clone()))
                    .collect(),
            )
        };
        self.nf_cache.insert(m.clone(), out.clone());
        out
    }

    /// Coordinates of the normal form of a homogeneous polynomial.
    pub fn coordinates(&mut self, p: &Polynomial) -> SparseVec {
        let mut acc = SparseVec::new();
        for t in p.terms() {
            let v = self.reduce_monomial(&t.mon);
            acc = sparse_axpy(&acc, &t.coef, &v);
        }
        acc
    }
}

/// A graded free `S`-module with elements stored per degree in coordinates
/// `(generator, standard monomial)`.
struct FreeLayout {
    gens: Vec<i32>,
}

impl FreeLayout {
    /// Offsets of each generator block in degree `j`, and the total size.
    fn offsets(&self, pieces: &mut GradedPieces, j: i32) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(self.gens.len());
        let mut acc = 0;
        for &g in &self.gens {
            off.push(acc);
            acc += pieces.dim(j - g);
        }
        (off, acc)
    }
}

/// `m · v` for `v` in degree `j` of a free module, landing in degree
/// `j + deg m`.
fn multiply(
    pieces: &mut GradedPieces,
    layout: &FreeLayout,
    v: &SparseVec,
    j: i32,
    m: &Monomial,
) -> SparseVec {
    let e = m.degree() as i32;
    let (src, _) = layout.offsets(pieces, j);
    let (dst, _) = layout.offsets(pieces, j + e);
    let mut entries = Vec::new();
    let mut g = 0;
    for (pos, c) in v {
        while g + 1 < src.len() && src[g + 1] <= *pos {
            g += 1;
        }
        let b = pieces.basis(j - layout.gens[g])[pos - src[g]].clone();
        for (k, a) in pieces.reduce_monomial(&b.mul(m)) {
            entries.push((dst[g] + k, &a * c));
        }
    }
    sparse_from(entries)
}

/// Graded Betti numbers `β_{i,j}` of the residue field over `S = R/I` for
/// `i <= max_hdeg`, by building the minimal resolution degree by degree.
///
/// Generators of `F_i` are sought in internal degrees up to
/// `1 + (i-1)(d-1)`, where `d` is the largest degree in the reduced
/// Gröbner basis; the minimal resolution of the residue field has no
/// generators beyond this (its rate is at most `d - 1`).
pub fn residue_field_betti(ideal: &Ideal, max_hdeg: usize) -> Result<BettiTable> {
    if !ideal.in_square_of_maximal() {
        return Err(Error::precondition(
            "ideal must lie in the square of the maximal ideal (trim linear generators first)",
        ));
    }
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let d = ideal
        .groebner_basis()
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(2)
        .max(2) as i32;
    let cap = |i: usize| -> i32 {
        if i == 0 {
            0
        } else {
            1 + (i as i32 - 1) * (d - 1)
        }
    };
    let mut pieces = GradedPieces::new(ideal);
    let vars: Vec<Monomial> = (0..n).map(|v| Monomial::variable(n, v)).collect();
    let mut table = BettiTable::new(max_hdeg);
    table.entries.insert((0, 0), 1);
    if max_hdeg == 0 {
        return Ok(table);
    }
    // F_1 = S(-1)^n mapping onto the maximal ideal of F_0 = S
    let mut prev = FreeLayout { gens: vec![0] };
    let mut cur = FreeLayout { gens: vec![1; n] };
    let mut images: Vec<SparseVec> = vars.iter().map(|m| pieces.reduce_monomial(m)).collect();
    table.entries.insert((1, 1), n);
    for i in 1..max_hdeg {
        // kernel of d_i : F_i -> F_{i-1}, degree by degree
        let lo = *cur.gens.iter().min().unwrap_or(&0);
        let hi = cap(i + 1);
        let mut next = FreeLayout { gens: Vec::new() };
        let mut next_images = Vec::new();
        let mut prev_kernel: Vec<SparseVec> = Vec::new();
        for j in lo..=hi {
            let (off, size) = cur.offsets(&mut pieces, j);
            let mut cols = Vec::with_capacity(size);
            for (g, &gd) in cur.gens.iter().enumerate() {
                let mons = pieces.basis(j - gd).to_vec();
                for m in &mons {
                    cols.push(multiply(&mut pieces, &prev, &images[g], gd, m));
                }
                debug_assert_eq!(cols.len(), off[g] + mons.len());
            }
            let (_, target) = prev.offsets(&mut pieces, j);
            let ker = kernel_basis(&cols, target);
            let mut span = Echelon::new();
            for v in &prev_kernel {
                for x in &vars {
                    span.insert(&multiply(&mut pieces, &cur, v, j - 1, x));
                }
            }
            let mut fresh = 0;
            for v in &ker {
                let r = span.reduce(v);
                if !r.is_empty() {
                    span.insert_reduced(r);
                    next.gens.push(j);
                    next_images.push(v.clone());
                    fresh += 1;
                }
            }
            if fresh > 0 {
                table.entries.insert((i + 1, j), fresh);
            }
            prev_kernel = ker;
        }
        prev = cur;
        cur = next;
        images = next_images;
        if cur.gens.is_empty() {
            table.complete = true;
            table.bound = max_hdeg;
            break;
        }
    }
    Ok(table)
}
