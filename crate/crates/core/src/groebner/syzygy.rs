//! Syzygies, lifts and submodule membership over `R` or `R/I`.

use super::buchberger::{buchberger, GbResult, Reducer};
use super::ideal::{Base, Ideal};
use super::matrix::GradedMatrix;
use super::vector::{ModOrder, VTerm, Vector};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Gröbner basis of the rows `(m_j | e_j)` under an elimination order, plus
/// `(I·F | 0)` over a quotient base.
///
/// Elements with vanishing first block are syzygies; normal forms of
/// `(v | 0)` express `v` in terms of the columns.
pub(crate) struct Augmented {
    ord: ModOrder,
    red: Reducer,
    rows: usize,
    ncols: usize,
    col_degrees: Vec<i32>,
    base: Base,
}

impl Augmented {
    pub fn new(m: &GradedMatrix, base: &Base) -> Self {
        let rows = m.nrows();
        let ncols = m.ncols();
        let mut shifts = m.row_degrees().to_vec();
        shifts.extend_from_slice(m.col_degrees());
        let ord = ModOrder::with_block(m.ring().order(), shifts, rows);
        let mut cands = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut v = Vector::from_polys(&ord, m.column(j));
            v.terms.push(VTerm {
                mon: crate::poly::Monomial::one(m.ring().nvars()),
                comp: rows + j,
                coef: crate::rational::Rational::ONE,
            });
            cands.push(Vector::from_terms(&ord, v.terms));
        }
        let base_vecs = base.ideal_vectors(&ord, 0..rows);
        let res = buchberger(&ord, &base_vecs, &cands, false, None);
        let red = Reducer::from_basis(rows + ncols, res.basis);
        Augmented {
            ord,
            red,
            rows,
            ncols,
            col_degrees: m.col_degrees().to_vec(),
            base: base.clone(),
        }
    }

    /// Generators (not necessarily minimal) of the syzygy module, as vectors
    /// in the source free module.
    pub fn syzygy_vectors(&self) -> Vec<Vector> {
        let src = ModOrder::new(self.ord.mono, self.col_degrees.clone());
        self.red
            .basis
            .iter()
            .filter(|v| v.lead().is_some_and(|t| t.comp >= self.rows))
            .map(|v| v.restrict(self.rows..self.rows + self.ncols).resort(&src))
            .collect()
    }

    /// Coefficients `c` with `m c = v` (modulo `I` over a quotient base).
    pub fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let ring = self.base.ring();
        let f = Vector::from_polys(&self.ord, v);
        let nf = self.red.normal_form(&self.ord, &f);
        if nf.terms.iter().any(|t| t.comp < self.rows) {
            return None;
        }
        let coeffs = nf
            .restrict(self.rows..self.rows + self.ncols)
            .to_polys(ring, self.ncols);
        Some(coeffs.iter().map(|p| self.base.reduce(&-p)).collect())
    }
}

/// Reduced Gröbner basis of `im(m) + I·F` with minimal-column indices.
pub(crate) fn image_gb(m: &GradedMatrix, base: &Base) -> (ModOrder, GbResult) {
    let ord = m.target_order();
    let cands = m.column_vectors(&ord);
    let base_vecs = base.ideal_vectors(&ord, 0..m.nrows());
    let res = buchberger(&ord, &base_vecs, &cands, m.nrows() == 1, None);
    (ord, res)
}

/// Columns of `m` forming a minimal generating set of its image over `base`.
pub fn minimal_columns(m: &GradedMatrix, base: &Base) -> GradedMatrix {
    let (_, res) = image_gb(m, base);
    let mut idx = res.minimal;
    idx.sort_unstable();
    reduce_entries(&m.select_columns(&idx), base)
}

/// Indices of columns of `m` that minimally generate
/// `(im m + im n) / im n` over `base`.
pub fn minimal_columns_modulo(m: &GradedMatrix, n: &GradedMatrix, base: &Base) -> Vec<usize> {
    let ord = m.target_order();
    let cands = m.column_vectors(&ord);
    let mut fixed = base.ideal_vectors(&ord, 0..m.nrows());
    fixed.extend(n.column_vectors(&ord));
    let mut idx = buchberger(&ord, &fixed, &cands, false, None).minimal;
    idx.sort_unstable();
    idx
}

pub(crate) fn reduce_entries(m: &GradedMatrix, base: &Base) -> GradedMatrix {
    match base {
        Base::Poly(_) => m.clone(),
        Base::Quotient(_) => m.map_entries(|p| base.reduce(p)),
    }
}

/// Minimal generators of the kernel of `m` over `base`.
pub fn kernel(m: &GradedMatrix, base: &Base) -> GradedMatrix {
    let ring = m.ring();
    if m.ncols() == 0 {
        return GradedMatrix::zero(ring, Vec::new(), Vec::new());
    }
    if m.nrows() == 0 {
        return GradedMatrix::identity(ring, m.col_degrees().to_vec());
    }
    let aug = Augmented::new(m, base);
    let syz = aug.syzygy_vectors();
    let src = ModOrder::new(ring.order(), m.col_degrees().to_vec());
    let all = GradedMatrix::from_vectors(ring, m.col_degrees().to_vec(), &src, &syz);
    minimal_columns(&all, base)
}

/// Columns generating the kernel of `m` over the polynomial ring.
pub fn syzygy_matrix(m: &GradedMatrix) -> GradedMatrix {
    kernel(m, &Base::Poly(m.ring().clone()))
}

/// Whether every column of `n` lies in `im(m)` over `base`.
pub fn image_contains(m: &GradedMatrix, n: &GradedMatrix, base: &Base) -> Result<bool> {
    if m.row_degrees() != n.row_degrees() {
        return Err(Error::Structural("targets differ".into()));
    }
    let (ord, res) = image_gb(m, base);
    let red = Reducer::from_basis(ord.rank(), res.basis);
    Ok(n.column_vectors(&ord)
        .iter()
        .all(|v| red.reduces_to_zero(&ord, v)))
}

/// A matrix `c` with `m c = n` over `base`, if one exists.
pub fn lift_columns(
    m: &GradedMatrix,
    n: &GradedMatrix,
    base: &Base,
) -> Result<Option<GradedMatrix>> {
    if m.row_degrees() != n.row_degrees() {
        return Err(Error::Structural("targets differ".into()));
    }
    let ring = m.ring();
    if m.ncols() == 0 {
        let zero_target =
            (0..n.ncols()).all(|j| n.column(j).iter().all(|p| base.reduce(p).is_zero()));
        return Ok(
            zero_target.then(|| GradedMatrix::zero(ring, Vec::new(), n.col_degrees().to_vec()))
        );
    }
    let aug = Augmented::new(m, base);
    let mut cols = Vec::with_capacity(n.ncols());
    for j in 0..n.ncols() {
        match aug.lift(n.column(j)) {
            Some(c) => cols.push(c),
            None => return Ok(None),
        }
    }
    GradedMatrix::from_columns(
        ring,
        m.col_degrees().to_vec(),
        n.col_degrees().to_vec(),
        cols,
    )
    .map(Some)
}

/// `(I : J) = { f : f J ⊆ I }`, computed as the kernel of
/// `R -> ⊕_j R/I`, `1 -> (f_j)`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    crate::poly::check_same_ring(i.ring(), j.ring())?;
    let ring = i.ring();
    if j.is_zero() || i.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    let gens = j.gens();
    let row_degrees: Vec<i32> = gens.iter().map(|g| -(g.degree().unwrap() as i32)).collect();
    let col: Vec<Polynomial> = gens.to_vec();
    let m = GradedMatrix::from_columns(ring, row_degrees, vec![0], vec![col])?;
    let k = kernel(&m, &Base::Quotient(i.clone()));
    let mut out: Vec<Polynomial> = k.columns().iter().map(|c| c[0].clone()).collect();
    out.extend(i.gens().iter().cloned());
    Ideal::new(ring, out)
}
