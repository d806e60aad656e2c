//! Finitely presented graded modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    image_gb, kernel, minimal_columns, reduce_entries, Base, GradedMatrix, HilbertSeries, Ideal,
};
use crate::poly::{check_same_ring, PolyRing, Polynomial};

/// A finitely presented graded module `coker(P)` over `R` or `R/I`.
///
/// Generators are the rows of `P` (with the row degrees as their degrees);
/// relations are its columns.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    base: Base,
    pres: GradedMatrix,
}

impl PresentedModule {
    pub fn new(base: &Base, pres: GradedMatrix) -> Result<Self> {
        check_same_ring(base.ring(), pres.ring())?;
        Ok(PresentedModule {
            base: base.clone(),
            pres,
        })
    }

    /// Free module `⊕ B(-d)` over the base.
    pub fn free(base: &Base, degrees: Vec<i32>) -> Self {
        PresentedModule {
            pres: GradedMatrix::zero(base.ring(), degrees, Vec::new()),
            base: base.clone(),
        }
    }

    pub fn zero(base: &Base) -> Self {
        Self::free(base, Vec::new())
    }

    /// `B/J` for an ideal `J` of the polynomial ring.
    pub fn cyclic(base: &Base, j: &Ideal) -> Result<Self> {
        let m = GradedMatrix::row_of(base.ring(), j.gens())?;
        Self::new(base, m)
    }

    /// The submodule of a free module generated by the columns of `g`,
    /// presented by its syzygies.
    pub fn image_of(base: &Base, g: &GradedMatrix) -> Self {
        let rel = kernel(g, base);
        PresentedModule {
            base: base.clone(),
            pres: rel,
        }
    }

    /// `(im G + im N) / im N` for matrices with a common target.
    pub fn subquotient(base: &Base, g: &GradedMatrix, n: &GradedMatrix) -> Result<Self> {
        if g.row_degrees() != n.row_degrees() {
            return Err(Error::Structural(
                "subquotient of maps into different modules".into(),
            ));
        }
        let k = g.ncols();
        if k == 0 {
            return Ok(Self::zero(base));
        }
        let both = g.hconcat(n)?;
        let syz = kernel(&both, base);
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..syz.ncols()).collect();
        let rel = syz.submatrix(&rows, &cols);
        Ok(PresentedModule {
            base: base.clone(),
            pres: rel,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.base.ring()
    }

    pub fn presentation(&self) -> &GradedMatrix {
        &self.pres
    }

    pub fn generator_degrees(&self) -> &[i32] {
        self.pres.row_degrees()
    }

    pub fn num_generators(&self) -> usize {
        self.pres.nrows()
    }

    /// The same module viewed over `R/I` for the given ideal: relations
    /// gain `I·F`.
    pub fn over_quotient(&self, i: &Ideal) -> Self {
        let base = Base::Quotient(i.clone());
        PresentedModule {
            pres: reduce_entries(&self.pres, &base),
            base,
        }
    }

    /// Hilbert series from the leading terms of `im(P) + I·F`.
    pub fn hilbert(&self) -> HilbertSeries {
        let n = self.ring().nvars();
        if self.pres.nrows() == 0 {
            return HilbertSeries::zero(n);
        }
        let (_, gb) = image_gb(&self.pres, &self.base);
        let mut leads = vec![Vec::new(); self.pres.nrows()];
        for v in &gb.basis {
            let t = &v.terms[0];
            leads[t.comp].push(t.mon.clone());
        }
        HilbertSeries::from_leading_terms(n, self.pres.row_degrees(), &leads)
    }

    /// Hilbert function values in degrees `lo..=hi`.
    pub fn hilbert_prefix(&self, lo: i32, hi: i32) -> Vec<i64> {
        self.hilbert().prefix(lo, hi)
    }

    /// Presentation without unit entries, with a minimal set of relations.
    pub fn minimal_presentation(&self) -> PresentedModule {
        let mut m = reduce_entries(&self.pres, &self.base);
        while let Some((i, j)) = m.find_unit() {
            m = eliminate_unit(&m, i, j, &self.base);
        }
        let m = if m.ncols() == 0 {
            m
        } else {
            minimal_columns(&m, &self.base)
        };
        PresentedModule {
            base: self.base.clone(),
            pres: m,
        }
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimal_presentation().num_generators()
    }

    /// Zero test: no generators after minimalization, cross-checked
    /// against the Hilbert series.
    pub fn is_zero(&self) -> Result<bool> {
        let by_gens = self.mu() == 0;
        let by_hilbert = self.hilbert().is_zero();
        if by_gens != by_hilbert {
            return Err(Error::invariant(
                "zero test by generators and by Hilbert series disagree",
            ));
        }
        Ok(by_gens)
    }

    /// Total dimension over the field, `None` when infinite.
    pub fn length(&self) -> Option<i64> {
        self.hilbert().length()
    }

    /// Krull dimension of the module (`-1` for zero).
    pub fn dimension(&self) -> i64 {
        self.hilbert().dimension()
    }

    /// For a cyclic module `B/J`, the ideal `J + I` (the annihilator).
    pub fn cyclic_annihilator(&self) -> Option<Ideal> {
        let m = self.minimal_presentation();
        if m.num_generators() != 1 {
            return None;
        }
        let mut gens: Vec<Polynomial> = (0..m.pres.ncols())
            .map(|j| m.pres.entry(0, j).clone())
            .collect();
        if let Some(i) = self.base.ideal() {
            gens.extend(i.gens().iter().cloned());
        }
        Ideal::new(self.ring(), gens).ok()
    }

    /// Whether the module is isomorphic to `R/I` (the base ring when it is a
    /// quotient, otherwise `R/target`).
    pub fn is_cyclic_with_annihilator(&self, target: &Ideal) -> bool {
        self.cyclic_annihilator()
            .is_some_and(|a| a.same_ideal(target))
    }

    /// Tensor product over the base.
    pub fn tensor(&self, other: &PresentedModule) -> Result<PresentedModule> {
        check_same_ring(self.ring(), other.ring())?;
        let (a, b) = (&self.pres, &other.pres);
        let (ra, rb) = (a.nrows(), b.nrows());
        let ring = self.ring();
        let idx = |i: usize, k: usize| i * rb + k;
        let mut row_degrees = vec![0; ra * rb];
        for i in 0..ra {
            for k in 0..rb {
                row_degrees[idx(i, k)] = a.row_degrees()[i] + b.row_degrees()[k];
            }
        }
        let mut cols = Vec::new();
        let mut col_degrees = Vec::new();
        for j in 0..a.ncols() {
            for k in 0..rb {
                let mut c = vec![ring.zero(); ra * rb];
                for i in 0..ra {
                    c[idx(i, k)] = a.entry(i, j).clone();
                }
                cols.push(c);
                col_degrees.push(a.col_degrees()[j] + b.row_degrees()[k]);
            }
        }
        for j in 0..b.ncols() {
            for i in 0..ra {
                let mut c = vec![ring.zero(); ra * rb];
                for k in 0..rb {
                    c[idx(i, k)] = b.entry(k, j).clone();
                }
                cols.push(c);
                col_degrees.push(b.col_degrees()[j] + a.row_degrees()[i]);
            }
        }
        let pres = GradedMatrix::from_columns(ring, row_degrees, col_degrees, cols)?;
        PresentedModule::new(&self.base, pres)
    }

    /// `Hom_B(M, B)` as the kernel of the transposed presentation.
    pub fn dual(&self) -> PresentedModule {
        let t = self.pres.transpose();
        // kernel of P^T : F0* -> F1*, as a submodule of F0*
        let k = kernel(&t, &self.base);
        PresentedModule::image_of(&self.base, &k)
    }

    /// Exterior power `∧^r M`.
    pub fn exterior_power(&self, r: usize) -> PresentedModule {
        let ring = self.ring().clone();
        let n = self.pres.nrows();
        let degs = self.pres.row_degrees();
        if r == 0 {
            return PresentedModule::free(&self.base, vec![0]);
        }
        let subsets = k_subsets(n, r);
        if subsets.is_empty() {
            return PresentedModule::zero(&self.base);
        }
        let index: std::collections::HashMap<Vec<usize>, usize> = subsets
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let row_degrees: Vec<i32> = subsets
            .iter()
            .map(|s| s.iter().map(|&i| degs[i]).sum())
            .collect();
        let mut cols = Vec::new();
        let mut col_degrees = Vec::new();
        for j in 0..self.pres.ncols() {
            for t in k_subsets(n, r - 1) {
                let mut c = vec![ring.zero(); subsets.len()];
                let mut any = false;
                for i in 0..n {
                    let a = self.pres.entry(i, j);
                    if a.is_zero() || t.contains(&i) {
                        continue;
                    }
                    // e_i ∧ e_t: sign of moving i into sorted position
                    let pos = t.iter().filter(|&&x| x < i).count();
                    let mut s = t.clone();
                    s.insert(pos, i);
                    let k = index[&s];
                    let term = if pos % 2 == 0 { a.clone() } else { -a };
                    c[k] = &c[k] + &term;
                    any = true;
                }
                if any {
                    cols.push(c);
                    col_degrees
                        .push(self.pres.col_degrees()[j] + t.iter().map(|&i| degs[i]).sum::<i32>());
                }
            }
        }
        let pres = GradedMatrix::from_columns(&ring, row_degrees, col_degrees, cols)
            .expect("exterior power presentation is homogeneous");
        PresentedModule {
            base: self.base.clone(),
            pres,
        }
    }

    /// `M / (f_1..f_k) M`.
    pub fn quotient_by(&self, elems: &[Polynomial]) -> Result<PresentedModule> {
        let ring = self.ring();
        let n = self.pres.nrows();
        let mut m = self.pres.clone();
        for f in elems {
            if f.is_zero() {
                continue;
            }
            let d = f.degree().unwrap() as i32;
            let cols: Vec<Vec<Polynomial>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| if k == i { f.clone() } else { ring.zero() })
                        .collect()
                })
                .collect();
            let col_degrees = self.pres.row_degrees().iter().map(|a| a + d).collect();
            let diag = GradedMatrix::from_columns(
                ring,
                self.pres.row_degrees().to_vec(),
                col_degrees,
                cols,
            )?;
            m = m.hconcat(&diag)?;
        }
        PresentedModule::new(&self.base, m)
    }

    /// Whether `f` is a nonzerodivisor on the module, via
    /// `HS(M/fM) = (1 - t^deg f) HS(M)`.
    pub fn is_nonzerodivisor(&self, f: &Polynomial) -> Result<bool> {
        let d = f
            .degree()
            .ok_or_else(|| Error::precondition("zero is a zero divisor"))? as i32;
        let q = self.quotient_by(std::slice::from_ref(f))?;
        let hm = self.hilbert();
        let hq = q.hilbert();
        let expect = hm.add(&hm.shift(d).negate());
        Ok(expect == hq)
    }

    /// Human-readable summary.
    pub fn describe(&self) -> String {
        format!(
            "coker of {}x{} matrix over {}",
            self.pres.nrows(),
            self.pres.ncols(),
            self.base.describe()
        )
    }

    /// Module presented by the given relation columns.
    pub fn from_columns(
        base: &Base,
        row_degrees: Vec<i32>,
        col_degrees: Vec<i32>,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let m = GradedMatrix::from_columns(base.ring(), row_degrees, col_degrees, cols)?;
        Self::new(base, m)
    }
}

/// Removes generator `i` using relation `j`, whose entry `(i, j)` is a
/// nonzero constant.
fn eliminate_unit(m: &GradedMatrix, i: usize, j: usize, base: &Base) -> GradedMatrix {
    let c = m.entry(i, j).constant_coef();
    let pivot_col = m.column(j).to_vec();
    let keep_rows: Vec<usize> = (0..m.nrows()).filter(|&r| r != i).collect();
    let mut cols = Vec::with_capacity(m.ncols() - 1);
    let mut col_degrees = Vec::with_capacity(m.ncols() - 1);
    for l in 0..m.ncols() {
        if l == j {
            continue;
        }
        let col = m.column(l);
        let factor = col[i].scale(&(-c.recip()));
        let new: Vec<Polynomial> = keep_rows
            .iter()
            .map(|&r| {
                if factor.is_zero() || pivot_col[r].is_zero() {
                    col[r].clone()
                } else {
                    base.reduce(&(&col[r] + &(&factor * &pivot_col[r])))
                }
            })
            .collect();
        cols.push(new);
        col_degrees.push(m.col_degrees()[l]);
    }
    let row_degrees = keep_rows.iter().map(|&r| m.row_degrees()[r]).collect();
    GradedMatrix::from_columns(m.ring(), row_degrees, col_degrees, cols)
        .expect("unit elimination keeps degrees")
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
