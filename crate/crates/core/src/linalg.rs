//! Sparse exact linear algebra over the rationals.

use rustc_hash::FxHashMap;

use crate::rational::Rational;

/// A sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing repeats.
pub fn sparse_from(mut entries: Vec<(usize, Rational)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (k, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += &v,
            _ => out.push((k, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Incrementally built row-echelon basis of a subspace of `Q^n`.
///
/// Each stored vector is monic at its pivot (smallest index), and pivots are
/// distinct. Reduction is full, so [`Echelon::reduce`] yields a canonical
/// representative of the coset modulo the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_of: FxHashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Fully reduces `v` modulo the span.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut cur: SparseVec = v.to_vec();
        let mut pos = 0;
        while pos < cur.len() {
            let (col, coef) = (cur[pos].0, cur[pos].1.clone());
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    let row = &self.rows[r];
                    let tail = sparse_axpy(&cur[pos..], &-coef, row);
                    cur.truncate(pos);
                    cur.extend(tail);
                }
                None => pos += 1,
            }
        }
        cur
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        self.insert_reduced(self.reduce(v))
    }

    /// Adds an already reduced vector.
    pub fn insert_reduced(&mut self, r: SparseVec) -> bool {
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.recip();
        let r: SparseVec = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        let p = r[0].0;
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Basis of `{ c : Σ_j c_j cols[j] = 0 }` for sparse columns in `Q^m`.
///
/// Column `j` is extended by the unit vector at index `m + j`; whatever
/// survives in the extension after the first `m` coordinates vanish is a
/// kernel vector.
pub fn kernel_basis(cols: &[SparseVec], m: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.push((m + j, Rational::ONE));
        let r = ech.reduce(&v);
        if r.first().is_some_and(|e| e.0 >= m) {
            out.push(r.iter().map(|(k, c)| (k - m, c.clone())).collect());
        }
        ech.insert_reduced(r);
    }
    out
}

/// Rank of the span of the given vectors.
pub fn rank(vecs: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for v in vecs {
        ech.insert(v);
    }
    ech.rank()
}
