use std::fmt;
use std::sync::Arc;

use super::vector::{ModOrder, Vector};
use crate::error::{Error, Result};
use crate::poly::{check_same_ring, PolyRing, Polynomial};

/// A homogeneous map `⊕_j R(-col_degrees[j]) -> ⊕_i R(-row_degrees[i])`.
///
/// Entry `(i, j)` is zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Arc<PolyRing>,
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
    /// Column-major: `cols[j][i]`.
    cols: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    /// Builds a matrix from rows, validating degrees.
    pub fn from_rows(
        ring: &Arc<PolyRing>,
        row_degrees: Vec<i32>,
        col_degrees: Vec<i32>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != row_degrees.len() || rows.iter().any(|r| r.len() != col_degrees.len()) {
            return Err(Error::Structural(
                "matrix shape does not match degree lists".into(),
            ));
        }
        let cols = (0..col_degrees.len())
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::from_columns(ring, row_degrees, col_degrees, cols)
    }

    /// Builds a matrix from columns, validating degrees.
    pub fn from_columns(
        ring: &Arc<PolyRing>,
        row_degrees: Vec<i32>,
        col_degrees: Vec<i32>,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if cols.len() != col_degrees.len() || cols.iter().any(|c| c.len() != row_degrees.len()) {
            return Err(Error::Structural(
                "matrix shape does not match degree lists".into(),
            ));
        }
        for (j, c) in cols.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                check_same_ring(ring, p.ring())?;
                if p.is_zero() {
                    continue;
                }
                let want = col_degrees[j] - row_degrees[i];
                if !p.is_homogeneous() || p.degree().map(|d| d as i32) != Some(want) {
                    return Err(Error::Structural(format!(
                        "entry ({i},{j}) = {p} is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            row_degrees,
            col_degrees,
            cols,
        })
    }

    /// Builds a matrix whose column degrees are inferred from the entries;
    /// zero columns get degree `default_degree`.
    pub fn infer_columns(
        ring: &Arc<PolyRing>,
        row_degrees: Vec<i32>,
        cols: Vec<Vec<Polynomial>>,
        default_degree: i32,
    ) -> Result<Self> {
        let col_degrees = cols
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .find(|(_, p)| !p.is_zero())
                    .map(|(i, p)| p.degree().unwrap() as i32 + row_degrees[i])
                    .unwrap_or(default_degree)
            })
            .collect();
        Self::from_columns(ring, row_degrees, col_degrees, cols)
    }

    pub fn zero(ring: &Arc<PolyRing>, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        let cols = col_degrees
            .iter()
            .map(|_| vec![ring.zero(); row_degrees.len()])
            .collect();
        GradedMatrix {
            ring: ring.clone(),
            row_degrees,
            col_degrees,
            cols,
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        GradedMatrix {
            ring: ring.clone(),
            row_degrees: degrees.clone(),
            col_degrees: degrees,
            cols,
        }
    }

    /// The `1 x m` matrix of generators `(f_1 ... f_m)` into `R`.
    pub fn row_of(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Self> {
        let cols = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::infer_columns(ring, vec![0], cols, 0)
    }

    pub(crate) fn from_vectors(
        ring: &Arc<PolyRing>,
        row_degrees: Vec<i32>,
        ord: &ModOrder,
        vecs: &[Vector],
    ) -> Self {
        let col_degrees = vecs.iter().map(|v| v.degree(ord).unwrap_or(0)).collect();
        let cols = vecs
            .iter()
            .map(|v| v.to_polys(ring, row_degrees.len()))
            .collect();
        GradedMatrix {
            ring: ring.clone(),
            row_degrees,
            col_degrees,
            cols,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// The order used when columns are viewed as vectors in the target.
    pub(crate) fn target_order(&self) -> ModOrder {
        ModOrder::new(self.ring.order(), self.row_degrees.clone())
    }

    pub(crate) fn column_vectors(&self, ord: &ModOrder) -> Vec<Vector> {
        self.cols
            .iter()
            .map(|c| Vector::from_polys(ord, c))
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.ncols() != other.nrows() || self.col_degrees != other.row_degrees {
            return Err(Error::Structural(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                (0..self.nrows())
                    .map(|i| {
                        let mut acc = self.ring.zero();
                        for (k, b) in oc.iter().enumerate() {
                            let a = &self.cols[k][i];
                            if !a.is_zero() && !b.is_zero() {
                                acc = &acc + &(a * b);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
            cols,
        })
    }

    /// Applies the matrix to a column of polynomials.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        (0..self.nrows())
            .map(|i| {
                let mut acc = self.ring.zero();
                for (k, b) in v.iter().enumerate() {
                    let a = &self.cols[k][i];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Transpose as the dual map: degrees are negated and swapped.
    pub fn transpose(&self) -> GradedMatrix {
        let cols = (0..self.nrows())
            .map(|i| self.cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.col_degrees.iter().map(|d| -d).collect(),
            col_degrees: self.row_degrees.iter().map(|d| -d).collect(),
            cols,
        }
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hconcat(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.row_degrees != other.row_degrees {
            return Err(Error::Structural(
                "row degrees differ in concatenation".into(),
            ));
        }
        let mut m = self.clone();
        m.col_degrees.extend_from_slice(&other.col_degrees);
        m.cols.extend(other.cols.iter().cloned());
        Ok(m)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &GradedMatrix) -> GradedMatrix {
        let (r1, r2) = (self.nrows(), other.nrows());
        let mut cols = Vec::with_capacity(self.ncols() + other.ncols());
        for c in &self.cols {
            let mut v = c.clone();
            v.extend((0..r2).map(|_| self.ring.zero()));
            cols.push(v);
        }
        for c in &other.cols {
            let mut v: Vec<Polynomial> = (0..r1).map(|_| self.ring.zero()).collect();
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        let mut row_degrees = self.row_degrees.clone();
        row_degrees.extend_from_slice(&other.row_degrees);
        let mut col_degrees = self.col_degrees.clone();
        col_degrees.extend_from_slice(&other.col_degrees);
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees,
            col_degrees,
            cols,
        }
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: rows.iter().map(|&i| self.row_degrees[i]).collect(),
            col_degrees: cols.iter().map(|&j| self.col_degrees[j]).collect(),
            cols: cols
                .iter()
                .map(|&j| rows.iter().map(|&i| self.cols[j][i].clone()).collect())
                .collect(),
        }
    }

    /// The same map between modules twisted by `s`: all degrees raised by `s`.
    pub fn shifted(&self, s: i32) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.iter().map(|d| d + s).collect(),
            col_degrees: self.col_degrees.iter().map(|d| d + s).collect(),
            cols: self.cols.clone(),
        }
    }

    /// `[[a, b], [c, d]]` for blocks with matching degrees.
    pub fn block(
        a: &GradedMatrix,
        b: &GradedMatrix,
        c: &GradedMatrix,
        d: &GradedMatrix,
    ) -> Result<GradedMatrix> {
        if a.row_degrees != b.row_degrees
            || c.row_degrees != d.row_degrees
            || a.col_degrees != c.col_degrees
            || b.col_degrees != d.col_degrees
        {
            return Err(Error::Structural("block degrees do not match".into()));
        }
        let cols = a
            .cols
            .iter()
            .zip(&c.cols)
            .chain(b.cols.iter().zip(&d.cols))
            .map(|(top, bottom)| top.iter().chain(bottom).cloned().collect())
            .collect();
        Ok(GradedMatrix {
            ring: a.ring.clone(),
            row_degrees: a
                .row_degrees
                .iter()
                .chain(&c.row_degrees)
                .copied()
                .collect(),
            col_degrees: a
                .col_degrees
                .iter()
                .chain(&b.col_degrees)
                .copied()
                .collect(),
            cols,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> GradedMatrix {
        let rows: Vec<usize> = (0..self.nrows()).collect();
        self.submatrix(&rows, cols)
    }

    /// Applies `f` to every entry (which must preserve homogeneity and degree).
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn scale_entries(&self, c: &crate::rational::Rational) -> GradedMatrix {
        self.map_entries(|p| p.scale(c))
    }

    /// Drops all-zero columns.
    pub fn without_zero_columns(&self) -> GradedMatrix {
        let keep: Vec<usize> = (0..self.ncols())
            .filter(|&j| self.cols[j].iter().any(|p| !p.is_zero()))
            .collect();
        self.select_columns(&keep)
    }

    /// Position of a nonzero constant entry, if any.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                if !p.is_zero() && p.is_constant() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True when every nonzero entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.find_unit().is_none()
    }

    /// Renders rows of entries, one row per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols())
                .map(|j| self.cols[j][i].render())
                .collect();
            out.push_str(&format!("[{}]\n", row.join(", ")));
        }
        out
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GradedMatrix {}x{} rows {:?} cols {:?}",
            self.nrows(),
            self.ncols(),
            self.row_degrees,
            self.col_degrees
        )?;
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_degrees() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let x = r.var(0);
        assert!(GradedMatrix::from_rows(&r, vec![0], vec![2], vec![vec![x.clone()]]).is_err());
        let m = GradedMatrix::from_rows(&r, vec![0], vec![1], vec![vec![x]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.row_degrees(), &[-1]);
        assert_eq!(t.col_degrees(), &[0]);
    }

    #[test]
    fn product_of_koszul_maps_vanishes() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let d1 = GradedMatrix::row_of(&r, &[x.clone(), y.clone()]).unwrap();
        let d2 = GradedMatrix::from_rows(&r, vec![1, 1], vec![2], vec![vec![y.clone()], vec![-&x]])
            .unwrap();
        assert!(d1.mul(&d2).unwrap().is_zero());
    }
}
