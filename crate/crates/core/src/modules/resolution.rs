//! Minimal free resolutions, Betti tables, projective dimension and depth.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::Serialize;

use super::presented::PresentedModule;
use crate::error::{Error, Result};
use crate::groebner::{image_contains, kernel, Base, GradedMatrix, HilbertSeries};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A complex of graded free modules `F_0 <- F_1 <- ...` over a base.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    base: Base,
    spots: Vec<Vec<i32>>,
    diffs: Vec<GradedMatrix>,
}

impl ChainComplex {
    /// `diffs[k]` is `d_{k+1} : F_{k+1} -> F_k`; `f0` gives the degrees of
    /// `F_0` (needed when there are no differentials).
    pub fn new(base: &Base, f0: Vec<i32>, diffs: Vec<GradedMatrix>) -> Result<Self> {
        let mut spots = vec![f0];
        for (k, d) in diffs.iter().enumerate() {
            if d.row_degrees() != spots[k].as_slice() {
                return Err(Error::Structural(format!(
                    "differential d_{} does not land in F_{k}",
                    k + 1
                )));
            }
            spots.push(d.col_degrees().to_vec());
        }
        Ok(ChainComplex {
            base: base.clone(),
            spots,
            diffs,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Index of the last free module.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn degrees(&self, i: usize) -> &[i32] {
        self.spots.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.spots.iter().map(|s| s.len()).collect()
    }

    /// `d_i : F_i -> F_{i-1}` for `i >= 1`.
    pub fn d(&self, i: usize) -> Option<&GradedMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn differentials(&self) -> &[GradedMatrix] {
        &self.diffs
    }

    /// Whether `d_i d_{i+1} = 0` (modulo `I` over a quotient base).
    pub fn composition_vanishes(&self, i: usize) -> Result<bool> {
        let (Some(a), Some(b)) = (self.d(i), self.d(i + 1)) else {
            return Ok(true);
        };
        let p = a.mul(b)?;
        Ok(p.columns()
            .iter()
            .all(|c| c.iter().all(|e| self.base.reduce(e).is_zero())))
    }

    pub fn check_complex(&self) -> Result<()> {
        for i in 1..self.length() {
            if !self.composition_vanishes(i)? {
                return Err(Error::invariant(format!("d_{i} d_{} is not zero", i + 1)));
            }
        }
        Ok(())
    }

    /// Homology `ker d_i / im d_{i+1}` as a presented module.
    pub fn homology_at(&self, i: usize) -> Result<PresentedModule> {
        if i > self.length() {
            return Ok(PresentedModule::zero(&self.base));
        }
        if !self.composition_vanishes(i)? {
            return Err(Error::invariant(format!("d_{i} d_{} is not zero", i + 1)));
        }
        let ring = self.base.ring();
        let z = match self.d(i) {
            Some(d) => kernel(d, &self.base),
            None => GradedMatrix::identity(ring, self.spots[i].clone()),
        };
        let b = match self.d(i + 1) {
            Some(d) => d.clone(),
            None => GradedMatrix::zero(ring, self.spots[i].clone(), Vec::new()),
        };
        PresentedModule::subquotient(&self.base, &z, &b)
    }

    /// Exactness at `F_i` for `i >= 1`: the kernel of `d_i` lies in the
    /// image of `d_{i+1}`.
    pub fn is_exact_at(&self, i: usize) -> Result<bool> {
        let Some(d) = self.d(i) else {
            return Ok(true);
        };
        let z = kernel(d, &self.base);
        if z.ncols() == 0 {
            return Ok(true);
        }
        match self.d(i + 1) {
            Some(n) => image_contains(n, &z, &self.base),
            None => Ok(false),
        }
    }

    /// True when no differential has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| {
            d.columns()
                .iter()
                .all(|c| c.iter().all(|e| e.is_zero() || !e.is_constant()))
        })
    }

    pub fn betti_table(&self, complete: bool) -> BettiTable {
        let mut t = BettiTable::new(self.length());
        for (i, s) in self.spots.iter().enumerate() {
            for &j in s {
                *t.entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        t.complete = complete;
        t
    }

    /// Cancels unit entries of the differentials one at a time, leaving a
    /// homotopy-equivalent complex with no unit entries.
    pub fn minimalized(&self) -> Result<ChainComplex> {
        let base = self.base.clone();
        let mut diffs = self.diffs.clone();
        let mut f0 = self.spots[0].clone();
        while let Some((k, (r, c))) = diffs
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.find_unit().map(|p| (k, p)))
        {
            // diffs[k] = d_{k+1} : F_{k+1} -> F_k
            let a = &diffs[k];
            let inv = a.entry(r, c).lead_coef().expect("unit entry").recip();
            let rows: Vec<usize> = (0..a.nrows()).filter(|&i| i != r).collect();
            let keep: Vec<usize> = (0..a.ncols()).filter(|&j| j != c).collect();
            let pivot = a.column(c);
            let cols: Vec<Vec<Polynomial>> = keep
                .iter()
                .map(|&b| {
                    let f = a.entry(r, b).scale(&inv);
                    rows.iter()
                        .map(|&i| base.reduce(&(a.entry(i, b) - &(&f * &pivot[i]))))
                        .collect()
                })
                .collect();
            let row_degrees = rows.iter().map(|&i| a.row_degrees()[i]).collect();
            let col_degrees = keep.iter().map(|&j| a.col_degrees()[j]).collect();
            diffs[k] = GradedMatrix::from_columns(base.ring(), row_degrees, col_degrees, cols)?;
            if let Some(next) = diffs.get(k + 1) {
                let all: Vec<usize> = (0..next.ncols()).collect();
                diffs[k + 1] = next.submatrix(&keep, &all);
            }
            if k == 0 {
                f0.remove(r);
            } else {
                let prev = &diffs[k - 1];
                let all: Vec<usize> = (0..prev.nrows()).collect();
                let cols: Vec<usize> = (0..prev.ncols()).filter(|&j| j != r).collect();
                diffs[k - 1] = prev.submatrix(&all, &cols);
            }
        }
        while diffs.last().is_some_and(|d| d.ncols() == 0) {
            diffs.pop();
        }
        let out = ChainComplex::new(&base, f0, diffs)?;
        out.check_complex()?;
        Ok(out)
    }

    /// The dual complex `Hom(F, B)`, reindexed so that `F_k^*` sits at spot
    /// `len - k`.
    pub fn dual(&self) -> Result<ChainComplex> {
        let n = self.length();
        let f0: Vec<i32> = self.spots[n].iter().map(|d| -d).collect();
        let diffs = (0..n).map(|k| self.diffs[n - 1 - k].transpose()).collect();
        ChainComplex::new(&self.base, f0, diffs)
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
    /// Largest homological index computed.
    pub bound: usize,
    /// Whether the resolution is known to stop at `bound`.
    pub complete: bool,
}

impl BettiTable {
    pub fn new(bound: usize) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            bound,
            complete: false,
        }
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total Betti number `β_i`; `None` beyond the computed bound.
    pub fn total(&self, i: usize) -> Option<usize> {
        if i > self.bound && !self.complete {
            return None;
        }
        Some(
            self.entries
                .iter()
                .filter(|((k, _), _)| *k == i)
                .map(|(_, v)| v)
                .sum(),
        )
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.bound).map(|i| self.total(i).unwrap()).collect()
    }

    /// Projective dimension when the table is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| {
            self.entries
                .iter()
                .filter(|(_, &v)| v > 0)
                .map(|((i, _), _)| *i)
                .max()
                .unwrap_or(0)
        })
    }

    /// Layout with columns indexed by `i` and rows by `j - i`.
    pub fn render(&self) -> String {
        let cols = self.bound + 1;
        let shifts: Vec<i32> = self.entries.keys().map(|(i, j)| j - *i as i32).collect();
        let (lo, hi) = match (shifts.iter().min(), shifts.iter().max()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, 0),
        };
        let cell = |v: usize| {
            if v == 0 {
                ".".to_string()
            } else {
                v.to_string()
            }
        };
        let mut width = 1;
        for v in self.entries.values() {
            width = width.max(v.to_string().len());
        }
        for i in 0..cols {
            width = width.max(self.total(i).unwrap_or(0).to_string().len());
        }
        let label = 7;
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for i in 0..cols {
            let _ = write!(out, " {:>width$}", i);
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for i in 0..cols {
            let _ = write!(out, " {:>width$}", self.total(i).unwrap_or(0));
        }
        out.push('\n');
        for r in lo..=hi {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..cols {
                let _ = write!(out, " {:>width$}", cell(self.get(i, r + i as i32)));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for ((i, j), v) in &self.entries {
            map.serialize_entry(&format!("{i},{j}"), v)?;
        }
        map.end()
    }
}

/// A minimal graded free resolution truncated at a bound.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: ChainComplex,
    pub betti: BettiTable,
}

impl Resolution {
    pub fn is_complete(&self) -> bool {
        self.betti.complete
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.betti.projective_dimension()
    }
}

/// Minimal free resolution of `m` through homological degree `bound`.
pub fn free_resolution(m: &PresentedModule, bound: usize) -> Result<(ChainComplex, BettiTable)> {
    let r = resolve(m, bound)?;
    Ok((r.complex, r.betti))
}

pub fn resolve(m: &PresentedModule, bound: usize) -> Result<Resolution> {
    let base = m.base().clone();
    let mp = m.minimal_presentation();
    let pres = mp.presentation().clone();
    let f0 = pres.row_degrees().to_vec();
    let mut diffs: Vec<GradedMatrix> = Vec::new();
    let mut complete = false;
    if pres.ncols() == 0 {
        complete = true;
    } else if bound >= 1 {
        diffs.push(pres);
        loop {
            let last = diffs.last().unwrap();
            let k = kernel(last, &base);
            if k.ncols() == 0 {
                complete = true;
                break;
            }
            if diffs.len() >= bound {
                break;
            }
            diffs.push(k);
        }
    }
    let complex = ChainComplex::new(&base, f0, diffs)?;
    complex.check_complex()?;
    let betti = complex.betti_table(complete);
    if complete {
        // Euler identity of Hilbert series certifies exactness
        let mut acc = HilbertSeries::zero(base.ring().nvars());
        for i in 0..=complex.length() {
            let free = PresentedModule::free(&base, complex.degrees(i).to_vec()).hilbert();
            acc = if i % 2 == 0 {
                acc.add(&free)
            } else {
                acc.add(&free.negate())
            };
        }
        if acc != m.hilbert() {
            return Err(Error::invariant(
                "resolution fails the Hilbert series Euler identity",
            ));
        }
    }
    Ok(Resolution { complex, betti })
}

/// Projective dimension, or `Undetermined` if the resolution does not stop
/// within `bound`.
pub fn projective_dimension(m: &PresentedModule, bound: usize) -> Result<usize> {
    let r = resolve(m, bound)?;
    r.projective_dimension().ok_or_else(|| {
        Error::Undetermined(format!(
            "resolution does not terminate within {bound} steps"
        ))
    })
}

/// Alternating sum of Betti numbers of a finite resolution.
pub fn euler_rank(m: &PresentedModule, bound: usize) -> Result<i64> {
    let r = resolve(m, bound)?;
    if !r.is_complete() {
        return Err(Error::Undetermined(format!(
            "resolution does not terminate within {bound} steps"
        )));
    }
    Ok((0..=r.betti.bound)
        .map(|i| {
            let b = r.betti.total(i).unwrap() as i64;
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum())
}

/// Depth over the polynomial ring: length of a maximal regular sequence of
/// generic linear forms (chosen from a seeded generator).
pub fn depth(m: &PresentedModule, seed: u64) -> Result<usize> {
    if m.base().is_quotient() {
        return Err(Error::precondition(
            "depth is computed over the polynomial ring only",
        ));
    }
    let ring = m.ring().clone();
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = m.clone();
    let mut forms: Vec<Polynomial> = Vec::new();
    if cur.hilbert().is_zero() {
        return Ok(usize::MAX);
    }
    for _ in 0..n {
        if cur.hilbert().dimension() == 0 {
            break;
        }
        let mut found = None;
        for _ in 0..4 {
            let mut l = ring.zero();
            for (i, v) in ring.vars().iter().enumerate() {
                let c: i64 = rng.gen_range(1..=97) * if i % 2 == 0 { 1 } else { -1 };
                l = &l + &v.scale(&Rational::from(c));
            }
            if cur.is_nonzerodivisor(&l)? {
                found = Some(l);
                break;
            }
        }
        match found {
            Some(l) => {
                forms.push(l.clone());
                cur = cur.quotient_by(std::slice::from_ref(&l))?;
            }
            None => break,
        }
    }
    Ok(forms.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::poly::PolyRing;

    fn twisted_cubic() -> Ideal {
        let r = PolyRing::with_vars(&["x", "y", "z", "w"]).unwrap();
        let v = r.vars();
        let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
        Ideal::new(
            &r,
            vec![
                &(x * z) - &(y * y),
                &(x * w) - &(y * z),
                &(y * w) - &(z * z),
            ],
        )
        .unwrap()
    }

    #[test]
    fn twisted_cubic_resolution() {
        let i = twisted_cubic();
        let base = Base::Poly(i.ring().clone());
        let m = PresentedModule::cyclic(&base, &i).unwrap();
        let r = resolve(&m, 6).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.betti.totals(), vec![1, 3, 2]);
        assert_eq!(r.betti.get(1, 2), 3);
        assert_eq!(r.betti.get(2, 3), 2);
        assert_eq!(r.projective_dimension(), Some(2));
        assert!(r.complex.is_minimal());
        assert!(r.complex.is_exact_at(1).unwrap());
        assert_eq!(depth(&m, 7).unwrap(), 2);
        assert_eq!(euler_rank(&m, 6).unwrap(), 0);
    }

    #[test]
    fn residue_field_over_artinian_ring() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let s = Base::Quotient(Ideal::maximal(&r).power(2));
        let k = PresentedModule::cyclic(&s, &Ideal::maximal(&r)).unwrap();
        let res = resolve(&k, 5).unwrap();
        assert!(!res.is_complete());
        assert_eq!(res.betti.totals(), vec![1, 2, 4, 8, 16, 32]);
        for i in 0..=5 {
            assert_eq!(res.betti.get(i, i as i32), 1 << i);
        }
    }

    #[test]
    fn betti_render_layout() {
        let i = twisted_cubic();
        let base = Base::Poly(i.ring().clone());
        let m = PresentedModule::cyclic(&base, &i).unwrap();
        let (_, t) = free_resolution(&m, 4).unwrap();
        let text = t.render();
        assert!(text.contains("total: 1 3 2"), "{text}");
        assert!(text.contains("1: . 3 2"), "{text}");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"0,0":1,"1,2":3,"2,3":2}"#);
    }
}
