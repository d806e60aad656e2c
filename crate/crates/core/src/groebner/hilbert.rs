//! Hilbert series from leading-term (monomial) data.

use serde::Serialize;

use crate::poly::Monomial;

/// Hilbert series `Σ_k c_k t^{offset+k} / (1-t)^n` of a graded module over
/// a polynomial ring in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub offset: i32,
    pub numerator: Vec<i64>,
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, c) in b.iter().enumerate() {
        a[k + shift] -= c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N` with `HS(R/L) = N(t) / (1-t)^n` for the monomial ideal `L`.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    match gens.len() {
        0 => return vec![1],
        1 => {
            let mut v = vec![0; gens[0].degree() as usize + 1];
            v[0] = 1;
            v[gens[0].degree() as usize] -= 1;
            return trim(v);
        }
        _ => {}
    }
    // pairwise coprime generators factor as a product
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, g.degree() as usize);
            acc = next;
        }
        return trim(acc);
    }
    let mut rest = gens;
    let pivot = rest.pop().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|m| m.colon(&pivot)).collect();
    let mut n = numerator_rec(rest);
    let nc = numerator_rec(minimalize(colon));
    poly_sub_shifted(&mut n, &nc, pivot.degree() as usize);
    trim(n)
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries {
            nvars,
            offset: 0,
            numerator: Vec::new(),
        }
    }

    /// Series of `⊕_j R(-shift_j) / L_j` from per-component monomial ideals.
    pub fn from_leading_terms(nvars: usize, shifts: &[i32], leads: &[Vec<Monomial>]) -> Self {
        let mut acc = HilbertSeries::zero(nvars);
        for (j, l) in leads.iter().enumerate() {
            let part = HilbertSeries {
                nvars,
                offset: shifts[j],
                numerator: monomial_numerator(l),
            };
            acc = acc.add(&part);
        }
        acc
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        if self.numerator.is_empty() {
            return other.clone();
        }
        if other.numerator.is_empty() {
            return self.clone();
        }
        let offset = self.offset.min(other.offset);
        let mut v = vec![0i64; 0];
        for s in [self, other] {
            let start = (s.offset - offset) as usize;
            if v.len() < start + s.numerator.len() {
                v.resize(start + s.numerator.len(), 0);
            }
            for (k, c) in s.numerator.iter().enumerate() {
                v[start + k] += c;
            }
        }
        let mut h = HilbertSeries {
            nvars: self.nvars,
            offset,
            numerator: trim(v),
        };
        h.normalize();
        h
    }

    fn normalize(&mut self) {
        let lead_zeros = self.numerator.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.numerator.len() {
            self.numerator.clear();
            self.offset = 0;
        } else {
            self.numerator.drain(..lead_zeros);
            self.offset += lead_zeros as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn negate(&self) -> HilbertSeries {
        HilbertSeries {
            nvars: self.nvars,
            offset: self.offset,
            numerator: self.numerator.iter().map(|c| -c).collect(),
        }
    }

    /// The series of `M(-d)`.
    pub fn shift(&self, d: i32) -> HilbertSeries {
        if self.is_zero() {
            return self.clone();
        }
        HilbertSeries {
            offset: self.offset + d,
            ..self.clone()
        }
    }

    /// Dimension of the graded piece of degree `d`.
    pub fn value(&self, d: i32) -> i64 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = (d - self.offset) as i64 - k as i64;
                if e < 0 {
                    0
                } else {
                    c * binom(n - 1 + e, n - 1)
                }
            })
            .sum()
    }

    /// Values in degrees `lo..=hi`.
    pub fn prefix(&self, lo: i32, hi: i32) -> Vec<i64> {
        (lo..=hi).map(|d| self.value(d)).collect()
    }

    /// Lowest degree with a nonzero piece, if any.
    pub fn initial_degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// Numerator with all factors `(1-t)` removed, and their count.
    fn reduced(&self) -> (Vec<i64>, usize) {
        let mut num = self.numerator.clone();
        let mut k = 0;
        while !num.is_empty() && num.iter().sum::<i64>() == 0 && k < self.nvars {
            // synthetic division by (1 - t): q_i = Σ_{j<=i} a_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0;
            for c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = trim(q);
            k += 1;
        }
        (num, k)
    }

    /// Krull dimension (pole order at `t = 1`); `-1` for the zero module.
    pub fn dimension(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let (_, k) = self.reduced();
        (self.nvars - k) as i64
    }

    /// Total dimension over the field when finite.
    pub fn length(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let (num, k) = self.reduced();
        (k == self.nvars).then(|| num.iter().sum())
    }

    /// Multiplicity: the reduced numerator evaluated at 1.
    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Highest degree with a nonzero piece when the length is finite.
    pub fn top_degree(&self) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        let (num, k) = self.reduced();
        (k == self.nvars).then(|| self.offset + num.len() as i32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Counts standard monomials of degree d directly.
    fn brute(gens: &[Monomial], n: usize, d: u32) -> i64 {
        monomials_of_degree(n, d)
            .into_iter()
            .filter(|x| !gens.iter().any(|g| g.divides(x)))
            .count() as i64
    }

    #[test]
    fn max_ideal_square() {
        let gens = vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        let h = HilbertSeries::from_leading_terms(2, &[0], &[gens]);
        assert_eq!(h.prefix(0, 4), vec![1, 2, 0, 0, 0]);
        assert_eq!(h.length(), Some(3));
        assert_eq!(h.dimension(), 0);
    }

    #[test]
    fn polynomial_ring_and_principal() {
        let h = HilbertSeries::from_leading_terms(1, &[0], &[vec![]]);
        assert_eq!(h.prefix(0, 3), vec![1, 1, 1, 1]);
        assert_eq!(h.length(), None);
        assert_eq!(h.dimension(), 1);
        let h = HilbertSeries::from_leading_terms(1, &[0], &[vec![m(&[2])]]);
        assert_eq!(h.prefix(0, 3), vec![1, 1, 0, 0]);
    }

    #[test]
    fn agrees_with_counting() {
        let gens = vec![m(&[2, 1, 0]), m(&[0, 3, 1]), m(&[1, 0, 2]), m(&[1, 1, 1])];
        let h = HilbertSeries::from_leading_terms(3, &[0], std::slice::from_ref(&gens));
        for d in 0..9 {
            assert_eq!(h.value(d), brute(&gens, 3, d as u32), "degree {d}");
        }
        assert_eq!(h.dimension(), 1);
    }

    #[test]
    fn shifted_sum() {
        let h =
            HilbertSeries::from_leading_terms(2, &[-1, 2], &[vec![m(&[1, 0])], vec![m(&[0, 1])]]);
        assert_eq!(h.value(-1), 1);
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(2), 2);
    }
}
