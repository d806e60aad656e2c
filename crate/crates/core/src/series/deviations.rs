//! Deviations of `S = R/I` and the product formula for the Poincaré series
//! of the residue field.

use serde::Serialize;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::koszul_tate::{ResolventKind, TateResolvent};
use crate::modules::BettiTable;
use crate::rational::Rational;

/// Where a deviation sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviationSource {
    /// Variables of the minimal resolvent of `R -> S`, shifted by one.
    Resolvent,
    /// Variables of the acyclic closure of the residue field over `S`.
    AcyclicClosure,
    /// Inversion of the product formula on the Betti numbers of `k`.
    BettiInversion,
    Given,
}

/// `ε_1, ..., ε_H`, trustworthy through index `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeviationSeries {
    values: Vec<u64>,
    pub source: DeviationSource,
}

impl DeviationSeries {
    /// `values[k]` is `ε_{k+1}`.
    pub fn new(values: Vec<u64>, source: DeviationSource) -> Self {
        DeviationSeries { values, source }
    }

    /// Largest index known.
    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `ε_i` for `1 <= i <= horizon`.
    pub fn get(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return None;
        }
        self.values.get(i - 1).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// First `i >= from` with `ε_i = 0`.
    pub fn first_vanishing(&self, from: usize) -> Option<usize> {
        (from.max(1)..=self.horizon()).find(|&i| self.get(i) == Some(0))
    }

    /// Once some `ε_i` with `i >= 3` vanishes, all later ones do.
    pub fn is_rigid(&self) -> bool {
        match self.first_vanishing(3) {
            Some(i) => (i..=self.horizon()).all(|j| self.get(j) == Some(0)),
            None => true,
        }
    }

    /// First `i0 >= 2` with `ε_i > 0` for every known `i >= i0`.
    pub fn positivity_index(&self) -> Option<usize> {
        let h = self.horizon();
        if h < 2 {
            return None;
        }
        let mut i0 = h + 1;
        while i0 > 2 && self.get(i0 - 1).is_some_and(|e| e > 0) {
            i0 -= 1;
        }
        (i0 <= h).then_some(i0)
    }
}

/// `ε_1 = n` and `ε_{i+1} = e_i` from a minimal resolvent of `R -> R/I`.
pub fn deviations(x: &TateResolvent) -> Result<DeviationSeries> {
    if x.kind() != ResolventKind::Quotient {
        return Err(Error::precondition(
            "deviations are read from a resolvent of R -> R/I",
        ));
    }
    if !x.ideal().in_square_of_maximal() {
        return Err(Error::precondition(
            "ideal must lie in the square of the maximal ideal",
        ));
    }
    let defects = x.minimality_defects();
    if !defects.is_empty() {
        return Err(Error::precondition(format!(
            "resolvent is not minimal ({})",
            defects.join(", ")
        )));
    }
    let mut values = vec![x.ideal().ring().nvars() as u64];
    values.extend(x.counts().into_iter().map(|e| e as u64));
    Ok(DeviationSeries::new(values, DeviationSource::Resolvent))
}

/// `ε_i` as the number of variables of degree `i` in the acyclic closure.
pub fn deviations_from_closure(y: &TateResolvent) -> Result<DeviationSeries> {
    if y.kind() != ResolventKind::ResidueField {
        return Err(Error::precondition(
            "expected the acyclic closure of the residue field",
        ));
    }
    let values = y.counts().into_iter().map(|e| e as u64).collect();
    Ok(DeviationSeries::new(
        values,
        DeviationSource::AcyclicClosure,
    ))
}

/// Multiplies `s` by `(1 + z^i)^e` (odd `i`) or `(1 - z^i)^{-e}` (even `i`).
fn apply_factor(s: &TruncatedSeries, i: usize, e: u64) -> TruncatedSeries {
    if e == 0 {
        return s.clone();
    }
    let n = s.order();
    let mut f = vec![Rational::ZERO; n + 1];
    let mut c = Rational::ONE;
    let e = Rational::from(e as i64);
    let mut m = 0usize;
    while m * i <= n {
        f[m * i] = c.clone();
        m += 1;
        let mr = Rational::from(m as i64);
        // binomial C(e, m) for odd i, C(e + m - 1, m) for even i
        c = if i % 2 == 1 {
            &(&c * &(&e - &(&mr - &Rational::ONE))) / &mr
        } else {
            &(&c * &(&e + &(&mr - &Rational::ONE))) / &mr
        };
        if c.is_zero() {
            break;
        }
    }
    s.mul(&TruncatedSeries::new(f).with_horizon(s.horizon()))
}

/// `P_k(z) = Π (1+z^{2j-1})^{ε_{2j-1}} / Π (1-z^{2j})^{ε_{2j}}` through
/// `z^N`. Beyond the deviation horizon the coefficients are not known;
/// `allow_beyond` returns them anyway with the horizon marking the cut.
pub fn poincare_from_deviations(
    eps: &DeviationSeries,
    n: usize,
    allow_beyond: bool,
) -> Result<TruncatedSeries> {
    if n > eps.horizon() && !allow_beyond {
        return Err(Error::precondition(format!(
            "order {n} is beyond the deviation horizon {}",
            eps.horizon()
        )));
    }
    let mut p = TruncatedSeries::one(n);
    for i in 1..=n.min(eps.horizon()) {
        p = apply_factor(&p, i, eps.get(i).unwrap());
    }
    Ok(p.with_horizon(n.min(eps.horizon())))
}

/// Inverts the product formula: deviations from `β_0 = 1, β_1, ...`.
pub fn deviations_from_betti(betti: &[u64]) -> Result<DeviationSeries> {
    if betti.first() != Some(&1) {
        return Err(Error::precondition(
            "Betti sequence of the residue field starts with 1",
        ));
    }
    let n = betti.len() - 1;
    let mut p = TruncatedSeries::one(n);
    let mut values = Vec::with_capacity(n);
    for i in 1..=n {
        let e = &Rational::from(betti[i] as i64) - p.coeff(i);
        if e.is_negative() || !e.is_integer() {
            return Err(Error::invariant(format!(
                "Betti numbers give a negative deviation at index {i}"
            )));
        }
        let e = e.to_i64().expect("deviation fits in i64") as u64;
        p = apply_factor(&p, i, e);
        values.push(e);
    }
    Ok(DeviationSeries::new(
        values,
        DeviationSource::BettiInversion,
    ))
}

/// Deviations from a (possibly partial) Betti table of the residue field.
pub fn deviations_from_betti_table(t: &BettiTable) -> Result<DeviationSeries> {
    let totals: Vec<u64> = t.totals().into_iter().map(|b| b as u64).collect();
    deviations_from_betti(&totals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_ring_gives_binomials() {
        let eps = DeviationSeries::new(vec![3, 0, 0, 0, 0], DeviationSource::Given);
        let p = poincare_from_deviations(&eps, 5, false).unwrap();
        assert_eq!(p, TruncatedSeries::from_integers(&[1, 3, 3, 1, 0, 0]));
        assert!(poincare_from_deviations(&eps, 6, false).is_err());
        assert_eq!(
            poincare_from_deviations(&eps, 6, true).unwrap().horizon(),
            5
        );
    }

    #[test]
    fn single_even_deviation() {
        let eps = DeviationSeries::new(vec![0, 3, 0, 0, 0, 0], DeviationSource::Given);
        let p = poincare_from_deviations(&eps, 6, false).unwrap();
        // coefficient of z^{2m} is C(m + 2, 2)
        assert_eq!(p, TruncatedSeries::from_integers(&[1, 0, 3, 0, 6, 0, 10]));
    }

    #[test]
    fn inversion_round_trips() {
        let eps = DeviationSeries::new(vec![2, 3, 2, 3, 6, 11, 18], DeviationSource::Given);
        let p = poincare_from_deviations(&eps, 7, false).unwrap();
        let betti: Vec<u64> = p
            .coeffs()
            .iter()
            .map(|c| c.to_i64().unwrap() as u64)
            .collect();
        assert_eq!(betti, vec![1, 2, 4, 8, 16, 32, 64, 128]);
        let back = deviations_from_betti(&betti).unwrap();
        assert_eq!(back.values(), eps.values());
        assert_eq!(back.positivity_index(), Some(2));
        assert!(back.is_rigid());
    }

    #[test]
    fn rigidity_and_vanishing() {
        let ci = DeviationSeries::new(vec![2, 2, 0, 0], DeviationSource::Given);
        assert_eq!(ci.first_vanishing(3), Some(3));
        assert!(ci.is_rigid());
        let odd = DeviationSeries::new(vec![2, 2, 0, 1], DeviationSource::Given);
        assert!(!odd.is_rigid());
    }
}
