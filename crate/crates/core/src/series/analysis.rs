//! Logarithmic derivatives, the divisor-sum coefficients `α_i`, and the
//! eventual-periodicity test for zero patterns of a coefficient sequence.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::deviations::{
    deviations, deviations_from_betti_table, poincare_from_deviations, DeviationSeries,
};
use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::koszul_tate::minimal_resolvent;
use crate::modules::{classify_ideal, residue_field_betti};
use crate::rational::Rational;

/// `s'/s`, known through `z^{N-1}`; checked against `(s'/s)·s = s'`.
pub fn log_derivative(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    if s.coeff(0).is_zero() {
        return Err(Error::precondition(
            "log derivative needs a nonzero constant term",
        ));
    }
    let d = s.derivative();
    let inv = s.truncate(d.order()).inverse()?;
    let out = d.mul(&inv);
    if out.mul(&s.truncate(d.order())) != d {
        return Err(Error::invariant("log derivative fails (λs)·s = s'"));
    }
    Ok(out)
}

fn divisor_sum(eps: &DeviationSeries, i: usize) -> Option<Rational> {
    let mut acc = Rational::ZERO;
    for j in 2..i {
        if !i.is_multiple_of(j) {
            continue;
        }
        let e = eps.get(j)? as i64;
        let term = Rational::from(j as i64 * e);
        if j % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    Some(acc)
}

/// `α_i = Σ_{j | i, j ≠ 1, i} (-1)^{j+1} j ε_j` for `0 <= i <= N` (`α_0 = 0`).
pub fn alpha_coefficients(eps: &DeviationSeries, n: usize) -> Result<TruncatedSeries> {
    if eps.horizon() < n / 2 {
        return Err(Error::precondition(format!(
            "α through {n} needs deviations through {}, known through {}",
            n / 2,
            eps.horizon()
        )));
    }
    let mut c = vec![Rational::ZERO; n + 1];
    for (i, slot) in c.iter_mut().enumerate().skip(2) {
        *slot = divisor_sum(eps, i).expect("divisors within horizon");
    }
    Ok(TruncatedSeries::new(c))
}

/// `o_m = α_{2m+1}` for `0 <= m <= M`; odd indices only need deviations
/// through `(2M+1)/3`.
pub fn odd_alpha_coefficients(eps: &DeviationSeries, m: usize) -> Result<TruncatedSeries> {
    let top = 2 * m + 1;
    if eps.horizon() < top / 3 {
        return Err(Error::precondition(format!(
            "α at odd indices through {top} needs deviations through {}, known through {}",
            top / 3,
            eps.horizon()
        )));
    }
    let c = (0..=m)
        .map(|k| divisor_sum(eps, 2 * k + 1).expect("divisors within horizon"))
        .collect();
    Ok(TruncatedSeries::new(c))
}

/// The coefficients of `[(λP_k)(-z) - F'(-z) - Σ ε_1 z^i]·z` through `z^N`,
/// with `F = Σ ε_i z^i` and `P_k` from the product formula.
pub fn alpha_from_series(eps: &DeviationSeries, n: usize) -> Result<TruncatedSeries> {
    if eps.horizon() < n {
        return Err(Error::precondition(format!(
            "the series side through {n} needs deviations through {n}"
        )));
    }
    let p = poincare_from_deviations(eps, n, false)?;
    let lp = log_derivative(&p)?.negate_argument();
    let mut f = vec![Rational::ZERO; n + 1];
    for (i, slot) in f.iter_mut().enumerate().skip(1) {
        *slot = Rational::from(eps.get(i).unwrap() as i64);
    }
    let fp = TruncatedSeries::new(f).derivative().negate_argument();
    let e1 = Rational::from(eps.get(1).unwrap_or(0) as i64);
    let ones = TruncatedSeries::new(vec![e1; n]);
    let bracket = lp.sub(&fp).sub(&ones);
    let mut c = vec![Rational::ZERO; n + 1];
    c[1..].clone_from_slice(bracket.coeffs());
    Ok(TruncatedSeries::new(c))
}

/// Eventual periodicity of the zero set of a coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroPattern {
    pub burn_in: usize,
    pub last: usize,
    /// Smallest `r <= len/4` whose residue classes (beyond the burn-in)
    /// are each all zero or all nonzero.
    pub period: Option<usize>,
    pub residues: BTreeSet<usize>,
    pub zeros: Vec<usize>,
}

impl ZeroPattern {
    pub fn has_small_period(&self) -> bool {
        self.period.is_some()
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.period {
            Some(r) => write!(f, "period {r}, zero residues {:?}", self.residues),
            None => write!(f, "no small period"),
        }
    }
}

pub fn mahler_zero_pattern(prefix: &TruncatedSeries, burn_in: usize) -> Result<ZeroPattern> {
    let len = prefix.horizon() + 1;
    if len < 4 * burn_in {
        return Err(Error::precondition(format!(
            "prefix of length {len} is shorter than four times the burn-in {burn_in}"
        )));
    }
    let last = prefix.horizon();
    let idx: Vec<usize> = (burn_in..=last).collect();
    let zeros: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| prefix.coeff(i).is_zero())
        .collect();
    let mut found = None;
    for r in 1..=(len / 4).max(1) {
        let mut class: Vec<Option<bool>> = vec![None; r];
        let fits = idx.iter().all(|&i| {
            let z = prefix.coeff(i).is_zero();
            match class[i % r] {
                None => {
                    class[i % r] = Some(z);
                    true
                }
                Some(c) => c == z,
            }
        });
        if fits {
            let residues = (0..r).filter(|&k| class[k] == Some(true)).collect();
            found = Some((r, residues));
            break;
        }
    }
    let (period, residues) = match found {
        Some((r, s)) => (Some(r), s),
        None => (None, BTreeSet::new()),
    };
    Ok(ZeroPattern {
        burn_in,
        last,
        period,
        residues,
        zeros,
    })
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `o_m = α_{2m+1}` vanishes exactly when `2m + 1` is prime, for `m >= from`.
pub fn zeros_at_odd_primes(odd: &TruncatedSeries, from: usize) -> bool {
    (from..=odd.horizon()).all(|m| odd.coeff(m).is_zero() == is_prime(2 * m + 1))
}

/// Complete-intersection verdict from deviations and the `α` zero pattern.
#[derive(Clone, Debug, Serialize)]
pub struct CiVerdict {
    pub is_ci_certified: bool,
    pub direct_ci: bool,
    pub deviation_vanishing_index: Option<usize>,
    pub deviations: DeviationSeries,
    pub mahler_flag: String,
}

/// Deviations from the minimal resolvent to `D`; for non-complete
/// intersections, the odd `α` coefficients from deviations by Betti
/// inversion are tested for a small period.
pub fn ci_series_test(i: &Ideal, d: usize) -> Result<CiVerdict> {
    let x = minimal_resolvent(i, d.max(2))?;
    let eps = deviations(&x)?;
    let vanishing = eps.first_vanishing(3);
    let direct_ci = classify_ideal(i)?.complete_intersection;
    if vanishing.is_some() != direct_ci {
        return Err(Error::invariant(format!(
            "deviation vanishing ({vanishing:?}) disagrees with μ(I) = height(I) ({direct_ci})"
        )));
    }
    let mahler_flag = if let Some(k) = vanishing {
        format!("deviations vanish from index {k}")
    } else {
        let h = (d + 1).max(11);
        let betti = residue_field_betti(i, h)?;
        let long = deviations_from_betti_table(&betti)?;
        let i0 = long.positivity_index().unwrap_or(h);
        let m = (3 * long.horizon()).div_ceil(2);
        let odd = odd_alpha_coefficients(&long, m)?;
        // burn-in: odd i > i0^2, i.e. m > (i0^2 - 1) / 2
        let burn = (i0 * i0 - 1) / 2 + 1;
        match mahler_zero_pattern(&odd, burn) {
            Ok(p) if p.has_small_period() => format!("zero pattern of odd α has {p}"),
            Ok(p) if zeros_at_odd_primes(&odd, p.burn_in) => {
                "prime-pattern zeros, no small period".to_string()
            }
            Ok(p) => p.to_string(),
            Err(_) => "window too short for the zero-pattern test".to_string(),
        }
    };
    Ok(CiVerdict {
        is_ci_certified: vanishing.is_some() && direct_ci,
        direct_ci,
        deviation_vanishing_index: vanishing,
        deviations: eps,
        mahler_flag,
    })
}
