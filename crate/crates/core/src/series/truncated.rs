use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A power series known through `z^N`.
///
/// `horizon` is the largest index whose coefficient is trustworthy; it never
/// exceeds `N` and arithmetic propagates the minimum of its inputs.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    horizon: usize,
}

impl TruncatedSeries {
    /// Series with the given coefficients `c_0..=c_N`; horizon `N`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        let horizon = coeffs.len() - 1;
        TruncatedSeries { coeffs, horizon }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::ZERO; order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::ONE;
        s
    }

    /// `1 / (1 - c z^k)` truncated.
    pub fn geometric(order: usize, c: &Rational, k: usize) -> Self {
        let mut s = Self::zero(order);
        let mut p = Rational::ONE;
        let mut i = 0;
        while i <= order {
            s.coeffs[i] = p.clone();
            p = &p * c;
            if k == 0 {
                break;
            }
            i += k;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn with_horizon(mut self, h: usize) -> Self {
        self.horizon = h.min(self.order());
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// Coefficient `i`, refusing to read past the horizon.
    pub fn checked_coeff(&self, i: usize) -> Result<&Rational> {
        if i > self.horizon {
            return Err(Error::precondition(format!(
                "coefficient {i} is beyond the trusted horizon {}",
                self.horizon
            )));
        }
        Ok(&self.coeffs[i])
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            horizon: self.horizon.min(order),
        }
    }

    fn common(&self, other: &Self) -> (usize, usize) {
        (
            self.order().min(other.order()),
            self.horizon.min(other.horizon),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (n, h) = self.common(other);
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
            horizon: h,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (n, h) = self.common(other);
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
            horizon: h,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            horizon: self.horizon,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, h) = self.common(other);
        let mut coeffs = vec![Rational::ZERO; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        TruncatedSeries { coeffs, horizon: h }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order()).with_horizon(self.horizon);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::precondition(
                "series with zero constant term is not invertible",
            ));
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![Rational::ZERO; n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::ZERO;
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -(&acc * &inv0);
        }
        Ok(TruncatedSeries {
            coeffs: out,
            horizon: self.horizon,
        })
    }

    /// Formal derivative; known through `z^{N-1}`.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0).with_horizon(0);
        }
        TruncatedSeries {
            coeffs: (1..=n)
                .map(|i| &self.coeffs[i] * &Rational::from(i as i64))
                .collect(),
            horizon: self.horizon.saturating_sub(1),
        }
    }

    /// `s(-z)`.
    pub fn negate_argument(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
            horizon: self.horizon,
        }
    }

    /// `z^k * s`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rational::ZERO; n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        TruncatedSeries {
            coeffs,
            horizon: (self.horizon + k).min(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Coefficients as `"p/q"` strings.
    pub fn to_fractions(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_fraction_string()).collect()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] (horizon {})",
            self.to_strings().join(", "),
            self.horizon
        )
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_fraction_string())?;
        }
        seq.end()
    }
}
