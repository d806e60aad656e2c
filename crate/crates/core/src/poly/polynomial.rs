use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::{check_same_ring, PolyRing};
use crate::error::Result;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub coef: Rational,
}

/// A polynomial in canonical form: terms strictly descending in the ring
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

/// Sorts, merges equal monomials and drops zeros.
pub(crate) fn canonicalize(order: MonomialOrder, mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| order.compare(&b.mon, &a.mon));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mon == t.mon => last.coef += &t.coef,
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coef.is_zero());
    out
}

/// `a + scale * mon * b` for canonical term lists.
pub(crate) fn merge_axpy(
    order: MonomialOrder,
    a: &[Term],
    scale: &Rational,
    mon: Option<&Monomial>,
    b: &[Term],
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Term {
        Term {
            mon: match mon {
                Some(m) => t.mon.mul(m),
                None => t.mon.clone(),
            },
            coef: &t.coef * scale,
        }
    };
    let mut pending_b: Option<Term> = b.first().map(shifted);
    while i < a.len() || pending_b.is_some() {
        match (a.get(i), pending_b.as_ref()) {
            (Some(ta), Some(tb)) => match order.compare(&ta.mon, &tb.mon) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending_b.take().unwrap());
                    j += 1;
                    pending_b = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let c = &ta.coef + &tb.coef;
                    if !c.is_zero() {
                        out.push(Term {
                            mon: ta.mon.clone(),
                            coef: c,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending_b = b.get(j).map(shifted);
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending_b.take().unwrap());
                j += 1;
                pending_b = b.get(j).map(shifted);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<PolyRing>, mon: Monomial, coef: Rational) -> Self {
        let terms = if coef.is_zero() {
            Vec::new()
        } else {
            vec![Term { mon, coef }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms (any order, repeats allowed).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.mon.nvars() == ring.nvars()));
        Polynomial {
            terms: canonicalize(ring.order(), terms),
            ring: ring.clone(),
        }
    }

    /// Wraps terms that are already canonical for the ring's order.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mon.is_one())
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn lead_coef(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coef)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mon.degree() == t.mon.degree()),
        }
    }

    /// Constant coefficient (coefficient of the monomial 1).
    pub fn constant_coef(&self) -> Rational {
        self.terms
            .iter()
            .find(|t| t.mon.is_one())
            .map(|t| t.coef.clone())
            .unwrap_or(Rational::ZERO)
    }

    pub fn coefficient(&self, mon: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.mon == mon)
            .map(|t| t.coef.clone())
            .unwrap_or(Rational::ZERO)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.axpy(&Rational::ONE, None, other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.axpy(&-Rational::ONE, None, other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + scale * mon * other`.
    pub(crate) fn axpy(
        &self,
        scale: &Rational,
        mon: Option<&Monomial>,
        other: &Polynomial,
    ) -> Polynomial {
        if scale.is_zero() {
            return self.clone();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_axpy(self.ring.order(), &self.terms, scale, mon, &other.terms),
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &small.terms {
            acc = acc.axpy(&t.coef, Some(&t.mon), large);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.lead_coef() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mon.exponents()[var] > 0)
            .map(|t| {
                let e = t.mon.exponents()[var];
                Term {
                    mon: t.mon.with_exponent(var, e - 1),
                    coef: &t.coef * &Rational::from(e as i64),
                }
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Graded pieces in increasing degree; their sum is `self`.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut by_deg: std::collections::BTreeMap<u32, Vec<Term>> = Default::default();
        for t in &self.terms {
            by_deg.entry(t.mon.degree()).or_default().push(t.clone());
        }
        by_deg
            .into_iter()
            .map(|(d, ts)| (d, Polynomial::from_sorted(&self.ring, ts)))
            .collect()
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .filter(|t| t.mon.degree() == d)
                .cloned()
                .collect(),
        )
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coef.clone());
            for (i, &e) in t.mon.exponents().iter().enumerate() {
                if e > 0 {
                    prod = prod.mul_unchecked(&images[i].pow(e as u32));
                }
            }
            acc = acc.axpy(&Rational::ONE, None, &prod);
        }
        acc
    }

    /// Textual form accepted by the problem parser, e.g. `x*z - y^2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.ring.names();
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coef.is_negative();
            let abs = t.coef.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if t.mon.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&t.mon.render(names));
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&t.mon.render(names));
            }
        }
        out
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && super::ring::same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods to get
// an error instead.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::ONE)
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Subtract,
    Multiply,
}

/// Exact sum, difference or product in canonical form.
pub fn poly_arith(kind: ArithKind, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    match kind {
        ArithKind::Add => p.checked_add(q),
        ArithKind::Subtract => p.checked_sub(q),
        ArithKind::Multiply => p.checked_mul(q),
    }
}

/// Graded pieces of `p` in increasing degree.
pub fn homogeneous_components(p: &Polynomial) -> Vec<(u32, Polynomial)> {
    p.homogeneous_components()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn xy() -> Arc<PolyRing> {
        PolyRing::with_vars(&["x", "y"]).unwrap()
    }

    #[test]
    fn documented_arithmetic() {
        let r = xy();
        let (x, y) = (r.var(0), r.var(1));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(&p + &r.zero(), p);
        let half_x = x.scale(&Rational::new(1, 2));
        let two_y = y.scale(&Rational::from(2));
        assert_eq!(&half_x * &two_y, &x * &y);
    }

    #[test]
    fn ring_mismatch_is_structural() {
        let a = xy();
        let b = PolyRing::with_vars(&["u", "v"]).unwrap();
        assert!(matches!(
            poly_arith(ArithKind::Add, &a.var(0), &b.var(0)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn components() {
        let r = PolyRing::with_vars(&["x"]).unwrap();
        let x = r.var(0);
        let p = &x.pow(2) + &x;
        let comps = homogeneous_components(&p);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (1, x.clone()));
        assert_eq!(comps[1], (2, x.pow(2)));
        assert!(homogeneous_components(&r.zero()).is_empty());
        let r2 = xy();
        let q = &r2.var(0).pow(2) + &(&r2.var(0) * &r2.var(1));
        assert_eq!(homogeneous_components(&q), vec![(2, q.clone())]);
    }

    #[test]
    fn render_round_trip_shape() {
        let r = xy();
        let p = &(&r.var(0) * &r.var(1)).scale(&Rational::new(-3, 2)) + &r.var(1).pow(2);
        assert_eq!(p.render(), "-3/2*x*y + y^2");
    }

    fn arb_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u16..3, 0u16..3), -5i64..5), 0..5).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|((a, b), c)| Term {
                        mon: Monomial::from_exponents(&[a, b]),
                        coef: Rational::from(c),
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn distributive_and_canonical(
            (p, q, s) in (arb_poly(xy()), arb_poly(xy()), arb_poly(xy()))
        ) {
            let r = p.ring().clone();
            let (p, q, s) = (
                Polynomial::from_sorted(&r, p.terms().to_vec()),
                Polynomial::from_sorted(&r, q.terms().to_vec()),
                Polynomial::from_sorted(&r, s.terms().to_vec()),
            );
            let lhs = &(&p + &q) * &s;
            let rhs = &(&p * &s) + &(&q * &s);
            prop_assert_eq!(lhs.terms(), rhs.terms());
            // a second construction path gives identical term sequences
            let rebuilt = Polynomial::from_terms(&r, lhs.terms().iter().rev().cloned().collect());
            prop_assert_eq!(rebuilt.terms(), lhs.terms());
            for w in lhs.terms().windows(2) {
                prop_assert_eq!(r.order().compare(&w[0].mon, &w[1].mon), Ordering::Greater);
            }
        }
    }
}
