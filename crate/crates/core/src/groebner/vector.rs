use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder, Polynomial, Term};
use crate::rational::Rational;

/// One term `coef * mon * e_comp` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub mon: Monomial,
    pub comp: usize,
    pub coef: Rational,
}

/// Term order on a graded free module `⊕ R(-shift_j)`.
///
/// Without a block the order is degree first (monomial degree plus shift),
/// then the ring order on monomials, then lower component index first. With
/// `block = Some(k)` every term in components `< k` beats every term in
/// components `>= k`; this is the elimination order used for syzygies.
#[derive(Clone, Debug)]
pub struct ModOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i32>,
    pub block: Option<usize>,
}

impl ModOrder {
    pub fn new(mono: MonomialOrder, shifts: Vec<i32>) -> Self {
        ModOrder {
            mono,
            shifts,
            block: None,
        }
    }

    pub fn with_block(mono: MonomialOrder, shifts: Vec<i32>, k: usize) -> Self {
        ModOrder {
            mono,
            shifts,
            block: Some(k),
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn term_degree(&self, mon: &Monomial, comp: usize) -> i32 {
        mon.degree() as i32 + self.shifts[comp]
    }

    pub fn compare(&self, am: &Monomial, ac: usize, bm: &Monomial, bc: usize) -> Ordering {
        if let Some(k) = self.block {
            let (ba, bb) = (ac < k, bc < k);
            if ba != bb {
                return if ba {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        self.term_degree(am, ac)
            .cmp(&self.term_degree(bm, bc))
            .then_with(|| self.mono.compare(am, bm))
            .then_with(|| bc.cmp(&ac))
    }

    fn cmp_terms(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.compare(&a.mon, a.comp, &b.mon, b.comp)
    }
}

/// Element of a free module, terms strictly descending in some [`ModOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(ord: &ModOrder, mut terms: Vec<VTerm>) -> Self {
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon && last.comp == t.comp => last.coef += &t.coef,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        Vector { terms: out }
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_polys(ord: &ModOrder, entries: &[Polynomial]) -> Self {
        Self::from_polys_offset(ord, entries, 0)
    }

    pub fn from_polys_offset(ord: &ModOrder, entries: &[Polynomial], offset: usize) -> Self {
        let terms = entries
            .iter()
            .enumerate()
            .flat_map(|(j, p)| {
                p.terms().iter().map(move |t| VTerm {
                    mon: t.mon.clone(),
                    comp: j + offset,
                    coef: t.coef.clone(),
                })
            })
            .collect();
        Self::from_terms(ord, terms)
    }

    /// Splits into per-component polynomials over `ring`.
    pub fn to_polys(
        &self,
        ring: &std::sync::Arc<crate::poly::PolyRing>,
        rank: usize,
    ) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp].push(Term {
                mon: t.mon.clone(),
                coef: t.coef.clone(),
            });
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    /// Degree of the lead term (all terms share it for homogeneous vectors).
    pub fn degree(&self, ord: &ModOrder) -> Option<i32> {
        self.terms.first().map(|t| ord.term_degree(&t.mon, t.comp))
    }

    pub fn is_homogeneous(&self, ord: &ModOrder) -> bool {
        match self.degree(ord) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| ord.term_degree(&t.mon, t.comp) == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    mon: t.mon.clone(),
                    comp: t.comp,
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> Vector {
        match self.lead() {
            Some(t) if !t.coef.is_one() => self.scale(&t.coef.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    mon: t.mon.mul(m),
                    comp: t.comp,
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// `self * p`, for a polynomial `p` with the same monomial order.
    pub fn mul_poly(&self, ord: &ModOrder, p: &Polynomial) -> Vector {
        let mut acc = Vector::zero();
        for t in p.terms() {
            acc = axpy(ord, &acc, &t.coef, Some(&t.mon), self);
        }
        acc
    }

    /// Keeps components in `range`, shifting indices down by `range.start`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.comp))
                .map(|t| VTerm {
                    mon: t.mon.clone(),
                    comp: t.comp - range.start,
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// Re-sorts under a different order (e.g. after a component relabelling).
    pub fn resort(self, ord: &ModOrder) -> Vector {
        Vector::from_terms(ord, self.terms)
    }
}

/// `a + scale * mon * b` for vectors sorted by `ord`.
pub fn axpy(
    ord: &ModOrder,
    a: &Vector,
    scale: &Rational,
    mon: Option<&Monomial>,
    b: &Vector,
) -> Vector {
    axpy_slices(ord, &a.terms, scale, mon, &b.terms)
}

pub(crate) fn axpy_slices(
    ord: &ModOrder,
    a: &[VTerm],
    scale: &Rational,
    mon: Option<&Monomial>,
    b: &[VTerm],
) -> Vector {
    if scale.is_zero() || b.is_empty() {
        return Vector { terms: a.to_vec() };
    }
    let shifted = |t: &VTerm| VTerm {
        mon: match mon {
            Some(m) => t.mon.mul(m),
            None => t.mon.clone(),
        },
        comp: t.comp,
        coef: &t.coef * scale,
    };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pb = b.first().map(shifted);
    loop {
        match (a.get(i), pb.take()) {
            (Some(ta), Some(tb)) => match ord.cmp_terms(ta, &tb) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                    pb = Some(tb);
                }
                Ordering::Less => {
                    out.push(tb);
                    j += 1;
                    pb = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let c = &ta.coef + &tb.coef;
                    if !c.is_zero() {
                        out.push(VTerm { coef: c, ..tb });
                    }
                    i += 1;
                    j += 1;
                    pb = b.get(j).map(shifted);
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(tb)) => {
                out.push(tb);
                j += 1;
                pb = b.get(j).map(shifted);
            }
            (None, None) => break,
        }
    }
    Vector { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = ModOrder::with_block(MonomialOrder::Degrevlex, vec![0, 5], 1);
        let small = Monomial::from_exponents(&[0, 0]);
        let big = Monomial::from_exponents(&[3, 0]);
        assert_eq!(ord.compare(&small, 0, &big, 1), Ordering::Greater);
        let top = ModOrder::new(MonomialOrder::Degrevlex, vec![0, 5]);
        assert_eq!(top.compare(&small, 0, &big, 1), Ordering::Less);
    }

    #[test]
    fn axpy_cancels() {
        let ord = ModOrder::new(MonomialOrder::Degrevlex, vec![0, 0]);
        let x = Monomial::from_exponents(&[1, 0]);
        let v = Vector::from_terms(
            &ord,
            vec![
                VTerm {
                    mon: x.clone(),
                    comp: 0,
                    coef: Rational::ONE,
                },
                VTerm {
                    mon: x.clone(),
                    comp: 1,
                    coef: Rational::from(2),
                },
            ],
        );
        let w = axpy(&ord, &v, &Rational::from(-1), None, &v);
        assert!(w.is_zero());
        assert_eq!(v.terms[0].comp, 0);
    }
}
