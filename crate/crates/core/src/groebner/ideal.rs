use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{buchberger, Reducer};
use super::hilbert::HilbertSeries;
use super::vector::{ModOrder, Vector};
use crate::error::{Error, Result};
use crate::poly::{check_same_ring, Monomial, PolyRing, Polynomial};

#[derive(Debug)]
struct GbCache {
    basis: Vec<Polynomial>,
    minimal: Vec<usize>,
    reducer: OnceLock<Reducer>,
}

/// A homogeneous ideal of a polynomial ring.
///
/// The reduced Gröbner basis is computed on first use and shared between
/// clones.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    cache: Arc<OnceLock<GbCache>>,
}

/// Checks that `p` is homogeneous, quoting the first offending term.
pub fn check_homogeneous(p: &Polynomial) -> Result<()> {
    let Some(lead) = p.lead_term() else {
        return Ok(());
    };
    let expected = lead.mon.degree();
    for t in p.terms() {
        if t.mon.degree() != expected {
            let single = Polynomial::monomial(p.ring(), t.mon.clone(), t.coef.clone());
            return Err(Error::Inhomogeneous {
                generator: p.render(),
                term: single.render(),
                expected,
                found: t.mon.degree(),
            });
        }
    }
    Ok(())
}

impl Ideal {
    /// Ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            check_same_ring(ring, g.ring())?;
            check_homogeneous(g)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, ring.vars()).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Product ideal, generated by pairwise products of minimal generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let (a, b) = (self.minimal_generators(), other.minimal_generators());
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for f in &a {
            for g in &b {
                gens.push(f * g);
            }
        }
        Ok(Ideal::new(&self.ring, gens)?.trimmed())
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub(crate) fn order1(&self) -> ModOrder {
        ModOrder::new(self.ring.order(), vec![0])
    }

    fn cache(&self) -> &GbCache {
        self.cache.get_or_init(|| {
            let ord = self.order1();
            let cands: Vec<Vector> = self
                .gens
                .iter()
                .map(|g| Vector::from_polys(&ord, std::slice::from_ref(g)))
                .collect();
            let res = buchberger(&ord, &[], &cands, true, None);
            GbCache {
                basis: res
                    .basis
                    .iter()
                    .map(|v| v.to_polys(&self.ring, 1).pop().unwrap())
                    .collect(),
                minimal: res.minimal,
                reducer: OnceLock::new(),
            }
        })
    }

    /// The reduced Gröbner basis for the ring's order.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.cache().basis
    }

    /// A minimal homogeneous generating set chosen among the given
    /// generators (in input order).
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut idx = self.cache().minimal.clone();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.gens[i].clone()).collect()
    }

    /// The same ideal presented by its minimal generators.
    pub fn trimmed(&self) -> Ideal {
        let t = Ideal::new(&self.ring, self.minimal_generators()).unwrap();
        let _ = t.cache.set(GbCache {
            basis: self.groebner_basis().to_vec(),
            minimal: (0..t.gens.len()).collect(),
            reducer: OnceLock::new(),
        });
        t
    }

    /// Number of minimal generators `μ(I)`.
    pub fn mu(&self) -> usize {
        self.cache().minimal.len()
    }

    pub fn is_minimally_generated(&self) -> bool {
        self.mu() == self.gens.len()
    }

    pub(crate) fn reducer(&self) -> &Reducer {
        self.cache().reducer.get_or_init(|| {
            let ord = self.order1();
            Reducer::from_basis(
                1,
                self.groebner_basis()
                    .iter()
                    .map(|g| Vector::from_polys(&ord, std::slice::from_ref(g)))
                    .collect(),
            )
        })
    }

    /// Normal form with respect to the reduced basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() || self.gens.is_empty() {
            return f.clone();
        }
        let ord = self.order1();
        let v = Vector::from_polys(&ord, std::slice::from_ref(f));
        self.reducer()
            .normal_form(&ord, &v)
            .to_polys(&self.ring, 1)
            .pop()
            .unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let red = self.reducer();
        let ord = self.order1();
        other
            .gens
            .iter()
            .all(|g| red.reduces_to_zero(&ord, &Vector::from_polys(&ord, std::slice::from_ref(g))))
    }

    /// Equality of ideals via their reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        check_same_ring(&self.ring, &other.ring).is_ok()
            && self.groebner_basis() == other.groebner_basis()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis()
            .iter()
            .any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect()
    }

    /// Hilbert series of `R/I`.
    pub fn quotient_hilbert(&self) -> HilbertSeries {
        HilbertSeries::from_leading_terms(self.ring.nvars(), &[0], &[self.leading_monomials()])
    }

    /// Krull dimension of `R/I` by an independent-set search; `-1` for the
    /// unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        best
    }

    /// `n - dim(R/I)`, which equals the grade over a polynomial ring.
    pub fn height(&self) -> i64 {
        self.ring.nvars() as i64 - self.krull_dimension()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    /// Whether every generator lies in `(x_1..x_n)^2`.
    pub fn in_square_of_maximal(&self) -> bool {
        self.gens
            .iter()
            .all(|g| g.terms().iter().all(|t| t.mon.degree() >= 2))
    }

    pub fn render(&self) -> String {
        let gs: Vec<String> = self.gens.iter().map(|g| g.render()).collect();
        format!("({})", gs.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The ring a module lives over: the polynomial ring itself or `R/I`.
#[derive(Clone, Debug)]
pub enum Base {
    Poly(Arc<PolyRing>),
    Quotient(Ideal),
}

impl Base {
    pub fn ring(&self) -> &Arc<PolyRing> {
        match self {
            Base::Poly(r) => r,
            Base::Quotient(i) => i.ring(),
        }
    }

    pub fn ideal(&self) -> Option<&Ideal> {
        match self {
            Base::Poly(_) => None,
            Base::Quotient(i) => Some(i),
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self, Base::Quotient(_))
    }

    /// Reduces a polynomial modulo the defining ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        match self {
            Base::Poly(_) => p.clone(),
            Base::Quotient(i) => i.normal_form(p),
        }
    }

    /// Vectors `g e_j` for `g` in the basis of the ideal, generating `I·F`.
    pub(crate) fn ideal_vectors(
        &self,
        ord: &ModOrder,
        comps: std::ops::Range<usize>,
    ) -> Vec<Vector> {
        let Base::Quotient(i) = self else {
            return Vec::new();
        };
        let nv = self.ring().nvars();
        let mut out = Vec::new();
        for j in comps {
            for g in i.groebner_basis() {
                out.push(Vector::from_terms(
                    ord,
                    g.terms()
                        .iter()
                        .map(|t| super::vector::VTerm {
                            mon: t.mon.clone(),
                            comp: j,
                            coef: t.coef.clone(),
                        })
                        .collect(),
                ));
                debug_assert_eq!(g.terms()[0].mon.nvars(), nv);
            }
        }
        out
    }

    /// Hilbert series of the base ring itself.
    pub fn hilbert(&self) -> HilbertSeries {
        match self {
            Base::Poly(r) => HilbertSeries::from_leading_terms(r.nvars(), &[0], &[Vec::new()]),
            Base::Quotient(i) => i.quotient_hilbert(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Base::Poly(r) => r.describe(),
            Base::Quotient(i) => format!("{}/{}", i.ring().describe(), i.render()),
        }
    }
}
