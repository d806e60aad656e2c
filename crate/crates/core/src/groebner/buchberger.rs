//! Degree-by-degree Buchberger algorithm for homogeneous submodules of a
//! graded free module.

use std::collections::BTreeMap;

use super::vector::{axpy_slices, ModOrder, VTerm, Vector};
use crate::poly::Monomial;

/// A set of vectors indexed by the lead term for division.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    pub basis: Vec<Vector>,
    by_comp: Vec<Vec<usize>>,
}

impl Reducer {
    pub fn new(rank: usize) -> Self {
        Reducer {
            basis: Vec::new(),
            by_comp: vec![Vec::new(); rank],
        }
    }

    pub fn from_basis(rank: usize, basis: Vec<Vector>) -> Self {
        let mut r = Reducer::new(rank);
        for v in basis {
            r.push(v);
        }
        r
    }

    pub fn push(&mut self, v: Vector) -> usize {
        let idx = self.basis.len();
        if let Some(t) = v.lead() {
            self.by_comp[t.comp].push(idx);
        }
        self.basis.push(v);
        idx
    }

    pub fn find_divisor(&self, mon: &Monomial, comp: usize) -> Option<usize> {
        self.by_comp[comp]
            .iter()
            .copied()
            .find(|&i| self.basis[i].terms[0].mon.divides(mon))
    }

    /// Full normal form: no term of the result is divisible by a lead term.
    pub fn normal_form(&self, ord: &ModOrder, f: &Vector) -> Vector {
        let mut out: Vec<VTerm> = Vec::new();
        let mut rest: Vec<VTerm> = f.terms.clone();
        let mut pos = 0;
        while pos < rest.len() {
            let t = &rest[pos];
            match self.find_divisor(&t.mon, t.comp) {
                Some(i) => {
                    let g = &self.basis[i];
                    let lead = &g.terms[0];
                    let q = lead.mon.quotient_of(&t.mon);
                    let c = -(&t.coef / &lead.coef);
                    let merged = axpy_slices(ord, &rest[pos + 1..], &c, Some(&q), &g.terms[1..]);
                    rest = merged.terms;
                    pos = 0;
                }
                None => {
                    out.push(rest[pos].clone());
                    pos += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn reduces_to_zero(&self, ord: &ModOrder, f: &Vector) -> bool {
        self.normal_form(ord, f).is_zero()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
}

/// Output of [`buchberger`].
#[derive(Clone, Debug)]
pub struct GbResult {
    /// Reduced, monic Gröbner basis, sorted by increasing lead term.
    pub basis: Vec<Vector>,
    /// Indices into the candidate list of a minimal generating set modulo
    /// the base elements.
    pub minimal: Vec<usize>,
    /// True when the computation stopped at a degree bound.
    pub truncated: bool,
}

/// Computes the reduced Gröbner basis of the submodule generated by `base`
/// and `candidates`, all homogeneous.
///
/// Candidates that are not in the span of lower-degree data and earlier
/// candidates are reported in `minimal`. Base elements are never counted
/// there, which lets callers work modulo a fixed submodule such as `I·F`.
/// `product_criterion` may only be set for ideals (rank one, no block).
pub fn buchberger(
    ord: &ModOrder,
    base: &[Vector],
    candidates: &[Vector],
    product_criterion: bool,
    max_degree: Option<i32>,
) -> GbResult {
    let rank = ord.rank();
    let mut inputs: BTreeMap<i32, (Vec<&Vector>, Vec<(usize, &Vector)>)> = BTreeMap::new();
    for v in base.iter().filter(|v| !v.is_zero()) {
        debug_assert!(v.is_homogeneous(ord), "inhomogeneous base vector");
        inputs.entry(v.degree(ord).unwrap()).or_default().0.push(v);
    }
    for (k, v) in candidates.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        debug_assert!(v.is_homogeneous(ord), "inhomogeneous candidate vector");
        inputs
            .entry(v.degree(ord).unwrap())
            .or_default()
            .1
            .push((k, v));
    }

    let mut red = Reducer::new(rank);
    let mut pairs: BTreeMap<i32, Vec<Pair>> = BTreeMap::new();
    let mut minimal = Vec::new();
    let mut truncated = false;

    loop {
        let next_in = inputs.keys().next().copied();
        let next_pair = pairs.keys().next().copied();
        let d = match (next_in, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if max_degree.is_some_and(|m| d > m) {
            truncated = true;
            break;
        }
        if let Some(ps) = pairs.remove(&d) {
            for p in ps {
                let s = s_vector(ord, &red.basis[p.i], &red.basis[p.j], &p.lcm);
                let h = red.normal_form(ord, &s);
                if !h.is_zero() {
                    add_element(ord, &mut red, &mut pairs, h.monic(), product_criterion);
                }
            }
        }
        if let Some((bs, cs)) = inputs.remove(&d) {
            for v in bs {
                let h = red.normal_form(ord, v);
                if !h.is_zero() {
                    add_element(ord, &mut red, &mut pairs, h.monic(), product_criterion);
                }
            }
            for (k, v) in cs {
                let h = red.normal_form(ord, v);
                if !h.is_zero() {
                    minimal.push(k);
                    add_element(ord, &mut red, &mut pairs, h.monic(), product_criterion);
                }
            }
        }
    }

    GbResult {
        basis: interreduce(ord, red.basis),
        minimal,
        truncated,
    }
}

fn s_vector(ord: &ModOrder, f: &Vector, g: &Vector, lcm: &Monomial) -> Vector {
    let (lf, lg) = (&f.terms[0], &g.terms[0]);
    let qf = lf.mon.quotient_of(lcm);
    let qg = lg.mon.quotient_of(lcm);
    // both inputs are monic, so the lead terms cancel exactly
    let a = axpy_slices(ord, &[], &lf.coef.recip(), Some(&qf), &f.terms[1..]);
    let c = -lg.coef.recip();
    axpy_slices(ord, &a.terms, &c, Some(&qg), &g.terms[1..])
}

/// Gebauer–Möller update with the new element `h`.
fn add_element(
    ord: &ModOrder,
    red: &mut Reducer,
    pairs: &mut BTreeMap<i32, Vec<Pair>>,
    h: Vector,
    product_criterion: bool,
) {
    let (hm, hc) = {
        let l = h.lead().unwrap();
        (l.mon.clone(), l.comp)
    };
    // chain criterion on the old pairs
    for ps in pairs.values_mut() {
        ps.retain(|p| {
            if p.comp != hc || !hm.divides(&p.lcm) {
                return true;
            }
            let li = red.basis[p.i].terms[0].mon.lcm(&hm);
            let lj = red.basis[p.j].terms[0].mon.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
    }
    pairs.retain(|_, ps| !ps.is_empty());

    let hidx = red.basis.len();
    let mut fresh: Vec<(Pair, bool)> = red.by_comp[hc]
        .iter()
        .map(|&g| {
            let gm = &red.basis[g].terms[0].mon;
            let coprime = product_criterion && gm.is_coprime(&hm);
            (
                Pair {
                    i: g,
                    j: hidx,
                    lcm: gm.lcm(&hm),
                    comp: hc,
                },
                coprime,
            )
        })
        .collect();
    // drop pairs whose lcm is a proper multiple of another new lcm
    let lcms: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm.clone()).collect();
    fresh.retain(|(p, _)| !lcms.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));
    // one pair per lcm; a class containing a coprime pair is dropped entirely
    let mut by_lcm: BTreeMap<Vec<u16>, (Pair, bool)> = BTreeMap::new();
    for (p, coprime) in fresh {
        let key = p.lcm.exponents().to_vec();
        match by_lcm.get_mut(&key) {
            Some(entry) => entry.1 |= coprime,
            None => {
                by_lcm.insert(key, (p, coprime));
            }
        }
    }
    for (_, (p, coprime)) in by_lcm {
        if !coprime {
            let d = ord.term_degree(&p.lcm, p.comp);
            pairs.entry(d).or_default().push(p);
        }
    }
    red.push(h);
}

/// Tail-reduces a basis whose lead terms form an antichain.
fn interreduce(ord: &ModOrder, basis: Vec<Vector>) -> Vec<Vector> {
    let rank = ord.rank();
    let mut out = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others = Reducer::from_basis(
            rank,
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, v)| v.clone())
                .collect(),
        );
        let tail = Vector {
            terms: g.terms[1..].to_vec(),
        };
        let mut t = others.normal_form(ord, &tail).terms;
        t.insert(0, g.terms[0].clone());
        out.push(Vector { terms: t }.monic());
    }
    out.sort_by(|a, b| {
        let (la, lb) = (&a.terms[0], &b.terms[0]);
        ord.compare(&la.mon, la.comp, &lb.mon, lb.comp)
    });
    out
}

/// Checks Buchberger's criterion directly: every S-vector of `basis` reduces
/// to zero.
pub fn satisfies_buchberger_criterion(ord: &ModOrder, basis: &[Vector]) -> bool {
    let red = Reducer::from_basis(ord.rank(), basis.to_vec());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i].terms[0], &basis[j].terms[0]);
            if a.comp != b.comp {
                continue;
            }
            let lcm = a.mon.lcm(&b.mon);
            let s = s_vector(ord, &basis[i], &basis[j], &lcm);
            if !red.reduces_to_zero(ord, &s) {
                return false;
            }
        }
    }
    true
}

/// Whether the basis is reduced: monic, lead terms an antichain, and no
/// term of any element divisible by another element's lead term.
pub fn is_reduced(ord: &ModOrder, basis: &[Vector]) -> bool {
    let _ = ord;
    for (k, g) in basis.iter().enumerate() {
        if g.is_zero() || !g.terms[0].coef.is_one() {
            return false;
        }
        for (i, h) in basis.iter().enumerate() {
            if i == k {
                continue;
            }
            let l = &h.terms[0];
            if g.terms
                .iter()
                .any(|t| t.comp == l.comp && l.mon.divides(&t.mon))
            {
                return false;
            }
        }
    }
    true
}
