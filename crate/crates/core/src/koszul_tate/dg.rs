//! Free graded-commutative dg algebras over `R` or `R/I`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::groebner::{Base, GradedMatrix};
use crate::modules::ChainComplex;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A product of algebra variables: `(variable id, exponent)` pairs sorted by
/// id. Odd variables appear with exponent 1 at most.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DgMonomial {
    factors: SmallVec<[(u32, u32); 4]>,
}

impl DgMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(id: usize) -> Self {
        DgMonomial {
            factors: SmallVec::from_slice(&[(id as u32, 1)]),
        }
    }

    pub fn from_factors(mut f: Vec<(usize, u32)>) -> Self {
        f.retain(|e| e.1 > 0);
        f.sort_unstable();
        DgMonomial {
            factors: f.into_iter().map(|(v, e)| (v as u32, e)).collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.factors.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The variable id when this is a single variable to the first power.
    pub fn as_variable(&self) -> Option<usize> {
        match self.factors.as_slice() {
            [(v, 1)] => Some(*v as usize),
            _ => None,
        }
    }

    pub fn exponent(&self, id: usize) -> u32 {
        self.factors
            .iter()
            .find(|f| f.0 as usize == id)
            .map_or(0, |f| f.1)
    }
}

/// An element of the algebra: polynomial coefficients on monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DgElement {
    terms: BTreeMap<DgMonomial, Polynomial>,
}

impl DgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · μ`.
    pub fn term(mon: DgMonomial, coef: Polynomial) -> Self {
        let mut e = Self::zero();
        e.add_term(mon, &coef);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DgMonomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mon: &DgMonomial) -> Option<&Polynomial> {
        self.terms.get(mon)
    }

    pub fn add_term(&mut self, mon: DgMonomial, coef: &Polynomial) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&mon) {
            Some(c) => {
                let s = &*c + coef;
                if s.is_zero() {
                    self.terms.remove(&mon);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(mon, coef.clone());
            }
        }
    }

    pub fn add(&self, other: &DgElement) -> DgElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DgElement {
        let mut out = DgElement::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, f: &Polynomial) -> DgElement {
        let mut out = DgElement::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &(p * f));
        }
        out
    }

    /// Reduces all coefficients over the base.
    pub fn reduce(&self, base: &Base) -> DgElement {
        let mut out = DgElement::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &base.reduce(p));
        }
        out
    }
}

/// An adjoined variable.
#[derive(Clone, Debug)]
pub struct TateVariable {
    pub id: usize,
    /// Homological degree.
    pub hdeg: usize,
    /// Internal degree (that of the cycle it kills).
    pub ideg: i32,
    /// Position among the variables of the same homological degree, from 1.
    pub index: usize,
    pub diff: DgElement,
    /// Order in which the variable was adjoined.
    pub stage: usize,
}

impl TateVariable {
    pub fn is_odd(&self) -> bool {
        self.hdeg % 2 == 1
    }

    pub fn name(&self) -> String {
        format!("T[{}][{}]", self.hdeg, self.index)
    }
}

/// A free dg algebra `B<T_1, T_2, ...>` over a base ring.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    base: Base,
    vars: Vec<TateVariable>,
}

impl DgAlgebra {
    pub fn new(base: &Base) -> Self {
        DgAlgebra {
            base: base.clone(),
            vars: Vec::new(),
        }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn variables(&self) -> &[TateVariable] {
        &self.vars
    }

    pub fn variable(&self, id: usize) -> &TateVariable {
        &self.vars[id]
    }

    /// Variables of homological degree `h`, in order.
    pub fn variables_of_degree(&self, h: usize) -> impl Iterator<Item = &TateVariable> {
        self.vars.iter().filter(move |v| v.hdeg == h)
    }

    pub fn count_of_degree(&self, h: usize) -> usize {
        self.variables_of_degree(h).count()
    }

    pub fn max_hdeg(&self) -> usize {
        self.vars.iter().map(|v| v.hdeg).max().unwrap_or(0)
    }

    pub fn hdeg(&self, m: &DgMonomial) -> usize {
        m.factors()
            .map(|(v, e)| self.vars[v].hdeg * e as usize)
            .sum()
    }

    pub fn ideg(&self, m: &DgMonomial) -> i32 {
        m.factors().map(|(v, e)| self.vars[v].ideg * e as i32).sum()
    }

    /// Homological degree of a homogeneous element.
    pub fn element_hdeg(&self, e: &DgElement) -> Option<usize> {
        let mut it = e.terms().map(|(m, _)| self.hdeg(m));
        let first = it.next()?;
        it.all(|h| h == first).then_some(first)
    }

    /// Internal degree of a homogeneous element.
    pub fn element_ideg(&self, e: &DgElement) -> Option<i32> {
        let mut out = None;
        for (m, p) in e.terms() {
            let d = self.ideg(m) + p.degree()? as i32;
            if !p.is_homogeneous() || out.is_some_and(|o| o != d) {
                return None;
            }
            out = Some(d);
        }
        out
    }

    /// Adds a variable killing the cycle `z`; the caller is responsible for
    /// `z` being a cycle (see [`DgAlgebra::is_cycle`]).
    pub(crate) fn push_variable(&mut self, hdeg: usize, ideg: i32, diff: DgElement) -> usize {
        let id = self.vars.len();
        let index = self.count_of_degree(hdeg) + 1;
        self.vars.push(TateVariable {
            id,
            hdeg,
            ideg,
            index,
            diff,
            stage: id,
        });
        id
    }

    /// `a · b` with the graded-commutative sign, or `None` when an odd
    /// variable would appear squared.
    pub fn mul_monomials(&self, a: &DgMonomial, b: &DgMonomial) -> Option<(bool, DgMonomial)> {
        let mut negate = false;
        let mut out: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let (fa, fb) = (&a.factors, &b.factors);
        let (mut i, mut j) = (0, 0);
        // odd factors of `a` not yet passed
        let mut odd_a_left: usize = fa
            .iter()
            .filter(|(v, _)| self.vars[*v as usize].is_odd())
            .count();
        while i < fa.len() || j < fb.len() {
            if j == fb.len() || (i < fa.len() && fa[i].0 < fb[j].0) {
                if self.vars[fa[i].0 as usize].is_odd() {
                    odd_a_left -= 1;
                }
                out.push(fa[i]);
                i += 1;
            } else if i == fa.len() || fb[j].0 < fa[i].0 {
                if self.vars[fb[j].0 as usize].is_odd() && odd_a_left % 2 == 1 {
                    negate = !negate;
                }
                out.push(fb[j]);
                j += 1;
            } else {
                let v = fa[i].0 as usize;
                if self.vars[v].is_odd() {
                    return None;
                }
                out.push((fa[i].0, fa[i].1 + fb[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((negate, DgMonomial { factors: out }))
    }

    pub fn mul(&self, a: &DgElement, b: &DgElement) -> DgElement {
        let mut out = DgElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = self.base.reduce(&(ca * cb));
                    out.add_term(m, &if neg { -&c } else { c });
                }
            }
        }
        out
    }

    /// The differential of a monomial by the Leibniz rule, with
    /// `δ(T^k) = k·δ(T)·T^{k-1}` for even variables.
    pub fn diff_monomial(&self, m: &DgMonomial) -> DgElement {
        let ring = self.base.ring();
        let mut out = DgElement::zero();
        let factors: Vec<(usize, u32)> = m.factors().collect();
        let mut prefix_hdeg = 0usize;
        for (k, &(v, e)) in factors.iter().enumerate() {
            let var = &self.vars[v];
            let mut prefix: Vec<(usize, u32)> = factors[..k].to_vec();
            let mut rest: Vec<(usize, u32)> = Vec::with_capacity(factors.len() - k);
            if e > 1 {
                rest.push((v, e - 1));
            }
            rest.extend_from_slice(&factors[k + 1..]);
            let pre = DgElement::term(
                DgMonomial::from_factors(std::mem::take(&mut prefix)),
                ring.one(),
            );
            let post = DgElement::term(DgMonomial::from_factors(rest), ring.one());
            let z = var.diff.scale(&Rational::from(e as i64));
            let piece = self.mul(&pre, &self.mul(&z, &post));
            let piece = if prefix_hdeg % 2 == 1 {
                piece.scale(&Rational::from(-1))
            } else {
                piece
            };
            out = out.add(&piece);
            prefix_hdeg += var.hdeg * e as usize;
        }
        out
    }

    pub fn diff(&self, e: &DgElement) -> DgElement {
        let mut out = DgElement::zero();
        for (m, c) in e.terms() {
            out = out.add(&self.diff_monomial(m).mul_poly(c));
        }
        out.reduce(&self.base)
    }

    pub fn is_cycle(&self, e: &DgElement) -> bool {
        self.diff(e).is_zero()
    }

    /// Checks `δ² = 0` on every variable.
    pub fn check_square_zero(&self) -> Result<()> {
        for v in &self.vars {
            if !self.diff(&v.diff).is_zero() {
                return Err(Error::invariant(format!(
                    "δ² does not vanish on {}",
                    v.name()
                )));
            }
        }
        Ok(())
    }

    /// All monomials of homological degree `h` and internal degree at most
    /// `cap` in the variables `vars` (sorted ids), in increasing order.
    pub fn monomials(&self, h: usize, cap: i32, max_var_hdeg: usize) -> Vec<DgMonomial> {
        let ids: Vec<usize> = self
            .vars
            .iter()
            .filter(|v| v.hdeg <= max_var_hdeg)
            .map(|v| v.id)
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(&ids, 0, h, cap, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        ids: &[usize],
        pos: usize,
        h_left: usize,
        cap_left: i32,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<DgMonomial>,
    ) {
        if h_left == 0 {
            out.push(DgMonomial::from_factors(cur.clone()));
            return;
        }
        if pos == ids.len() {
            return;
        }
        let v = &self.vars[ids[pos]];
        let max_e = if v.is_odd() { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let h = v.hdeg * e as usize;
            let d = v.ideg * e as i32;
            if e > max_e || h > h_left || d > cap_left {
                break;
            }
            if e > 0 {
                cur.push((v.id, e));
            }
            self.enumerate(ids, pos + 1, h_left - h, cap_left - d, cur, out);
            if e > 0 {
                cur.pop();
            }
            e += 1;
        }
    }

    /// `δ : X_h -> X_{h-1}` on the subalgebra generated by variables of
    /// homological degree at most `max_var_hdeg`, with entries reduced over
    /// `over`. Rows and columns follow [`DgAlgebra::monomials`].
    pub fn differential_matrix(
        &self,
        h: usize,
        max_var_hdeg: usize,
        over: &Base,
    ) -> Result<GradedMatrix> {
        let ring = self.base.ring();
        let rows = self.monomials(h - 1, i32::MAX, max_var_hdeg);
        let cols = self.monomials(h, i32::MAX, max_var_hdeg);
        let row_index: std::collections::HashMap<&DgMonomial, usize> =
            rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut entries = Vec::with_capacity(cols.len());
        for mu in &cols {
            let d = self.diff_monomial(mu);
            let mut col = vec![ring.zero(); rows.len()];
            for (nu, c) in d.terms() {
                col[row_index[nu]] = over.reduce(c);
            }
            entries.push(col);
        }
        GradedMatrix::from_columns(
            ring,
            rows.iter().map(|m| self.ideg(m)).collect(),
            cols.iter().map(|m| self.ideg(m)).collect(),
            entries,
        )
    }

    /// The complex of the subalgebra on variables of degree at most
    /// `max_var_hdeg`, in homological degrees `0..=top`, over `over`.
    pub fn complex(&self, max_var_hdeg: usize, top: usize, over: &Base) -> Result<ChainComplex> {
        let mut diffs = Vec::with_capacity(top);
        for h in 1..=top {
            diffs.push(self.differential_matrix(h, max_var_hdeg, over)?);
        }
        ChainComplex::new(over, vec![0], diffs)
    }

    /// The element `Σ c_k μ_k` for a column over the basis `monomials`.
    pub fn element_from_column(&self, monomials: &[DgMonomial], col: &[Polynomial]) -> DgElement {
        let mut e = DgElement::zero();
        for (m, c) in monomials.iter().zip(col) {
            e.add_term(m.clone(), c);
        }
        e
    }

    /// Coefficient column of `e` over the basis `monomials`.
    pub fn column_of(&self, monomials: &[DgMonomial], e: &DgElement) -> Vec<Polynomial> {
        monomials
            .iter()
            .map(|m| {
                e.coefficient(m)
                    .cloned()
                    .unwrap_or_else(|| self.base.ring().zero())
            })
            .collect()
    }

    pub fn render_monomial(&self, m: &DgMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .factors()
            .map(|(v, e)| {
                let n = self.vars[v].name();
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn render(&self, e: &DgElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in e.terms().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let coef = c.render();
            if m.is_one() {
                out.push_str(&coef);
            } else if c.terms().len() == 1
                && c.is_constant()
                && c.lead_coef().is_some_and(|a| a.is_one())
            {
                out.push_str(&self.render_monomial(m));
            } else if c.terms().len() == 1 {
                let _ = write!(out, "{coef}*{}", self.render_monomial(m));
            } else {
                let _ = write!(out, "({coef})*{}", self.render_monomial(m));
            }
        }
        out
    }
}
