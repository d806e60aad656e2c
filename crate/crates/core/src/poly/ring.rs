use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{monomials_of_degree, Monomial};
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A standard-graded polynomial ring `Q[x_1, ..., x_n]` with a fixed
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Arc<PolyRing>> {
        if names.is_empty() {
            return Err(Error::Structural(
                "a ring needs at least one variable".into(),
            ));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || names[..i].contains(a) {
                return Err(Error::Structural(format!(
                    "bad or repeated variable name `{a}`"
                )));
            }
        }
        Ok(Arc::new(PolyRing { names, order }))
    }

    /// Ring with degrevlex order.
    pub fn with_vars<S: AsRef<str>>(names: &[S]) -> Result<Arc<PolyRing>> {
        Self::new(names, MonomialOrder::Degrevlex)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, Rational::ONE)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::variable(self.nvars(), i), Rational::ONE)
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Monomials of degree `d`, largest first in the ring order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut v = monomials_of_degree(self.nvars(), d);
        v.sort_by(|a, b| self.order.compare(b, a));
        v
    }

    pub fn describe(&self) -> String {
        format!("Q[{}]", self.names.join(","))
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::Structural(format!(
            "ring mismatch: {} vs {}",
            a.describe(),
            b.describe()
        )))
    }
}
