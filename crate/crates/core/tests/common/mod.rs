//! Fixed inputs and small independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use calg_core::linkage::is_regular_sequence;
use calg_core::modules::ChainComplex;
use calg_core::reports::parse_problem;
use calg_core::{Base, GradedMatrix, Ideal, Monomial, PolyRing, Polynomial, Rational, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Member {
    pub name: &'static str,
    pub ideal: Ideal,
    pub ci: bool,
}

pub fn ideal(text: &str) -> Ideal {
    parse_problem(text).expect("corpus input parses").ideal
}

pub fn double_point() -> Ideal {
    ideal("ring Q[x]; ideal (x^2);")
}

pub fn ci_x2_y3() -> Ideal {
    ideal("ring Q[x,y]; ideal (x^2, y^3);")
}

pub fn maximal_square() -> Ideal {
    ideal("ring Q[x,y]; ideal (x^2, x*y, y^2);")
}

pub fn twisted_cubic() -> Ideal {
    ideal("ring Q[x,y,z,w]; ideal (xz - y^2, xw - yz, yw - z^2);")
}

/// A form of degree `d` with three random terms and coefficients in
/// `{±1, ±2, ±3}`; sparse forms keep exact arithmetic small.
pub fn sparse_form(ring: &Arc<PolyRing>, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let mons = ring.monomials_of_degree(d);
    let mut terms = Vec::new();
    for _ in 0..3 {
        let mon = mons[rng.gen_range(0..mons.len())].clone();
        let coef = Rational::from([-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)]);
        terms.push(Term { mon, coef });
    }
    Polynomial::from_terms(ring, terms)
}

/// A seeded regular sequence of the given degrees, redrawn until regular.
pub fn random_ci(seed: u64, names: &[&str], degrees: &[u32]) -> Ideal {
    let ring = PolyRing::with_vars(names).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let xs: Vec<_> = degrees
            .iter()
            .map(|&d| sparse_form(&ring, d, &mut rng))
            .collect();
        if xs.iter().all(|p| !p.is_zero()) && is_regular_sequence(&xs).unwrap() {
            return Ideal::new(&ring, xs).unwrap();
        }
    }
}

pub fn random_cis() -> Vec<Member> {
    vec![
        Member {
            name: "random (2,3) in 4 variables",
            ideal: random_ci(2, &["x", "y", "z", "w"], &[2, 3]),
            ci: true,
        },
        Member {
            name: "random (2,2,2) in 3 variables",
            ideal: random_ci(3, &["x", "y", "z"], &[2, 2, 2]),
            ci: true,
        },
        Member {
            name: "random (2,2,3) in 4 variables",
            ideal: random_ci(4, &["x", "y", "z", "w"], &[2, 2, 3]),
            ci: true,
        },
    ]
}

pub fn corpus() -> Vec<Member> {
    let mut c = vec![
        Member {
            name: "(x^2)",
            ideal: double_point(),
            ci: true,
        },
        Member {
            name: "(x^2, y^3)",
            ideal: ci_x2_y3(),
            ci: true,
        },
        Member {
            name: "m^2",
            ideal: maximal_square(),
            ci: false,
        },
        Member {
            name: "twisted cubic",
            ideal: twisted_cubic(),
            ci: false,
        },
    ];
    c.extend(random_cis());
    c
}

pub fn poly(i: &Ideal, text: &str) -> Polynomial {
    calg_core::reports::parse_polynomial(i.ring(), text).unwrap()
}

/// Plain multivariate division of `f` by `divisors`; returns the remainder.
pub fn naive_remainder(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = ring.zero();
    while let Some(lt) = p.lead_term().cloned() {
        let hit = divisors.iter().find_map(|g| {
            let glt = g.lead_term()?;
            lt.mon
                .checked_div(&glt.mon)
                .map(|q| (g, q, &lt.coef / &glt.coef))
        });
        match hit {
            Some((g, q, c)) => p = &p - &g.mul_monomial(&q, &c),
            None => {
                let t = Polynomial::monomial(&ring, lt.mon.clone(), lt.coef.clone());
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

/// Every S-polynomial of `basis` divides to zero.
pub fn naive_buchberger(basis: &[Polynomial]) -> bool {
    for (a, f) in basis.iter().enumerate() {
        for g in &basis[a + 1..] {
            let (Some(ft), Some(gt)) = (f.lead_term(), g.lead_term()) else {
                return false;
            };
            let l: Monomial = ft.mon.lcm(&gt.mon);
            let s = &f.mul_monomial(&ft.mon.quotient_of(&l), &ft.coef.recip())
                - &g.mul_monomial(&gt.mon.quotient_of(&l), &gt.coef.recip());
            if !naive_remainder(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `a * b` entry by entry, reduced over `base`; true when all vanish.
pub fn product_vanishes(a: &GradedMatrix, b: &GradedMatrix, base: &Base) -> bool {
    let (ac, bc) = (a.columns(), b.columns());
    for col in bc {
        for row in 0..a.nrows() {
            let mut acc = a.ring().zero();
            for (k, e) in col.iter().enumerate() {
                if !e.is_zero() && !ac[k][row].is_zero() {
                    acc = &acc + &(&ac[k][row] * e);
                }
            }
            if !base.reduce(&acc).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `d_i d_{i+1} = 0` at every spot, multiplied out by hand.
pub fn is_complex(c: &ChainComplex) -> bool {
    (1..c.length()).all(|i| product_vanishes(c.d(i).unwrap(), c.d(i + 1).unwrap(), c.base()))
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
