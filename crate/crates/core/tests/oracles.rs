//! Computed values against oracles that share no code with the engine:
//! dense linear algebra on monomial coefficients, closed-form series, and
//! a hand-written inversion of the product formula.

mod common;

use calg_core::koszul_tate::{acyclic_closure, koszul_complex, minimal_resolvent};
use calg_core::linkage::link;
use calg_core::modules::{residue_field_betti, resolve, PresentedModule};
use calg_core::series::{alpha_coefficients, deviations, deviations_from_closure};
use calg_core::{Base, Ideal, Rational};
use common::*;

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, |v| v.len());
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..ncols {
                    let t = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &t;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim_k (R/I)_d` from the span of all multiples `m·g` of degree `d`.
fn quotient_dim(i: &Ideal, d: u32) -> i64 {
    let ring = i.ring();
    let basis = ring.monomials_of_degree(d);
    let mut rows = Vec::new();
    for g in i.gens() {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - e) {
            let p = g.mul_monomial(&m, &Rational::ONE);
            rows.push(basis.iter().map(|b| p.coefficient(b)).collect());
        }
    }
    basis.len() as i64 - rank(rows) as i64
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn link_examples() -> Vec<(Ideal, [&'static str; 2])> {
    vec![
        (maximal_square(), ["x^2", "y^3"]),
        (maximal_square(), ["x^2", "y^2"]),
        (ideal("ring Q[x,y]; ideal (x^2, x*y, y^3);"), ["x^2", "y^3"]),
    ]
}

#[test]
fn hilbert_function_matches_linear_algebra() {
    let mut ideals: Vec<Ideal> = corpus().into_iter().map(|m| m.ideal).collect();
    for (i, xs) in link_examples() {
        let xs: Vec<_> = xs.iter().map(|s| poly(&i, s)).collect();
        ideals.push(link(&i, &xs).unwrap().link);
    }
    for i in &ideals {
        let h = i.quotient_hilbert();
        for d in 0..=6 {
            assert_eq!(
                h.value(d as i32),
                quotient_dim(i, d),
                "{} in degree {d}",
                i.render()
            );
        }
    }
}

#[test]
fn graded_betti_numbers_give_the_hilbert_numerator() {
    for m in corpus() {
        let i = &m.ideal;
        let n = i.ring().nvars() as i64;
        let r = resolve(
            &PresentedModule::cyclic(&Base::Poly(i.ring().clone()), i).unwrap(),
            8,
        )
        .unwrap();
        assert!(r.is_complete());
        for d in 0..=9i64 {
            let from_betti: i64 = r
                .betti
                .entries
                .iter()
                .filter(|((_, j), _)| *j as i64 == d)
                .map(|((k, _), b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
                .sum();
            let numerator: i64 = (0..=n.min(d))
                .map(|k| (-1i64).pow(k as u32) * binomial(n, k) * quotient_dim(i, (d - k) as u32))
                .sum();
            assert_eq!(from_betti, numerator, "{} at t^{d}", m.name);
        }
    }
}

/// Coefficients of `(1+z)^n / (1-z^2)^c` through `z^top`.
fn tate_series(n: i64, c: i64, top: usize) -> Vec<i64> {
    (0..=top as i64)
        .map(|k| {
            (0..=k / 2)
                .map(|j| binomial(c + j - 1, j) * binomial(n, k - 2 * j))
                .sum()
        })
        .collect()
}

#[test]
fn residue_field_over_complete_intersections() {
    for m in corpus().into_iter().filter(|m| m.ci) {
        let i = &m.ideal;
        let expect = tate_series(i.ring().nvars() as i64, i.mu() as i64, 6);
        let got: Vec<i64> = residue_field_betti(i, 6)
            .unwrap()
            .totals()
            .iter()
            .map(|&b| b as i64)
            .collect();
        assert_eq!(got, expect, "{}", m.name);
    }
}

/// Deviations from Betti numbers, solving the product formula degree by
/// degree with integer binomials.
fn invert_product_formula(betti: &[i64]) -> Vec<i64> {
    let n = betti.len() - 1;
    let mut eps = Vec::new();
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let e = betti[i] - p[i];
        assert!(e >= 0);
        let mut f = vec![0i64; n + 1];
        for m in 0..=n / i {
            f[m * i] = if i % 2 == 1 {
                binomial(e, m as i64)
            } else {
                binomial(e + m as i64 - 1, m as i64)
            };
        }
        p = (0..=n)
            .map(|k| (0..=k).map(|j| p[j] * f[k - j]).sum())
            .collect();
        eps.push(e);
    }
    eps
}

#[test]
fn square_of_the_maximal_ideal() {
    let i = maximal_square();
    let betti: Vec<i64> = residue_field_betti(&i, 8)
        .unwrap()
        .totals()
        .iter()
        .map(|&b| b as i64)
        .collect();
    assert_eq!(betti, (0..=8).map(|k| 1i64 << k).collect::<Vec<_>>());
    let eps = invert_product_formula(&betti);
    assert_eq!(eps[..5], [2, 3, 2, 3, 6]);
    let closure = deviations_from_closure(&acyclic_closure(&i, 6).unwrap()).unwrap();
    let resolvent = deviations(&minimal_resolvent(&i, 5).unwrap()).unwrap();
    let as_i64 = |v: &[u64]| v.iter().map(|&e| e as i64).collect::<Vec<_>>();
    assert_eq!(as_i64(closure.values()), eps[..closure.horizon()]);
    assert_eq!(as_i64(resolvent.values()), eps[..resolvent.horizon()]);
}

#[test]
fn linked_lengths_add_up() {
    let length = |i: &Ideal| (0..=12).map(|d| quotient_dim(i, d)).sum::<i64>();
    for (i, xs) in link_examples() {
        let xs: Vec<_> = xs.iter().map(|s| poly(&i, s)).collect();
        let j = link(&i, &xs).unwrap().link;
        let c = Ideal::new(i.ring(), xs).unwrap();
        assert_eq!(
            length(&i) + length(&j),
            length(&c),
            "{} via {}",
            i.render(),
            c.render()
        );
    }
}

#[test]
fn alpha_of_a_complete_intersection() {
    for m in random_cis() {
        let c = m.ideal.mu() as i64;
        let eps = deviations(&minimal_resolvent(&m.ideal, 11).unwrap()).unwrap();
        let a = alpha_coefficients(&eps, 12).unwrap();
        for k in 2..=12 {
            let expect = if k % 2 == 0 && k >= 4 { -2 * c } else { 0 };
            assert_eq!(a.coeff(k), &Rational::from(expect), "{} at {k}", m.name);
        }
    }
}

#[test]
fn koszul_homology_vanishes_above_mu_minus_grade() {
    // every corpus quotient is Cohen-Macaulay, so grade = height
    for m in corpus() {
        let i = &m.ideal;
        let k = koszul_complex(i.ring(), i.gens()).unwrap();
        let top = i.mu() - i.height() as usize;
        for h in 0..=i.mu() {
            let zero = k.homology_at(h).unwrap().is_zero().unwrap();
            assert_eq!(zero, h > top, "{}: H_{h}", m.name);
        }
    }
}
