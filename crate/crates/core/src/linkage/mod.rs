//! Linkage of perfect ideals: regular sequences inside `I`, the link
//! `J = ((x) : I)`, the mapping-cone resolution of `R/J` and the
//! double-link identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cotangent::conormal_presentation;
use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient, lift_columns, Base, GradedMatrix, Ideal};
use crate::koszul_tate::koszul_complex;
use crate::modules::{
    canonical_module, classify_ideal, k_subsets, resolve, BettiTable, ChainComplex, PresentedModule,
};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Random attempts made by [`find_regular_sequence`] after the subsets of
/// the minimal generators.
pub const REGSEQ_BUDGET: usize = 64;

/// Koszul `H_1` vanishes on `xs`, certifying a regular sequence.
pub fn is_regular_sequence(xs: &[Polynomial]) -> Result<bool> {
    let Some(first) = xs.first() else {
        return Ok(true);
    };
    let ring = first.ring();
    if xs.iter().any(|p| p.is_zero()) {
        return Ok(false);
    }
    let k = koszul_complex(ring, xs)?;
    k.homology_at(1)?.is_zero()
}

/// A random form of degree `d` with small integer coefficients.
pub fn random_form(
    ring: &std::sync::Arc<crate::poly::PolyRing>,
    d: u32,
    rng: &mut ChaCha8Rng,
) -> Polynomial {
    let mut p = ring.zero();
    for m in ring.monomials_of_degree(d) {
        let c: i64 = rng.gen_range(-5..=5);
        if c != 0 {
            p = &p + &Polynomial::monomial(ring, m, Rational::from(c));
        }
    }
    p
}

fn height_of(xs: &[Polynomial]) -> Result<i64> {
    let ring = xs[0].ring();
    Ok(Ideal::new(ring, xs.to_vec())?.height())
}

/// `g` homogeneous elements of `I` forming a regular sequence.
///
/// Subsets of the minimal generators are tried first, then random
/// combinations of the generators in a common degree, raised every eight
/// attempts.
pub fn find_regular_sequence(i: &Ideal, g: usize, seed: u64) -> Result<Vec<Polynomial>> {
    if i.is_unit() || i.is_zero() {
        return Err(Error::precondition(
            "regular sequences are sought in a proper nonzero ideal",
        ));
    }
    if i.height() != g as i64 {
        return Err(Error::precondition(format!(
            "length {g} differs from height(I) = {}",
            i.height()
        )));
    }
    if g == 0 {
        return Ok(Vec::new());
    }
    let ring = i.ring();
    let mut gens = i.minimal_generators();
    gens.sort_by_key(|p| p.degree());
    if gens.len() >= g {
        for s in k_subsets(gens.len(), g) {
            let xs: Vec<Polynomial> = s.iter().map(|&k| gens[k].clone()).collect();
            if height_of(&xs)? == g as i64 && is_regular_sequence(&xs)? {
                return Ok(xs);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = gens.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    for attempt in 0..REGSEQ_BUDGET {
        let t = top + (attempt / 8) as u32;
        let xs: Vec<Polynomial> = (0..g)
            .map(|_| {
                let mut f = ring.zero();
                for p in &gens {
                    let e = t - p.degree().unwrap();
                    f = &f + &(&random_form(ring, e, &mut rng) * p);
                }
                f
            })
            .collect();
        if xs.iter().any(|p| p.is_zero()) {
            continue;
        }
        if height_of(&xs)? == g as i64 && is_regular_sequence(&xs)? {
            return Ok(xs);
        }
    }
    Err(Error::Undetermined(format!(
        "no regular sequence of length {g} found in {} subsets and {REGSEQ_BUDGET} random attempts",
        if gens.len() >= g {
            k_subsets(gens.len(), g).len()
        } else {
            0
        }
    )))
}

/// Checks made on a computed link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkVerification {
    pub grade_equal: bool,
    pub double_link_recovers: bool,
    #[serde(rename = "J_perfect")]
    pub j_perfect: bool,
    /// Minimalized mapping cone and direct resolution of `R/J` share a
    /// Betti table.
    pub cone_matches_direct: bool,
}

#[derive(Clone, Debug)]
pub struct LinkResult {
    pub source: Ideal,
    pub regseq: Vec<Polynomial>,
    pub link: Ideal,
    /// Minimalized mapping-cone resolution of `R/J`; `None` when degenerate.
    pub resolution: Option<ChainComplex>,
    pub verification: LinkVerification,
    /// `I = (x)`, so that `J` is the unit ideal.
    pub degenerate: bool,
    /// The double-link identity fails.
    pub improper: bool,
}

impl LinkResult {
    pub fn betti(&self) -> Option<BettiTable> {
        self.resolution.as_ref().map(|c| c.betti_table(true))
    }

    pub fn render(&self) -> String {
        let xs: Vec<String> = self.regseq.iter().map(|p| p.render()).collect();
        let v = &self.verification;
        let mut out = format!(
            "I = {}\nx = ({})\nJ = {}\n",
            self.source.render(),
            xs.join(", "),
            self.link.render()
        );
        if self.degenerate {
            out.push_str("degenerate: I equals (x)\n");
        }
        if let Some(b) = self.betti() {
            out.push_str("mapping-cone resolution of R/J:\n");
            out.push_str(&b.render());
        }
        out.push_str(&format!(
            "grade_equal: {}\ndouble_link_recovers: {}\nJ_perfect: {}\ncone_matches_direct: {}\n",
            v.grade_equal, v.double_link_recovers, v.j_perfect, v.cone_matches_direct
        ));
        if self.improper {
            out.push_str("improper link: ((x):J) differs from I\n");
        }
        out
    }
}

impl Serialize for LinkResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens = |i: &Ideal| i.gens().iter().map(|p| p.render()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("LinkResult", 7)?;
        st.serialize_field("I", &gens(&self.source))?;
        st.serialize_field(
            "x",
            &self.regseq.iter().map(|p| p.render()).collect::<Vec<_>>(),
        )?;
        st.serialize_field("J", &gens(&self.link))?;
        st.serialize_field("betti", &self.betti())?;
        st.serialize_field("verification", &self.verification)?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.serialize_field("improper", &self.improper)?;
        st.end()
    }
}

fn check_link_input(i: &Ideal, xs: &[Polynomial]) -> Result<usize> {
    if i.is_unit() || i.is_zero() {
        return Err(Error::precondition("linkage needs a proper nonzero ideal"));
    }
    let g = i.height() as usize;
    if xs.len() != g {
        return Err(Error::precondition(format!(
            "sequence has length {} but height(I) = {g}",
            xs.len()
        )));
    }
    for p in xs {
        crate::groebner::check_homogeneous(p)?;
        if !i.contains(p) {
            return Err(Error::precondition(format!("{} is not in I", p.render())));
        }
    }
    if !is_regular_sequence(xs)? {
        return Err(Error::precondition(
            "sequence is not regular (Koszul H_1 is nonzero)",
        ));
    }
    if !classify_ideal(i)?.perfect {
        return Err(Error::precondition("I is not perfect"));
    }
    Ok(g)
}

/// The link `J = ((x) : I)` with its verification record.
pub fn link(i: &Ideal, xs: &[Polynomial]) -> Result<LinkResult> {
    let g = check_link_input(i, xs)?;
    let ring = i.ring();
    let xi = Ideal::new(ring, xs.to_vec())?;
    if xi.same_ideal(i) {
        return Ok(LinkResult {
            source: i.clone(),
            regseq: xs.to_vec(),
            link: Ideal::unit(ring),
            resolution: None,
            verification: LinkVerification {
                grade_equal: false,
                double_link_recovers: ideal_quotient(&xi, &Ideal::unit(ring))?.same_ideal(i),
                j_perfect: false,
                cone_matches_direct: false,
            },
            degenerate: true,
            improper: false,
        });
    }
    let j = ideal_quotient(&xi, i)?.trimmed();
    let double_link_recovers = ideal_quotient(&xi, &j)?.same_ideal(i);
    let grade_equal = j.height() == g as i64;
    let base = Base::Poly(ring.clone());
    let direct = resolve(&PresentedModule::cyclic(&base, &j)?, ring.nvars() + 1)?;
    let j_perfect = direct.projective_dimension() == Some(g);
    let cone = cone_resolution(i, xs)?;
    if !cone_resolves(&cone, &j)? {
        return Err(Error::invariant("mapping cone does not resolve R/J"));
    }
    let cone_matches_direct = cone.betti_table(true) == direct.betti;
    Ok(LinkResult {
        source: i.clone(),
        regseq: xs.to_vec(),
        link: j,
        resolution: Some(cone),
        verification: LinkVerification {
            grade_equal,
            double_link_recovers,
            j_perfect,
            cone_matches_direct,
        },
        degenerate: false,
        improper: !double_link_recovers,
    })
}

/// `d_1` generates `J` and the complex is exact in positive degrees.
fn cone_resolves(c: &ChainComplex, j: &Ideal) -> Result<bool> {
    if c.degrees(0) != [0] {
        return Ok(false);
    }
    let gens: Vec<Polynomial> = match c.d(1) {
        Some(d) => (0..d.ncols()).map(|k| d.entry(0, k).clone()).collect(),
        None => Vec::new(),
    };
    if !Ideal::new(j.ring(), gens)?.same_ideal(j) {
        return Ok(false);
    }
    for k in 1..=c.length() {
        if !c.is_exact_at(k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Comparison maps `α_k : K_k -> F_k` from the Koszul complex on `xs` to
/// the resolution `F` of `R/I`, with `α_0` the identity.
fn comparison_maps(f: &ChainComplex, k: &ChainComplex) -> Result<Vec<GradedMatrix>> {
    let ring = f.base().ring();
    let base = Base::Poly(ring.clone());
    let mut alpha = vec![GradedMatrix::identity(ring, vec![0])];
    for n in 1..=k.length() {
        let dk = k.d(n).expect("Koszul differential");
        let target = alpha[n - 1].mul(dk)?;
        let a = match f.d(n) {
            Some(df) => lift_columns(df, &target, &base)?
                .ok_or_else(|| Error::invariant(format!("comparison map α_{n} does not lift")))?,
            None => {
                if !target.is_zero() {
                    return Err(Error::invariant(format!(
                        "comparison map α_{n} does not lift"
                    )));
                }
                GradedMatrix::zero(ring, Vec::new(), dk.col_degrees().to_vec())
            }
        };
        alpha.push(a);
    }
    Ok(alpha)
}

/// Free resolution of `R/J`, `J = ((x) : I)`: lift `K(x) -> F`, take the
/// mapping cone, dualize, and cancel the split end; then minimalize.
pub fn mapping_cone_resolution(i: &Ideal, xs: &[Polynomial]) -> Result<ChainComplex> {
    let g = check_link_input(i, xs)?;
    let xi = Ideal::new(i.ring(), xs.to_vec())?;
    if xi.same_ideal(i) {
        return Err(Error::precondition(
            "degenerate: I equals (x), the link is the unit ideal",
        ));
    }
    let c = cone_resolution(i, xs)?;
    if c.length() > g {
        return Err(Error::invariant("mapping cone resolution is longer than g"));
    }
    Ok(c)
}

fn cone_resolution(i: &Ideal, xs: &[Polynomial]) -> Result<ChainComplex> {
    let ring = i.ring();
    let base = Base::Poly(ring.clone());
    let g = xs.len();
    let f = resolve(&PresentedModule::cyclic(&base, i)?, g + 1)?;
    if f.projective_dimension() != Some(g) {
        return Err(Error::precondition(
            "resolution of R/I does not have length g",
        ));
    }
    let f = f.complex;
    let k = koszul_complex(ring, xs)?;
    let alpha = comparison_maps(&f, &k)?;
    // C_n = F_n ⊕ K_{n-1}, d = [[d_F, α], [0, -d_K]]
    let mut diffs = Vec::with_capacity(g + 1);
    for n in 1..=g + 1 {
        let fn_deg = f.degrees(n).to_vec();
        let fm_deg = f.degrees(n - 1).to_vec();
        let kn_deg = k.degrees(n - 1).to_vec();
        let km_deg: Vec<i32> = if n >= 2 {
            k.degrees(n - 2).to_vec()
        } else {
            Vec::new()
        };
        let a = f
            .d(n)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(ring, fm_deg.clone(), fn_deg.clone()));
        let b = alpha[n - 1].clone();
        let c = GradedMatrix::zero(ring, km_deg.clone(), fn_deg);
        let d = match k.d(n - 1) {
            Some(dk) if n >= 2 => dk.scale_entries(&Rational::from(-1)),
            _ => GradedMatrix::zero(ring, km_deg, kn_deg),
        };
        diffs.push(GradedMatrix::block(&a, &b, &c, &d)?);
    }
    let cone = ChainComplex::new(&base, f.degrees(0).to_vec(), diffs)?;
    cone.check_complex()?;
    let dual = cone.dual()?;
    let s: i32 = xs.iter().map(|p| p.degree().unwrap() as i32).sum();
    let shifted: Vec<GradedMatrix> = dual.differentials().iter().map(|d| d.shifted(s)).collect();
    let f0 = dual.degrees(0).iter().map(|d| d + s).collect();
    ChainComplex::new(&base, f0, shifted)?.minimalized()
}

/// The two sides of `ℓ(I/I² ⊗ K_S) - g·ℓ(S) = ℓ(J/J² ⊗ K_T) - g·ℓ(T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LengthEquation {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

fn transfer_side(i: &Ideal, g: i64) -> Result<i64> {
    let t = i.trimmed();
    let k = canonical_module(&t)?;
    let n = conormal_presentation(&t)?.module;
    let ls = i
        .quotient_hilbert()
        .length()
        .ok_or_else(|| Error::precondition("S is not Artinian"))?;
    let lt = n
        .tensor(&k)?
        .length()
        .ok_or_else(|| Error::invariant("tensor over an Artinian ring has infinite length"))?;
    Ok(lt - g * ls)
}

pub fn cm_transfer_lengths(i: &Ideal, xs: &[Polynomial]) -> Result<LengthEquation> {
    if i.krull_dimension() != 0 {
        return Err(Error::precondition(
            "the length equation needs an m-primary ideal",
        ));
    }
    let l = link(i, xs)?;
    if l.degenerate {
        return Err(Error::precondition(
            "degenerate: I equals (x), the link is the unit ideal",
        ));
    }
    let g = xs.len() as i64;
    let lhs = transfer_side(i, g)?;
    let rhs = transfer_side(&l.link, g)?;
    Ok(LengthEquation {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::test_corpus::twisted_cubic;

    #[test]
    fn self_link_of_maximal_square() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let m2 = Ideal::maximal(&r).power(2);
        let l = link(&m2, &[x.pow(2), y.pow(3)]).unwrap();
        assert!(l.link.same_ideal(&m2));
        assert!(l.verification.double_link_recovers && l.verification.j_perfect);
        assert!(l.verification.cone_matches_direct);
        assert_eq!(l.betti().unwrap().totals(), vec![1, 3, 2]);
        // via (x^2, y^2) the link is the maximal ideal
        let l = link(&m2, &[x.pow(2), y.pow(2)]).unwrap();
        assert!(l.link.same_ideal(&Ideal::maximal(&r)));
        assert!(l.verification.double_link_recovers);
        assert_eq!(l.betti().unwrap().totals(), vec![1, 2, 1]);
    }

    #[test]
    fn twisted_cubic_link() {
        let i = twisted_cubic();
        let xs = find_regular_sequence(&i, 2, 1).unwrap();
        assert!(xs.iter().all(|p| i.gens().contains(p)));
        let l = link(&i, &xs).unwrap();
        let v = &l.verification;
        assert!(v.grade_equal && v.double_link_recovers && v.j_perfect && v.cone_matches_direct);
        assert_eq!(l.resolution.as_ref().unwrap().length(), 2);
        eprintln!("twisted cubic link J = {}", l.link.render());
    }

    #[test]
    fn degenerate_and_rejected_links() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let xi = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert_eq!(find_regular_sequence(&xi, 1, 0).unwrap(), vec![x.clone()]);
        let l = link(&xi, std::slice::from_ref(&x)).unwrap();
        assert!(l.degenerate && l.link.is_unit());
        let m2 = Ideal::maximal(&r).power(2);
        assert!(link(&m2, &[x.pow(2)]).is_err());
        assert!(link(&m2, &[x.pow(2), &x * &y]).is_err());
        assert!(link(&m2, &[x.clone(), y.pow(2)]).is_err());
    }

    #[test]
    fn random_regular_sequence_when_generators_fail() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        // no two of x^2, xy are regular; subsets including y^3 are
        let i = Ideal::new(&r, vec![x.pow(2), &x * &y, y.pow(3)]).unwrap();
        let xs = find_regular_sequence(&i, 2, 3).unwrap();
        assert!(is_regular_sequence(&xs).unwrap());
        let i = Ideal::new(&r, vec![x.pow(2), &x * &y]).unwrap();
        assert!(find_regular_sequence(&i, 2, 0).is_err());
    }

    #[test]
    fn length_equation_on_non_self_linked_pair() {
        let r = PolyRing::with_vars(&["x", "y"]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.pow(2), &x * &y, y.pow(3)]).unwrap();
        let xs = [x.pow(2), y.pow(3)];
        let l = link(&i, &xs).unwrap();
        assert!(l
            .link
            .same_ideal(&Ideal::new(&r, vec![x.clone(), y.pow(2)]).unwrap()));
        let e = cm_transfer_lengths(&i, &xs).unwrap();
        assert!(e.equal, "{e:?}");
        let m2 = Ideal::maximal(&r).power(2);
        let e = cm_transfer_lengths(&m2, &[x.pow(2), y.pow(3)]).unwrap();
        assert!(e.equal);
        assert!(cm_transfer_lengths(&twisted_cubic(), &twisted_cubic().gens()[..1]).is_err());
    }
}
