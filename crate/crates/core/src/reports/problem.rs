//! The problem-file grammar:
//!
//! ```text
//! ring Q[x,y,z];
//! ideal (x*z - y^2, x*w - y*z);
//! analyze classify, cotangent;
//! bound D=6; series N=40; cap c=12; seed 7;
//! regseq (x*z - y^2, y*w - z^2);
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{PolyRing, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Classify,
    Resolve,
    Koszul,
    Tate,
    Cotangent,
    Deviations,
    Series,
    Link,
}

impl Analysis {
    pub const ALL: [Analysis; 8] = [
        Analysis::Classify,
        Analysis::Resolve,
        Analysis::Koszul,
        Analysis::Tate,
        Analysis::Cotangent,
        Analysis::Deviations,
        Analysis::Series,
        Analysis::Link,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Classify => "classify",
            Analysis::Resolve => "resolve",
            Analysis::Koszul => "koszul",
            Analysis::Tate => "tate",
            Analysis::Cotangent => "cotangent",
            Analysis::Deviations => "deviations",
            Analysis::Series => "series",
            Analysis::Link => "link",
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown analysis `{s}`"))
    }
}

/// Analyses run when the file has no `analyze` statement.
pub const DEFAULT_ANALYSES: [Analysis; 3] =
    [Analysis::Classify, Analysis::Resolve, Analysis::Cotangent];

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
    pub analyses: BTreeSet<Analysis>,
    /// Homological bound `D`.
    pub bound: Option<usize>,
    /// Internal degree cap for resolvents.
    pub degree_cap: Option<i32>,
    /// Series order `N`.
    pub series_order: Option<usize>,
    pub seed: u64,
    /// Regular sequence for the link analysis.
    pub regseq: Option<Vec<Polynomial>>,
}

impl PartialEq for ProblemSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.ideal.gens() == other.ideal.gens()
            && self.analyses == other.analyses
            && self.bound == other.bound
            && self.degree_cap == other.degree_cap
            && self.series_order == other.series_order
            && self.seed == other.seed
            && self.regseq == other.regseq
    }
}

fn render_list(ps: &[Polynomial]) -> String {
    let v: Vec<String> = ps.iter().map(|p| p.render()).collect();
    format!("({})", v.join(", "))
}

impl ProblemSpec {
    pub fn new(ideal: Ideal) -> Self {
        ProblemSpec {
            ring: ideal.ring().clone(),
            ideal,
            analyses: DEFAULT_ANALYSES.into_iter().collect(),
            bound: None,
            degree_cap: None,
            series_order: None,
            seed: 0,
            regseq: None,
        }
    }

    /// The problem file for this spec; parsing it gives the spec back.
    pub fn emit(&self) -> String {
        let mut out = format!("ring Q[{}];\n", self.ring.names().join(","));
        out.push_str(&format!("ideal {};\n", render_list(self.ideal.gens())));
        let names: Vec<&str> = self.analyses.iter().map(|a| a.name()).collect();
        out.push_str(&format!("analyze {};\n", names.join(", ")));
        if let Some(d) = self.bound {
            out.push_str(&format!("bound D={d};\n"));
        }
        if let Some(n) = self.series_order {
            out.push_str(&format!("series N={n};\n"));
        }
        if let Some(c) = self.degree_cap {
            out.push_str(&format!("cap c={c};\n"));
        }
        out.push_str(&format!("seed {};\n", self.seed));
        if let Some(xs) = &self.regseq {
            out.push_str(&format!("regseq {};\n", render_list(xs)));
        }
        out
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(at);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let r = self.rest();
            let t = r.trim_start();
            self.pos += r.len() - t.len();
            if t.starts_with('#') {
                self.pos += t.find('\n').unwrap_or(t.len());
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .find(|&(k, c)| !(c.is_ascii_alphabetic() || c == '_' || (k > 0 && c.is_ascii_digit())))
            .map_or(r.len(), |(k, _)| k);
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&r[..len])
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let at = self.pos;
        let w = self.ident()?;
        if w != word {
            return Err(self.error_at(at, format!("expected `{word}`, found `{w}`")));
        }
        Ok(())
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        self.pos += len;
        Ok(&r[..len])
    }

    fn integer<T: FromStr>(&mut self) -> Result<T> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse()
            .map_err(|_| self.error_at(at, format!("number `{d}` is out of range")))
    }
}

/// One parsed term with its source span.
struct SourceTerm {
    poly: Polynomial,
    text: String,
}

struct PolyParser<'r> {
    ring: &'r Arc<PolyRing>,
    /// Variable names, longest first, for greedy matching.
    names: Vec<(usize, &'r str)>,
}

impl<'r> PolyParser<'r> {
    fn new(ring: &'r Arc<PolyRing>) -> Self {
        let mut names: Vec<(usize, &str)> = ring
            .names()
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.as_str()))
            .collect();
        names.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));
        PolyParser { ring, names }
    }

    /// Splits a run of name characters into variables by longest match.
    fn split_run(&self, cur: &Cursor, run: &str, at: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut k = 0;
        while k < run.len() {
            let rest = &run[k..];
            match self.names.iter().find(|(_, n)| rest.starts_with(n)) {
                Some(&(i, n)) => {
                    out.push(i);
                    k += n.len();
                }
                None => {
                    return Err(cur.error_at(at + k, format!("unknown variable in `{run}`")));
                }
            }
        }
        Ok(out)
    }

    fn term(&self, cur: &mut Cursor) -> Result<SourceTerm> {
        cur.skip_ws();
        let start = cur.pos;
        let mut p = self.ring.one();
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let at = cur.pos;
                    let n = cur.digits()?;
                    let mut text = n.to_string();
                    if cur.eat('/') {
                        text.push('/');
                        text.push_str(cur.digits()?);
                    }
                    let q: Rational = text.parse().map_err(|e| cur.error_at(at, format!("{e}")))?;
                    p = p.scale(&q);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let at = cur.pos;
                    let run = cur.ident()?;
                    let vars = self.split_run(cur, run, at)?;
                    let exp = if cur.eat('^') {
                        cur.integer::<u32>()?
                    } else {
                        1
                    };
                    let (last, init) = vars.split_last().expect("nonempty run");
                    for &v in init {
                        p = &p * &self.ring.var(v);
                    }
                    p = &p * &self.ring.var(*last).pow(exp);
                }
                Some(c) => {
                    return Err(cur.error(format!("unexpected `{c}` in a polynomial")));
                }
                None => return Err(cur.error("unexpected end of input in a polynomial")),
            }
            if cur.eat('*') {
                continue;
            }
            match cur.peek() {
                Some(c) if c.is_ascii_alphanumeric() || c == '_' => continue,
                _ => break,
            }
        }
        Ok(SourceTerm {
            poly: p,
            text: cur.src[start..cur.pos].trim().to_string(),
        })
    }

    /// A polynomial; homogeneity is checked on the terms as written.
    fn polynomial(&self, cur: &mut Cursor) -> Result<Polynomial> {
        let start = cur.pos;
        let mut terms = Vec::new();
        let mut neg = cur.eat('-');
        if !neg {
            cur.eat('+');
        }
        loop {
            let mut t = self.term(cur)?;
            if neg {
                t.poly = -&t.poly;
            }
            terms.push(t);
            if cur.eat('+') {
                neg = false;
            } else if cur.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        let text = cur.src[start..cur.pos].trim().to_string();
        let nonzero: Vec<&SourceTerm> = terms.iter().filter(|t| !t.poly.is_zero()).collect();
        if let Some(first) = nonzero.first() {
            let expected = first.poly.degree().unwrap();
            for t in &nonzero {
                let found = t.poly.degree().unwrap();
                if found != expected {
                    return Err(Error::Inhomogeneous {
                        generator: text,
                        term: t.text.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        let mut sum = self.ring.zero();
        for t in terms {
            sum = &sum + &t.poly;
        }
        Ok(sum)
    }

    fn list(&self, cur: &mut Cursor) -> Result<Vec<Polynomial>> {
        cur.expect('(')?;
        let mut out = Vec::new();
        if cur.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.polynomial(cur)?);
            if cur.eat(',') {
                continue;
            }
            cur.expect(')')?;
            return Ok(out);
        }
    }
}

/// Parses one homogeneous polynomial over `ring`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let p = PolyParser::new(ring).polynomial(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after the polynomial"));
    }
    Ok(p)
}

/// Parses a comma-separated list of homogeneous polynomials.
pub fn parse_polynomial_list(ring: &Arc<PolyRing>, text: &str) -> Result<Vec<Polynomial>> {
    let mut cur = Cursor::new(text);
    let pp = PolyParser::new(ring);
    let mut out = vec![pp.polynomial(&mut cur)?];
    while cur.eat(',') {
        out.push(pp.polynomial(&mut cur)?);
    }
    if !cur.at_end() {
        return Err(cur.error("expected `,` or end of input"));
    }
    Ok(out)
}

fn named_value<T: FromStr>(cur: &mut Cursor, name: &str) -> Result<T> {
    cur.keyword(name)?;
    cur.expect('=')?;
    cur.integer()
}

fn positive(cur: &Cursor, at: usize, v: usize, what: &str) -> Result<usize> {
    if v == 0 {
        return Err(cur.error_at(at, format!("{what} must be positive")));
    }
    Ok(v)
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut cur = Cursor::new(text);
    cur.keyword("ring")?;
    cur.skip_ws();
    let at = cur.pos;
    let field = cur.ident()?;
    if field != "Q" {
        return Err(cur.error_at(
            at,
            format!("only the rationals Q are supported, found `{field}`"),
        ));
    }
    cur.expect('[')?;
    let mut names = vec![cur.ident()?.to_string()];
    while cur.eat(',') {
        names.push(cur.ident()?.to_string());
    }
    cur.expect(']')?;
    cur.expect(';')?;
    let ring = PolyRing::with_vars(&names).map_err(|e| cur.error_at(at, e.to_string()))?;
    let pp = PolyParser::new(&ring);
    cur.keyword("ideal")?;
    let gens = pp.list(&mut cur)?;
    cur.expect(';')?;
    let mut spec = ProblemSpec::new(Ideal::new(&ring, gens)?);
    let mut seen = BTreeSet::new();
    while !cur.at_end() {
        let at = cur.pos;
        let stmt = cur.ident()?;
        if !seen.insert(stmt) {
            return Err(cur.error_at(at, format!("`{stmt}` given twice")));
        }
        match stmt {
            "analyze" => {
                spec.analyses.clear();
                if cur.peek() != Some(';') {
                    loop {
                        let at = cur.pos;
                        let a = cur.ident()?;
                        let a: Analysis = a.parse().map_err(|e: String| cur.error_at(at, e))?;
                        spec.analyses.insert(a);
                        if !cur.eat(',') {
                            break;
                        }
                    }
                }
            }
            "bound" => {
                cur.skip_ws();
                let at = cur.pos;
                let d = named_value(&mut cur, "D")?;
                spec.bound = Some(positive(&cur, at, d, "bound D")?);
            }
            "series" => {
                cur.skip_ws();
                let at = cur.pos;
                let n = named_value(&mut cur, "N")?;
                spec.series_order = Some(positive(&cur, at, n, "series order N")?);
            }
            "cap" => {
                cur.skip_ws();
                let at = cur.pos;
                let c: usize = named_value(&mut cur, "c")?;
                let c = positive(&cur, at, c, "degree cap c")?;
                spec.degree_cap =
                    Some(i32::try_from(c).map_err(|_| cur.error_at(at, "degree cap too large"))?);
            }
            "seed" => spec.seed = cur.integer()?,
            "regseq" => spec.regseq = Some(pp.list(&mut cur)?),
            other => return Err(cur.error_at(at, format!("unknown statement `{other}`"))),
        }
        cur.expect(';')?;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_gets_defaults() {
        let s = parse_problem("ring Q[x]; ideal (x^2);").unwrap();
        assert_eq!(s.ring.nvars(), 1);
        assert_eq!(s.ideal.gens().len(), 1);
        assert_eq!(s.analyses, DEFAULT_ANALYSES.into_iter().collect());
        assert_eq!(s.seed, 0);
    }

    #[test]
    fn full_file_and_round_trip() {
        let text = "ring Q[x,y,z,w];\n# the twisted cubic\nideal (xz - y^2, x*w - y z, yw-z^2);\n\
                    analyze classify, cotangent; bound D=6; series N=40; seed 7; cap c=9;\n";
        let s = parse_problem(text).unwrap();
        assert_eq!(s.ring.nvars(), 4);
        assert_eq!(s.ideal.gens().len(), 3);
        assert!(s.ideal.gens().iter().all(|g| g.degree() == Some(2)));
        assert_eq!(s.bound, Some(6));
        assert_eq!(s.series_order, Some(40));
        assert_eq!(s.degree_cap, Some(9));
        assert_eq!(s.seed, 7);
        assert_eq!(parse_problem(&s.emit()).unwrap(), s);
    }

    #[test]
    fn greedy_longest_match() {
        let r = PolyRing::with_vars(&["x", "xy", "y"]).unwrap();
        let p = parse_polynomial(&r, "xyx").unwrap();
        assert_eq!(p, &r.var(1) * &r.var(0));
        let p = parse_polynomial(&r, "3/2 x y^2 - 2xxyy").unwrap();
        let want = &(&r.var(0) * &r.var(2).pow(2)).scale(&Rational::new(3, 2))
            - &(&(&r.var(0) * &r.var(1)) * &r.var(2)).scale(&Rational::from(2));
        assert_eq!(p, want);
    }

    #[test]
    fn inhomogeneous_term_is_named() {
        let e = parse_problem("ring Q[x,y]; ideal (x^2 + y);").unwrap_err();
        match e {
            Error::Inhomogeneous {
                term,
                expected,
                found,
                ..
            } => {
                assert_eq!(term, "y");
                assert_eq!((expected, found), (2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_problem("ring Q[x,y];\nideal (x^2, z);").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 2,
                    column: 13,
                    ..
                }
            ),
            "{e:?}"
        );
        let e = parse_problem("ring Q[x]; ideal (x); bound D=0;").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_problem("ring Q[x]; ideal (x) ").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_problem("ring Z[x]; ideal (x);").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    column: 6,
                    ..
                }
            ),
            "{e:?}"
        );
        let e = parse_problem("ring Q[x]; ideal (x); analyze frobnicate;").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }
}
