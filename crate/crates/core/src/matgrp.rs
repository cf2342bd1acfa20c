//! 2x2 matrices over O, words in the generators z0, σ, μ, τ, η, and the
//! presentations of SL2(O), PSL2(O) and the upper-triangular subgroup.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::qfield::QuadElt;

/// A generator symbol. Text names are `z0 s m t e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Z0,
    Sigma,
    Mu,
    Tau,
    Eta,
}

impl Sym {
    pub const ALL: [Sym; 5] = [Sym::Z0, Sym::Sigma, Sym::Mu, Sym::Tau, Sym::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Sym::Z0 => "z0",
            Sym::Sigma => "s",
            Sym::Mu => "m",
            Sym::Tau => "t",
            Sym::Eta => "e",
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Sym::Z0 => Mat2::z0(),
            Sym::Sigma => Mat2::sigma(),
            Sym::Mu => Mat2::mu(),
            Sym::Tau => Mat2::tau(),
            Sym::Eta => Mat2::eta(),
        }
    }
}

/// A word in exponent-run normal form: nonzero exponents, no two adjacent
/// runs of the same symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(Sym, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn new(runs: impl IntoIterator<Item = (Sym, i64)>) -> Self {
        let mut w = Word::empty();
        for (s, e) in runs {
            w.push(s, e);
        }
        w
    }

    pub fn gen(s: Sym) -> Self {
        Word::new([(s, 1)])
    }

    pub fn runs(&self) -> &[(Sym, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, s: Sym, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == s {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((s, e));
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(s, e) in &o.0 {
            w.push(s, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.0.iter().rev().map(|&(s, e)| (s, -e)))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.mul(&base))
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `c^-1 w c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    /// Exact matrix value; the empty word is the identity.
    pub fn eval(&self) -> Mat2 {
        eval_word(self)
    }
}

/// Concatenate words.
#[macro_export]
macro_rules! word {
    ($($w:expr),* $(,)?) => {{
        let mut acc = $crate::matgrp::Word::empty();
        $( acc = acc.mul(&$w); )*
        acc
    }};
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.name())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseWordError {
    #[error("unknown generator {0:?}")]
    UnknownSymbol(String),
    #[error("bad exponent in {0:?}")]
    BadExponent(String),
    #[error("zero exponent in {0:?}")]
    ZeroExponent(String),
}

impl FromStr for Word {
    type Err = ParseWordError;

    /// Tokens are whitespace separated, each `sym` or `sym^n`; `1` alone is
    /// the empty word. Input that is not already in normal form is
    /// normalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| ParseWordError::BadExponent(tok.into()))?;
                    if e == 0 {
                        return Err(ParseWordError::ZeroExponent(tok.into()));
                    }
                    (n, e)
                }
                None => (tok, 1),
            };
            let sym = Sym::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| ParseWordError::UnknownSymbol(name.into()))?;
            w.push(sym, exp);
        }
        Ok(w)
    }
}

/// A 2x2 matrix over k, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e: [QuadElt; 4],
}

fn q(a: i64, b: i64) -> QuadElt {
    QuadElt::from_ints(a, b)
}

impl Mat2 {
    pub fn new(a: QuadElt, b: QuadElt, c: QuadElt, d: QuadElt) -> Self {
        Mat2 { e: [a, b, c, d] }
    }

    pub fn from_ints(m: [[(i64, i64); 2]; 2]) -> Self {
        Mat2::new(q(m[0][0].0, m[0][0].1), q(m[0][1].0, m[0][1].1), q(m[1][0].0, m[1][0].1), q(m[1][1].0, m[1][1].1))
    }

    pub fn identity() -> Self {
        Mat2::new(q(1, 0), q(0, 0), q(0, 0), q(1, 0))
    }

    pub fn z0() -> Self {
        Mat2::new(q(-1, 0), q(0, 0), q(0, 0), q(-1, 0))
    }

    pub fn sigma() -> Self {
        Mat2::new(q(0, 0), q(1, 0), q(-1, 0), q(0, 0))
    }

    pub fn tau() -> Self {
        Mat2::new(q(1, 0), q(1, 0), q(0, 0), q(1, 0))
    }

    pub fn mu() -> Self {
        Mat2::new(q(0, 1), q(0, 0), q(0, 0), q(-1, 1))
    }

    pub fn eta() -> Self {
        Mat2::new(q(1, 0), q(0, 1), q(0, 0), q(1, 0))
    }

    /// `[[1, u], [0, 1]]`.
    pub fn translation(u: QuadElt) -> Self {
        Mat2::new(q(1, 0), u, q(0, 0), q(1, 0))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.e;
        let [w, x, y, z] = &o.e;
        Mat2::new(a * w + b * y, a * x + b * z, c * w + d * y, c * x + d * z)
    }

    pub fn det(&self) -> QuadElt {
        &self.e[0] * &self.e[3] - &self.e[1] * &self.e[2]
    }

    pub fn trace(&self) -> QuadElt {
        &self.e[0] + &self.e[3]
    }

    /// Adjugate; the inverse when det = 1.
    pub fn adjugate(&self) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2::new(d.clone(), -b, -c, a.clone())
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { e: self.e.clone().map(|x| -x) }
    }

    pub fn pow(&self, n: i64) -> Mat2 {
        let base = if n < 0 { self.adjugate() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc.mul(&base))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Equality in PSL2.
    pub fn eq_projective(&self, o: &Mat2) -> bool {
        self == o || *self == o.neg()
    }

    pub fn is_pm_identity(&self) -> bool {
        self.eq_projective(&Mat2::identity())
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().all(QuadElt::is_integral)
    }

    /// Upper triangular with unit diagonal.
    pub fn is_unipotent_upper(&self) -> bool {
        self.e[2].is_zero() && self.e[0].is_one() && self.e[3].is_one()
    }
}

/// True iff every entry lies in O_o.
pub fn entries_in_oo(m: &Mat2) -> bool {
    m.e.iter().all(QuadElt::in_oo)
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [a, b, c, d] = &self.e;
        [[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]].serialize(s)
    }
}

pub fn eval_word(w: &Word) -> Mat2 {
    w.0.iter().fold(Mat2::identity(), |acc, &(s, e)| acc.mul(&s.matrix().pow(e)))
}

/// Which built-in relation list to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PresentationId {
    /// Relations of PSL2(O); each must be ±I.
    Psl,
    /// Relations of SL2(O); each must be exactly I.
    Sl,
    /// Relations of the image of the upper-triangular subgroup; ±I.
    Delta,
}

fn g(s: Sym) -> Word {
    Word::gen(s)
}

/// The relation words of a presentation, with their names.
pub fn relations(id: PresentationId) -> Vec<(&'static str, Word)> {
    let (z, s, m, t, e) = (g(Sym::Z0), g(Sym::Sigma), g(Sym::Mu), g(Sym::Tau), g(Sym::Eta));
    let comm = Word::commutator;
    let r4 = comm(&t, &e);
    let r5 = word![m, t, m.inverse(), word![t, e].inverse()];
    let r6 = word![m, e, m.inverse(), word![t, e.pow(2)].inverse()];
    let r7 = word![s, e, s, word![t, e.inverse(), s, e.inverse(), m].inverse()];
    match id {
        PresentationId::Sl => vec![
            ("C0", z.pow(2)),
            ("C1", comm(&z, &s)),
            ("C2", comm(&z, &m)),
            ("C3", comm(&z, &t)),
            ("C4", comm(&z, &e)),
            ("R1", word![s.pow(2), z]),
            ("R2", word![s, t].pow(3)),
            ("R3", word![word![s, m].pow(2), z]),
            ("R4", r4),
            ("R5", r5),
            ("R6", r6),
            ("R7", word![r7, z]),
        ],
        PresentationId::Psl => {
            vec![("R1", s.pow(2)), ("R2", word![s, t].pow(3)), ("R3", word![s, m].pow(2)), ("R4", r4), ("R5", r5), ("R6", r6), ("R7", r7)]
        }
        PresentationId::Delta => vec![("S0", r4), ("S1", r5), ("S2", r6)],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub word: Word,
    pub value: Mat2,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub id: PresentationId,
    pub relations: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_ok(&self) -> bool {
        self.relations.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.relations.iter().filter(|r| !r.ok).map(|r| r.name).collect()
    }
}

pub fn check_presentation(id: PresentationId) -> PresentationReport {
    let relations = relations(id)
        .into_iter()
        .map(|(name, word)| {
            let value = eval_word(&word);
            let ok = match id {
                PresentationId::Sl => value.is_identity(),
                PresentationId::Psl | PresentationId::Delta => value.is_pm_identity(),
            };
            RelationCheck { name, word, value, ok }
        })
        .collect();
    PresentationReport { id, relations }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyGenerator {
    pub name: &'static str,
    pub word: Word,
    /// The matrix as printed for this generator.
    pub stated: Mat2,
    pub evaluated: Mat2,
    pub word_matches: bool,
    pub in_oo: bool,
}

/// Words for γ_α, γ_α', γ_β, γ_β'.
pub fn monodromy_words() -> [(&'static str, Word); 4] {
    let (s, m, t, e) = (g(Sym::Sigma), g(Sym::Mu), g(Sym::Tau), g(Sym::Eta));
    [
        ("gamma_alpha", word![t.inverse(), e.pow(2)]),
        ("gamma_alpha'", word![s, t.inverse(), e.pow(2), s.inverse()]),
        ("gamma_beta", word![t.pow(2), e.pow(-2), s, m.pow(3), e.pow(-2), t.pow(4)]),
        ("gamma_beta'", word![e.pow(-2), t.pow(-2), s, m.pow(-3), e.pow(-2)]),
    ]
}

/// The matrices printed next to the words, built from their displayed
/// entries (`-1 + 2X`, `1 + X^3`, ...).
fn stated_matrices() -> [Mat2; 4] {
    let x = QuadElt::x();
    let one = QuadElt::one();
    let zero = QuadElt::zero();
    let two_x = &x + &x;
    let x3 = x.pow(3).unwrap();
    let xm3 = x.pow(-3).unwrap();
    [
        Mat2::new(one.clone(), &two_x - &one, zero.clone(), one.clone()),
        Mat2::new(one.clone(), zero.clone(), &one - &two_x, one.clone()),
        Mat2::new(&one + &x3, x3.clone(), -&x3, &one - &x3),
        Mat2::new(&one + &xm3, xm3.clone(), -&xm3, &one - &xm3),
    ]
}

pub fn monodromy_generators() -> Vec<MonodromyGenerator> {
    monodromy_words()
        .into_iter()
        .zip(stated_matrices())
        .map(|((name, word), stated)| {
            let evaluated = eval_word(&word);
            MonodromyGenerator { name, word_matches: evaluated == stated, in_oo: entries_in_oo(&evaluated), word, stated, evaluated }
        })
        .collect()
}

/// γ_α γ_β γ_α' γ_β', the loop around the fifth puncture.
pub fn monodromy_product_word() -> Word {
    let w = monodromy_words();
    word![w[0].1, w[2].1, w[1].1, w[3].1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_identity() {
        assert!(eval_word(&Word::empty()).is_identity());
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn normal_form_merges_runs() {
        let w: Word = "t t^-1 e e".parse().unwrap();
        assert_eq!(w.to_string(), "e^2");
        let w: Word = "s s^-1".parse().unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["t^-1 e^2", "z0 s m^3 t e^-2", "1", "s t^-1 e^2 s^-1"] {
            assert_eq!(s.parse::<Word>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn word_parse_errors() {
        assert!("x".parse::<Word>().is_err());
        assert!("t^a".parse::<Word>().is_err());
        assert!("t^0".parse::<Word>().is_err());
    }

    #[test]
    fn gamma_alpha_matrix() {
        let w: Word = "t^-1 e^2".parse().unwrap();
        assert_eq!(eval_word(&w), Mat2::from_ints([[(1, 0), (-1, 2)], [(0, 0), (1, 0)]]));
    }

    #[test]
    fn sl_relations_are_identity() {
        let r = check_presentation(PresentationId::Sl);
        assert_eq!(r.relations.len(), 12);
        assert!(r.all_ok(), "{:?}", r.failures());
    }

    #[test]
    fn psl_and_delta_relations() {
        assert!(check_presentation(PresentationId::Psl).all_ok());
        assert_eq!(check_presentation(PresentationId::Psl).relations.len(), 7);
        assert!(check_presentation(PresentationId::Delta).all_ok());
    }

    #[test]
    fn psl_relations_lift_with_sign() {
        // R1 and R3 need the z0 correction in SL2
        let vals: Vec<bool> = relations(PresentationId::Psl).iter().map(|(_, w)| eval_word(w).is_identity()).collect();
        assert_eq!(vals, vec![false, true, false, true, true, true, false]);
    }

    #[test]
    fn monodromy_words_match() {
        for g in monodromy_generators() {
            assert!(g.word_matches, "{}", g.name);
            assert!(g.in_oo, "{}", g.name);
            assert!(g.evaluated.det().is_one());
        }
    }

    #[test]
    fn oo_membership() {
        assert!(!entries_in_oo(&Mat2::mu()));
        assert!(entries_in_oo(&Mat2::identity()));
    }

    #[test]
    fn inverse_word_evaluates_to_adjugate() {
        let w: Word = "s m^2 t e^-1".parse().unwrap();
        assert!(eval_word(&w).mul(&eval_word(&w.inverse())).is_identity());
    }
}
