//! Cusps of the monodromy quotient: the coset table of the upper-triangular
//! subgroup mod 4p5, the Γ-orbits on it, and the cusp subgroups Λ_j.

mod chern;
pub mod hull;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::finquot::{gamma_generators, Engine, FinGroup, FinMat, FinquotError, MonodromyQuotient};
use crate::matgrp::{eval_word, Mat2, Sym, Word};
use crate::qfield::{QuadElt, ResidueRing};
use crate::word;

pub use chern::*;
pub use hull::{resolve_cusp, CuspLattice, HullCycle, HullError};

#[derive(Debug, thiserror::Error)]
pub enum CuspError {
    #[error(transparent)]
    Finquot(#[from] FinquotError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error("unknown cusp {0:?}")]
    UnknownCusp(String),
    #[error("{0}")]
    Invalid(String),
}

/// Right cosets of the image of Δ in PSL2(O/4p5), with the right action of
/// the four generators of Γ.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub delta: FinGroup,
    /// One representative per coset, in discovery order.
    pub reps: Vec<FinMat>,
    keys: BTreeMap<u32, usize>,
    /// `action[j][i]` is the coset of `reps[j] * gamma_i`.
    pub action: Vec<[usize; 4]>,
}

impl CosetTable {
    /// Canonical key of the coset Δ̄x: the least PSL code in Δ̄x.
    pub fn key(&self, x: &FinMat) -> u32 {
        coset_key(&self.delta, x)
    }

    pub fn coset_of(&self, x: &FinMat) -> Option<usize> {
        self.keys.get(&self.key(x)).copied()
    }

    pub fn coset_of_matrix(&self, m: &Mat2) -> Result<Option<usize>, FinquotError> {
        Ok(self.coset_of(&FinMat::reduce(m, ResidueRing::Mod4P5)?))
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn coset_key(delta: &FinGroup, x: &FinMat) -> u32 {
    delta.iter().map(|d| d.mul(x).canonical_psl().code()).min().expect("nonempty group")
}

/// Enumerate the cosets by breadth-first search from the identity coset
/// under right multiplication by σ, μ, τ, η.
pub fn build_coset_table(engine: &Engine) -> Result<CosetTable, CuspError> {
    let r = ResidueRing::Mod4P5;
    let dgens: Vec<FinMat> = [Sym::Mu, Sym::Tau, Sym::Eta].iter().map(|s| FinMat::reduce(&s.matrix(), r)).collect::<Result<_, _>>()?;
    let delta = engine.closure(r, &dgens, true)?;
    let steps: Vec<FinMat> =
        [Sym::Sigma, Sym::Mu, Sym::Tau, Sym::Eta].iter().map(|s| FinMat::reduce(&s.matrix(), r)).collect::<Result<_, _>>()?;
    let id = FinMat::identity(r);
    let mut reps = vec![id];
    let mut keys = BTreeMap::from([(coset_key(&delta, &id), 0usize)]);
    let mut i = 0;
    while i < reps.len() {
        let x = reps[i];
        for s in &steps {
            let y = x.mul(s);
            let k = coset_key(&delta, &y);
            if let Entry::Vacant(e) = keys.entry(k) {
                e.insert(reps.len());
                reps.push(y);
            }
        }
        i += 1;
    }
    let gammas = gamma_generators(r)?;
    let mut action = Vec::with_capacity(reps.len());
    for x in &reps {
        let mut row = [0usize; 4];
        for (j, g) in gammas.iter().enumerate() {
            row[j] = *keys
                .get(&coset_key(&delta, &x.mul(g)))
                .ok_or_else(|| CuspError::Invalid("coset action left the enumerated cosets".into()))?;
        }
        action.push(row);
    }
    Ok(CosetTable { delta, reps, keys, action })
}

/// A Γ-orbit of cosets.
#[derive(Clone, Debug, Serialize)]
pub struct CuspOrbit {
    pub representative: usize,
    pub size: usize,
    /// |image of Γ| / size, computed independently by enumerating the
    /// stabilizer of the representative.
    pub stabilizer_order: usize,
}

/// Orbits of the coset action, ordered by smallest member.
pub fn cusp_orbits(t: &CosetTable) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut seen = vec![false; n];
    let mut orbits = vec![];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for &nb in &t.action[orbit[i]] {
                if !seen[nb] {
                    seen[nb] = true;
                    orbit.push(nb);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Orbit data with the orbit-stabilizer cross-check.
pub fn orbit_summary(t: &CosetTable, q: &MonodromyQuotient) -> Vec<CuspOrbit> {
    cusp_orbits(t)
        .into_iter()
        .map(|o| {
            let rep = t.reps[o[0]];
            let key = t.key(&rep);
            let stab = q.h.iter().filter(|h| t.key(&rep.mul(h)) == key).count();
            CuspOrbit { representative: o[0], size: o.len(), stabilizer_order: stab }
        })
        .collect()
}

/// A subgroup ⟨μ^a y, τ^b1 η^b2, τ^c1 η^c2⟩ of Δ.
#[derive(Clone, Debug, Serialize)]
pub struct CuspSubgroup {
    pub name: &'static str,
    pub gen_words: [Word; 3],
    pub a: i64,
    pub y: Word,
    pub b: (i64, i64),
    pub c: (i64, i64),
    /// Translation lattice basis, in the order used for the action matrix.
    pub t1: QuadElt,
    pub t2: QuadElt,
    pub expected_index: u64,
}

fn te(b1: i64, b2: i64) -> Word {
    Word::new([(Sym::Tau, b1), (Sym::Eta, b2)])
}

fn m(a: i64) -> Word {
    Word::new([(Sym::Mu, a)])
}

impl CuspSubgroup {
    pub fn all() -> Vec<CuspSubgroup> {
        let q = QuadElt::from_ints;
        let mk = |name, a, y: Word, b: (i64, i64), c: (i64, i64), order_tc: bool, idx| {
            let tb = q(b.0, b.1);
            let tc = q(c.0, c.1);
            let (t1, t2) = if order_tc { (tc, tb) } else { (tb, tc) };
            CuspSubgroup { name, gen_words: [word![m(a), y], te(b.0, b.1), te(c.0, c.1)], a, y, b, c, t1, t2, expected_index: idx }
        };
        vec![
            mk("lambda8", -2, te(0, 1), (0, 2), (2, 0), true, 8),
            mk("lambda24", 6, Word::empty(), (2, 0), (1, 2), false, 24),
            mk("lambda40", 2, te(-2, -1), (2, 6), (0, 10), false, 40),
            mk("lambda120", 6, Word::empty(), (1, 18), (0, 20), false, 120),
        ]
    }

    pub fn by_name(name: &str) -> Result<CuspSubgroup, CuspError> {
        CuspSubgroup::all().into_iter().find(|c| c.name == name).ok_or_else(|| CuspError::UnknownCusp(name.into()))
    }

    /// |a (b1 c2 - b2 c1)|.
    pub fn index_formula(&self) -> u64 {
        (self.a * (self.b.0 * self.c.1 - self.b.1 * self.c.0)).unsigned_abs()
    }

    /// The generator words written in the (μ, τ, η) normal form agree with
    /// the (a, y, b, c) data.
    pub fn words_consistent(&self) -> bool {
        self.gen_words[0] == word![m(self.a), self.y]
            && self.gen_words[1] == te(self.b.0, self.b.1)
            && self.gen_words[2] == te(self.c.0, self.c.1)
    }

    /// The unit by which μ^a y scales translations, read off from the
    /// exact conjugation of both basis translations, with its action
    /// matrix on (t1, t2) (columns are images).
    pub fn multiplier(&self) -> Result<(QuadElt, [[i64; 2]; 2]), CuspError> {
        let g = eval_word(&self.gen_words[0]);
        let gi = g.adjugate();
        let mut unit = None;
        for t in [&self.t1, &self.t2] {
            let c = g.mul(&Mat2::translation(t.clone())).mul(&gi);
            if !c.is_unipotent_upper() {
                return Err(CuspError::Invalid(format!("{}: conjugate of a translation is not a translation", self.name)));
            }
            let u = c.e[1].div(t).map_err(|e| CuspError::Invalid(e.to_string()))?;
            if unit.as_ref().is_some_and(|v| *v != u) {
                return Err(CuspError::Invalid(format!("{}: translations scaled by different factors", self.name)));
            }
            unit = Some(u);
        }
        let unit = unit.unwrap();
        let lat = CuspLattice::new(self.t1.clone(), self.t2.clone(), unit.clone())?;
        Ok((unit, lat.action_matrix()))
    }

    pub fn lattice(&self) -> Result<CuspLattice, CuspError> {
        let (unit, _) = self.multiplier()?;
        Ok(CuspLattice::new(self.t1.clone(), self.t2.clone(), unit)?)
    }
}

/// The six cusps: (cusp label, subgroup name, conjugator e with Δ_j = e⁻¹ Λ e).
pub fn cusp_conjugators() -> Vec<(&'static str, &'static str, Word)> {
    let g = |s| Word::gen(s);
    let (s, mu, t, e) = (g(Sym::Sigma), g(Sym::Mu), g(Sym::Tau), g(Sym::Eta));
    vec![
        ("Delta1", "lambda8", word![s, t, mu.pow(2)]),
        ("Delta2", "lambda8", word![t, s, t, s, mu.inverse()]),
        ("Delta3", "lambda24", word![s, t]),
        ("Delta4", "lambda40", word![s, e]),
        ("Delta5", "lambda40", word![mu, s, t, mu]),
        ("Delta6", "lambda120", Word::empty()),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspCheck {
    pub cusp: &'static str,
    pub subgroup: &'static str,
    pub conjugator: Word,
    pub index: u64,
    pub index_formula_ok: bool,
    /// Each conjugated generator e⁻¹ g e lies in Γ up to sign.
    pub generators_in_gamma: Vec<bool>,
    /// The same without allowing the sign.
    pub generators_in_gamma_sl: Vec<bool>,
    /// The conjugate the other way round, e g e⁻¹.
    pub reverse_conjugate_in_gamma: bool,
    pub coset: usize,
    pub orbit: usize,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspSubgroupReport {
    pub cusps: Vec<CuspCheck>,
    pub distinct_orbits: bool,
    pub orbit_sizes_match_indices: bool,
}

pub fn verify_cusp_subgroups(t: &CosetTable, q: &MonodromyQuotient) -> Result<CuspSubgroupReport, CuspError> {
    let orbits = cusp_orbits(t);
    let orbit_of = |c: usize| orbits.iter().position(|o| o.contains(&c)).unwrap();
    let mut cusps = vec![];
    for (cusp, sub, conj) in cusp_conjugators() {
        let s = CuspSubgroup::by_name(sub)?;
        let mut in_gamma = vec![];
        let mut in_sl = vec![];
        let mut reverse = true;
        for g in &s.gen_words {
            let m = eval_word(&g.conjugate_by(&conj));
            in_gamma.push(q.in_gamma_psl(&m)?);
            in_sl.push(q.in_gamma(&m)?);
            reverse &= q.in_gamma_psl(&eval_word(&g.conjugate_by(&conj.inverse())))?;
        }
        let coset =
            t.coset_of_matrix(&eval_word(&conj))?.ok_or_else(|| CuspError::Invalid(format!("{cusp}: conjugator coset not found")))?;
        let orbit = orbit_of(coset);
        cusps.push(CuspCheck {
            cusp,
            subgroup: s.name,
            conjugator: conj,
            index: s.expected_index,
            index_formula_ok: s.index_formula() == s.expected_index,
            generators_in_gamma: in_gamma,
            generators_in_gamma_sl: in_sl,
            reverse_conjugate_in_gamma: reverse,
            coset,
            orbit,
            orbit_size: orbits[orbit].len(),
        });
    }
    let mut os: Vec<usize> = cusps.iter().map(|c| c.orbit).collect();
    os.sort_unstable();
    os.dedup();
    Ok(CuspSubgroupReport {
        distinct_orbits: os.len() == cusps.len(),
        orbit_sizes_match_indices: cusps.iter().all(|c| c.orbit_size as u64 == c.index),
        cusps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_formula() {
        let idx: Vec<u64> = CuspSubgroup::all().iter().map(|c| c.index_formula()).collect();
        assert_eq!(idx, vec![8, 24, 40, 120]);
        assert!(CuspSubgroup::all().iter().all(|c| c.index_formula() == c.expected_index && c.words_consistent()));
    }

    #[test]
    fn multipliers() {
        let (u8_, m8) = CuspSubgroup::by_name("lambda8").unwrap().multiplier().unwrap();
        assert_eq!(u8_, QuadElt::from_ints(5, -3));
        assert_eq!(m8, [[5, -3], [-3, 2]]);
        let (u24, m24) = CuspSubgroup::by_name("lambda24").unwrap().multiplier().unwrap();
        assert_eq!(u24, QuadElt::from_ints(89, 144));
        assert_eq!(m24, [[17, 36], [144, 305]]);
        let (u40, _) = CuspSubgroup::by_name("lambda40").unwrap().multiplier().unwrap();
        assert_eq!(u40, QuadElt::from_ints(2, 3));
    }

    #[test]
    fn unknown_cusp() {
        assert!(matches!(CuspSubgroup::by_name("lambda7"), Err(CuspError::UnknownCusp(_))));
    }
}
