//! Finite matrix groups over the residue rings of O.
//!
//! Entries are stored as ring indices (`ResidueElt::index`) and arithmetic
//! goes through precomputed addition and multiplication tables. A matrix
//! packs into a `u32` as the base-|R| number with digits `a b c d`, which is
//! both the hash key and the ordering used for PSL representatives.

pub mod cache;
mod verify;

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::matgrp::Mat2;
use crate::qfield::residue::reduce;
use crate::qfield::{FieldError, ResidueElt, ResidueRing};

pub use verify::*;

#[derive(Debug, thiserror::Error)]
pub enum FinquotError {
    #[error("ring mismatch: expected {expected:?}, found {found:?}")]
    RingMismatch { expected: ResidueRing, found: ResidueRing },
    #[error("ring {0:?} is too large for packed matrices")]
    RingTooLarge(ResidueRing),
    #[error("not a subgroup: {0} elements of the smaller set are missing")]
    NotSubgroup(usize),
    #[error("group mode mismatch (SL vs PSL)")]
    ModeMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cache: {0}")]
    Cache(String),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Addition, multiplication and negation tables of a residue ring.
pub struct RingTables {
    pub ring: ResidueRing,
    pub n: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl RingTables {
    fn build(ring: ResidueRing) -> RingTables {
        let n = ring.size() as usize;
        let els: Vec<ResidueElt> = ring.elements().collect();
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                add[i * n + j] = x.add(y).index() as u8;
                mul[i * n + j] = x.mul(y).index() as u8;
            }
        }
        let neg = els.iter().map(|x| x.neg().index() as u8).collect();
        RingTables { ring, n, add, mul, neg }
    }

    /// Shared tables for a ring with at most 256 elements.
    pub fn get(ring: ResidueRing) -> Result<&'static RingTables, FinquotError> {
        static NAMED: [OnceLock<RingTables>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        static OTHER: OnceLock<Mutex<HashMap<ResidueRing, &'static RingTables>>> = OnceLock::new();
        if ring.size() > 256 {
            return Err(FinquotError::RingTooLarge(ring));
        }
        let slot = match ring {
            ResidueRing::Mod2 => Some(0),
            ResidueRing::ModP5 => Some(1),
            ResidueRing::Mod4 => Some(2),
            ResidueRing::Mod4P5 => Some(3),
            ResidueRing::ModN(_) => None,
        };
        if let Some(i) = slot {
            return Ok(NAMED[i].get_or_init(|| RingTables::build(ring)));
        }
        let mut m = OTHER.get_or_init(Default::default).lock().unwrap();
        Ok(*m.entry(ring).or_insert_with(|| Box::leak(Box::new(RingTables::build(ring)))))
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn zero(&self) -> u8 {
        self.ring.zero().index() as u8
    }

    pub fn one(&self) -> u8 {
        self.ring.one().index() as u8
    }
}

/// A 2x2 matrix over a residue ring, entries as ring indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FinMat {
    pub ring: ResidueRing,
    pub e: [u8; 4],
}

impl FinMat {
    pub fn identity(ring: ResidueRing) -> FinMat {
        let (o, z) = (ring.one().index() as u8, ring.zero().index() as u8);
        FinMat { ring, e: [o, z, z, o] }
    }

    pub fn from_elts(e: [ResidueElt; 4]) -> FinMat {
        FinMat { ring: e[0].ring(), e: e.map(|x| x.index() as u8) }
    }

    pub fn reduce(m: &Mat2, ring: ResidueRing) -> Result<FinMat, FinquotError> {
        let mut e = [0u8; 4];
        for (i, x) in m.e.iter().enumerate() {
            e[i] = reduce(x, ring)?.index() as u8;
        }
        Ok(FinMat { ring, e })
    }

    pub fn entry(&self, i: usize) -> ResidueElt {
        self.ring.element(self.e[i] as u32)
    }

    pub fn entries(&self) -> [ResidueElt; 4] {
        [0, 1, 2, 3].map(|i| self.entry(i))
    }

    fn tables(&self) -> &'static RingTables {
        RingTables::get(self.ring).expect("FinMat rings fit the tables")
    }

    pub fn mul(&self, o: &FinMat) -> FinMat {
        assert_eq!(self.ring, o.ring, "ring mismatch");
        mul_with(self.tables(), self, o)
    }

    pub fn det(&self) -> ResidueElt {
        let t = self.tables();
        let ad = t.mul(self.e[0], self.e[3]);
        let bc = t.mul(self.e[1], self.e[2]);
        self.ring.element(t.add(ad, t.neg(bc)) as u32)
    }

    pub fn trace(&self) -> ResidueElt {
        self.entry(0).add(&self.entry(3))
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> FinMat {
        let t = self.tables();
        FinMat { ring: self.ring, e: [self.e[3], t.neg(self.e[1]), t.neg(self.e[2]), self.e[0]] }
    }

    pub fn neg(&self) -> FinMat {
        let t = self.tables();
        FinMat { ring: self.ring, e: self.e.map(|x| t.neg(x)) }
    }

    pub fn pow(&self, n: u64) -> FinMat {
        (0..n).fold(FinMat::identity(self.ring), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == FinMat::identity(self.ring)
    }

    /// Multiplicative order (for determinant-one matrices over a finite ring).
    pub fn order(&self) -> u64 {
        let mut m = *self;
        let mut k = 1;
        while !m.is_identity() {
            m = m.mul(self);
            k += 1;
        }
        k
    }

    /// Packed code: the entries as digits base |R|.
    pub fn code(&self) -> u32 {
        let n = self.ring.size();
        self.e.iter().fold(0u32, |acc, &d| acc * n + d as u32)
    }

    pub fn from_code(ring: ResidueRing, code: u32) -> FinMat {
        let n = ring.size();
        let mut c = code;
        let mut e = [0u8; 4];
        for i in (0..4).rev() {
            e[i] = (c % n) as u8;
            c /= n;
        }
        FinMat { ring, e }
    }

    /// The PSL representative of {M, -M}: the one with the smaller code.
    pub fn canonical_psl(&self) -> FinMat {
        let n = self.neg();
        if n.code() < self.code() {
            n
        } else {
            *self
        }
    }

    /// Entrywise image under a ring projection.
    pub fn map(&self, f: impl Fn(ResidueElt) -> ResidueElt) -> FinMat {
        FinMat::from_elts(self.entries().map(f))
    }

    /// Mod4 factor of a Mod4P5 matrix.
    pub fn mod4_part(&self) -> FinMat {
        self.map(|x| x.mod4_part().expect("Mod4P5 entry"))
    }

    /// ModP5 factor of a Mod4P5 matrix.
    pub fn p5_part(&self) -> FinMat {
        self.map(|x| x.p5_part().expect("Mod4P5 entry"))
    }

    /// Reduction from Mod4 (or ModN(4)) to Mod2.
    pub fn mod2(&self) -> FinMat {
        self.map(|x| {
            let (a, b) = x.coords();
            ResidueRing::Mod2.element((a % 2) + 2 * (b % 2))
        })
    }
}

#[inline]
fn mul_with(t: &RingTables, a: &FinMat, b: &FinMat) -> FinMat {
    let [p, q, r, s] = a.e;
    let [w, x, y, z] = b.e;
    FinMat {
        ring: a.ring,
        e: [
            t.add(t.mul(p, w), t.mul(q, y)),
            t.add(t.mul(p, x), t.mul(q, z)),
            t.add(t.mul(r, w), t.mul(s, y)),
            t.add(t.mul(r, x), t.mul(s, z)),
        ],
    }
}

/// An enumerated finite matrix group.
#[derive(Clone, Debug)]
pub struct FinGroup {
    pub ring: ResidueRing,
    pub psl: bool,
    pub generators: Vec<FinMat>,
    /// Codes in breadth-first discovery order.
    elements: Vec<u32>,
    set: HashSet<u32>,
}

impl FinGroup {
    pub(crate) fn from_codes(ring: ResidueRing, psl: bool, generators: Vec<FinMat>, elements: Vec<u32>) -> Self {
        let set = elements.iter().copied().collect();
        FinGroup { ring, psl, generators, elements, set }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn codes(&self) -> &[u32] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = FinMat> + '_ {
        self.elements.iter().map(|&c| FinMat::from_code(self.ring, c))
    }

    fn key(&self, m: &FinMat) -> u32 {
        if self.psl {
            m.canonical_psl().code()
        } else {
            m.code()
        }
    }

    pub fn contains(&self, m: &FinMat) -> bool {
        m.ring == self.ring && self.set.contains(&self.key(m))
    }

    /// Element set, sorted; independent of discovery order.
    pub fn sorted_codes(&self) -> Vec<u32> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub fn same_elements(&self, o: &FinGroup) -> bool {
        self.ring == o.ring && self.psl == o.psl && self.order() == o.order() && o.elements.iter().all(|c| self.set.contains(c))
    }

    /// Fingerprint of (ring, mode, generators), used as the cache key.
    pub fn fingerprint(ring: ResidueRing, psl: bool, gens: &[FinMat]) -> [u8; 32] {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(b"fingroup/v1");
        h.update([ring.tag()]);
        if let ResidueRing::ModN(n) = ring {
            h.update(n.to_le_bytes());
        }
        h.update([psl as u8]);
        for g in gens {
            h.update(g.code().to_le_bytes());
        }
        h.finalize().into()
    }
}

/// Subgroup index `|g| / |h|`, after checking that h lies in g.
pub fn index(g: &FinGroup, h: &FinGroup) -> Result<usize, FinquotError> {
    if g.ring != h.ring {
        return Err(FinquotError::RingMismatch { expected: g.ring, found: h.ring });
    }
    if g.psl != h.psl {
        return Err(FinquotError::ModeMismatch);
    }
    let missing = h.elements.iter().filter(|c| !g.set.contains(c)).count();
    if missing > 0 {
        return Err(FinquotError::NotSubgroup(missing));
    }
    Ok(g.order() / h.order())
}

/// Execution settings for enumerations.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    /// Worker threads for frontier expansion; 0 or 1 means sequential.
    pub jobs: usize,
    /// Directory for the binary element cache.
    pub cache_dir: Option<PathBuf>,
}

impl Engine {
    pub fn sequential() -> Engine {
        Engine::default()
    }

    /// Breadth-first closure of `gens` under right multiplication.
    ///
    /// The result (including element order) does not depend on `jobs`: each
    /// level is expanded in (element, generator) order and deduplicated
    /// sequentially.
    pub fn closure(&self, ring: ResidueRing, gens: &[FinMat], psl: bool) -> Result<FinGroup, FinquotError> {
        for g in gens {
            if g.ring != ring {
                return Err(FinquotError::RingMismatch { expected: ring, found: g.ring });
            }
        }
        let t = RingTables::get(ring)?;
        if (ring.size() as u64).pow(4) > u32::MAX as u64 {
            return Err(FinquotError::RingTooLarge(ring));
        }
        if let Some(dir) = &self.cache_dir {
            if let Some(g) = cache::load(dir, ring, psl, gens)? {
                return Ok(g);
            }
        }
        let key = |m: &FinMat| if psl { m.canonical_psl().code() } else { m.code() };
        let id = FinMat::identity(ring);
        let mut elements = vec![key(&id)];
        let mut set: HashSet<u32> = elements.iter().copied().collect();
        let mut frontier = elements.clone();
        let expand = |c: &u32| -> Vec<u32> {
            let m = FinMat::from_code(ring, *c);
            gens.iter().map(|g| key(&mul_with(t, &m, g))).collect()
        };
        let pool = match self.jobs {
            0 | 1 => None,
            n => Some(rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| FinquotError::Pool(e.to_string()))?),
        };
        while !frontier.is_empty() {
            let products: Vec<Vec<u32>> = match &pool {
                Some(pool) if frontier.len() > 512 => pool.install(|| frontier.par_iter().map(expand).collect()),
                _ => frontier.iter().map(expand).collect(),
            };
            let mut next = Vec::new();
            for c in products.into_iter().flatten() {
                if set.insert(c) {
                    next.push(c);
                }
            }
            elements.extend_from_slice(&next);
            frontier = next;
        }
        let g = FinGroup { ring, psl, generators: gens.to_vec(), elements, set };
        if let Some(dir) = &self.cache_dir {
            cache::store(dir, &g)?;
        }
        Ok(g)
    }
}

/// Sequential closure with default settings.
pub fn closure(ring: ResidueRing, gens: &[FinMat], psl: bool) -> Result<FinGroup, FinquotError> {
    Engine::sequential().closure(ring, gens, psl)
}

/// The subset of a group's elements satisfying a predicate, as a set of
/// codes.
pub fn filter_codes(g: &FinGroup, pred: impl Fn(&FinMat) -> bool + Sync) -> Vec<u32> {
    let mut v: Vec<u32> = g.codes().par_iter().copied().filter(|c| pred(&FinMat::from_code(g.ring, *c))).collect();
    v.sort_unstable();
    v
}

/// Congruence conditions appearing in the description of Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CongCondition {
    /// Characteristic polynomial (t - 1)^2 over F5.
    UnipotentModP5,
    /// Congruent to I mod 2 and of the form I + 2M with M in C4.
    Mod4C4,
    /// All entries in F2 inside F4.
    Mod2InF2,
}

impl CongCondition {
    pub fn ring(self) -> ResidueRing {
        match self {
            CongCondition::UnipotentModP5 => ResidueRing::ModP5,
            CongCondition::Mod4C4 => ResidueRing::Mod4,
            CongCondition::Mod2InF2 => ResidueRing::Mod2,
        }
    }
}

/// Evaluate a congruence condition. A Mod4P5 matrix is first projected to
/// the factor the condition lives on.
pub fn check_condition(m: &FinMat, c: CongCondition) -> Result<bool, FinquotError> {
    let m = match (m.ring, c) {
        (ResidueRing::Mod4P5, CongCondition::UnipotentModP5) => m.p5_part(),
        (ResidueRing::Mod4P5, _) => m.mod4_part(),
        _ => *m,
    };
    let m = if c == CongCondition::Mod2InF2 && m.ring == ResidueRing::Mod4 { m.mod2() } else { m };
    if m.ring != c.ring() {
        return Err(FinquotError::RingMismatch { expected: c.ring(), found: m.ring });
    }
    Ok(match c {
        CongCondition::UnipotentModP5 => is_unipotent_p5(&m),
        CongCondition::Mod2InF2 => m.entries().iter().all(|x| x.in_prime_subfield()),
        CongCondition::Mod4C4 => kernel_lie_element(&m).is_some_and(|x| in_c4(&x)),
    })
}

/// Trace 2, equivalently characteristic polynomial (t - 1)^2, over F5.
pub fn is_unipotent_p5(m: &FinMat) -> bool {
    m.trace() == ResidueRing::ModP5.from_int(2)
}

/// An element of sl2(F4) as (x1, x2, x3, x4) in F4 = F2[X], bits (a, b).
pub type Lie = [(u8, u8); 4];

/// For m ≡ I mod 2 over Mod4, the M with m = I + 2M, reduced mod 2.
pub fn kernel_lie_element(m: &FinMat) -> Option<Lie> {
    if m.ring != ResidueRing::Mod4 || !m.mod2().is_identity() {
        return None;
    }
    let id = FinMat::identity(ResidueRing::Mod4).entries();
    let mut out = [(0u8, 0u8); 4];
    for (i, x) in m.entries().iter().enumerate() {
        let (a, b) = x.sub(&id[i]).coords();
        out[i] = (((a / 2) % 2) as u8, ((b / 2) % 2) as u8);
    }
    Some(out)
}

/// Tr_{F4/F2}(x1 + x2 + x3) = 0. The trace of a + bX is b.
pub fn in_c4(x: &Lie) -> bool {
    (x[0].1 + x[1].1 + x[2].1).is_multiple_of(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::Sym;

    fn gens(ring: ResidueRing, syms: &[Sym]) -> Vec<FinMat> {
        syms.iter().map(|s| FinMat::reduce(&s.matrix(), ring).unwrap()).collect()
    }

    #[test]
    fn code_round_trip() {
        let m = FinMat::reduce(&Mat2::mu(), ResidueRing::Mod4P5).unwrap();
        assert_eq!(FinMat::from_code(ResidueRing::Mod4P5, m.code()), m);
    }

    #[test]
    fn trivial_closure() {
        let g = closure(ResidueRing::Mod2, &[FinMat::identity(ResidueRing::Mod2)], false).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn sl2_f4_has_order_60() {
        let g = closure(ResidueRing::Mod2, &gens(ResidueRing::Mod2, &[Sym::Sigma, Sym::Mu, Sym::Tau, Sym::Eta]), false).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn sl2_z_mod2_has_order_6() {
        let g = closure(ResidueRing::Mod2, &gens(ResidueRing::Mod2, &[Sym::Sigma, Sym::Tau]), false).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn psl_canonical_is_sign_invariant() {
        for c in (0..80u32.pow(4)).step_by(9973) {
            let m = FinMat::from_code(ResidueRing::Mod4P5, c);
            assert_eq!(m.canonical_psl(), m.neg().canonical_psl());
        }
    }

    #[test]
    fn index_rejects_non_subgroups() {
        let r = ResidueRing::Mod2;
        let a = closure(r, &gens(r, &[Sym::Tau]), false).unwrap();
        let b = closure(r, &gens(r, &[Sym::Eta]), false).unwrap();
        assert!(matches!(index(&a, &b), Err(FinquotError::NotSubgroup(_))));
        assert_eq!(index(&a, &a).unwrap(), 1);
    }

    #[test]
    fn mu_cubed_is_in_kernel_but_not_c4() {
        let m3 = FinMat::reduce(&Mat2::mu().pow(3), ResidueRing::Mod4).unwrap();
        let x = kernel_lie_element(&m3).expect("μ^3 ≡ I mod 2");
        assert!(!in_c4(&x));
        assert!(!check_condition(&m3, CongCondition::Mod4C4).unwrap());
    }

    #[test]
    fn condition_ring_mismatch() {
        let m = FinMat::identity(ResidueRing::Mod2);
        assert!(check_condition(&m, CongCondition::UnipotentModP5).is_err());
        assert!(check_condition(&m, CongCondition::Mod2InF2).unwrap());
    }

    #[test]
    fn gamma_alpha_is_unipotent_mod_p5() {
        let g = crate::matgrp::monodromy_generators();
        let m = FinMat::reduce(&g[0].evaluated, ResidueRing::ModP5).unwrap();
        assert!(check_condition(&m, CongCondition::UnipotentModP5).unwrap());
    }
}
