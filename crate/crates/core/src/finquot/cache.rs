//! Flat binary cache of enumerated groups.
//!
//! Layout, all integers little-endian:
//!
//! | bytes | field                                   |
//! |-------|-----------------------------------------|
//! | 8     | magic `WEFGRP\0\x01`                    |
//! | 1     | ring tag                                |
//! | 4     | ring parameter (n for ModN, else 0)     |
//! | 1     | psl flag                                |
//! | 32    | generator fingerprint (sha256)          |
//! | 8     | element count                           |
//! | 4 * n | packed element codes, discovery order   |
//!
//! Files are named `fg-<hex fingerprint>.bin`.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{FinGroup, FinMat, FinquotError};
use crate::qfield::ResidueRing;

pub const MAGIC: &[u8; 8] = b"WEFGRP\0\x01";
const HEADER: usize = 8 + 1 + 4 + 1 + 32 + 8;

fn hex(b: &[u8]) -> String {
    b.iter().map(|x| format!("{x:02x}")).collect()
}

pub fn path_for(dir: &Path, fingerprint: &[u8; 32]) -> PathBuf {
    dir.join(format!("fg-{}.bin", hex(fingerprint)))
}

fn ring_param(r: ResidueRing) -> u32 {
    match r {
        ResidueRing::ModN(n) => n,
        _ => 0,
    }
}

pub fn encode(g: &FinGroup) -> Vec<u8> {
    let fp = FinGroup::fingerprint(g.ring, g.psl, &g.generators);
    let mut out = Vec::with_capacity(HEADER + 4 * g.order());
    out.extend_from_slice(MAGIC);
    out.push(g.ring.tag());
    out.extend_from_slice(&ring_param(g.ring).to_le_bytes());
    out.push(g.psl as u8);
    out.extend_from_slice(&fp);
    out.extend_from_slice(&(g.order() as u64).to_le_bytes());
    for c in g.codes() {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

/// Decode and validate a cache image for the given generators.
pub fn decode(bytes: &[u8], ring: ResidueRing, psl: bool, gens: &[FinMat]) -> Result<FinGroup, FinquotError> {
    let bad = |m: &str| FinquotError::Cache(m.to_string());
    if bytes.len() < HEADER || &bytes[..8] != MAGIC {
        return Err(bad("bad magic"));
    }
    if bytes[8] != ring.tag() || u32::from_le_bytes(bytes[9..13].try_into().unwrap()) != ring_param(ring) {
        return Err(bad("ring tag mismatch"));
    }
    if bytes[13] != psl as u8 {
        return Err(bad("mode mismatch"));
    }
    let fp = FinGroup::fingerprint(ring, psl, gens);
    if bytes[14..46] != fp {
        return Err(bad("fingerprint mismatch"));
    }
    let count = u64::from_le_bytes(bytes[46..54].try_into().unwrap()) as usize;
    if bytes.len() != HEADER + 4 * count {
        return Err(bad("length does not match element count"));
    }
    let limit = (ring.size() as u64).pow(4);
    let codes: Vec<u32> = bytes[HEADER..].chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
    if codes.iter().any(|&c| c as u64 >= limit) {
        return Err(bad("code out of range"));
    }
    let set: HashSet<u32> = codes.iter().copied().collect();
    if set.len() != codes.len() {
        return Err(bad("duplicate elements"));
    }
    let g = FinGroup::from_codes(ring, psl, gens.to_vec(), codes);
    if !g.contains(&FinMat::identity(ring)) || !gens.iter().all(|m| g.contains(m)) {
        return Err(bad("generators missing from cached set"));
    }
    Ok(g)
}

/// Load a cached group; `Ok(None)` when there is no usable file. A corrupt
/// file is reported as an error.
pub fn try_load(dir: &Path, ring: ResidueRing, psl: bool, gens: &[FinMat]) -> Result<Option<FinGroup>, FinquotError> {
    let p = path_for(dir, &FinGroup::fingerprint(ring, psl, gens));
    match fs::read(&p) {
        Ok(b) => decode(&b, ring, psl, gens).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Like [`try_load`], but a corrupt file counts as a miss so that the
/// caller recomputes and overwrites it.
pub fn load(dir: &Path, ring: ResidueRing, psl: bool, gens: &[FinMat]) -> Result<Option<FinGroup>, FinquotError> {
    match try_load(dir, ring, psl, gens) {
        Err(FinquotError::Cache(_)) => Ok(None),
        r => r,
    }
}

pub fn store(dir: &Path, g: &FinGroup) -> Result<PathBuf, FinquotError> {
    fs::create_dir_all(dir)?;
    let p = path_for(dir, &FinGroup::fingerprint(g.ring, g.psl, &g.generators));
    let tmp = p.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(&encode(g))?;
    f.sync_all()?;
    fs::rename(&tmp, &p)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finquot::closure;
    use crate::matgrp::Sym;

    fn sample() -> (Vec<FinMat>, FinGroup) {
        let r = ResidueRing::Mod4;
        let gens: Vec<FinMat> = [Sym::Sigma, Sym::Tau].iter().map(|s| FinMat::reduce(&s.matrix(), r).unwrap()).collect();
        let g = closure(r, &gens, false).unwrap();
        (gens, g)
    }

    #[test]
    fn encode_decode_round_trip() {
        let (gens, g) = sample();
        let b = encode(&g);
        assert_eq!(&b[..8], MAGIC);
        let h = decode(&b, g.ring, false, &gens).unwrap();
        assert_eq!(h.codes(), g.codes());
    }

    #[test]
    fn rejects_other_generators() {
        let (gens, g) = sample();
        let b = encode(&g);
        assert!(decode(&b, g.ring, false, &gens[..1]).is_err());
        assert!(decode(&b, g.ring, true, &gens).is_err());
    }

    #[test]
    fn rejects_truncation() {
        let (gens, g) = sample();
        let b = encode(&g);
        assert!(decode(&b[..b.len() - 2], g.ring, false, &gens).is_err());
    }
}
