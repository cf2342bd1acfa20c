//! The degree-6 cover of the five-punctured pencil base induced by
//! reduction of Γ modulo 2.

use serde::Serialize;

use crate::finquot::{gamma_mod2_image, FinMat, FinquotError};
use crate::matgrp::{eval_word, monodromy_product_word, monodromy_words, Word};
use crate::qfield::ResidueRing;

/// Order of SL2(F2).
pub const TARGET_ORDER: u64 = 6;

#[derive(Debug, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Finquot(#[from] FinquotError),
    #[error("image of {0} mod 2 is not defined over F2")]
    NotOverF2(String),
    #[error("peripheral order {order} does not divide the degree {degree}")]
    OrderDoesNotDivide { order: u64, degree: u64 },
    #[error("Euler bookkeeping gives 2g = {0}, which is odd")]
    NonIntegralGenus(i64),
    #[error("the generator images do not generate the target")]
    Disconnected,
}

/// Number of preimages of the puncture with peripheral word `w`.
pub fn lift_count(w: &Word) -> Result<u64, CoverError> {
    let m = FinMat::reduce(&eval_word(w), ResidueRing::Mod2)?;
    if !m.entries().iter().all(|x| x.in_prime_subfield()) {
        return Err(CoverError::NotOverF2(w.to_string()));
    }
    Ok(TARGET_ORDER / m.order())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoverTopology {
    pub degree: u64,
    pub genus: i64,
    pub punctures: u64,
    pub euler: i64,
}

/// Topology of a connected degree-`degree` cover of a genus-`base_genus`
/// surface with one puncture per entry of `orders`, where each entry is
/// the order of the monodromy around that puncture.
pub fn topology_from_orders(degree: u64, base_genus: i64, orders: &[u64]) -> Result<CoverTopology, CoverError> {
    let mut punctures = 0;
    for &o in orders {
        if o == 0 || !degree.is_multiple_of(o) {
            return Err(CoverError::OrderDoesNotDivide { order: o, degree });
        }
        punctures += degree / o;
    }
    let euler = degree as i64 * (2 - 2 * base_genus - orders.len() as i64);
    let two_g = 2 - punctures as i64 - euler;
    if two_g % 2 != 0 {
        return Err(CoverError::NonIntegralGenus(two_g));
    }
    Ok(CoverTopology { degree, genus: two_g / 2, punctures, euler })
}

#[derive(Clone, Debug, Serialize)]
pub struct Peripheral {
    pub name: String,
    pub word: Word,
    pub order: u64,
    pub lifts: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSpec {
    pub base_genus: i64,
    pub peripherals: Vec<(String, Word)>,
}

impl CoverSpec {
    /// The four monodromy generators and their product.
    pub fn wiman_edge() -> CoverSpec {
        let mut peripherals: Vec<(String, Word)> = monodromy_words().into_iter().map(|(n, w)| (n.to_string(), w)).collect();
        peripherals.push(("product".into(), monodromy_product_word()));
        CoverSpec { base_genus: 0, peripherals }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub peripherals: Vec<Peripheral>,
    pub image_order: usize,
    pub connected: bool,
    pub topology: CoverTopology,
}

pub fn cover_topology(s: &CoverSpec) -> Result<CoverReport, CoverError> {
    let image = gamma_mod2_image()?;
    let connected = image.order() as u64 == TARGET_ORDER && image.iter().all(|m| m.entries().iter().all(|x| x.in_prime_subfield()));
    if !connected {
        return Err(CoverError::Disconnected);
    }
    let mut peripherals = vec![];
    for (name, w) in &s.peripherals {
        let lifts = lift_count(w)?;
        peripherals.push(Peripheral { name: name.clone(), word: w.clone(), order: TARGET_ORDER / lifts, lifts });
    }
    let orders: Vec<u64> = peripherals.iter().map(|p| p.order).collect();
    let topology = topology_from_orders(TARGET_ORDER, s.base_genus, &orders)?;
    Ok(CoverReport { peripherals, image_order: image.order(), connected, topology })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wiman_edge_cover() {
        let r = cover_topology(&CoverSpec::wiman_edge()).unwrap();
        let lifts: Vec<u64> = r.peripherals.iter().map(|p| p.lifts).collect();
        assert_eq!(lifts, vec![3, 3, 3, 3, 6]);
        assert_eq!(r.topology, CoverTopology { degree: 6, genus: 1, punctures: 18, euler: -18 });
    }

    #[test]
    fn identity_word_has_six_lifts() {
        assert_eq!(lift_count(&Word::empty()).unwrap(), 6);
    }

    #[test]
    fn trivial_cover() {
        assert_eq!(topology_from_orders(1, 0, &[1; 5]).unwrap(), CoverTopology { degree: 1, genus: 0, punctures: 5, euler: -3 });
    }

    #[test]
    fn controls() {
        assert!(matches!(topology_from_orders(6, 0, &[6; 5]), Err(CoverError::NonIntegralGenus(15))));
        assert_eq!(topology_from_orders(6, 0, &[3; 5]).unwrap().genus, 5);
        assert!(matches!(topology_from_orders(6, 0, &[4]), Err(CoverError::OrderDoesNotDivide { .. })));
    }

    #[test]
    fn eta_is_not_over_f2() {
        assert!(matches!(lift_count(&Word::gen(crate::matgrp::Sym::Eta)), Err(CoverError::NotOverF2(_))));
    }
}
