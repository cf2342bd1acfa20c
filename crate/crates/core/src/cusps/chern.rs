//! Euler number of the open surface and the Chern invariants of its
//! cusp-resolved compactification.

use num_rational::BigRational;
use serde::Serialize;

use super::hull::HullCycle;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChernError {
    #[error("index {0} times 1/15 is not an integer")]
    NonIntegralEuler(i64),
    #[error("c1^2 + c2 = {0} is not divisible by 12")]
    NonIntegralChi(i64),
}

/// 2ζ_k(-1) for k = Q(√5).
pub fn two_zeta_minus1() -> BigRational {
    BigRational::new(1.into(), 15.into())
}

/// Euler number of the quotient of H×H by a torsion-free subgroup of
/// index `index_psl` in PSL2(O).
pub fn euler_number(index_psl: i64) -> Result<i64, ChernError> {
    let e = two_zeta_minus1() * BigRational::from_integer(index_psl.into());
    if !e.is_integer() {
        return Err(ChernError::NonIntegralEuler(index_psl));
    }
    Ok(i64::try_from(e.to_integer()).expect("small"))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub e_open: i64,
    pub c1_sq: i64,
    pub c2: i64,
    pub chi: i64,
    pub q: i64,
    pub p_g: i64,
    /// Always 1/15; rendered as a fraction.
    pub two_zeta_minus1: String,
}

/// Invariants from cycle lengths and b-values.
pub fn chern_from_cycles(e_open: i64, cycles: &[Vec<i64>]) -> Result<SurfaceInvariants, ChernError> {
    let curves: i64 = cycles.iter().map(|c| c.len() as i64).sum();
    let excess: i64 = cycles.iter().flatten().map(|b| b - 2).sum();
    let c2 = e_open + curves;
    let c1_sq = 2 * e_open - excess;
    if (c1_sq + c2) % 12 != 0 {
        return Err(ChernError::NonIntegralChi(c1_sq + c2));
    }
    let chi = (c1_sq + c2) / 12;
    let q = 0;
    Ok(SurfaceInvariants { e_open, c1_sq, c2, chi, q, p_g: chi - 1 + q, two_zeta_minus1: two_zeta_minus1().to_string() })
}

pub fn chern(e_open: i64, cycles: &[HullCycle]) -> Result<SurfaceInvariants, ChernError> {
    let b: Vec<Vec<i64>> = cycles.iter().map(|c| c.b_values.clone()).collect();
    chern_from_cycles(e_open, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler() {
        assert_eq!(euler_number(240), Ok(16));
        assert_eq!(euler_number(15), Ok(1));
        assert_eq!(euler_number(30), Ok(2));
        assert_eq!(euler_number(7), Err(ChernError::NonIntegralEuler(7)));
    }

    #[test]
    fn invariants_from_b_values() {
        let long: Vec<i64> = [vec![4], vec![2; 7], vec![4], vec![2; 7]].concat();
        let cycles = vec![vec![3, 3], vec![3, 3], long.clone(), vec![3, 3], vec![3, 3], long];
        let s = chern_from_cycles(16, &cycles).unwrap();
        assert_eq!((s.c2, s.c1_sq, s.chi, s.q, s.p_g), (56, 16, 6, 0, 5));
        assert_eq!(s.two_zeta_minus1, "1/15");
        assert_eq!(12 * s.chi, s.c1_sq + s.c2);
    }

    #[test]
    fn chi_divisibility() {
        assert_eq!(chern_from_cycles(1, &[vec![3]]), Err(ChernError::NonIntegralChi(3)));
    }
}
