//! Projective geometry over k on the Klein plane: the icosahedral point
//! and line configuration, the S3 action, invariant cubics and the case
//! analysis that leaves two candidate plane cubics.

pub mod cases;
pub mod ext;
pub mod fixture;
pub mod forms;
pub mod linalg;
pub mod profile;
pub mod singular;
pub mod verify;

use std::fmt;

use serde::Serialize;

use crate::qfield::{QuadElt, Ring};

pub use cases::{run_case_analysis, CaseAnalysis, CaseResult, Verdict};
pub use ext::{ExtElt, ExtField};
pub use fixture::{PlaneData, PlaneFixtureError};
pub use forms::{BinaryCubic, Cubic, Form, MONOMIALS};
pub use profile::{intersection_profile, lemma65_profile_check, IntersectionProfile, PointClass};
pub use singular::is_singular;
pub use verify::{invariant_family, solve_conditions, verify_action, verify_incidence, Condition, InvariantFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("fixture: {0}")]
    Fixture(#[from] PlaneFixtureError),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("lines {0} and {1} coincide")]
    SameLine(String, String),
    #[error("unknown line {0}")]
    UnknownLine(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("singular matrix {0}")]
    SingularTransform(String),
}

pub type Vec3<F> = [F; 3];
pub type Mat3 = [[QuadElt; 3]; 3];

pub fn cross<F: Ring>(u: &Vec3<F>, v: &Vec3<F>) -> Vec3<F> {
    [u[1].times(&v[2]).minus(&u[2].times(&v[1])), u[2].times(&v[0]).minus(&u[0].times(&v[2])), u[0].times(&v[1]).minus(&u[1].times(&v[0]))]
}

pub fn dot<F: Ring>(u: &Vec3<F>, v: &Vec3<F>) -> F {
    u[0].times(&v[0]).plus(&u[1].times(&v[1])).plus(&u[2].times(&v[2]))
}

pub fn is_zero_vec<F: Ring>(u: &Vec3<F>) -> bool {
    u.iter().all(|x| x.ring_is_zero())
}

/// Equality of projective points given by possibly unscaled coordinates.
pub fn proportional<F: Ring>(u: &Vec3<F>, v: &Vec3<F>) -> bool {
    is_zero_vec(&cross(u, v))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(QuadElt::zero(), |acc, k| acc + &a[i][k] * &b[k][j])))
}

pub fn mat_apply(a: &Mat3, p: &Vec3<QuadElt>) -> Vec3<QuadElt> {
    std::array::from_fn(|i| dot(&a[i], p))
}

pub fn det3(a: &Mat3) -> QuadElt {
    dot(&a[0], &cross(&a[1], &a[2]))
}

pub fn identity3() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadElt::from_int((i == j) as i64)))
}

/// A point of P^2(k), scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint([QuadElt; 3]);

impl Ord for ProjPoint {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let key = |p: &ProjPoint| p.0.iter().map(|x| (x.a().clone(), x.b().clone())).collect::<Vec<_>>();
        key(self).cmp(&key(o))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl ProjPoint {
    pub fn new(c: [QuadElt; 3]) -> Result<Self, PlaneError> {
        let l = c.iter().find(|x| !x.is_zero()).ok_or(PlaneError::ZeroPoint)?;
        let li = l.inv().expect("nonzero");
        Ok(ProjPoint(c.map(|x| &x * &li)))
    }

    pub fn coords(&self) -> &[QuadElt; 3] {
        &self.0
    }

    pub fn to_f<F: ExtField>(&self) -> Vec3<F> {
        self.0.each_ref().map(F::from_k)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The line `r e_i + s e_j` through two dodecahedral vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    pub i: u8,
    pub j: u8,
}

impl ProjLine {
    pub fn name(&self) -> String {
        format!("{},{}", self.i, self.j)
    }

    pub fn parse(s: &str) -> Result<Self, PlaneError> {
        let bad = || PlaneError::UnknownLine(s.to_string());
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let i = a.trim().parse().map_err(|_| bad())?;
        let j = b.trim().parse().map_err(|_| bad())?;
        Ok(ProjLine { i, j })
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{},{}", self.i, self.j)
    }
}

impl Serialize for ProjLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// An invertible 3×3 matrix acting on P^2(k) by `p ↦ g p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTransform {
    pub name: String,
    pub m: Mat3,
}

impl ProjTransform {
    pub fn new(name: &str, m: Mat3) -> Result<Self, PlaneError> {
        if det3(&m).is_zero() {
            return Err(PlaneError::SingularTransform(name.to_string()));
        }
        Ok(ProjTransform { name: name.to_string(), m })
    }

    pub fn compose(&self, o: &ProjTransform, name: &str) -> ProjTransform {
        ProjTransform { name: name.to_string(), m: mat_mul(&self.m, &o.m) }
    }

    pub fn apply(&self, p: &Vec3<QuadElt>) -> Vec3<QuadElt> {
        mat_apply(&self.m, p)
    }

    /// True when the matrix is a nonzero scalar.
    pub fn is_projective_identity(&self) -> bool {
        let d = &self.m[0][0];
        !d.is_zero() && (0..3).all(|i| (0..3).all(|j| if i == j { &self.m[i][j] == d } else { self.m[i][j].is_zero() }))
    }

    pub fn power(&self, n: u32) -> ProjTransform {
        let mut m = identity3();
        for _ in 0..n {
            m = mat_mul(&m, &self.m);
        }
        ProjTransform { name: format!("{}^{n}", self.name), m }
    }
}

/// Common zero of two lines given by coefficient vectors.
pub fn meet(l1: &Vec3<QuadElt>, l2: &Vec3<QuadElt>) -> Option<ProjPoint> {
    ProjPoint::new(cross(l1, l2)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    #[test]
    fn canonical_points() {
        let a = ProjPoint::new([q(0, 2), q(0, 4), q(2, 2)]).unwrap();
        let b = ProjPoint::new([q(0, 1), q(0, 2), q(1, 1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords()[0], q(1, 0));
        assert_eq!(ProjPoint::new([q(0, 0), q(0, 0), q(0, 0)]), Err(PlaneError::ZeroPoint));
    }

    #[test]
    fn transforms() {
        let s = ProjTransform::new("s", [[q(-1, 0), q(0, 0), q(0, 0)], [q(0, 0), q(-1, 0), q(0, 0)], [q(0, 0), q(0, 0), q(1, 0)]]).unwrap();
        assert!(!s.is_projective_identity());
        assert!(s.power(2).is_projective_identity());
        assert!(ProjTransform::new("z", std::array::from_fn(|_| std::array::from_fn(|_| q(0, 0)))).is_err());
        assert_eq!(ProjLine::parse("2, 10").unwrap(), ProjLine { i: 2, j: 10 });
    }
}
