//! Quadratic extensions `k[λ]/(λ² − pλ − q)` of k, needed when a tangency
//! condition has no root in k.

use std::fmt;
use std::sync::Arc;

use crate::qfield::poly::{sqrt_in_k, Field};
use crate::qfield::{QuadElt, Ring};

/// Fields that contain k.
pub trait ExtField: Field + PartialEq + fmt::Debug {
    fn from_k(x: &QuadElt) -> Self;
}

impl ExtField for QuadElt {
    fn from_k(x: &QuadElt) -> Self {
        x.clone()
    }
}

/// `λ² = p λ + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub p: QuadElt,
    pub q: QuadElt,
}

#[derive(Clone)]
pub struct ExtElt {
    pub u: QuadElt,
    pub v: QuadElt,
    m: Option<Arc<Modulus>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error("leading coefficient is zero")]
    NotQuadratic,
    #[error("discriminant {0} is a square in k, so the polynomial splits")]
    Reducible(QuadElt),
}

impl ExtElt {
    /// The class of λ in `k[λ]/(a λ² + b λ + c)`, which must be irreducible.
    pub fn root_of(a: &QuadElt, b: &QuadElt, c: &QuadElt) -> Result<ExtElt, ExtError> {
        if a.is_zero() {
            return Err(ExtError::NotQuadratic);
        }
        let disc = b * b - QuadElt::from_int(4) * a * c;
        if sqrt_in_k(&disc).is_some() {
            return Err(ExtError::Reducible(disc));
        }
        let ai = a.inv().expect("nonzero");
        let m = Modulus { p: -(b * &ai), q: -(c * &ai) };
        Ok(ExtElt { u: QuadElt::zero(), v: QuadElt::one(), m: Some(Arc::new(m)) })
    }

    pub fn modulus(&self) -> Option<&Modulus> {
        self.m.as_deref()
    }

    fn pick(&self, o: &ExtElt) -> Option<Arc<Modulus>> {
        self.m.clone().or_else(|| o.m.clone())
    }

    pub fn in_k(&self) -> bool {
        self.v.is_zero()
    }

    /// The other root's image: λ ↦ p − λ.
    pub fn conj(&self) -> ExtElt {
        match &self.m {
            Some(m) => ExtElt { u: &self.u + &(&self.v * &m.p), v: -&self.v, m: self.m.clone() },
            None => self.clone(),
        }
    }

    pub fn norm(&self) -> QuadElt {
        match &self.m {
            Some(m) => &self.u * &self.u + &self.u * &self.v * &m.p - &self.v * &self.v * &m.q,
            None => self.u.clone(),
        }
    }
}

impl PartialEq for ExtElt {
    fn eq(&self, o: &Self) -> bool {
        self.u == o.u && self.v == o.v
    }
}

impl Eq for ExtElt {}

impl fmt::Debug for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "({}) + ({})*L", self.u, self.v)
        }
    }
}

impl Ring for ExtElt {
    fn ring_zero() -> Self {
        ExtElt::from_k(&QuadElt::zero())
    }
    fn ring_one() -> Self {
        ExtElt::from_k(&QuadElt::one())
    }
    fn plus(&self, o: &Self) -> Self {
        ExtElt { u: &self.u + &o.u, v: &self.v + &o.v, m: self.pick(o) }
    }
    fn minus(&self, o: &Self) -> Self {
        ExtElt { u: &self.u - &o.u, v: &self.v - &o.v, m: self.pick(o) }
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.pick(o);
        let vv = &self.v * &o.v;
        let (mut u, mut v) = (&self.u * &o.u, &self.u * &o.v + &self.v * &o.u);
        if !vv.is_zero() {
            let md = m.as_deref().expect("λ² needs a modulus");
            u += &(&vv * &md.q);
            v += &(&vv * &md.p);
        }
        ExtElt { u, v, m }
    }
    fn ring_is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn ring_from_int(n: i64) -> Self {
        ExtElt::from_k(&QuadElt::from_int(n))
    }
}

impl Field for ExtElt {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let ni = n.inv().ok()?;
        let c = self.conj();
        Some(ExtElt { u: &c.u * &ni, v: &c.v * &ni, m: c.m })
    }
}

impl ExtField for ExtElt {
    fn from_k(x: &QuadElt) -> Self {
        ExtElt { u: x.clone(), v: QuadElt::zero(), m: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    #[test]
    fn adjoin_sqrt_minus_one() {
        let i = ExtElt::root_of(&q(1, 0), &q(0, 0), &q(1, 0)).unwrap();
        assert_eq!(i.times(&i), ExtElt::from_k(&q(-1, 0)));
        let z = i.plus(&ExtElt::from_k(&q(2, 1)));
        assert_eq!(z.times(&z.inv().unwrap()), ExtElt::ring_one());
        assert!(ExtElt::root_of(&q(1, 0), &q(0, 0), &q(-5, 0)).is_err());
        assert_eq!(ExtElt::root_of(&q(0, 0), &q(1, 0), &q(1, 0)).unwrap_err(), ExtError::NotQuadratic);
    }

    #[test]
    fn root_satisfies_its_polynomial() {
        let (a, b, c) = (q(5, 1), q(18, 0), q(30, -5));
        let l = ExtElt::root_of(&a, &b, &c).unwrap();
        let val = l.times(&l).times(&ExtElt::from_k(&a)).plus(&l.times(&ExtElt::from_k(&b))).plus(&ExtElt::from_k(&c));
        assert!(val.ring_is_zero());
        assert_eq!(l.times(&l.conj()), ExtElt::from_k(&(c.div(&a).unwrap())));
    }
}
