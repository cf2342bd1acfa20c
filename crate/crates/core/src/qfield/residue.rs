//! Residue rings of O: O/2O = F4, O/p5 = F5, O/4O = (Z/4)[X], and the CRT
//! pair O/4p5. A generic O/nO is kept for tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{FieldError, QuadElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueRing {
    /// O/2O, the field with four elements.
    Mod2,
    /// O/p5 with p5 = (1 - 2X); X reduces to 3.
    ModP5,
    /// O/4O = (Z/4)[X].
    Mod4,
    /// O/4p5, stored as a (Mod4, ModP5) pair.
    Mod4P5,
    /// O/nO for an arbitrary modulus.
    ModN(u32),
}

impl ResidueRing {
    /// Number of elements.
    pub fn size(self) -> u32 {
        match self {
            ResidueRing::Mod2 => 4,
            ResidueRing::ModP5 => 5,
            ResidueRing::Mod4 => 16,
            ResidueRing::Mod4P5 => 80,
            ResidueRing::ModN(n) => n * n,
        }
    }

    /// Stable one-byte tag used by the binary cache.
    pub fn tag(self) -> u8 {
        match self {
            ResidueRing::Mod2 => 1,
            ResidueRing::ModP5 => 2,
            ResidueRing::Mod4 => 3,
            ResidueRing::Mod4P5 => 4,
            ResidueRing::ModN(_) => 5,
        }
    }

    fn poly_modulus(self) -> Option<u32> {
        match self {
            ResidueRing::Mod2 => Some(2),
            ResidueRing::Mod4 | ResidueRing::Mod4P5 => Some(4),
            ResidueRing::ModN(n) => Some(n),
            ResidueRing::ModP5 => None,
        }
    }

    pub fn zero(self) -> ResidueElt {
        ResidueElt { ring: self, a: 0, b: 0, c: 0 }
    }

    pub fn one(self) -> ResidueElt {
        let c = if self == ResidueRing::Mod4P5 { 1 } else { 0 };
        ResidueElt { ring: self, a: 1 % self.poly_modulus().unwrap_or(5), b: 0, c }
    }

    pub fn from_int(self, n: i64) -> ResidueElt {
        self.reduce_ints(&BigInt::from(n), &BigInt::from(0))
    }

    /// Decode an element from its index in `0..size()`.
    pub fn element(self, idx: u32) -> ResidueElt {
        match self {
            ResidueRing::ModP5 => ResidueElt { ring: self, a: idx, b: 0, c: 0 },
            ResidueRing::Mod4P5 => {
                let m = idx % 16;
                ResidueElt { ring: self, a: m % 4, b: m / 4, c: idx / 16 }
            }
            _ => {
                let n = self.poly_modulus().unwrap();
                ResidueElt { ring: self, a: idx % n, b: idx / n, c: 0 }
            }
        }
    }

    pub fn elements(self) -> impl Iterator<Item = ResidueElt> {
        (0..self.size()).map(move |i| self.element(i))
    }

    fn reduce_ints(self, a: &BigInt, b: &BigInt) -> ResidueElt {
        let m = |v: &BigInt, n: u32| -> u32 { v.mod_floor(&BigInt::from(n)).to_u32().unwrap() };
        match self {
            ResidueRing::ModP5 => ResidueElt { ring: self, a: m(&(a + b * 3), 5), b: 0, c: 0 },
            ResidueRing::Mod4P5 => ResidueElt { ring: self, a: m(a, 4), b: m(b, 4), c: m(&(a + b * 3), 5) },
            _ => {
                let n = self.poly_modulus().unwrap();
                ResidueElt { ring: self, a: m(a, n), b: m(b, n), c: 0 }
            }
        }
    }
}

/// An element of a residue ring, always stored in reduced coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElt {
    ring: ResidueRing,
    a: u32,
    b: u32,
    c: u32,
}

impl ResidueElt {
    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    /// Polynomial coordinates `(a, b)` for the rings of the form (Z/n)[X];
    /// for ModP5 this is `(residue, 0)`.
    pub fn coords(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// The mod-p5 component of a Mod4P5 element.
    pub fn p5_part(&self) -> Option<ResidueElt> {
        (self.ring == ResidueRing::Mod4P5).then_some(ResidueElt { ring: ResidueRing::ModP5, a: self.c, b: 0, c: 0 })
    }

    /// The Mod4 component of a Mod4P5 element.
    pub fn mod4_part(&self) -> Option<ResidueElt> {
        (self.ring == ResidueRing::Mod4P5).then_some(ResidueElt { ring: ResidueRing::Mod4, a: self.a, b: self.b, c: 0 })
    }

    /// Index in `0..ring.size()`; inverse of [`ResidueRing::element`].
    pub fn index(&self) -> u32 {
        match self.ring {
            ResidueRing::ModP5 => self.a,
            ResidueRing::Mod4P5 => self.a + 4 * self.b + 16 * self.c,
            r => self.a + r.poly_modulus().unwrap() * self.b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.ring, o.ring, "residue ring mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        match self.ring {
            ResidueRing::ModP5 => ResidueElt { a: (self.a + o.a) % 5, ..*self },
            r => {
                let n = r.poly_modulus().unwrap();
                ResidueElt { ring: r, a: (self.a + o.a) % n, b: (self.b + o.b) % n, c: (self.c + o.c) % 5 }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self.ring {
            ResidueRing::ModP5 => ResidueElt { a: (5 - self.a) % 5, ..*self },
            r => {
                let n = r.poly_modulus().unwrap();
                ResidueElt { ring: r, a: (n - self.a) % n, b: (n - self.b) % n, c: (5 - self.c) % 5 }
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        match self.ring {
            ResidueRing::ModP5 => ResidueElt { a: (self.a * o.a) % 5, ..*self },
            r => {
                let n = r.poly_modulus().unwrap() as u64;
                let (a, b, c, d) = (self.a as u64, self.b as u64, o.a as u64, o.b as u64);
                let bd = b * d;
                ResidueElt { ring: r, a: ((a * c + bd) % n) as u32, b: ((a * d + b * c + bd) % n) as u32, c: (self.c * o.c) % 5 }
            }
        }
    }

    /// Is the element in the prime subfield F2 of F4 (only meaningful for Mod2).
    pub fn in_prime_subfield(&self) -> bool {
        self.b == 0
    }
}

/// Reduce an integral element of k into a residue ring.
pub fn reduce(x: &QuadElt, ring: ResidueRing) -> Result<ResidueElt, FieldError> {
    let (a, b) = x.int_coords()?;
    Ok(ring.reduce_ints(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_reductions() {
        assert_eq!(reduce(&QuadElt::x(), ResidueRing::ModP5).unwrap().coords(), (3, 0));
        assert!(reduce(&QuadElt::from_ints(1, -2), ResidueRing::ModP5).unwrap().is_zero());
    }

    #[test]
    fn mod2_reductions() {
        assert!(reduce(&QuadElt::from_ints(0, 2), ResidueRing::Mod2).unwrap().is_zero());
        assert_eq!(reduce(&QuadElt::from_ints(1, 1), ResidueRing::Mod2).unwrap().coords(), (1, 1));
    }

    #[test]
    fn ring_sizes() {
        assert_eq!(ResidueRing::Mod2.elements().count(), 4);
        assert_eq!(ResidueRing::ModP5.elements().count(), 5);
        assert_eq!(ResidueRing::Mod4.elements().count(), 16);
        assert_eq!(ResidueRing::Mod4P5.elements().count(), 80);
    }

    #[test]
    fn index_round_trip() {
        for r in [ResidueRing::Mod2, ResidueRing::ModP5, ResidueRing::Mod4, ResidueRing::Mod4P5, ResidueRing::ModN(6)] {
            for i in 0..r.size() {
                assert_eq!(r.element(i).index(), i);
            }
        }
    }

    #[test]
    fn non_integral_rejected() {
        assert!(reduce(&QuadElt::from_fracs(1, 2, 0, 1), ResidueRing::Mod2).is_err());
    }

    #[test]
    fn f4_is_a_field() {
        let r = ResidueRing::Mod2;
        for x in r.elements().filter(|x| !x.is_zero()) {
            assert!(r.elements().any(|y| x.mul(&y) == r.one()));
        }
    }

    #[test]
    fn negative_coordinates_reduce_into_range() {
        let e = reduce(&QuadElt::from_ints(-1, -3), ResidueRing::Mod4P5).unwrap();
        assert_eq!(e.coords(), (3, 1));
        assert_eq!(e.p5_part().unwrap().coords(), (0, 0)); // -1 - 9 = -10
    }
}
