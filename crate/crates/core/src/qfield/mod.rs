//! Exact arithmetic in k = Q(X) with X^2 = X + 1.
//!
//! Elements are stored on the basis {1, X}. The ring of integers is
//! O = Z[X] and the order O_o = Z[1, 2X] consists of the elements with
//! integral coordinates and an even X-coordinate.

mod parse;
pub mod poly;
pub mod residue;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::ParseQuadError;
pub use residue::{ResidueElt, ResidueRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero in k")]
    DivisionByZero,
    #[error("element {0} is not integral")]
    NotIntegral(String),
}

/// An element `a + b*X` of k.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadElt {
    a: BigRational,
    b: BigRational,
}

/// One of the two real places of k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// X is sent to (1 + sqrt 5) / 2.
    First,
    /// X is sent to (1 - sqrt 5) / 2.
    Second,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadElt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadElt { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadElt { a: rat(a), b: rat(b) }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadElt { a, b: BigRational::zero() }
    }

    /// `(an/ad) + (bn/bd) X`.
    pub fn from_fracs(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QuadElt { a: BigRational::new(an.into(), ad.into()), b: BigRational::new(bn.into(), bd.into()) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The generator X.
    pub fn x() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The nontrivial automorphism, X -> 1 - X.
    pub fn galois(&self) -> Self {
        QuadElt { a: &self.a + &self.b, b: -&self.b }
    }

    /// `x * galois(x) = a^2 + ab - b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// `x + galois(x) = 2a + b`.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a + &self.b
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.galois();
        Ok(QuadElt { a: c.a / &n, b: c.b / n })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadElt { a: &self.a * r, b: &self.b * r }
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        Ok(acc)
    }

    /// True when both coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Membership in O_o = Z[1, 2X].
    pub fn in_oo(&self) -> bool {
        self.is_integral() && self.b.to_integer() % BigInt::from(2) == BigInt::zero()
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Result<(BigInt, BigInt), FieldError> {
        if !self.is_integral() {
            return Err(FieldError::NotIntegral(self.to_string()));
        }
        Ok((self.a.to_integer(), self.b.to_integer()))
    }

    /// Exact sign of the image under a real place.
    pub fn sign_at(&self, place: Place) -> Ordering {
        // a + b(1 +- s)/2 = (2a + b)/2 +- (b/2) s with s = sqrt 5
        let p = &self.a + &self.a + &self.b;
        let q = match place {
            Place::First => self.b.clone(),
            Place::Second => -&self.b,
        };
        sign_p_plus_q_sqrt5(&p, &q)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.sign_at(Place::First) == Ordering::Greater && self.sign_at(Place::Second) == Ordering::Greater
    }

    /// Compare the images of two elements under a real place.
    pub fn cmp_at(&self, other: &Self, place: Place) -> Ordering {
        (self - other).sign_at(place)
    }

    /// Floating image under a place. Only for rendering.
    pub fn approx(&self, place: Place) -> f64 {
        use num_traits::ToPrimitive;
        let s5 = 5f64.sqrt();
        let x = match place {
            Place::First => (1.0 + s5) / 2.0,
            Place::Second => (1.0 - s5) / 2.0,
        };
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * x
    }
}

/// Sign of p + q sqrt 5 for rationals p, q.
pub fn sign_p_plus_q_sqrt5(p: &BigRational, q: &BigRational) -> Ordering {
    let sp = p.cmp(&BigRational::zero());
    let sq = q.cmp(&BigRational::zero());
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: compare p^2 with 5 q^2
    let lhs = p * p;
    let rhs = q * q * rat(5);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::render(self))
    }
}

impl fmt::Debug for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElt({})", self)
    }
}

impl std::str::FromStr for QuadElt {
    type Err = ParseQuadError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl Serialize for QuadElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for QuadElt {
    fn from(n: i64) -> Self {
        QuadElt::from_int(n)
    }
}

impl<'a> Add<&'a QuadElt> for &'a QuadElt {
    type Output = QuadElt;
    fn add(self, o: &QuadElt) -> QuadElt {
        QuadElt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QuadElt> for &'a QuadElt {
    type Output = QuadElt;
    fn sub(self, o: &QuadElt) -> QuadElt {
        QuadElt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QuadElt> for &'a QuadElt {
    type Output = QuadElt;
    fn mul(self, o: &QuadElt) -> QuadElt {
        // (a + bX)(c + dX) = ac + bd + (ad + bc + bd) X
        let bd = &self.b * &o.b;
        QuadElt { a: &self.a * &o.a + &bd, b: &self.a * &o.b + &self.b * &o.a + bd }
    }
}

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt { a: -self.a, b: -self.b }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadElt> for QuadElt {
            type Output = QuadElt;
            fn $m(self, o: QuadElt) -> QuadElt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadElt> for QuadElt {
            type Output = QuadElt;
            fn $m(self, o: &QuadElt) -> QuadElt {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadElt> for &'a QuadElt {
            type Output = QuadElt;
            fn $m(self, o: QuadElt) -> QuadElt {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&QuadElt> for QuadElt {
    fn add_assign(&mut self, o: &QuadElt) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&QuadElt> for QuadElt {
    fn sub_assign(&mut self, o: &QuadElt) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

/// Minimal commutative-ring interface, shared by k and its finite extensions
/// used when a parameter is only known through its minimal polynomial.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_from_int(n: i64) -> Self;
}

impl Ring for QuadElt {
    fn ring_zero() -> Self {
        QuadElt::zero()
    }
    fn ring_one() -> Self {
        QuadElt::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_is_zero(&self) -> bool {
        QuadElt::is_zero(self)
    }
    fn ring_from_int(n: i64) -> Self {
        QuadElt::from_int(n)
    }
}

/// Floor of the image of `x` under a place, computed exactly.
pub fn floor_at(x: &QuadElt, place: Place) -> BigInt {
    // start from a float guess and correct with exact comparisons
    let guess = x.approx(place).floor();
    let mut n = if guess.is_finite() { BigInt::from(guess as i64) } else { BigInt::zero() };
    loop {
        let nq = QuadElt::from_rational(BigRational::from_integer(n.clone()));
        if x.cmp_at(&nq, place) == Ordering::Less {
            n -= 1;
            continue;
        }
        let n1 = QuadElt::from_rational(BigRational::from_integer(&n + 1));
        if x.cmp_at(&n1, place) != Ordering::Less {
            n += 1;
            continue;
        }
        return n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    #[test]
    fn defining_relation() {
        assert_eq!(&QuadElt::x() * &QuadElt::x(), q(1, 1));
    }

    #[test]
    fn p5_generator_squares_to_five() {
        assert_eq!(&q(1, -2) * &q(1, -2), q(5, 0));
    }

    #[test]
    fn lambda40_multiplier_check() {
        assert_eq!(&q(2, 3) * &q(6, -2), q(6, 8));
    }

    #[test]
    fn inverses() {
        assert_eq!(QuadElt::x().inv().unwrap(), q(-1, 1));
        assert_eq!(q(1, 0).inv().unwrap(), q(1, 0));
        // norm(2 - X) = 1, conj = 1 + X
        assert_eq!(q(2, -1).norm(), rat(1));
        assert_eq!(q(2, -1).inv().unwrap(), q(1, 1));
        assert_eq!(QuadElt::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn galois_norm_trace() {
        assert_eq!(QuadElt::x().galois(), q(1, -1));
        assert_eq!(q(1, -2).norm(), rat(-5));
        assert_eq!(QuadElt::x().trace(), rat(1));
    }

    #[test]
    fn signs() {
        assert_eq!(QuadElt::x().sign_at(Place::First), Ordering::Greater);
        assert_eq!(QuadElt::x().sign_at(Place::Second), Ordering::Less);
        assert!(q(2, -1).is_totally_positive());
        assert!(q(2, 0).is_totally_positive());
        assert!(!QuadElt::x().is_totally_positive());
        assert!(q(4, -2).is_totally_positive());
        assert_eq!(QuadElt::zero().sign_at(Place::First), Ordering::Equal);
    }

    #[test]
    fn powers_of_x_are_fibonacci() {
        assert_eq!(QuadElt::x().pow(12).unwrap(), q(89, 144));
        assert_eq!(QuadElt::x().pow(4).unwrap(), q(2, 3));
        assert_eq!(QuadElt::x().pow(-4).unwrap(), q(5, -3));
    }

    #[test]
    fn oo_membership() {
        assert!(q(3, 2).in_oo());
        assert!(!QuadElt::x().in_oo());
        assert!(!QuadElt::from_fracs(1, 2, 0, 1).in_oo());
    }

    #[test]
    fn floors() {
        assert_eq!(floor_at(&QuadElt::x(), Place::First), BigInt::from(1));
        assert_eq!(floor_at(&QuadElt::x(), Place::Second), BigInt::from(-1));
        assert_eq!(floor_at(&q(3, 0), Place::Second), BigInt::from(3));
    }
}
