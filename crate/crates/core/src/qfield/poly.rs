//! Univariate polynomials over k and over Q, with exact root finding in k.
//!
//! Roots of `f` in k are found through the norm polynomial `f * galois(f)`,
//! which has rational coefficients: its real roots are isolated with Sturm
//! sequences, every pair of isolating intervals proposes a handful of
//! integral candidates `u + vX`, and each candidate is checked by exact
//! substitution.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QuadElt, Ring};

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Field for QuadElt {
    fn inv(&self) -> Option<Self> {
        QuadElt::inv(self).ok()
    }
}

impl Ring for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
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
        Zero::is_zero(self)
    }
    fn ring_from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    c: Vec<F>,
}

pub type KPoly = Poly<QuadElt>;
pub type QPoly = Poly<BigRational>;

impl<F: Ring> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.ring_is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(x: F) -> Self {
        Poly::new(vec![x])
    }

    /// `t - r`.
    pub fn linear_root(r: &F) -> Self {
        Poly::new(vec![F::ring_zero().minus(r), F::ring_one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::ring_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::ring_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::ring_zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&x.times(y));
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.c.iter().map(|x| x.times(k)).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::ring_zero(), |acc, a| acc.times(x).plus(a))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a.times(&F::ring_from_int(i as i64))).collect())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let li = d.lead().inv().expect("leading coefficient is a unit in a field");
        let mut r = self.c.clone();
        let mut q = vec![F::ring_zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap().times(&li);
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].minus(&f.times(dc));
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.ring_is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().inv().unwrap())
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Number of times `t - r` divides a nonzero polynomial.
    pub fn multiplicity(&self, r: &F) -> usize {
        let lin = Poly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() || p.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }
}

impl KPoly {
    pub fn galois(&self) -> Self {
        self.map(QuadElt::galois)
    }

    /// `f * galois(f)`, which has rational coefficients.
    pub fn norm_poly(&self) -> QPoly {
        let n = self.mul(&self.galois());
        n.map(|x| {
            debug_assert!(x.is_rational());
            x.a().clone()
        })
    }

    /// All distinct roots in k, sorted by their image at the first place.
    pub fn roots_in_k(&self) -> Vec<QuadElt> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.squarefree();
        let n = f.degree().unwrap();
        // t = s / d makes the polynomial monic with coefficients in O
        let mut d = BigInt::one();
        for c in &f.c {
            d = d.lcm(c.a().denom()).lcm(c.b().denom());
        }
        let dq = QuadElt::from_rational(BigRational::from_integer(d.clone()));
        let g = Poly::new((0..=n).map(|i| f.coeff(i) * dq.pow((n - i) as i64).unwrap()).collect());
        // isolate on f, whose coefficients are small, then scale by d
        let dr = BigRational::from_integer(d.clone());
        let width = BigRational::new(BigInt::one(), &d * 8);
        let real: Vec<_> = real_root_intervals_within(&f.norm_poly(), &width).into_iter().map(|(lo, hi)| (lo * &dr, hi * &dr)).collect();
        let mut out: Vec<QuadElt> = Vec::new();
        for (lo1, hi1) in &real {
            for (lo2, hi2) in &real {
                for cand in integral_candidates((lo1, hi1), (lo2, hi2)) {
                    if g.eval(&cand).is_zero() {
                        let r = cand.div(&dq).unwrap();
                        if !out.contains(&r) {
                            out.push(r);
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| x.cmp_at(y, super::Place::First));
        out
    }

    /// Roots in k with multiplicities.
    pub fn roots_with_multiplicity(&self) -> Vec<(QuadElt, usize)> {
        self.roots_in_k()
            .into_iter()
            .map(|r| {
                let m = self.multiplicity(&r);
                (r, m)
            })
            .collect()
    }
}

/// A square root in k, if one exists.
pub fn sqrt_in_k(x: &QuadElt) -> Option<QuadElt> {
    if x.is_zero() {
        return Some(QuadElt::zero());
    }
    let p = Poly::new(vec![-x.clone(), QuadElt::zero(), QuadElt::one()]);
    p.roots_in_k().into_iter().next()
}

/// Candidates `u + vX` with integers u, v whose embeddings fall in the
/// given intervals. The intervals are narrow, so the lists are tiny.
fn integral_candidates(first: (&BigRational, &BigRational), second: (&BigRational, &BigRational)) -> Vec<QuadElt> {
    let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
    let s5 = 5f64.sqrt();
    // r1 - r2 = v sqrt5, r1 + r2 = 2u + v
    let vlo = ((f(first.0) - f(second.1)) / s5).floor() as i64 - 1;
    let vhi = ((f(first.1) - f(second.0)) / s5).ceil() as i64 + 1;
    let mut out = vec![];
    for v in vlo..=vhi {
        let ulo = ((f(first.0) + f(second.0) - v as f64) / 2.0).floor() as i64 - 1;
        let uhi = ((f(first.1) + f(second.1) - v as f64) / 2.0).ceil() as i64 + 1;
        for u in ulo..=uhi {
            out.push(QuadElt::from_ints(u, v));
        }
    }
    out
}

/// Sturm sequence, each member scaled by a positive constant to a
/// primitive integer polynomial (low degree first).
fn sturm_chain(p: &QPoly) -> Vec<Vec<BigInt>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].divrem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(Poly::new(r.c.iter().map(|x| -x).collect()));
        // positive rescaling keeps the next remainder small
        let last = chain.len() - 1;
        let prim = primitive(&chain[last]);
        chain[last] = Poly::new(prim.into_iter().map(BigRational::from_integer).collect());
    }
    chain.iter().map(primitive).collect()
}

fn primitive(p: &QPoly) -> Vec<BigInt> {
    let den = p.c.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let ints: Vec<BigInt> = p.c.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Sign of an integer polynomial at a rational point.
fn sign_at(c: &[BigInt], x: &BigRational) -> Ordering {
    let (m, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    // sum of c_i m^i q^(n-i), built from the top coefficient down
    for ci in c.iter().rev() {
        acc = acc * m + ci * &qpow;
        qpow *= q;
    }
    acc.cmp(&BigInt::zero())
}

fn sign_changes(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = chain.iter().map(|q| sign_at(q, x)).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `[lo, hi]` of width below 1/8 for the distinct real
/// roots of a nonzero rational polynomial, in increasing order.
pub fn real_root_intervals(p: &QPoly) -> Vec<(BigRational, BigRational)> {
    real_root_intervals_within(p, &BigRational::new(1.into(), 8.into()))
}

/// As [`real_root_intervals`], with intervals narrower than `width`.
pub fn real_root_intervals_within(p: &QPoly, width: &BigRational) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let p = p.squarefree();
    let chain = sturm_chain(&p);
    let lead = p.lead().abs();
    let cauchy = p.c.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| a.max(b)) + BigRational::one();
    // a power of two keeps the bisection points dyadic
    let mut bound = BigRational::one();
    while bound < cauchy {
        bound = &bound + &bound;
    }
    let mut out = vec![];
    // (lo, hi, roots in (lo, hi)); endpoints are never roots
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &(&hi - &lo) < width {
            out.push((lo, hi));
            continue;
        }
        let mid = split_point(&p, &lo, &hi);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort();
    out
}

/// A point strictly inside (lo, hi) that is not a root of p.
fn split_point(p: &QPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let w = hi - lo;
    for (n, d) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)] {
        let m = lo + &w * BigRational::new(n.into(), d.into());
        if !Zero::is_zero(&p.eval(&m)) {
            return m;
        }
    }
    unreachable!("a polynomial of small degree has few roots")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    fn from_roots(rs: &[QuadElt]) -> KPoly {
        rs.iter().fold(Poly::constant(QuadElt::one()), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    #[test]
    fn divrem_reconstructs() {
        let a = from_roots(&[q(1, 2), q(-3, 1), q(0, 5)]);
        let b = from_roots(&[q(1, 1)]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
    }

    #[test]
    fn finds_integral_and_fractional_roots() {
        let rs = [q(2, -1), QuadElt::from_fracs(1, 3, -5, 2), q(7, 0)];
        let f = from_roots(&rs).scale(&q(3, 1));
        let mut got = f.roots_in_k();
        let mut want = rs.to_vec();
        let key = |x: &QuadElt, y: &QuadElt| x.cmp_at(y, crate::qfield::Place::First);
        got.sort_by(key);
        want.sort_by(key);
        assert_eq!(got, want);
    }

    #[test]
    fn conjugate_roots_are_separate() {
        // (t - X)(t - (1 - X)) = t^2 - t - 1 has both roots in k
        let f = from_roots(&[QuadElt::x(), QuadElt::x().galois()]);
        assert_eq!(f.roots_in_k().len(), 2);
    }

    #[test]
    fn irreducible_has_no_roots() {
        // t^2 - X is irreducible over k since X is not totally positive
        let f = Poly::new(vec![-QuadElt::x(), QuadElt::zero(), QuadElt::one()]);
        assert!(f.roots_in_k().is_empty());
        assert!(sqrt_in_k(&QuadElt::x()).is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_in_k(&q(5, 0)).map(|r| &r * &r), Some(q(5, 0)));
        let r = sqrt_in_k(&q(2, 3)).expect("X^4 = 2 + 3X is a square");
        assert_eq!(&r * &r, q(2, 3));
        assert!(sqrt_in_k(&q(3, 1)).is_none());
        assert!(sqrt_in_k(&q(2, 0)).is_none());
    }

    #[test]
    fn multiplicities() {
        let f = from_roots(&[q(1, 1), q(1, 1), q(0, 2)]);
        assert_eq!(f.roots_with_multiplicity(), vec![(q(1, 1), 2), (q(0, 2), 1)]);
    }

    #[test]
    fn sturm_counts() {
        // (t^2 - 2)(t - 1)
        let p: QPoly = Poly::new(vec![2, -2, -1, 1].into_iter().map(|n| BigRational::from_integer(n.into())).collect());
        let iv = real_root_intervals(&p);
        assert_eq!(iv.len(), 3);
        assert!(iv.iter().all(|(lo, hi)| hi - lo < BigRational::new(1.into(), 8.into())));
    }
}
