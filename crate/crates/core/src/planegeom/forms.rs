//! Ternary cubic forms and binary cubics over a field.

use std::collections::BTreeMap;
use std::fmt;

use crate::qfield::poly::{Field, Poly};
use crate::qfield::{QuadElt, Ring};

/// Exponents of the ten cubic monomials, in the fixed order used for
/// coefficient vectors.
pub const MONOMIALS: [[u8; 3]; 10] =
    [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];

pub fn monomial_index(m: [u8; 3]) -> Option<usize> {
    MONOMIALS.iter().position(|x| *x == m)
}

pub fn monomial_name(m: [u8; 3]) -> String {
    let mut parts = vec![];
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("z{}", i + 1)),
            _ => parts.push(format!("z{}^{}", i + 1, e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("bad monomial {0:?}")]
    Syntax(String),
    #[error("monomial {0:?} has degree {1}, expected 3")]
    Degree(String, u32),
}

/// Parse `z1^2*z3` style monomials of any degree.
pub fn parse_monomial(s: &str) -> Result<[u8; 3], MonomialError> {
    let bad = || MonomialError::Syntax(s.to_string());
    let mut e = [0u8; 3];
    for f in s.split('*').map(str::trim) {
        let (v, p) = match f.split_once('^') {
            Some((v, p)) => (v, p.trim().parse::<u8>().map_err(|_| bad())?),
            None => (f, 1),
        };
        let i = match v.trim() {
            "z1" => 0,
            "z2" => 1,
            "z3" => 2,
            _ => return Err(bad()),
        };
        e[i] = e[i].checked_add(p).ok_or_else(bad)?;
    }
    Ok(e)
}

pub fn parse_cubic_monomial(s: &str) -> Result<usize, MonomialError> {
    let e = parse_monomial(s)?;
    let d: u32 = e.iter().map(|&x| x as u32).sum();
    monomial_index(e).ok_or(MonomialError::Degree(s.to_string(), d))
}

fn pow<F: Ring>(x: &F, n: u8) -> F {
    (0..n).fold(F::ring_one(), |acc, _| acc.times(x))
}

/// A ternary cubic form `Σ c_m z^m` over F.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<F> {
    pub c: [F; 10],
}

pub type Cubic = Form<QuadElt>;

impl<F: Ring> Form<F> {
    pub fn zero() -> Self {
        Form { c: std::array::from_fn(|_| F::ring_zero()) }
    }

    pub fn from_coeffs(c: [F; 10]) -> Self {
        Form { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.ring_is_zero())
    }

    pub fn coeff(&self, m: [u8; 3]) -> F {
        monomial_index(m).map(|i| self.c[i].clone()).unwrap_or_else(F::ring_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Form { c: std::array::from_fn(|i| self.c[i].plus(&o.c[i])) }
    }

    pub fn scale(&self, k: &F) -> Self {
        Form { c: std::array::from_fn(|i| self.c[i].times(k)) }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        Form { c: std::array::from_fn(|i| f(&self.c[i])) }
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        let mut acc = F::ring_zero();
        for (m, c) in MONOMIALS.iter().zip(&self.c) {
            if c.ring_is_zero() {
                continue;
            }
            let t = c.times(&pow(&p[0], m[0])).times(&pow(&p[1], m[1])).times(&pow(&p[2], m[2]));
            acc = acc.plus(&t);
        }
        acc
    }

    /// Partial derivative in z_{var+1}, as a quadratic form keyed by exponent.
    pub fn partial(&self, var: usize) -> BTreeMap<[u8; 3], F> {
        let mut out = BTreeMap::new();
        for (m, c) in MONOMIALS.iter().zip(&self.c) {
            if m[var] == 0 || c.ring_is_zero() {
                continue;
            }
            let mut e = *m;
            e[var] -= 1;
            out.insert(e, c.times(&F::ring_from_int(m[var] as i64)));
        }
        out
    }

    /// Directional derivative at `p` along `d`.
    pub fn derivative_at(&self, p: &[F; 3], d: &[F; 3]) -> F {
        let mut acc = F::ring_zero();
        for v in 0..3 {
            for (e, c) in self.partial(v) {
                let t = c.times(&pow(&p[0], e[0])).times(&pow(&p[1], e[1])).times(&pow(&p[2], e[2]));
                acc = acc.plus(&t.times(&d[v]));
            }
        }
        acc
    }

    /// `F(r p + s q)` as the coefficients of r^3, r^2 s, r s^2, s^3.
    pub fn restrict(&self, p: &[F; 3], q: &[F; 3]) -> BinaryCubic<F> {
        // each coordinate is the linear binary form p_i r + q_i s
        let mut out: [F; 4] = std::array::from_fn(|_| F::ring_zero());
        for (m, c) in MONOMIALS.iter().zip(&self.c) {
            if c.ring_is_zero() {
                continue;
            }
            let mut prod = vec![F::ring_one()];
            for v in 0..3 {
                for _ in 0..m[v] {
                    let mut next = vec![F::ring_zero(); prod.len() + 1];
                    for (k, a) in prod.iter().enumerate() {
                        next[k] = next[k].plus(&a.times(&p[v]));
                        next[k + 1] = next[k + 1].plus(&a.times(&q[v]));
                    }
                    prod = next;
                }
            }
            for k in 0..4 {
                out[k] = out[k].plus(&prod[k].times(c));
            }
        }
        BinaryCubic { c: out }
    }
}

impl Cubic {
    /// `F(g z)` for a 3×3 matrix g.
    pub fn compose(&self, g: &[[QuadElt; 3]; 3]) -> Cubic {
        let mut out = Cubic::zero();
        for (m, c) in MONOMIALS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            // product of linear forms row_v(g)·z, expanded over exponents
            let mut prod: BTreeMap<[u8; 3], QuadElt> = BTreeMap::from([([0, 0, 0], c.clone())]);
            for v in 0..3 {
                for _ in 0..m[v] {
                    let mut next: BTreeMap<[u8; 3], QuadElt> = BTreeMap::new();
                    for (e, a) in &prod {
                        for w in 0..3 {
                            if g[v][w].is_zero() {
                                continue;
                            }
                            let mut e2 = *e;
                            e2[w] += 1;
                            let t = a * &g[v][w];
                            let slot = next.entry(e2).or_insert_with(QuadElt::zero);
                            *slot += &t;
                        }
                    }
                    prod = next;
                }
            }
            for (e, a) in prod {
                let i = monomial_index(e).expect("cubic monomial");
                out.c[i] += &a;
            }
        }
        out
    }

    /// Scale so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Cubic {
        match self.c.iter().find(|x| !x.is_zero()) {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Equal up to a nonzero scalar.
    pub fn proportional(&self, o: &Cubic) -> bool {
        self.normalized() == o.normalized()
    }

    /// Coefficients keyed by monomial name, zero terms dropped.
    pub fn terms(&self) -> BTreeMap<String, String> {
        MONOMIALS.iter().zip(&self.c).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (monomial_name(*m), c.to_string())).collect()
    }
}

impl fmt::Display for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in MONOMIALS.iter().zip(&self.c) {
            if c.is_zero() {
                continue;
            }
            let name = monomial_name(*m);
            let s = c.to_string();
            if first {
                match s.as_str() {
                    "1" => write!(f, "{name}")?,
                    "-1" => write!(f, "-{name}")?,
                    _ if c.is_rational() => write!(f, "{s}*{name}")?,
                    _ => write!(f, "({s})*{name}")?,
                }
            } else {
                let neg = c.is_rational() && s.starts_with('-');
                let body = if neg { s[1..].to_string() } else { s.clone() };
                let sign = if neg { " - " } else { " + " };
                match body.as_str() {
                    "1" => write!(f, "{sign}{name}")?,
                    _ if c.is_rational() => write!(f, "{sign}{body}*{name}")?,
                    _ => write!(f, "{sign}({body})*{name}")?,
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Cubic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `c0 r^3 + c1 r^2 s + c2 r s^2 + c3 s^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCubic<F> {
    pub c: [F; 4],
}

impl<F: Field> BinaryCubic<F> {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.ring_is_zero())
    }

    pub fn discriminant(&self) -> F {
        let [a, b, c, d] = &self.c;
        let i = F::ring_from_int;
        let t1 = b.times(b).times(c).times(c);
        let t2 = i(4).times(a).times(c).times(c).times(c);
        let t3 = i(4).times(b).times(b).times(b).times(d);
        let t4 = i(27).times(a).times(a).times(d).times(d);
        let t5 = i(18).times(a).times(b).times(c).times(d);
        t1.minus(&t2).minus(&t3).minus(&t4).plus(&t5)
    }

    /// Coefficients of the Hessian covariant; all vanish exactly when the
    /// form is a cube of a linear form.
    pub fn hessian(&self) -> [F; 3] {
        let [a, b, c, d] = &self.c;
        let i = F::ring_from_int;
        [b.times(b).minus(&i(3).times(a).times(c)), b.times(c).minus(&i(9).times(a).times(d)), c.times(c).minus(&i(3).times(b).times(d))]
    }

    pub fn is_perfect_cube(&self) -> bool {
        !self.is_zero() && self.hessian().iter().all(|x| x.ring_is_zero())
    }

    /// Number of leading zero coefficients: the multiplicity of (1 : 0).
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.c.iter().take_while(|x| x.ring_is_zero()).count()
    }

    /// Dehomogenized at s = 1, as a polynomial in r (ascending).
    pub fn affine(&self) -> Poly<F> {
        Poly::new(self.c.iter().rev().cloned().collect())
    }

    /// Number of distinct projective roots over an algebraic closure.
    pub fn distinct_roots(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let inf = usize::from(self.multiplicity_at_infinity() > 0);
        let p = self.affine();
        let d = p.degree().unwrap_or(0);
        if d == 0 {
            return Some(inf);
        }
        let g = p.gcd(&p.derivative());
        Some(d - g.degree().unwrap_or(0) + inf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_cubic_monomial("z1^2*z3"), Ok(2));
        assert_eq!(parse_cubic_monomial("z3 * z3 * z3"), Ok(9));
        assert_eq!(parse_cubic_monomial("z2^2"), Err(MonomialError::Degree("z2^2".into(), 2)));
        assert!(parse_cubic_monomial("w^3").is_err());
        assert_eq!(monomial_name([1, 0, 2]), "z1*z3^2");
    }

    #[test]
    fn restrict_and_discriminant() {
        // z1 z2 (z1 - z2) on the line r(1,0,0) + s(0,1,0)
        let mut f = Cubic::zero();
        f.c[1] = q(1, 0);
        f.c[3] = q(-1, 0);
        let b = f.restrict(&[q(1, 0), q(0, 0), q(0, 0)], &[q(0, 0), q(1, 0), q(0, 0)]);
        assert_eq!(b.c, [q(0, 0), q(1, 0), q(-1, 0), q(0, 0)]);
        assert!(!b.discriminant().is_zero());
        assert_eq!(b.distinct_roots(), Some(3));
        let cube = BinaryCubic { c: [q(1, 0), q(3, 0), q(3, 0), q(1, 0)] };
        assert!(cube.is_perfect_cube());
        assert!(cube.discriminant().is_zero());
        assert_eq!(cube.distinct_roots(), Some(1));
    }

    #[test]
    fn display() {
        let mut f = Cubic::zero();
        f.c[0] = q(1, 0);
        f.c[6] = q(13, -8);
        f.c[8] = q(-1, 0);
        assert_eq!(f.to_string(), "z1^3 + (13 - 8*X)*z2^3 - z2*z3^2");
    }

    #[test]
    fn compose_identity_and_swap() {
        let mut f = Cubic::zero();
        f.c[1] = q(2, 1);
        let id = [[q(1, 0), q(0, 0), q(0, 0)], [q(0, 0), q(1, 0), q(0, 0)], [q(0, 0), q(0, 0), q(1, 0)]];
        assert_eq!(f.compose(&id), f);
        let swap = [[q(0, 0), q(1, 0), q(0, 0)], [q(1, 0), q(0, 0), q(0, 0)], [q(0, 0), q(0, 0), q(1, 0)]];
        assert_eq!(f.compose(&swap).coeff([1, 2, 0]), q(2, 1));
    }
}
