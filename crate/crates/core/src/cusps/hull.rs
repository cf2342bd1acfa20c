//! Boundary of the convex hull of the totally positive points of a cusp
//! lattice, and the resulting cycle of rational curves.
//!
//! A point `a + bX` of O is drawn at `(φ1, φ2)`, its images under the two
//! real places. All comparisons are exact: every quantity has the form
//! `p + q√5` with integer `p, q`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::qfield::{FieldError, QuadElt};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HullError {
    #[error("lattice basis must be integral: {0}")]
    NotIntegral(String),
    #[error("lattice basis is degenerate")]
    Degenerate,
    #[error("multiplier {0} is not a unit")]
    NotUnit(String),
    #[error("multiplier {0} is not totally positive")]
    NotTotallyPositive(String),
    #[error("multiplier {0} is trivial")]
    TrivialUnit(String),
    #[error("multiplier does not preserve the lattice")]
    NotPreserved,
    #[error("coordinates overflow")]
    Overflow,
    #[error("hull construction failed: {0}")]
    Internal(String),
}

impl From<FieldError> for HullError {
    fn from(e: FieldError) -> Self {
        HullError::NotIntegral(e.to_string())
    }
}

/// `a + bX` with integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Pt {
    a: i128,
    b: i128,
}

impl Pt {
    fn of(x: &QuadElt) -> Result<Pt, HullError> {
        let (a, b) = x.int_coords()?;
        let a = i128::try_from(a).map_err(|_| HullError::Overflow)?;
        let b = i128::try_from(b).map_err(|_| HullError::Overflow)?;
        Ok(Pt { a, b })
    }
    fn quad(self) -> QuadElt {
        QuadElt::from_ints(self.a as i64, self.b as i64)
    }
    fn add(self, o: Pt) -> Pt {
        Pt { a: self.a + o.a, b: self.b + o.b }
    }
    fn sub(self, o: Pt) -> Pt {
        Pt { a: self.a - o.a, b: self.b - o.b }
    }
    fn mul(self, o: Pt) -> Pt {
        Pt { a: self.a * o.a + self.b * o.b, b: self.a * o.b + self.b * o.a + self.b * o.b }
    }
    fn galois(self) -> Pt {
        Pt { a: self.a + self.b, b: -self.b }
    }
    fn norm(self) -> i128 {
        self.a * self.a + self.a * self.b - self.b * self.b
    }
    /// Sign of the image at the first (`second = false`) or second place.
    fn sign(self, second: bool) -> Ordering {
        // 2(a + bφ) = (2a + b) ± b√5
        let q = if second { -self.b } else { self.b };
        sign_sqrt5(2 * self.a + self.b, q)
    }
    fn x(self) -> f64 {
        self.a as f64 + self.b as f64 * PHI
    }
    fn y(self) -> f64 {
        self.a as f64 + self.b as f64 * (1.0 - PHI)
    }
    fn totally_positive(self) -> bool {
        self.sign(false) == Ordering::Greater && self.sign(true) == Ordering::Greater
    }
}

const PHI: f64 = 1.618_033_988_749_895;

/// Sign of p + q√5.
fn sign_sqrt5(p: i128, q: i128) -> Ordering {
    match (p.cmp(&0), q.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (s, t) if s == t => s,
        (s, t) => {
            if p * p > 5 * q * q {
                s
            } else {
                t
            }
        }
    }
}

/// Orientation of the triangle (o, p, q) in the plane of the two places.
fn cross(o: Pt, p: Pt, q: Pt) -> Ordering {
    // u1 w2 - u2 w1 = φ1(z) - φ2(z) = √5 · (X-coefficient of z), z = u·ḡ(w)
    p.sub(o).mul(q.sub(o).galois()).b.cmp(&0)
}

fn cmp_x(p: Pt, q: Pt) -> Ordering {
    p.sub(q).sign(false)
}

fn cmp_y(p: Pt, q: Pt) -> Ordering {
    p.sub(q).sign(true)
}

/// A rank-2 Z-module T ⊂ O together with a totally positive unit
/// preserving it.
#[derive(Clone, Debug, Serialize)]
pub struct CuspLattice {
    pub t1: QuadElt,
    pub t2: QuadElt,
    pub unit: QuadElt,
}

impl CuspLattice {
    pub fn new(t1: QuadElt, t2: QuadElt, unit: QuadElt) -> Result<CuspLattice, HullError> {
        let l = CuspLattice { t1, t2, unit };
        l.validate()?;
        Ok(l)
    }

    fn pts(&self) -> Result<(Pt, Pt, Pt), HullError> {
        Ok((Pt::of(&self.t1)?, Pt::of(&self.t2)?, Pt::of(&self.unit)?))
    }

    fn validate(&self) -> Result<(), HullError> {
        let (p1, p2, u) = self.pts()?;
        if p1.a * p2.b - p1.b * p2.a == 0 {
            return Err(HullError::Degenerate);
        }
        if u.norm().abs() != 1 {
            return Err(HullError::NotUnit(self.unit.to_string()));
        }
        if !u.totally_positive() {
            return Err(HullError::NotTotallyPositive(self.unit.to_string()));
        }
        if u == (Pt { a: 1, b: 0 }) {
            return Err(HullError::TrivialUnit(self.unit.to_string()));
        }
        if self.coords(u.mul(p1)).is_none() || self.coords(u.mul(p2)).is_none() {
            return Err(HullError::NotPreserved);
        }
        Ok(())
    }

    fn det(&self) -> i128 {
        let (p1, p2, _) = self.pts().expect("validated");
        p1.a * p2.b - p1.b * p2.a
    }

    /// Coordinates of `w` in the basis (t1, t2), if `w` lies in T.
    fn coords(&self, w: Pt) -> Option<(i128, i128)> {
        let (p1, p2, _) = self.pts().ok()?;
        let d = p1.a * p2.b - p1.b * p2.a;
        let m = w.a * p2.b - p2.a * w.b;
        let n = p1.a * w.b - w.a * p1.b;
        (m % d == 0 && n % d == 0).then(|| (m / d, n / d))
    }

    pub fn contains(&self, w: &QuadElt) -> bool {
        Pt::of(w).ok().and_then(|p| self.coords(p)).is_some()
    }

    /// Index of T in O.
    pub fn index_in_oo(&self) -> u64 {
        self.det().unsigned_abs() as u64
    }

    /// Multiplication by the unit on (t1, t2); column j is the image of t_j.
    pub fn action_matrix(&self) -> [[i64; 2]; 2] {
        let (p1, p2, u) = self.pts().expect("validated");
        let (a, c) = self.coords(u.mul(p1)).expect("validated");
        let (b, d) = self.coords(u.mul(p2)).expect("validated");
        [[a as i64, b as i64], [c as i64, d as i64]]
    }

    /// The same lattice with basis replaced by `(t1, t2) · m`, `det m = ±1`.
    pub fn change_basis(&self, m: [[i64; 2]; 2]) -> Result<CuspLattice, HullError> {
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() != 1 {
            return Err(HullError::Degenerate);
        }
        let s = |i: i64, t: &QuadElt| t.scale(&num_rational::BigRational::from_integer(i.into()));
        let t1 = s(m[0][0], &self.t1) + s(m[1][0], &self.t2);
        let t2 = s(m[0][1], &self.t1) + s(m[1][1], &self.t2);
        CuspLattice::new(t1, t2, self.unit.clone())
    }

    /// The unit oriented so that it expands at the first place.
    fn expanding_unit(&self) -> Pt {
        let (_, _, u) = self.pts().expect("validated");
        if u.sub(Pt { a: 1, b: 0 }).sign(false) == Ordering::Greater {
            u
        } else {
            // inverse of a norm ±1 unit is ±galois
            let g = u.galois();
            if u.norm() == 1 {
                g
            } else {
                Pt { a: -g.a, b: -g.b }
            }
        }
    }

    fn inverse_unit(&self) -> Pt {
        let e = self.expanding_unit();
        let g = e.galois();
        if e.norm() == 1 {
            g
        } else {
            Pt { a: -g.a, b: -g.b }
        }
    }
}

/// Every totally positive `a + bX` with `φ1 <= φ1(hi_x)` and `φ2 <= φ2(hi_y)`.
fn points_in_box(hi_x: Pt, hi_y: Pt) -> Vec<Pt> {
    let (xm, ym) = (hi_x.x(), hi_y.y());
    let s5 = 5f64.sqrt();
    // φ1 - φ2 = b√5
    let b_lo = (-ym / s5).floor() as i128 - 1;
    let b_hi = (xm / s5).ceil() as i128 + 1;
    let mut out = vec![];
    for b in b_lo..=b_hi {
        let fb = b as f64;
        let a_lo = (-fb * PHI).max(-fb * (1.0 - PHI)).floor() as i128 - 1;
        let a_hi = (xm - fb * PHI).min(ym - fb * (1.0 - PHI)).ceil() as i128 + 1;
        for a in a_lo..=a_hi {
            let p = Pt { a, b };
            if p.totally_positive() && cmp_x(p, hi_x) != Ordering::Greater && cmp_y(p, hi_y) != Ordering::Greater {
                out.push(p);
            }
        }
    }
    out
}

/// Checks attached to a computed cycle.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HullCertificate {
    /// v_{k-1} + v_{k+1} = b_k v_k with integral b_k >= 2.
    pub recurrence: bool,
    /// Consecutive vertices form a basis of T with constant orientation.
    pub unimodular: bool,
    /// The unit maps the first vertex to the vertex one period later.
    pub periodic: bool,
    /// No totally positive lattice point of the window lies strictly on
    /// the origin side of any boundary edge.
    pub window_support: bool,
    pub window_points: usize,
}

impl HullCertificate {
    pub fn ok(&self) -> bool {
        self.recurrence && self.unimodular && self.periodic && self.window_support
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HullCycle {
    pub lattice: CuspLattice,
    /// One period of boundary vertices, starting at the trace-minimal one.
    pub vertices: Vec<QuadElt>,
    pub b_values: Vec<i64>,
    pub self_intersections: Vec<i64>,
    pub certificate: HullCertificate,
}

impl HullCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Self-intersections in canonical rotation and direction.
    pub fn canonical(&self) -> Vec<i64> {
        canonical_cycle(&self.b_values).into_iter().map(|b| -b).collect()
    }

    /// Vertices of periods `from..=to`; period j is the base period times
    /// the j-th power of the expanding unit.
    pub fn vertices_over(&self, from: i64, to: i64) -> Vec<QuadElt> {
        let e = self.lattice.expanding_unit().quad();
        let mut out = vec![];
        for j in from..=to {
            let f = e.pow(j).expect("unit");
            out.extend(self.vertices.iter().map(|v| v * &f));
        }
        out
    }

    /// Sum of b_k - 2 over the cycle.
    pub fn excess(&self) -> i64 {
        self.b_values.iter().map(|b| b - 2).sum()
    }
}

/// Lexicographically least rotation of the sequence or of its reverse.
pub fn canonical_cycle(b: &[i64]) -> Vec<i64> {
    let n = b.len();
    let mut best: Option<Vec<i64>> = None;
    let rev: Vec<i64> = b.iter().rev().copied().collect();
    for s in [b, &rev[..]] {
        for r in 0..n {
            let cand: Vec<i64> = s[r..].iter().chain(&s[..r]).copied().collect();
            if best.as_ref().is_none_or(|x| cand < *x) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Compute one period of the hull boundary.
///
/// v0 is the totally positive lattice point of least trace (least φ1 on
/// ties), which is a vertex. With ε the expanding unit, every boundary
/// point between v0 and εv0 lies in the box φ1 <= φ1(εv0), φ2 <= φ2(v0),
/// and nothing else in T⁺ lies in that box on the origin side of the
/// boundary, so the lower hull of the box points is that stretch.
pub fn resolve_cusp(l: &CuspLattice) -> Result<HullCycle, HullError> {
    l.validate()?;
    let n = l.det().abs();
    let e = l.expanding_unit();
    let ei = l.inverse_unit();
    let in_t = |p: &Pt| l.coords(*p).is_some();

    // n·O ⊂ T, so n is a totally positive lattice point of trace 2n
    let nn = Pt { a: n, b: 0 };
    let v0 = points_in_box(nn.mul(Pt { a: 2, b: 0 }), nn.mul(Pt { a: 2, b: 0 }))
        .into_iter()
        .filter(|p| in_t(p) && 2 * p.a + p.b <= 2 * n)
        .min_by(|p, q| (2 * p.a + p.b).cmp(&(2 * q.a + q.b)).then(cmp_x(*p, *q)))
        .ok_or_else(|| HullError::Internal("no totally positive lattice point".into()))?;
    let end = e.mul(v0);

    let mut pts: Vec<Pt> = points_in_box(end, v0).into_iter().filter(in_t).collect();
    pts.sort_by(|p, q| cmp_x(*p, *q).then(cmp_y(*q, *p)));
    let window_points = pts.len();

    let mut chain: Vec<Pt> = vec![];
    for &p in &pts {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) == Ordering::Less {
            chain.pop();
        }
        chain.push(p);
    }
    if chain.first() != Some(&v0) {
        return Err(HullError::Internal("trace-minimal point is not the first hull point".into()));
    }
    let cut = chain.iter().position(|p| *p == end).ok_or_else(|| HullError::Internal("period endpoint missing from hull".into()))?;
    let verts: Vec<Pt> = chain[..cut].to_vec();
    if verts.is_empty() {
        return Err(HullError::Internal("empty period".into()));
    }

    let k = verts.len();
    let at = |i: isize| -> Pt {
        let r = i.rem_euclid(k as isize) as usize;
        let shift = i.div_euclid(k as isize);
        let mut v = verts[r];
        for _ in 0..shift.max(0) {
            v = e.mul(v);
        }
        for _ in 0..(-shift).max(0) {
            v = ei.mul(v);
        }
        v
    };

    let mut b_values = vec![];
    let mut recurrence = true;
    for i in 0..k as isize {
        let v = at(i);
        let s = at(i - 1).add(at(i + 1));
        // s / v = s·ḡ(v) / N(v)
        let num = s.mul(v.galois());
        let nv = v.norm();
        if num.b != 0 || num.a % nv != 0 {
            return Err(HullError::Internal(format!("non-integral b at vertex {}", v.quad())));
        }
        let b = num.a / nv;
        recurrence &= b >= 2;
        b_values.push(b as i64);
    }

    let mut orient = None;
    let mut unimodular = true;
    for i in 0..k as isize {
        let (m1, n1) = l.coords(at(i)).unwrap();
        let (m2, n2) = l.coords(at(i + 1)).unwrap();
        let d = m1 * n2 - n1 * m2;
        unimodular &= d.abs() == 1 && orient.is_none_or(|o| o == d);
        orient = Some(d);
    }

    let periodic = at(k as isize) == end && e.mul(verts[0]) == end;

    let window_support = (0..k as isize).all(|i| {
        let (p, q) = (at(i), at(i + 1));
        pts.iter().all(|&w| cross(p, q, w) != Ordering::Less)
    });

    Ok(HullCycle {
        lattice: l.clone(),
        vertices: verts.iter().map(|p| p.quad()).collect(),
        self_intersections: b_values.iter().map(|b| -b).collect(),
        b_values,
        certificate: HullCertificate { recurrence, unimodular, periodic, window_support, window_points },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadElt {
        QuadElt::from_ints(a, b)
    }

    #[test]
    fn sign_sqrt5_cases() {
        assert_eq!(sign_sqrt5(3, -1), Ordering::Greater);
        assert_eq!(sign_sqrt5(2, -1), Ordering::Less);
        assert_eq!(sign_sqrt5(-3, 1), Ordering::Less);
        assert_eq!(sign_sqrt5(-2, 1), Ordering::Greater);
        assert_eq!(sign_sqrt5(0, 0), Ordering::Equal);
        assert_eq!(sign_sqrt5(0, -4), Ordering::Less);
    }

    #[test]
    fn lambda8_cycle() {
        let l = CuspLattice::new(q(2, 0), q(0, 2), q(5, -3)).unwrap();
        let c = resolve_cusp(&l).unwrap();
        assert_eq!(c.self_intersections, vec![-3, -3]);
        assert_eq!(c.vertices[0], q(2, 0));
        assert!(c.certificate.ok());
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(canonical_cycle(&[4, 2, 3]), vec![2, 3, 4]);
        assert_eq!(canonical_cycle(&[4, 3, 2]), vec![2, 3, 4]);
        assert_eq!(canonical_cycle(&[2, 4, 2, 2]), vec![2, 2, 2, 4]);
    }

    #[test]
    fn rejects_bad_units() {
        assert_eq!(CuspLattice::new(q(2, 0), q(0, 2), q(2, 0)).unwrap_err(), HullError::NotUnit("2".into()));
        assert!(matches!(CuspLattice::new(q(2, 0), q(0, 2), q(0, 1)), Err(HullError::NotTotallyPositive(_))));
        assert!(matches!(CuspLattice::new(q(2, 0), q(0, 2), q(1, 0)), Err(HullError::TrivialUnit(_))));
        assert_eq!(CuspLattice::new(q(2, 0), q(4, 0), q(2, 3)).unwrap_err(), HullError::Degenerate);
    }
}
