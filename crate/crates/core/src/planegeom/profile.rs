//! How a cubic meets the fifteen lines.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ext::ExtField;
use super::fixture::PlaneData;
use super::forms::{BinaryCubic, Cubic, Form};
use super::verify::named_on_line;
use super::{cross, dot, proportional, ProjLine, ProjPoint, Vec3};
use crate::qfield::poly::{KPoly, Poly};
use crate::qfield::QuadElt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail")]
pub enum PointClass {
    IcosVertex(String),
    DodecVertex(String),
    /// Unnamed point where other cusp lines cross this one.
    LineCrossing(Vec<ProjLine>),
    PuncturePoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfilePoint {
    /// None when the point is not defined over k.
    pub point: Option<ProjPoint>,
    pub multiplicity: usize,
    /// Number of conjugate points sharing this entry (1 for k-points).
    pub conjugates: usize,
    pub class: PointClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionProfile {
    pub line: ProjLine,
    pub contains_line: bool,
    pub points: Vec<ProfilePoint>,
}

impl IntersectionProfile {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity * p.conjugates).sum()
    }

    pub fn distinct(&self) -> usize {
        self.points.iter().map(|p| p.conjugates).sum()
    }

    /// Points other than the sixteen named vertices.
    pub fn punctures(&self) -> usize {
        self.points
            .iter()
            .filter(|p| matches!(p.class, PointClass::LineCrossing(_) | PointClass::PuncturePoint))
            .map(|p| p.conjugates)
            .sum()
    }

    pub fn named(&self) -> Vec<String> {
        self.points
            .iter()
            .filter_map(|p| match &p.class {
                PointClass::IcosVertex(n) | PointClass::DodecVertex(n) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }
}

/// `(r : s)` with `r e_i + s e_j ∝ p`, for p on the line.
pub fn line_param<F: ExtField>(ei: &Vec3<F>, ej: &Vec3<F>, p: &Vec3<F>) -> (F, F) {
    let n = cross(ei, ej);
    let k = n.iter().position(|x| !x.ring_is_zero()).expect("distinct endpoints");
    let inv = n[k].inv().expect("nonzero");
    let r = cross(p, ej)[k].times(&inv);
    let s = cross(ei, p)[k].times(&inv);
    (r, s)
}

/// Multiplicity of the root `(r : s)` of a nonzero binary cubic.
pub fn root_multiplicity<F: ExtField>(b: &BinaryCubic<F>, r: &F, s: &F) -> usize {
    if s.ring_is_zero() {
        return b.multiplicity_at_infinity();
    }
    b.affine().multiplicity(&r.times(&s.inv().expect("nonzero")))
}

fn classify(data: &PlaneData, l: ProjLine, p: &ProjPoint) -> PointClass {
    if let Some((n, _)) = data.points.iter().find(|(_, q)| q == p) {
        return if n.starts_with('v') { PointClass::IcosVertex(n.clone()) } else { PointClass::DodecVertex(n.clone()) };
    }
    let others: Vec<ProjLine> = data.lines.iter().copied().filter(|&m| m != l && dot(&data.line_coords(m), p.coords()).is_zero()).collect();
    if others.is_empty() {
        PointClass::PuncturePoint
    } else {
        PointClass::LineCrossing(others)
    }
}

pub fn restrict_to_line<F: ExtField>(f: &Form<F>, data: &PlaneData, l: ProjLine) -> BinaryCubic<F> {
    f.restrict(&data.e(l.i).to_f(), &data.e(l.j).to_f())
}

/// Factor the restriction over k and classify each intersection point.
pub fn intersection_profile(f: &Cubic, data: &PlaneData, l: ProjLine) -> IntersectionProfile {
    let b = restrict_to_line(f, data, l);
    if b.is_zero() {
        return IntersectionProfile { line: l, contains_line: true, points: vec![] };
    }
    let (ei, ej) = (data.e(l.i).coords(), data.e(l.j).coords());
    let mut points = vec![];
    let mut push = |p: ProjPoint, m: usize| {
        let class = classify(data, l, &p);
        points.push(ProfilePoint { point: Some(p), multiplicity: m, conjugates: 1, class });
    };
    let inf = b.multiplicity_at_infinity();
    if inf > 0 {
        push(data.e(l.i).clone(), inf);
    }
    let aff: KPoly = b.affine();
    let mut rest = aff.clone();
    for (t, m) in aff.roots_with_multiplicity() {
        let c: [QuadElt; 3] = std::array::from_fn(|k| &(&t * &ei[k]) + &ej[k]);
        push(ProjPoint::new(c).expect("nonzero"), m);
        for _ in 0..m {
            rest = rest.divrem(&Poly::linear_root(&t)).0;
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        let sq = rest.squarefree().degree().unwrap_or(d);
        points.push(ProfilePoint { point: None, multiplicity: d / sq, conjugates: sq, class: PointClass::PuncturePoint });
    }
    IntersectionProfile { line: l, contains_line: false, points }
}

/// Distinct intersection points with a line, over an algebraic closure.
pub fn distinct_on_line<F: ExtField>(f: &Form<F>, data: &PlaneData, l: ProjLine) -> Option<usize> {
    restrict_to_line(f, data, l).distinct_roots()
}

pub fn named_zeros<F: ExtField>(f: &Form<F>, data: &PlaneData) -> Vec<String> {
    data.points.iter().filter(|(_, p)| f.eval(&p.to_f()).ring_is_zero()).map(|(n, _)| n.clone()).collect()
}

/// Puncture points a cubic determines on a triangle of lines: distinct
/// intersections with the sides, less named vertices, with each corner on
/// the curve counted once. None if the curve contains a side.
pub fn triangle_punctures<F: ExtField>(f: &Form<F>, data: &PlaneData, tri: &[ProjLine; 3]) -> Option<i64> {
    let mut total = 0i64;
    for &l in tri {
        let d = distinct_on_line(f, data, l)? as i64;
        let named = named_on_line(data, l).iter().filter(|n| f.eval(&data.point(n).unwrap().to_f()).ring_is_zero()).count() as i64;
        total += d - named;
    }
    for a in 0..3 {
        for b in a + 1..3 {
            let p = cross(&data.line_coords(tri[a]), &data.line_coords(tri[b]));
            let on_named = data.points.iter().any(|(_, q)| proportional(q.coords(), &p));
            if !on_named && f.eval(&p.each_ref().map(F::from_k)).ring_is_zero() {
                total -= 1;
            }
        }
    }
    Some(total)
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma65Report {
    pub profiles: Vec<IntersectionProfile>,
    pub punctures: BTreeMap<String, usize>,
    pub orbit_counts: BTreeMap<String, Vec<usize>>,
    pub meets_q: Vec<String>,
    pub bezout: bool,
    pub violations: Vec<String>,
}

impl Lemma65Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The per-line puncture constraints for a candidate curve.
pub fn lemma65_profile_check(f: &Cubic, data: &PlaneData) -> Lemma65Report {
    let mut violations = vec![];
    let mut profiles = vec![];
    let mut punctures = BTreeMap::new();
    for &l in &data.lines {
        let p = intersection_profile(f, data, l);
        if p.contains_line {
            violations.push(format!("curve contains {l}"));
        }
        punctures.insert(l.name(), p.punctures());
        profiles.push(p);
    }
    let bezout = profiles.iter().all(|p| p.contains_line || p.total_multiplicity() == 3);
    if !bezout {
        violations.push("multiplicities do not sum to 3".into());
    }
    let mut orbit_counts = BTreeMap::new();
    for cls in ["L1", "L2", "L3", "L4"] {
        let counts: Vec<usize> = data.orbit_lines(cls).iter().map(|l| punctures[&l.name()]).collect();
        if counts.windows(2).any(|w| w[0] != w[1]) {
            violations.push(format!("puncture counts vary across {cls}: {counts:?}"));
        }
        let bad = |c: &usize| match cls {
            "L1" => !(1..=2).contains(c),
            "L2" => !(3..=4).contains(c),
            _ => *c > 2,
        };
        for (l, c) in data.orbit_lines(cls).iter().zip(&counts) {
            if bad(c) {
                violations.push(format!("{l} in {cls} has {c} puncture points"));
            }
        }
        orbit_counts.insert(cls.to_string(), counts);
    }
    // on L3 and L4 lines the punctures must be fixed by the stabilizing involution
    let invs = [data.sigma1.clone(), data.sigma2.clone(), data.sigma3()];
    for cls in ["L3", "L4"] {
        for l in data.orbit_lines(cls) {
            let Some(g) = invs.iter().find(|g| super::verify::line_image(data, g, l) == Some(l)) else {
                violations.push(format!("no involution fixes {l}"));
                continue;
            };
            let prof = profiles.iter().find(|p| p.line == l).expect("profile");
            for pt in &prof.points {
                if !matches!(pt.class, PointClass::LineCrossing(_) | PointClass::PuncturePoint) {
                    continue;
                }
                let fixed = pt.point.as_ref().is_some_and(|p| proportional(&g.apply(p.coords()), p.coords()));
                if !fixed {
                    violations.push(format!("puncture on {l} is not fixed by {}", g.name));
                }
            }
        }
    }
    let zeros = named_zeros(f, data);
    let meets_q: Vec<String> =
        ["Q1", "Q2", "Q3"].iter().filter(|q| data.partitions[**q].iter().any(|n| zeros.contains(n))).map(|q| q.to_string()).collect();
    if meets_q.is_empty() {
        violations.push("curve meets none of Q1, Q2, Q3".into());
    }
    Lemma65Report { profiles, punctures, orbit_counts, meets_q, bezout, violations }
}
