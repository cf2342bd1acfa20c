//! Recomputing the printed incidence and orbit tables, and the invariant
//! cubic family.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ext::ExtField;
use super::fixture::PlaneData;
use super::forms::{Cubic, Form, MONOMIALS};
use super::linalg::{nullspace, rref};
use super::singular::is_singular;
use super::{dot, proportional, ProjLine, ProjPoint, ProjTransform};
use crate::qfield::QuadElt;

#[derive(Debug, Clone, Serialize)]
pub struct LineIncidence {
    pub line: ProjLine,
    pub printed: Vec<String>,
    pub icosahedral: Vec<String>,
    pub dodecahedral: Vec<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceReport {
    pub lines: Vec<LineIncidence>,
    pub distinct_points: bool,
    pub distinct_lines: bool,
    pub mismatches: Vec<String>,
}

impl IncidenceReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn on_line(data: &PlaneData, l: ProjLine, p: &ProjPoint) -> bool {
    dot(&data.line_coords(l), p.coords()).is_zero()
}

/// Named points lying on a line.
pub fn named_on_line(data: &PlaneData, l: ProjLine) -> Vec<String> {
    data.points.iter().filter(|(_, p)| on_line(data, l, p)).map(|(n, _)| n.clone()).collect()
}

pub fn verify_incidence(data: &PlaneData) -> IncidenceReport {
    let mut mismatches = vec![];
    let mut out = vec![];
    for &l in &data.lines {
        let on = named_on_line(data, l);
        let ico: Vec<String> = on.iter().filter(|n| n.starts_with('v')).cloned().collect();
        let dod: Vec<String> = on.iter().filter(|n| n.starts_with('e')).cloned().collect();
        let mut printed: Vec<String> = data.incidence.get(&l).map(|x| x.to_vec()).unwrap_or_default();
        printed.sort();
        let mut want_dod = vec![format!("e{}", l.i), format!("e{}", l.j)];
        want_dod.sort();
        let mut dod_sorted = dod.clone();
        dod_sorted.sort();
        let ok = ico == printed && dod_sorted == want_dod;
        if !ok {
            mismatches.push(format!("line {l}: printed {printed:?}, found {ico:?} and {dod:?}"));
        }
        out.push(LineIncidence { line: l, printed, icosahedral: ico, dodecahedral: dod, ok });
    }
    let pts: BTreeSet<&ProjPoint> = data.points.iter().map(|(_, p)| p).collect();
    let distinct_points = pts.len() == data.points.len();
    let lcs: BTreeSet<ProjPoint> = data.lines.iter().filter_map(|&l| ProjPoint::new(data.line_coords(l)).ok()).collect();
    let distinct_lines = lcs.len() == data.lines.len() && data.lines.len() == 15;
    if !distinct_points {
        mismatches.push("named points are not pairwise distinct".into());
    }
    if !distinct_lines {
        mismatches.push("lines are not fifteen distinct lines".into());
    }
    IncidenceReport { lines: out, distinct_points, distinct_lines, mismatches }
}

/// Image of a named point, by name.
pub fn point_image(data: &PlaneData, g: &ProjTransform, name: &str) -> Option<String> {
    let p = data.point(name)?;
    let img = g.apply(p.coords());
    data.points.iter().find(|(_, q)| proportional(&img, q.coords())).map(|(n, _)| n.clone())
}

pub fn line_image(data: &PlaneData, g: &ProjTransform, l: ProjLine) -> Option<ProjLine> {
    let a = g.apply(data.e(l.i).coords());
    let b = g.apply(data.e(l.j).coords());
    let lc = super::cross(&a, &b);
    data.lines.iter().copied().find(|&m| proportional(&data.line_coords(m), &lc))
}

/// Pointwise fixed line: g fixes both defining vertices and a third point.
pub fn fixes_line_pointwise(data: &PlaneData, g: &ProjTransform, l: ProjLine) -> bool {
    let (a, b) = (data.e(l.i).coords(), data.e(l.j).coords());
    let c: [QuadElt; 3] = std::array::from_fn(|k| &a[k] + &b[k]);
    [a.clone(), b.clone(), c].iter().all(|p| proportional(&g.apply(p), p))
}

fn cycles<T: Ord + Clone>(items: &[T], f: impl Fn(&T) -> Option<T>) -> Option<Vec<Vec<T>>> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for x in items {
        if seen.contains(x) {
            continue;
        }
        let mut cyc = vec![x.clone()];
        seen.insert(x.clone());
        let mut y = f(x)?;
        while &y != x {
            if !seen.insert(y.clone()) {
                return None;
            }
            cyc.push(y.clone());
            y = f(&y)?;
        }
        out.push(cyc);
    }
    Some(out)
}

fn canon<T: Ord + Clone>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut v: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort();
            r
        })
        .collect();
    v.sort();
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub relations: BTreeMap<String, bool>,
    pub vertex_orbits: BTreeMap<String, bool>,
    pub edge_orbits: BTreeMap<String, bool>,
    pub fixed_line_colours: BTreeMap<String, bool>,
    pub partitions: BTreeMap<String, bool>,
    pub triangles: BTreeMap<String, bool>,
    pub mismatches: Vec<String>,
}

impl ActionReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn group_orbits<T: Ord + Clone>(items: &[T], gens: &[&dyn Fn(&T) -> Option<T>]) -> Vec<Vec<T>> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for x in items {
        if seen.contains(x) {
            continue;
        }
        let mut orb = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < orb.len() {
            for g in gens {
                if let Some(y) = g(&orb[i]) {
                    if seen.insert(y.clone()) {
                        orb.push(y);
                    }
                }
            }
            i += 1;
        }
        out.push(orb);
    }
    canon(&out)
}

pub fn verify_action(data: &PlaneData) -> ActionReport {
    let mut r = ActionReport {
        relations: BTreeMap::new(),
        vertex_orbits: BTreeMap::new(),
        edge_orbits: BTreeMap::new(),
        fixed_line_colours: BTreeMap::new(),
        partitions: BTreeMap::new(),
        triangles: BTreeMap::new(),
        mismatches: vec![],
    };
    let (s1, s2, t) = (&data.sigma1, &data.sigma2, &data.tau);
    let s3 = data.sigma3();
    let tau_is_product = {
        let p = s1.compose(s2, "s1s2");
        let flat = |m: &ProjTransform| m.m.iter().flatten().cloned().collect::<Vec<_>>();
        let (a, b) = (flat(&p), flat(t));
        a.iter().any(|x| !x.is_zero()) && (0..9).all(|i| (0..9).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
    };
    for (name, ok) in [
        ("sigma1^2", s1.power(2).is_projective_identity()),
        ("sigma2^2", s2.power(2).is_projective_identity()),
        ("tau^3", t.power(3).is_projective_identity()),
        ("tau", !t.is_projective_identity()),
        ("tau=sigma1*sigma2", tau_is_product),
    ] {
        if !ok {
            r.mismatches.push(format!("relation {name}"));
        }
        r.relations.insert(name.into(), ok);
    }

    let vnames: Vec<String> = data.points.iter().filter(|(n, _)| n.starts_with('v')).map(|(n, _)| n.clone()).collect();
    let enames: Vec<String> = data.points.iter().filter(|(n, _)| n.starts_with('e')).map(|(n, _)| n.clone()).collect();
    let elems: [(&str, &ProjTransform); 4] = [("sigma1", s1), ("sigma2", s2), ("sigma3", &s3), ("tau", t)];
    for (name, g) in elems {
        let printed = data.vertex_orbits.get(name);
        for (kind, names) in [("v", &vnames), ("e", &enames)] {
            let key = format!("{name}.{kind}");
            let got = cycles(names, |n| point_image(data, g, n));
            let want = printed.map(|(v, e)| if kind == "v" { v } else { e });
            let ok = match (&got, want) {
                (Some(a), Some(b)) => canon(a) == canon(b),
                _ => false,
            };
            if !ok {
                r.mismatches.push(format!("vertex orbits {key}: computed {got:?}"));
            }
            r.vertex_orbits.insert(key, ok);
        }
        let got = cycles(&data.lines, |&l| line_image(data, g, l));
        let printed = data.edge_orbits.get(name);
        let ok = match (&got, printed) {
            (Some(a), Some(b)) => canon(a) == canon(&b.orbits),
            _ => false,
        };
        if !ok {
            r.mismatches.push(format!("edge orbits {name}: computed {got:?}"));
        }
        r.edge_orbits.insert(name.into(), ok);
        if let Some(tbl) = printed {
            let fixed: Vec<ProjLine> = data.lines.iter().copied().filter(|&l| line_image(data, g, l) == Some(l)).collect();
            let mut red: Vec<ProjLine> = fixed.iter().copied().filter(|&l| fixes_line_pointwise(data, g, l)).collect();
            let mut blue: Vec<ProjLine> = fixed.iter().copied().filter(|&l| !fixes_line_pointwise(data, g, l)).collect();
            red.sort();
            blue.sort();
            let (mut pr, mut pb) = (tbl.red.clone(), tbl.blue.clone());
            pr.sort();
            pb.sort();
            let ok = red == pr && blue == pb;
            if !ok {
                r.mismatches.push(format!("fixed line colours {name}: red {red:?} blue {blue:?}"));
            }
            r.fixed_line_colours.insert(name.into(), ok);
        }
    }

    // S3 orbits of points and lines against the named partitions
    let f1 = |n: &String| point_image(data, s1, n);
    let f2 = |n: &String| point_image(data, s2, n);
    let all_names: Vec<String> = data.points.iter().map(|(n, _)| n.clone()).collect();
    let point_orbits = group_orbits(&all_names, &[&f1, &f2]);
    let l1 = |l: &ProjLine| line_image(data, s1, *l);
    let l2 = |l: &ProjLine| line_image(data, s2, *l);
    let line_orbits = group_orbits(&data.lines, &[&l1, &l2]);
    for (pname, members) in &data.partitions {
        let ok = if pname.starts_with('L') {
            let ls: Vec<ProjLine> = members.iter().filter_map(|s| ProjLine::parse(s).ok()).collect();
            line_orbits.contains(&canon(&[ls])[0])
        } else {
            point_orbits.contains(&canon(std::slice::from_ref(members))[0])
        };
        if !ok {
            r.mismatches.push(format!("partition {pname} is not an S3 orbit"));
        }
        r.partitions.insert(pname.clone(), ok);
    }
    let pts: BTreeSet<&String> = data.partitions.iter().filter(|(k, _)| !k.starts_with('L')).flat_map(|(_, v)| v).collect();
    let lns: BTreeSet<&String> = data.partitions.iter().filter(|(k, _)| k.starts_with('L')).flat_map(|(_, v)| v).collect();
    let sizes: usize = data.partitions.values().map(Vec::len).sum();
    let complete = pts.len() == 16 && lns.len() == 15 && sizes == 31;
    r.partitions.insert("complete".into(), complete);
    if !complete {
        r.mismatches.push("partitions do not cover all points and lines".into());
    }

    verify_triangles(data, &mut r);
    r
}

fn line_class(data: &PlaneData, l: ProjLine) -> Option<String> {
    data.partitions.iter().find(|(k, v)| k.starts_with('L') && v.contains(&l.name())).map(|(k, _)| k.clone())
}

fn point_class(data: &PlaneData, n: &str) -> Option<String> {
    data.partitions.iter().find(|(k, v)| !k.starts_with('L') && v.iter().any(|x| x == n)).map(|(k, _)| k.clone())
}

fn verify_triangles(data: &PlaneData, r: &mut ActionReport) {
    let image =
        |g: &ProjTransform, tri: &[ProjLine; 3]| -> Option<BTreeSet<ProjLine>> { tri.iter().map(|&l| line_image(data, g, l)).collect() };
    for (label, tris, sides) in [
        ("size_three", &data.triangles.size_three, &data.triangles.size_three_sides),
        ("size_two", &data.triangles.size_two, &data.triangles.size_two_sides),
    ] {
        let set: BTreeSet<BTreeSet<ProjLine>> = tris.iter().map(|t| t.iter().copied().collect()).collect();
        let closed = tris.iter().all(|t| [&data.sigma1, &data.sigma2].iter().all(|g| image(g, t).is_some_and(|i| set.contains(&i))));
        let transitive = {
            let first: BTreeSet<ProjLine> = tris[0].iter().copied().collect();
            let mut orb = BTreeSet::from([first]);
            for g in data.group().iter().map(|(g, _)| g) {
                let t: Vec<ProjLine> = tris[0].to_vec();
                if let Some(i) = image(g, &[t[0], t[1], t[2]]) {
                    orb.insert(i);
                }
            }
            orb == set
        };
        let nondegenerate = tris.iter().all(|t| {
            let (a, b, c) = (data.line_coords(t[0]), data.line_coords(t[1]), data.line_coords(t[2]));
            !dot(&a, &super::cross(&b, &c)).is_zero()
        });
        let mut sides_ok = true;
        for t in tris.iter() {
            for &l in t {
                let Some(cls) = line_class(data, l) else {
                    sides_ok = false;
                    continue;
                };
                let mut got: Vec<String> = named_on_line(data, l).iter().filter_map(|n| point_class(data, n)).collect();
                got.sort();
                let mut want = sides.get(&cls).cloned().unwrap_or_default();
                want.sort();
                if got != want {
                    sides_ok = false;
                    r.mismatches.push(format!("triangle side {l} carries {got:?}, printed {want:?}"));
                }
            }
        }
        let classes: Vec<BTreeSet<String>> = tris.iter().map(|t| t.iter().filter_map(|&l| line_class(data, l)).collect()).collect();
        let classes_ok = if label == "size_three" {
            classes.iter().all(|c| c.len() == 3)
        } else {
            classes.iter().all(|c| c.len() == 1 && c.contains("L1"))
        };
        let ok = closed && transitive && nondegenerate && sides_ok && classes_ok && set.len() == tris.len();
        if !ok {
            r.mismatches.push(format!("triangles {label}"));
        }
        r.triangles.insert(label.into(), ok);
    }
}

/// Vertices of the size-two triangles: the six pairwise crossings.
pub fn triangle_vertices(data: &PlaneData) -> Vec<ProjPoint> {
    let mut out = vec![];
    for t in &data.triangles.size_two {
        for a in 0..3 {
            for b in a + 1..3 {
                if let Ok(p) = line_intersection(data, t[a], t[b]) {
                    out.push(p);
                }
            }
        }
    }
    out
}

pub fn line_intersection(data: &PlaneData, l1: ProjLine, l2: ProjLine) -> Result<ProjPoint, super::PlaneError> {
    let (a, b) = (data.line_coords(l1), data.line_coords(l2));
    ProjPoint::new(super::cross(&a, &b)).map_err(|_| super::PlaneError::SameLine(l1.name(), l2.name()))
}

/// The solution spaces of `F∘σ = εF` for both involutions.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantFamily {
    pub dimension: usize,
    /// Basis normalized on z1^3, z2^3, z2 z3^2 (the a1, a2, a3 directions).
    pub basis: Vec<Cubic>,
    pub matches_printed: bool,
    pub mismatches: Vec<String>,
    pub even_dimension: usize,
    pub even: Option<Cubic>,
    pub even_matches_printed: bool,
    pub even_singular: Option<bool>,
}

impl InvariantFamily {
    pub fn ok(&self) -> bool {
        self.dimension == 3
            && self.matches_printed
            && self.even_dimension == 1
            && self.even_matches_printed
            && self.even_singular == Some(true)
    }

    /// `a1 B1 + a2 B2 + a3 B3` over any field containing k.
    pub fn member<F: ExtField>(&self, a: &[F; 3]) -> Form<F> {
        let mut f = Form::<F>::zero();
        for (b, ak) in self.basis.iter().zip(a) {
            f = f.add(&b.map(F::from_k).scale(ak));
        }
        f
    }
}

fn solve_invariant(data: &PlaneData, sign: i64) -> Vec<Cubic> {
    let mut rows: Vec<Vec<QuadElt>> = vec![];
    for g in [&data.sigma1, &data.sigma2] {
        let cols: Vec<Cubic> = (0..10)
            .map(|k| {
                let mut m = Cubic::zero();
                m.c[k] = QuadElt::one();
                let mut img = m.compose(&g.m);
                img.c[k] -= &QuadElt::from_int(sign);
                img
            })
            .collect();
        for out in 0..10 {
            rows.push(cols.iter().map(|c| c.c[out].clone()).collect());
        }
    }
    nullspace(&rows, 10).into_iter().map(|v| Cubic::from_coeffs(std::array::from_fn(|i| v[i].clone()))).collect()
}

const FREE: [[u8; 3]; 3] = [[3, 0, 0], [0, 3, 0], [0, 1, 2]];

pub fn invariant_family(data: &PlaneData) -> InvariantFamily {
    let odd = solve_invariant(data, -1);
    let even = solve_invariant(data, 1);
    let mut mismatches = vec![];
    let mut basis = vec![];
    if odd.len() == 3 {
        // change basis so the free monomials carry the identity matrix
        let free_idx: Vec<usize> = FREE.iter().map(|m| super::forms::monomial_index(*m).unwrap()).collect();
        let mut rows: Vec<Vec<QuadElt>> = vec![];
        for k in 0..3 {
            let mut row: Vec<QuadElt> = odd.iter().map(|b| b.c[free_idx[k]].clone()).collect();
            row.extend((0..3).map(|j| QuadElt::from_int((j == k) as i64)));
            rows.push(row);
        }
        let (red, piv) = rref(&rows, 6);
        if piv == [0, 1, 2] {
            // columns 3..6 now hold the inverse of the free-coefficient matrix
            for k in 0..3 {
                let mut f = Cubic::zero();
                for (j, b) in odd.iter().enumerate() {
                    f = f.add(&b.scale(&red[j][3 + k]));
                }
                basis.push(f);
            }
        } else {
            mismatches.push("free monomials do not parametrize the family".into());
        }
    } else {
        mismatches.push(format!("family has dimension {}", odd.len()));
    }
    if basis.len() == 3 {
        for (i, m) in MONOMIALS.iter().enumerate() {
            let printed = data.family.iter().find(|(pm, _)| pm == m).map(|(_, c)| c.clone());
            for k in 0..3 {
                let want = printed.as_ref().map(|c| c[k].clone()).unwrap_or_else(QuadElt::zero);
                if basis[k].c[i] != want {
                    mismatches.push(format!(
                        "{} coefficient of a{}: computed {}, printed {}",
                        super::forms::monomial_name(*m),
                        k + 1,
                        basis[k].c[i],
                        want
                    ));
                }
            }
        }
    }
    let even_cubic = if even.len() == 1 { Some(even[0].normalized()) } else { None };
    let even_matches_printed = even_cubic.as_ref().is_some_and(|c| c.proportional(&data.even));
    let even_singular = even_cubic.as_ref().map(is_singular);
    InvariantFamily {
        dimension: odd.len(),
        matches_printed: mismatches.is_empty(),
        basis,
        mismatches,
        even_dimension: even.len(),
        even: even_cubic,
        even_matches_printed,
        even_singular,
    }
}

/// A linear condition on the family parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// F(p) = 0.
    Vanish(ProjPoint),
    /// ∇F(p)·d = 0; together with `Vanish(p)` this is tangency along d.
    Tangent { point: ProjPoint, direction: ProjPoint },
}

impl Condition {
    pub fn row(&self, fam: &InvariantFamily) -> Vec<QuadElt> {
        match self {
            Condition::Vanish(p) => fam.basis.iter().map(|b| b.eval(p.coords())).collect(),
            Condition::Tangent { point, direction } => {
                fam.basis.iter().map(|b| b.derivative_at(point.coords(), direction.coords())).collect()
            }
        }
    }
}

/// Kernel of the conditions in (a1, a2, a3).
pub fn solve_conditions(fam: &InvariantFamily, conds: &[Condition]) -> Vec<[QuadElt; 3]> {
    let rows: Vec<Vec<QuadElt>> = conds.iter().map(|c| c.row(fam)).collect();
    nullspace(&rows, 3).into_iter().map(|v| [v[0].clone(), v[1].clone(), v[2].clone()]).collect()
}

/// Tangency to line l at p: vanish there and along the line.
pub fn tangency(data: &PlaneData, l: ProjLine, p: &ProjPoint) -> Vec<Condition> {
    let ei = data.e(l.i);
    let d = if proportional(ei.coords(), p.coords()) { data.e(l.j) } else { ei };
    vec![Condition::Vanish(p.clone()), Condition::Tangent { point: p.clone(), direction: d.clone() }]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_a_permutation() {
        let items = [1, 2, 3, 4];
        let c = cycles(&items, |x| Some([2, 1, 3, 4][*x as usize - 1])).unwrap();
        assert_eq!(c, vec![vec![1, 2], vec![3], vec![4]]);
        assert!(cycles(&items, |_| Some(1)).is_none());
    }
}
