//! Loading the printed plane data and applying corrections.
//!
//! A correction in `[[errata]]` is applied only when the printed entry fails
//! a structural check: an orbit row that is not a partition, or a cubic that
//! is not homogeneous of degree three or not anti-invariant. Every erratum is
//! reported whether or not it fired.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::forms::{parse_cubic_monomial, Cubic, MonomialError};
use super::{mat_mul, ProjLine, ProjPoint, ProjTransform};
use crate::qfield::QuadElt;

pub const KLEIN_PLANE_TOML: &str = include_str!("../../data/klein_plane.toml");
pub const PROP65_TOML: &str = include_str!("../../data/prop65.toml");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneFixtureError {
    #[error("toml: {0}")]
    Toml(String),
    #[error("bad field element {0:?}")]
    Elt(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("{0}")]
    Invalid(String),
    #[error("erratum targets unknown entry {0}")]
    UnknownTarget(String),
}

#[derive(Deserialize)]
struct RawVertexOrbits {
    v: Vec<Vec<String>>,
    e: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawEdgeOrbits {
    orbits: Vec<Vec<String>>,
    blue: Vec<String>,
    red: Vec<String>,
}

#[derive(Deserialize)]
struct RawTriangles {
    size_three: Vec<[String; 3]>,
    size_two: Vec<[String; 3]>,
    size_three_sides: BTreeMap<String, Vec<String>>,
    size_two_sides: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize, Clone)]
struct RawErratum {
    target: String,
    #[serde(default)]
    replacement: Option<Vec<Vec<String>>>,
    #[serde(default)]
    remove: Option<String>,
    #[serde(default)]
    set: BTreeMap<String, String>,
    reason: String,
}

#[derive(Deserialize)]
struct RawKlein {
    points: BTreeMap<String, [String; 3]>,
    lines: Vec<[u8; 2]>,
    incidence: BTreeMap<String, [String; 2]>,
    transforms: BTreeMap<String, [[String; 3]; 3]>,
    vertex_orbits: BTreeMap<String, RawVertexOrbits>,
    edge_orbits: BTreeMap<String, RawEdgeOrbits>,
    partitions: BTreeMap<String, Vec<String>>,
    triangles: RawTriangles,
    #[serde(default)]
    errata: Vec<RawErratum>,
}

#[derive(Deserialize)]
struct RawProp65 {
    family: BTreeMap<String, [String; 3]>,
    even: BTreeMap<String, String>,
    cubics: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    errata: Vec<RawErratum>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErratumRecord {
    pub target: String,
    pub reason: String,
    pub applied: bool,
}

#[derive(Debug, Clone)]
pub struct EdgeOrbitTable {
    pub orbits: Vec<Vec<ProjLine>>,
    pub blue: Vec<ProjLine>,
    pub red: Vec<ProjLine>,
}

#[derive(Debug, Clone)]
pub struct Triangles {
    pub size_three: Vec<[ProjLine; 3]>,
    pub size_two: Vec<[ProjLine; 3]>,
    pub size_three_sides: BTreeMap<String, Vec<String>>,
    pub size_two_sides: BTreeMap<String, Vec<String>>,
}

/// The plane configuration and the printed cubics, after corrections.
#[derive(Debug, Clone)]
pub struct PlaneData {
    /// v1…v6 then e1…e10.
    pub points: Vec<(String, ProjPoint)>,
    pub lines: Vec<ProjLine>,
    pub incidence: BTreeMap<ProjLine, [String; 2]>,
    pub sigma1: ProjTransform,
    pub sigma2: ProjTransform,
    pub tau: ProjTransform,
    pub vertex_orbits: BTreeMap<String, (Vec<Vec<String>>, Vec<Vec<String>>)>,
    pub edge_orbits: BTreeMap<String, EdgeOrbitTable>,
    pub partitions: BTreeMap<String, Vec<String>>,
    pub triangles: Triangles,
    /// Coefficients of each family monomial in terms of (a1, a2, a3).
    pub family: Vec<([u8; 3], [QuadElt; 3])>,
    pub even: Cubic,
    pub cubics: BTreeMap<String, Cubic>,
    pub errata: Vec<ErratumRecord>,
}

fn elt(s: &str) -> Result<QuadElt, PlaneFixtureError> {
    s.parse().map_err(|_| PlaneFixtureError::Elt(s.to_string()))
}

fn line(s: &str) -> Result<ProjLine, PlaneFixtureError> {
    ProjLine::parse(s).map_err(|e| PlaneFixtureError::Invalid(e.to_string()))
}

fn lines(v: &[String]) -> Result<Vec<ProjLine>, PlaneFixtureError> {
    v.iter().map(|s| line(s)).collect()
}

fn point_key(name: &str) -> (u8, u32) {
    let (kind, idx) = name.split_at(1);
    (u8::from(kind != "v"), idx.parse().unwrap_or(u32::MAX))
}

/// Strict parse: every key must be a cubic monomial, each at most once.
pub fn parse_cubic(terms: &BTreeMap<String, String>) -> Result<Cubic, PlaneFixtureError> {
    let mut f = Cubic::zero();
    let mut seen = [false; 10];
    for (m, c) in terms {
        let i = parse_cubic_monomial(m)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(PlaneFixtureError::Invalid(format!("monomial {m} repeated")));
        }
        f.c[i] = elt(c)?;
    }
    Ok(f)
}

fn is_partition(rows: &[Vec<String>], universe: &[String]) -> bool {
    let mut all: Vec<&String> = rows.iter().flatten().collect();
    all.sort();
    let mut u: Vec<&String> = universe.iter().collect();
    u.sort();
    all == u
}

/// `F∘g = −F` for both involutions.
pub fn anti_invariant(f: &Cubic, s1: &ProjTransform, s2: &ProjTransform) -> bool {
    [s1, s2].iter().all(|g| f.compose(&g.m).add(f).is_zero())
}

impl PlaneData {
    pub fn load() -> Result<Self, PlaneFixtureError> {
        Self::from_strs(KLEIN_PLANE_TOML, PROP65_TOML)
    }

    pub fn from_strs(klein: &str, prop: &str) -> Result<Self, PlaneFixtureError> {
        let rk: RawKlein = toml::from_str(klein).map_err(|e| PlaneFixtureError::Toml(e.to_string()))?;
        let rp: RawProp65 = toml::from_str(prop).map_err(|e| PlaneFixtureError::Toml(e.to_string()))?;

        let mut points = vec![];
        for (n, c) in &rk.points {
            let p = ProjPoint::new([elt(&c[0])?, elt(&c[1])?, elt(&c[2])?]).map_err(|e| PlaneFixtureError::Invalid(format!("{n}: {e}")))?;
            points.push((n.clone(), p));
        }
        points.sort_by_key(|(n, _)| point_key(n));

        let mut transforms = BTreeMap::new();
        for (n, m) in &rk.transforms {
            let mut mm: [[QuadElt; 3]; 3] = Default::default();
            for i in 0..3 {
                for j in 0..3 {
                    mm[i][j] = elt(&m[i][j])?;
                }
            }
            let t = ProjTransform::new(n, mm).map_err(|e| PlaneFixtureError::Invalid(e.to_string()))?;
            transforms.insert(n.clone(), t);
        }
        let get = |n: &str| transforms.get(n).cloned().ok_or_else(|| PlaneFixtureError::Invalid(format!("missing transform {n}")));
        let (sigma1, sigma2, tau) = (get("sigma1")?, get("sigma2")?, get("tau")?);

        let mut vertex_orbits: BTreeMap<String, (Vec<Vec<String>>, Vec<Vec<String>>)> =
            rk.vertex_orbits.into_iter().map(|(k, v)| (k, (v.v, v.e))).collect();
        let mut edge_orbits = BTreeMap::new();
        for (k, v) in rk.edge_orbits {
            let t = EdgeOrbitTable {
                orbits: v.orbits.iter().map(|o| lines(o)).collect::<Result<_, _>>()?,
                blue: lines(&v.blue)?,
                red: lines(&v.red)?,
            };
            edge_orbits.insert(k, t);
        }
        let tri3 = |v: &[String; 3]| -> Result<[ProjLine; 3], PlaneFixtureError> { Ok([line(&v[0])?, line(&v[1])?, line(&v[2])?]) };
        let triangles = Triangles {
            size_three: rk.triangles.size_three.iter().map(tri3).collect::<Result<_, _>>()?,
            size_two: rk.triangles.size_two.iter().map(tri3).collect::<Result<_, _>>()?,
            size_three_sides: rk.triangles.size_three_sides,
            size_two_sides: rk.triangles.size_two_sides,
        };
        let mut incidence = BTreeMap::new();
        for (k, v) in rk.incidence {
            incidence.insert(line(&k)?, v);
        }

        let mut errata = vec![];
        let vnames: Vec<String> = points.iter().filter(|(n, _)| n.starts_with('v')).map(|(n, _)| n.clone()).collect();
        for er in &rk.errata {
            let (elt_name, field) = match er.target.strip_prefix("vertex_orbits.").and_then(|r| r.split_once('.')) {
                Some(x) => x,
                None => return Err(PlaneFixtureError::UnknownTarget(er.target.clone())),
            };
            let entry = vertex_orbits.get_mut(elt_name).ok_or_else(|| PlaneFixtureError::UnknownTarget(er.target.clone()))?;
            let slot = match field {
                "v" => &mut entry.0,
                "e" => &mut entry.1,
                _ => return Err(PlaneFixtureError::UnknownTarget(er.target.clone())),
            };
            let universe: Vec<String> = if field == "v" {
                vnames.clone()
            } else {
                points.iter().filter(|(n, _)| n.starts_with('e')).map(|(n, _)| n.clone()).collect()
            };
            let applied = !is_partition(slot, &universe);
            if applied {
                *slot = er.replacement.clone().ok_or_else(|| PlaneFixtureError::Invalid(format!("{}: no replacement", er.target)))?;
            }
            errata.push(ErratumRecord { target: er.target.clone(), reason: er.reason.clone(), applied });
        }

        let mut family = vec![];
        for (m, c) in &rp.family {
            let i = parse_cubic_monomial(m)?;
            family.push((super::forms::MONOMIALS[i], [elt(&c[0])?, elt(&c[1])?, elt(&c[2])?]));
        }
        family.sort_by_key(|(m, _)| super::forms::monomial_index(*m));
        let even = parse_cubic(&rp.even)?;

        let mut raw_cubics = rp.cubics.clone();
        for er in &rp.errata {
            let name = er.target.strip_prefix("cubics.").ok_or_else(|| PlaneFixtureError::UnknownTarget(er.target.clone()))?;
            let terms = raw_cubics.get_mut(name).ok_or_else(|| PlaneFixtureError::UnknownTarget(er.target.clone()))?;
            let valid = parse_cubic(terms).map(|f| anti_invariant(&f, &sigma1, &sigma2)).unwrap_or(false);
            if !valid {
                if let Some(r) = &er.remove {
                    terms.remove(r);
                }
                for (k, v) in &er.set {
                    terms.insert(k.clone(), v.clone());
                }
            }
            errata.push(ErratumRecord { target: er.target.clone(), reason: er.reason.clone(), applied: !valid });
        }
        let mut cubics = BTreeMap::new();
        for (n, t) in &raw_cubics {
            cubics.insert(n.clone(), parse_cubic(t).map_err(|e| PlaneFixtureError::Invalid(format!("cubic {n}: {e}")))?);
        }

        Ok(PlaneData {
            points,
            lines: rk.lines.iter().map(|&[i, j]| ProjLine { i, j }).collect(),
            incidence,
            sigma1,
            sigma2,
            tau,
            vertex_orbits,
            edge_orbits,
            partitions: rk.partitions,
            triangles,
            family,
            even,
            cubics,
            errata,
        })
    }

    pub fn point(&self, name: &str) -> Option<&ProjPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn e(&self, i: u8) -> &ProjPoint {
        self.point(&format!("e{i}")).expect("dodecahedral vertex")
    }

    /// Coefficient vector of the line through its two defining vertices.
    pub fn line_coords(&self, l: ProjLine) -> [QuadElt; 3] {
        super::cross(self.e(l.i).coords(), self.e(l.j).coords())
    }

    /// The third involution σ1 σ2 σ1.
    pub fn sigma3(&self) -> ProjTransform {
        ProjTransform { name: "sigma3".into(), m: mat_mul(&mat_mul(&self.sigma1.m, &self.sigma2.m), &self.sigma1.m) }
    }

    /// The six nontrivial group elements with their names and signs.
    pub fn group(&self) -> Vec<(ProjTransform, i64)> {
        let s3 = self.sigma3();
        let t2 = self.tau.power(2);
        vec![
            (ProjTransform { name: "id".into(), m: super::identity3() }, 1),
            (self.sigma1.clone(), -1),
            (self.sigma2.clone(), -1),
            (s3, -1),
            (self.tau.clone(), 1),
            (ProjTransform { name: "tau^2".into(), m: t2.m }, 1),
        ]
    }

    /// Named points of a partition such as "Q2".
    pub fn orbit_points(&self, name: &str) -> Vec<(String, ProjPoint)> {
        self.partitions
            .get(name)
            .map(|v| v.iter().filter_map(|n| self.point(n).map(|p| (n.clone(), p.clone()))).collect())
            .unwrap_or_default()
    }

    pub fn orbit_lines(&self, name: &str) -> Vec<ProjLine> {
        self.partitions.get(name).map(|v| v.iter().filter_map(|s| ProjLine::parse(s).ok()).collect()).unwrap_or_default()
    }

    pub fn cubic(&self, name: &str) -> Option<&Cubic> {
        self.cubics.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_shipped_fixtures() {
        let d = PlaneData::load().unwrap();
        assert_eq!(d.points.len(), 16);
        assert_eq!(d.points[0].0, "v1");
        assert_eq!(d.points[15].0, "e10");
        assert_eq!(d.lines.len(), 15);
        assert_eq!(d.family.len(), 6);
        assert_eq!(d.cubics.len(), 9);
    }

    #[test]
    fn errata_fire_only_on_invalid_entries() {
        let d = PlaneData::load().unwrap();
        let fired: Vec<_> = d.errata.iter().filter(|e| e.applied).map(|e| e.target.as_str()).collect();
        assert_eq!(fired, ["vertex_orbits.tau.v", "cubics.case1d", "cubics.candidate2"]);
        // an entry that is already valid is left alone
        let fixed = PROP65_TOML.replace("\"z1*z2^2\" = \"4 - 5*X\"", "\"z1*z2^2\" = \"8 - 5*X\"");
        let d2 = PlaneData::from_strs(KLEIN_PLANE_TOML, &fixed).unwrap();
        assert!(!d2.errata.iter().find(|e| e.target == "cubics.candidate2").unwrap().applied);
        assert_eq!(d2.cubics["candidate2"], d.cubics["candidate2"]);
    }

    #[test]
    fn strict_cubic_parse() {
        let m = BTreeMap::from([("z2^2".to_string(), "1".to_string())]);
        assert!(parse_cubic(&m).is_err());
        let m = BTreeMap::from([("z1*z1^2".to_string(), "1".to_string()), ("z1^3".to_string(), "2".to_string())]);
        assert!(parse_cubic(&m).is_err());
    }
}
