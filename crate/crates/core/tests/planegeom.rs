use wemono::planegeom::cases::{Check, Contact, Where};
use wemono::planegeom::profile::{intersection_profile, triangle_punctures};
use wemono::planegeom::verify::{line_intersection, named_on_line};
use wemono::planegeom::*;
use wemono::qfield::QuadElt;

fn data() -> PlaneData {
    PlaneData::load().unwrap()
}

fn l(s: &str) -> ProjLine {
    ProjLine::parse(s).unwrap()
}

#[test]
fn configuration_checks_pass() {
    let d = data();
    let inc = verify_incidence(&d);
    assert!(inc.ok(), "{:?}", inc.mismatches);
    let act = verify_action(&d);
    assert!(act.ok(), "{:?}", act.mismatches);
}

/// Incidence recomputed from 3×3 determinants, without the line coordinates.
#[test]
fn named_points_on_lines_match_determinants() {
    let d = data();
    for &ln in &d.lines {
        let (a, b) = (d.e(ln.i).coords(), d.e(ln.j).coords());
        let expect: Vec<String> =
            d.points.iter().filter(|(_, p)| det3(&[a.clone(), b.clone(), p.coords().clone()]).is_zero()).map(|(n, _)| n.clone()).collect();
        let mut got = named_on_line(&d, ln);
        got.sort();
        let mut expect = expect;
        expect.sort();
        assert_eq!(got, expect, "{ln}");
    }
}

#[test]
fn line_crossings() {
    let d = data();
    assert_eq!(&line_intersection(&d, l("1,5"), l("1,7")).unwrap(), d.e(1));
    assert_eq!(&line_intersection(&d, l("1,9"), l("4,9")).unwrap(), d.e(9));
    let p = line_intersection(&d, l("1,5"), l("4,8")).unwrap();
    assert!(d.points.iter().all(|(_, q)| q != &p));
    assert!(line_intersection(&d, l("1,5"), l("1,5")).is_err());
}

#[test]
fn invariant_family_has_printed_shape() {
    let d = data();
    let fam = invariant_family(&d);
    assert_eq!(fam.dimension, 3);
    assert!(fam.matches_printed, "{:?}", fam.mismatches);
    assert_eq!(fam.even_dimension, 1);
    assert_eq!(fam.even_singular, Some(true));
    assert!(fam.even.as_ref().unwrap().proportional(&d.even));
}

/// The printed family table, read independently of the computed basis.
fn printed_member(d: &PlaneData, a: &[QuadElt; 3]) -> Cubic {
    let mut f = Cubic::zero();
    for (m, coef) in &d.family {
        let v = (0..3).fold(QuadElt::zero(), |acc, k| acc + &coef[k] * &a[k]);
        f.c[wemono::planegeom::forms::monomial_index(*m).unwrap()] = v;
    }
    f
}

#[test]
fn family_member_agrees_with_printed_table() {
    let d = data();
    let fam = invariant_family(&d);
    for a in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, -3, 5], [-1, 4, 7]] {
        let a = a.map(QuadElt::from_int);
        assert_eq!(fam.member(&a), printed_member(&d, &a));
    }
}

#[test]
fn candidates_transform_by_the_sign_character() {
    let d = data();
    for n in ["candidate1", "candidate2"] {
        let f = d.cubic(n).unwrap();
        for (g, sign) in d.group() {
            assert_eq!(f.compose(&g.m), f.scale(&QuadElt::from_int(sign)), "{n} under {}", g.name);
        }
    }
}

/// Search a small grid in k^3: every point satisfying the conditions lies
/// in the span returned by `solve_conditions`, and the grid does find it.
#[test]
fn condition_solver_against_search() {
    let d = data();
    let fam = invariant_family(&d);
    let pts: Vec<ProjPoint> = ["P1", "Q1"].iter().flat_map(|o| d.partitions[*o].iter().map(|n| d.point(n).unwrap().clone())).collect();
    let conds: Vec<Condition> = pts.iter().cloned().map(Condition::Vanish).collect();
    let sols = solve_conditions(&fam, &conds);
    assert_eq!(sols.len(), 1);
    let f = fam.member(&sols[0]);
    assert!(f.proportional(d.cubic("case1b").unwrap()));
    let small: Vec<QuadElt> = (-2..=2).flat_map(|m| (-2..=2).map(move |n| QuadElt::from_ints(m, n))).collect();
    let mut hits = 0;
    for a1 in [0, 1].map(QuadElt::from_int) {
        for a2 in &small {
            for a3 in &small {
                let g = printed_member(&d, &[a1.clone(), a2.clone(), a3.clone()]);
                if !g.is_zero() && pts.iter().all(|p| g.eval(p.coords()).is_zero()) {
                    hits += 1;
                    assert!(g.proportional(&f));
                }
            }
        }
    }
    assert_eq!(hits, 1);
}

#[test]
fn singularity_matches_groebner_results() {
    let d = data();
    let sing = ["case1g_p1", "case1g_p2"];
    let smooth = ["candidate1", "candidate2", "case1b", "case1d", "case2b", "case2d_a", "case2d_b"];
    for n in sing {
        assert!(is_singular(d.cubic(n).unwrap()), "{n}");
    }
    for n in smooth {
        assert!(!is_singular(d.cubic(n).unwrap()), "{n}");
    }
    assert!(is_singular(&d.even));
}

#[test]
fn bezout_on_every_line() {
    let d = data();
    for (n, f) in &d.cubics {
        for &ln in &d.lines {
            let p = intersection_profile(f, &d, ln);
            assert!(p.contains_line || p.total_multiplicity() == 3, "{n} on {ln}");
        }
    }
}

#[test]
fn case_verdicts() {
    let d = data();
    let r = run_case_analysis(&d).unwrap();
    assert!(r.ok());
    let got: Vec<(&str, Verdict)> = r.cases.iter().map(|c| (c.id.as_str(), c.verdict)).collect();
    use Verdict::*;
    assert_eq!(
        got,
        [
            ("1a", Eliminated),
            ("1b", Eliminated),
            ("1c", Eliminated),
            ("1d", Eliminated),
            ("1e", Eliminated),
            ("1f", Possible),
            ("1g", Eliminated),
            ("1h", Eliminated),
            ("2a", Eliminated),
            ("2b", Eliminated),
            ("2c", Possible),
            ("2d", Eliminated),
        ]
    );
    let names: Vec<&str> = r.survivors.iter().map(|(c, _)| c.as_str()).collect();
    assert_eq!(names, ["1f", "2c"]);
    assert!(r.survivors[0].1.proportional(d.cubic("candidate1").unwrap()));
    assert!(r.survivors[1].1.proportional(d.cubic("candidate2").unwrap()));
}

#[test]
fn case_details() {
    let d = data();
    let r = run_case_analysis(&d).unwrap();
    // the printed reasons disagree only where a branch has singular solutions
    let disagree: Vec<&str> = r.cases.iter().filter(|c| !c.reason_agrees).map(|c| c.id.as_str()).collect();
    assert_eq!(disagree, ["1e", "1g"]);

    let g = r.case("1g").unwrap();
    let q1 = g.branches.iter().find(|b| b.label == "Q1").unwrap();
    assert_eq!(q1.solutions.len(), 1);
    let s = &q1.solutions[0];
    assert_ne!(s.field, "k");
    assert!(!s.singular);
    assert_eq!(s.triangle_punctures, vec![Some(7); 3]);
    assert_eq!(s.l1_contact, Contact::Tangent { point: Where::Puncture });
    assert!(g.printed.iter().all(|p| p.found_in == ["Q2"]));

    let b = r.case("2b").unwrap();
    assert_eq!(b.branches[0].solutions[0].triangle_punctures, vec![Some(7); 3]);
    let dd = r.case("2d").unwrap();
    assert!(dd.branches.iter().all(|b| b.solutions.iter().all(|s| s.failed.contains(&Check::NoQContact))));
    assert!(r.case("1h").unwrap().branches.iter().all(|b| b.solutions.is_empty()));
}

#[test]
fn candidates_pass_profile_check() {
    let d = data();
    for (n, l1) in [("candidate1", 1), ("candidate2", 2)] {
        let f = d.cubic(n).unwrap();
        let rep = lemma65_profile_check(f, &d);
        assert!(rep.ok(), "{n}: {:?}", rep.violations);
        assert!(rep.bezout);
        assert_eq!(rep.orbit_counts["L1"], vec![l1; 6]);
        assert_eq!(rep.orbit_counts["L2"], vec![3; 3]);
        assert_eq!(rep.meets_q, ["Q2"]);
        for t in &d.triangles.size_three {
            assert_eq!(triangle_punctures(f, &d, t), Some(4));
        }
    }
}

#[test]
fn profile_check_rejects_eliminated_cubic() {
    let d = data();
    assert!(!lemma65_profile_check(d.cubic("case2b").unwrap(), &d).ok());
}
