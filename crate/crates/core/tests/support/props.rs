//! Property checks shared by the proptest suite and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use wemono::cusps::{resolve_cusp, CuspSubgroup};
use wemono::finquot::{closure, sl_generators, FinMat};
use wemono::planegeom::profile::restrict_to_line;
use wemono::planegeom::{cross, intersection_profile, invariant_family, is_zero_vec, InvariantFamily, PlaneData};
use wemono::qfield::residue::reduce;
use wemono::qfield::{Place, QuadElt, ResidueRing};

pub const CASES: u32 = 1000;
pub const SEED: u64 = 0x5eed_2024;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn elt() -> impl Strategy<Value = QuadElt> {
    (-40i64..40, 1i64..12, -40i64..40, 1i64..12).prop_map(|(an, ad, bn, bd)| QuadElt::from_fracs(an, ad, bn, bd))
}

pub fn int_elt() -> impl Strategy<Value = QuadElt> {
    (-500i64..500, -500i64..500).prop_map(|(a, b)| QuadElt::from_ints(a, b))
}

/// Small algebraic integers, the range family members are drawn from.
pub fn small_int_elt() -> impl Strategy<Value = QuadElt> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| QuadElt::from_ints(a, b))
}

pub fn ring() -> impl Strategy<Value = ResidueRing> {
    prop_oneof![Just(ResidueRing::Mod2), Just(ResidueRing::ModP5), Just(ResidueRing::Mod4), Just(ResidueRing::Mod4P5)]
}

pub fn small_ring() -> impl Strategy<Value = ResidueRing> {
    prop_oneof![Just(ResidueRing::Mod2), Just(ResidueRing::ModP5), Just(ResidueRing::Mod4)]
}

/// Elementary moves whose product is a unimodular basis change.
pub fn moves() -> impl Strategy<Value = Vec<(u8, i64)>> {
    proptest::collection::vec((0u8..4, -3i64..=3), 0..6)
}

pub fn plane() -> &'static PlaneData {
    static D: std::sync::OnceLock<PlaneData> = std::sync::OnceLock::new();
    D.get_or_init(|| PlaneData::load().unwrap())
}

pub fn family() -> &'static InvariantFamily {
    static F: std::sync::OnceLock<InvariantFamily> = std::sync::OnceLock::new();
    F.get_or_init(|| invariant_family(plane()))
}

pub fn field_homomorphism(x: QuadElt, y: QuadElt) -> Result<(), TestCaseError> {
    prop_assert_eq!((&x * &y).galois(), &x.galois() * &y.galois());
    prop_assert_eq!((&x + &y).galois(), &x.galois() + &y.galois());
    prop_assert_eq!(x.galois().galois(), x.clone());
    prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    if !x.is_zero() {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }
    for p in [Place::First, Place::Second] {
        let lhs = (&x * &y).approx(p);
        let rhs = x.approx(p) * y.approx(p);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        if (&x - &y).sign_at(p) != std::cmp::Ordering::Equal {
            prop_assert_eq!(x.cmp_at(&y, p), x.approx(p).partial_cmp(&y.approx(p)).unwrap());
        }
    }
    Ok(())
}

pub fn reduction_homomorphism(x: QuadElt, y: QuadElt, r: ResidueRing) -> Result<(), TestCaseError> {
    let (rx, ry) = (reduce(&x, r).unwrap(), reduce(&y, r).unwrap());
    prop_assert_eq!(reduce(&(&x * &y), r).unwrap(), rx.mul(&ry));
    prop_assert_eq!(reduce(&(&x + &y), r).unwrap(), rx.add(&ry));
    Ok(())
}

pub fn hull_basis_change(cusp: usize, moves: Vec<(u8, i64)>) -> Result<(), TestCaseError> {
    let l = CuspSubgroup::all()[cusp].lattice().unwrap();
    let mut m = [[1i64, 0], [0, 1]];
    for (kind, k) in moves {
        let e = match kind {
            0 => [[1, k], [0, 1]],
            1 => [[1, 0], [k, 1]],
            2 => [[0, 1], [1, 0]],
            _ => [[-1, 0], [0, 1]],
        };
        m = [
            [m[0][0] * e[0][0] + m[0][1] * e[1][0], m[0][0] * e[0][1] + m[0][1] * e[1][1]],
            [m[1][0] * e[0][0] + m[1][1] * e[1][0], m[1][0] * e[0][1] + m[1][1] * e[1][1]],
        ];
    }
    let moved = l.change_basis(m).unwrap();
    prop_assert_eq!(resolve_cusp(&moved).unwrap().canonical(), resolve_cusp(&l).unwrap().canonical());
    Ok(())
}

pub fn closure_permutation(r: ResidueRing, psl: bool, perm: Vec<usize>, repeat: usize) -> Result<(), TestCaseError> {
    let gens = sl_generators(r).unwrap();
    let n = gens.len();
    let mut shuffled: Vec<FinMat> = gens.clone();
    for (i, j) in perm.into_iter().enumerate().take(n) {
        shuffled.swap(i, j % n);
    }
    shuffled.extend((0..repeat).map(|i| gens[i % n]));
    let a = closure(r, &gens, psl).unwrap();
    let b = closure(r, &shuffled, psl).unwrap();
    prop_assert_eq!(a.sorted_codes(), b.sorted_codes());
    let expected = match (r, psl) {
        (ResidueRing::Mod2, _) => 60,
        (ResidueRing::ModP5, false) => 120,
        (ResidueRing::ModP5, true) => 60,
        (ResidueRing::Mod4, false) => 3840,
        (ResidueRing::Mod4, true) => 1920,
        _ => unreachable!(),
    };
    prop_assert_eq!(a.order(), expected);
    Ok(())
}

pub fn bezout(a: [QuadElt; 3], line: usize) -> Result<(), TestCaseError> {
    let d = plane();
    let f = family().member(&a);
    prop_assume!(!f.is_zero());
    let l = d.lines[line];
    let p = intersection_profile(&f, d, l);
    prop_assert!(p.contains_line || p.total_multiplicity() == 3, "{}", l);
    Ok(())
}

/// With `tangent`, the member is chosen with a double root at e_j of the
/// line (its s^3 and r s^2 coefficients vanish).
pub fn discriminant_duality(a: [QuadElt; 3], line: usize, tangent: bool) -> Result<(), TestCaseError> {
    let d = plane();
    let fam = family();
    let l = d.lines[line];
    let mut a = a;
    if tangent {
        let r: Vec<_> = fam.basis.iter().map(|g| restrict_to_line(g, d, l)).collect();
        let top = [r[0].c[3].clone(), r[1].c[3].clone(), r[2].c[3].clone()];
        let next = [r[0].c[2].clone(), r[1].c[2].clone(), r[2].c[2].clone()];
        let n = cross(&top, &next);
        prop_assume!(!is_zero_vec(&n));
        // perturb along the solution line so cases differ
        a = n.map(|x| &x * &a[0]);
        prop_assume!(!is_zero_vec(&a));
    }
    let b = restrict_to_line(&fam.member(&a), d, l);
    prop_assume!(!b.is_zero());
    let repeated = b.distinct_roots().unwrap() < 3;
    prop_assert_eq!(b.discriminant().is_zero(), repeated);
    if tangent {
        prop_assert!(repeated);
    }
    Ok(())
}

pub fn perm() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..16, 16)
}

fn e<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|x| format!("{x}"))
}

/// Run every property with the fixed configuration; name and outcome.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    let run = |s: &'static str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| (s, f(&mut TestRunner::new(config())));
    vec![
        run("field homomorphism", &|t| e(t.run(&(elt(), elt()), |(x, y)| field_homomorphism(x, y)))),
        run("reduction homomorphism", &|t| e(t.run(&(int_elt(), int_elt(), ring()), |(x, y, r)| reduction_homomorphism(x, y, r)))),
        run("hull basis change", &|t| e(t.run(&(0usize..4, moves()), |(c, m)| hull_basis_change(c, m)))),
        run("closure generator order", &|t| {
            e(t.run(&(small_ring(), any::<bool>(), perm(), 0usize..3), |(r, p, q, k)| closure_permutation(r, p, q, k)))
        }),
        run("bezout", &|t| e(t.run(&([small_int_elt(), small_int_elt(), small_int_elt()], 0usize..15), |(a, l)| bezout(a, l)))),
        run("discriminant duality", &|t| {
            e(t.run(&([elt(), elt(), elt()], 0usize..15, any::<bool>()), |(a, l, tg)| discriminant_duality(a, l, tg)))
        }),
    ]
}
