use wemono::cusps::*;
use wemono::finquot::{Engine, MonodromyQuotient};
use wemono::qfield::QuadElt;

fn q(a: i64, b: i64) -> QuadElt {
    QuadElt::from_ints(a, b)
}

fn cycle(name: &str) -> HullCycle {
    resolve_cusp(&CuspSubgroup::by_name(name).unwrap().lattice().unwrap()).unwrap()
}

#[test]
fn coset_table_and_orbits() {
    let e = Engine::sequential();
    let t = build_coset_table(&e).unwrap();
    assert_eq!(t.delta.order(), 960);
    assert_eq!(t.len(), 240);
    assert_eq!(t.len() * t.delta.order(), 230400);
    let orbits = cusp_orbits(&t);
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![8, 8, 24, 40, 40, 120]);

    let qt = MonodromyQuotient::compute(&e).unwrap();
    for o in orbit_summary(&t, &qt) {
        assert_eq!(o.size * o.stabilizer_order, qt.h.order());
    }

    let r = verify_cusp_subgroups(&t, &qt).unwrap();
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    assert!(r.distinct_orbits && r.orbit_sizes_match_indices);
    for c in &r.cusps {
        assert!(c.index_formula_ok);
        assert!(c.generators_in_gamma.iter().all(|&b| b), "{}", c.cusp);
    }
}

#[test]
fn cycles() {
    let c8 = cycle("lambda8");
    assert_eq!(c8.canonical(), vec![-3, -3]);
    let c40 = cycle("lambda40");
    assert_eq!(c40.canonical(), vec![-3, -3]);
    let long: Vec<i64> = [vec![-2; 7], vec![-4], vec![-2; 7], vec![-4]].concat();
    let c24 = cycle("lambda24");
    let c120 = cycle("lambda120");
    for c in [&c8, &c24, &c40, &c120] {
        assert!(c.certificate.ok(), "{:?}", c.certificate);
        println!("{:?} {:?}", c.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(), c.self_intersections);
    }
    assert_eq!(c24.canonical(), long);
    assert_eq!(c120.canonical(), long);

    let near24 = c24.vertices_over(-1, 1);
    for j in 0..=8 {
        assert!(near24.contains(&q(2 + j, 2 * j)));
        assert!(near24.contains(&q(2 + 3 * j, -2 * j)));
    }
    let near120 = c120.vertices_over(-1, 1);
    for j in 0..=8 {
        assert!(near120.contains(&q(6 + j, 8 - 2 * j)));
        assert!(near120.contains(&q(6 + 11 * j, 8 + 18 * j)));
    }

    let six = [&c8, &c8, &c24, &c40, &c40, &c120].map(|c| c.clone());
    let s = chern(euler_number(240).unwrap(), &six).unwrap();
    assert_eq!((s.c1_sq, s.c2, s.chi, s.p_g), (16, 56, 6, 5));
}

#[test]
fn basis_change_invariance() {
    let l = CuspSubgroup::by_name("lambda24").unwrap().lattice().unwrap();
    let m = l.change_basis([[3, 1], [2, 1]]).unwrap();
    assert_eq!(resolve_cusp(&m).unwrap().canonical(), resolve_cusp(&l).unwrap().canonical());
}
