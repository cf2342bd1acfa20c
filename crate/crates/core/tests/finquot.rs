use wemono::finquot::{
    closure, gamma_generators, index, sl_generators, torsion_obstruction, verify_theorem_a, Engine, FinMat, MonodromyQuotient,
};
use wemono::matgrp::Mat2;
use wemono::qfield::ResidueRing;

fn quotient() -> &'static MonodromyQuotient {
    static Q: std::sync::OnceLock<MonodromyQuotient> = std::sync::OnceLock::new();
    Q.get_or_init(|| MonodromyQuotient::compute(&Engine::sequential()).unwrap())
}

#[test]
fn full_group_mod_4p5() {
    assert_eq!(quotient().g.order(), 460800);
    assert_eq!(quotient().h.order(), 960);
    assert_eq!(index(&quotient().g, &quotient().h).unwrap(), 480);
}

#[test]
fn theorem_a() {
    let r = verify_theorem_a(&Engine::sequential(), quotient()).unwrap();
    println!("{r:#?}");
    assert_eq!(r.p5_image_order, 5);
    assert!(r.p5_image_unipotent);
    assert_eq!(r.mod2_image_order, 6);
    assert!(r.mod2_image_in_f2);
    assert_eq!(r.kernel_intersection_order, 32);
    assert!(r.kernel_intersection_is_c4);
    assert!(r.mu3_in_kernel && !r.mu3_in_c4 && !r.mu3_in_image);
    assert!(r.mod4_condition_exact);
    assert!(r.k_equals_h);
}

#[test]
fn torsion() {
    let r = torsion_obstruction(quotient()).unwrap();
    println!("{r:#?}");
    assert!(r.torsion_free);
}

#[test]
fn parallel_closure_matches_sequential() {
    let r = ResidueRing::Mod4P5;
    let seq = closure(r, &sl_generators(r).unwrap(), true).unwrap();
    let par = Engine { jobs: 4, cache_dir: None }.closure(r, &sl_generators(r).unwrap(), true).unwrap();
    assert_eq!(seq.codes(), par.codes());
    assert_eq!(seq.order(), 230400);
}

#[test]
fn z0_is_not_in_gamma() {
    assert!(!quotient().in_gamma(&Mat2::z0()).unwrap());
    let _ = gamma_generators(ResidueRing::Mod4P5).unwrap();
    let _ = FinMat::identity(ResidueRing::Mod4P5);
}
