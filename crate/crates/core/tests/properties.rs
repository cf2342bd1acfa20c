//! Randomized properties, 1000 cases each from a fixed seed.

#[path = "support/props.rs"]
#[allow(dead_code)]
mod props;

use proptest::prelude::*;

use props::*;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_arithmetic_is_homomorphic(x in elt(), y in elt()) {
        field_homomorphism(x, y)?;
    }

    #[test]
    fn reduction_respects_ring_operations(x in int_elt(), y in int_elt(), r in ring()) {
        reduction_homomorphism(x, y, r)?;
    }

    #[test]
    fn hull_cycle_ignores_lattice_basis(c in 0usize..4, m in moves()) {
        hull_basis_change(c, m)?;
    }

    #[test]
    fn closure_ignores_generator_order(r in small_ring(), psl in any::<bool>(), p in perm(), k in 0usize..3) {
        closure_permutation(r, psl, p, k)?;
    }

    #[test]
    fn bezout_on_family_members(a in [small_int_elt(), small_int_elt(), small_int_elt()], l in 0usize..15) {
        bezout(a, l)?;
    }

    #[test]
    fn discriminant_detects_repeated_roots(a in [elt(), elt(), elt()], l in 0usize..15, tangent in any::<bool>()) {
        discriminant_duality(a, l, tangent)?;
    }
}
