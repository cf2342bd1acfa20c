//! Singularity of a plane cubic.
//!
//! The partials of a cubic are three ternary quadrics. They have a common
//! projective zero exactly when their degree-four multiples fail to span
//! all fifteen quartic monomials: without a common zero the quadrics form
//! a regular sequence, whose quotient has Hilbert function 1, 3, 3, 1, 0.
//! So the 18 × 15 Macaulay matrix has full rank iff the curve is smooth
//! (Euler's identity puts any common zero of the partials on the curve).

use super::forms::Form;
use super::linalg::rank;
use crate::qfield::poly::Field;

fn monomials(deg: u8) -> Vec<[u8; 3]> {
    let mut v = vec![];
    for i in (0..=deg).rev() {
        for j in (0..=deg - i).rev() {
            v.push([i, j, deg - i - j]);
        }
    }
    v
}

/// Rows `m · ∂F/∂z_v` for every quadratic monomial m, in the quartic basis.
pub fn macaulay_matrix<F: Field>(f: &Form<F>) -> Vec<Vec<F>> {
    let quad = monomials(2);
    let quart = monomials(4);
    let mut rows = vec![];
    for v in 0..3 {
        let p = f.partial(v);
        for m in &quad {
            let mut row = vec![F::ring_zero(); quart.len()];
            for (e, c) in &p {
                let t = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
                let k = quart.iter().position(|x| *x == t).expect("quartic monomial");
                row[k] = row[k].plus(c);
            }
            rows.push(row);
        }
    }
    rows
}

pub fn is_singular<F: Field>(f: &Form<F>) -> bool {
    rank(&macaulay_matrix(f), 15) < 15
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::QuadElt;

    fn cubic(terms: &[([u8; 3], i64)]) -> Form<QuadElt> {
        let mut f = Form::zero();
        for (m, c) in terms {
            f.c[super::super::forms::monomial_index(*m).unwrap()] = QuadElt::from_int(*c);
        }
        f
    }

    #[test]
    fn fermat_is_smooth() {
        assert!(!is_singular(&cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])));
    }

    #[test]
    fn nodal_and_reducible_are_singular() {
        // y^2 z = x^3 + x^2 z
        assert!(is_singular(&cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)])));
        // x (x^2 + y^2 + z^2)
        assert!(is_singular(&cubic(&[([3, 0, 0], 1), ([1, 2, 0], 1), ([1, 0, 2], 1)])));
        // cuspidal y^2 z = x^3
        assert!(is_singular(&cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1)])));
    }

    #[test]
    fn line_times_conic_over_k_is_singular() {
        let mut f: Form<QuadElt> = Form::zero();
        for (m, c) in [([3, 0, 0], (1, 0)), ([2, 1, 0], (-2, 2)), ([1, 2, 0], (2, -1)), ([1, 0, 2], (-5, 3))] {
            f.c[super::super::forms::monomial_index(m).unwrap()] = QuadElt::from_ints(c.0, c.1);
        }
        assert!(is_singular(&f));
    }

    #[test]
    fn shapes() {
        assert_eq!(monomials(2).len(), 6);
        assert_eq!(monomials(4).len(), 15);
        assert_eq!(macaulay_matrix(&cubic(&[([3, 0, 0], 1)])).len(), 18);
    }
}
