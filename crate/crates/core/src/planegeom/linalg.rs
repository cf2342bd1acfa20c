//! Row reduction over an exact field.

use crate::qfield::poly::Field;

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref<F: Field>(rows: &[Vec<F>], ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut piv = vec![];
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].ring_is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let iv = a[r][c].inv().expect("pivot is nonzero");
        a[r] = a[r].iter().map(|x| x.times(&iv)).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].ring_is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, piv)
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (r, piv) = rref(rows, ncols);
    (0..ncols)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![F::ring_zero(); ncols];
            v[f] = F::ring_one();
            for (row, &p) in r.iter().zip(&piv) {
                v[p] = row[f].times(&F::ring_from_int(-1));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        assert_eq!(rank(&rows, 3), 1);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = v.iter().zip(&rows[0]).fold(r(0), |acc, (a, b)| acc + a * b);
            assert_eq!(s, r(0));
        }
    }

    #[test]
    fn empty_system() {
        assert_eq!(nullspace::<BigRational>(&[], 2).len(), 2);
        assert_eq!(rank::<BigRational>(&[vec![r(0), r(0)]], 2), 0);
    }
}
