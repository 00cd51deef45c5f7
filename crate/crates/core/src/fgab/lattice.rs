use super::matrix::IntMatrix;
use super::snf::{snf, Snf};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Columns form a basis of the integer kernel of `m`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_cols(&idx)
}

/// Columns form a basis of the lattice spanned by the columns of `g`.
pub fn column_basis(g: &IntMatrix) -> IntMatrix {
    let s = snf(g);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let d = s.d.get(i, i);
        cols.push(s.u_inv.col(i).iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_cols(g.rows(), &cols)
}

/// Reusable solver for `m x = b` over the integers.
#[derive(Clone, Debug)]
pub struct Solver {
    s: Snf,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(m: &IntMatrix) -> Self {
        Solver { s: snf(m), rows: m.rows(), cols: m.cols() }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.s.u.apply(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.s.rank {
                let d = self.s.d.get(i, i);
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.s.v.apply(&y))
    }
}

pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(m).solve(b)
}

/// `x` lies in the column span of `m`.
pub fn in_span(m: &IntMatrix, x: &[BigInt]) -> bool {
    solve(m, x).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::big_vec;

    #[test]
    fn kernel_of_row() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 5]], 3);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        // index one in Z^3 intersect ker: any kernel vector is a combination
        assert!(solve(&k, &big_vec(&[3, -2, 0])).is_some());
        assert!(solve(&k, &big_vec(&[5, 0, -2])).is_some());
    }

    #[test]
    fn basis_of_span() {
        let g = IntMatrix::from_rows(&[vec![2, 4, 6], vec![0, 0, 0]], 3);
        let b = column_basis(&g);
        assert_eq!(b.cols(), 1);
        assert!(in_span(&b, &big_vec(&[2, 0])));
        assert!(!in_span(&b, &big_vec(&[1, 0])));
    }
}
