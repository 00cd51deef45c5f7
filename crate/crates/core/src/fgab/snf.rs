use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Smith normal form `u * m * v = d` with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Nonzero invariant factors, in divisibility order.
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

type Rows = Vec<Vec<BigInt>>;

fn to_rows(m: &IntMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

fn from_rows(r: Rows, cols: usize) -> IntMatrix {
    let rows = r.len();
    IntMatrix::from_big_rows(rows, cols, r.into_iter().flatten().collect())
}

fn ident(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct State {
    a: Rows,
    u: Rows,
    ui: Rows,
    v: Rows,
    vi: Rows,
    r: usize,
    c: usize,
}

impl State {
    // row_i += q * row_t on a; mirrored on u, and col_t -= q * col_i on u^-1
    fn row_add(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.c {
            let x = &self.a[t][j] * q;
            self.a[i][j] += x;
        }
        for j in 0..self.r {
            let x = &self.u[t][j] * q;
            self.u[i][j] += x;
        }
        for k in 0..self.r {
            let x = &self.ui[k][i] * q;
            self.ui[k][t] -= x;
        }
    }

    // col_j += q * col_t on a; mirrored on v, and row_t -= q * row_j on v^-1
    fn col_add(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.r {
            let x = &self.a[i][t] * q;
            self.a[i][j] += x;
        }
        for i in 0..self.c {
            let x = &self.v[i][t] * q;
            self.v[i][j] += x;
        }
        for k in 0..self.c {
            let x = &self.vi[j][k] * q;
            self.vi[t][k] -= x;
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        self.u.swap(i, t);
        for row in self.ui.iter_mut() {
            row.swap(i, t);
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        for row in self.v.iter_mut() {
            row.swap(j, t);
        }
        self.vi.swap(j, t);
    }

    fn row_neg(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[t].iter_mut() {
            *x = -&*x;
        }
        for row in self.ui.iter_mut() {
            row[t] = -&row[t];
        }
    }
}

/// Smith normal form with pivot rule: smallest nonzero absolute value in the
/// remaining block, ties broken by lowest (row, col).
pub fn snf(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut s = State { a: to_rows(m), u: ident(r), ui: ident(r), v: ident(c), vi: ident(c), r, c };
    let mut rank = 0;
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &s.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.abs() < s.a[bi][bj].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            s.row_swap(t, pi);
            s.col_swap(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if !s.a[i][t].is_zero() {
                    let q = -(&s.a[i][t] / &s.a[t][t]);
                    s.row_add(i, t, &q);
                    if !s.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !s.a[t][j].is_zero() {
                    let q = -(&s.a[t][j] / &s.a[t][t]);
                    s.col_add(j, t, &q);
                    if !s.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let p = s.a[t][t].clone();
            let mut bad = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&s.a[i][j] % &p).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad {
                s.row_add(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if s.a[t][t].is_zero() {
            break;
        }
        if s.a[t][t].is_negative() {
            s.row_neg(t);
        }
        rank += 1;
    }
    Snf {
        u: from_rows(s.u, r),
        u_inv: from_rows(s.ui, r),
        d: from_rows(s.a, c),
        v: from_rows(s.v, c),
        v_inv: from_rows(s.vi, c),
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::big;

    fn check(m: &IntMatrix) -> Snf {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn classic_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let s = check(&m);
        assert_eq!(s.factors(), vec![big(2), big(6), big(12)]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(check(&m).factors(), vec![big(1), big(6)]);
    }

    #[test]
    fn rectangular_and_empty() {
        check(&IntMatrix::from_rows(&[vec![0, 0, 0]], 3));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        let s = check(&IntMatrix::from_rows(&[vec![4, 6], vec![6, 9], vec![2, 3]], 2));
        assert_eq!(s.rank, 1);
    }
}
