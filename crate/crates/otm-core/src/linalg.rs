//! Exact linear algebra over the rationals: reduced row echelon form,
//! kernels, linear solves, and a fraction-free integer determinant.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows_data: Vec<Vec<Rat>>) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_data {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).clone().recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &factor * self.get(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(r) = p {
                    x[c] = -m.get(*r, free).clone();
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Solve `Mx = rhs`; `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the rhs column: inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Exact determinant via fraction-free Bareiss elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        // Clear denominators row by row.
        let mut scale = Int::one();
        let mut m: Vec<Vec<Int>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = Int::one();
            for c in 0..n {
                l = l.lcm(self.get(r, c).denom());
            }
            scale *= &l;
            m.push(
                (0..n)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&l / q.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Rat::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num.div_floor(&prev);
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        Rat::new(sign * m[n - 1][n - 1].clone(), scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[2]]).det(), rat(2));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), rat(-2));
        assert_eq!(
            m(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]).det(),
            rat(2),
            "multiplication-by-theta matrix in Q[X]/(X^3-2)"
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat(0));
    }

    #[test]
    fn det_with_denominators() {
        let mut a = RatMatrix::zeros(2, 2);
        a.set(0, 0, rat(1) / rat(2));
        a.set(0, 1, rat(1) / rat(3));
        a.set(1, 0, rat(1) / rat(4));
        a.set(1, 1, rat(1) / rat(5));
        // 1/10 - 1/12 = 1/60
        assert_eq!(a.det(), rat(1) / rat(60));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in 0..a.rows() {
                let dot: Rat = (0..3).map(|c| a.get(r, c) * &v[c]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat(1), rat(3)]).is_none());
        assert!(b.solve(&[rat(1), rat(2)]).is_some());
    }

    #[test]
    fn rank_counts() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }
}
