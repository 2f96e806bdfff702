//! LLL lattice basis reduction over the integers, used for integer
//! relation detection among logarithmic embedding values.
//!
//! Textbook Lenstra-Lenstra-Lovasz with exact rational Gram-Schmidt and
//! delta = 3/4. The lattices here are tiny (rank <= 10), so the
//! orthogonalization is simply recomputed as needed.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::{Int, Rat};

fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += Rat::from_integer(x.clone()) * y;
    }
    acc
}

struct Gso {
    /// Squared lengths of the orthogonalized vectors.
    norms: Vec<Rat>,
    /// `mu[i][j]` for `j < i`.
    mu: Vec<Vec<Rat>>,
}

fn gram_schmidt(basis: &[Vec<Int>]) -> Gso {
    let n = basis.len();
    let dim = basis[0].len();
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut norms: Vec<Rat> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut v: Vec<Rat> = basis[i]
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            let m = if norms[j].is_zero() {
                Rat::zero()
            } else {
                dot_int_rat(&basis[i], &star[j]) / &norms[j]
            };
            for d in 0..dim {
                let t = &m * &star[j][d];
                v[d] -= t;
            }
            mu[i][j] = m;
        }
        norms.push(dot_rat(&v, &v));
        star.push(v);
    }
    Gso { norms, mu }
}

fn nearest_int(q: &Rat) -> Int {
    q.round().to_integer()
}

/// LLL-reduce the rows of `basis` (which must be linearly independent).
pub fn lll_reduce(mut basis: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let delta = Rat::new(crate::int(3), crate::int(4));
    let mut gso = gram_schmidt(&basis);
    let mut k = 1;
    let mut guard = 0u32;
    while k < n {
        guard += 1;
        assert!(guard < 100_000, "LLL failed to terminate");
        // Size-reduce row k.
        let mut changed = false;
        for j in (0..k).rev() {
            let q = nearest_int(&gso.mu[k][j]);
            if !q.is_zero() {
                let row_j = basis[j].clone();
                for (d, x) in basis[k].iter_mut().enumerate() {
                    *x -= &q * &row_j[d];
                }
                changed = true;
            }
        }
        if changed {
            gso = gram_schmidt(&basis);
        }
        // Lovasz condition.
        let lhs = gso.norms[k].clone();
        let rhs = (&delta - &gso.mu[k][k - 1] * &gso.mu[k][k - 1]) * &gso.norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            gso = gram_schmidt(&basis);
            k = k.max(2) - 1;
        }
    }
    basis
}

/// Integer relation candidates: find small integer vectors `a` with
/// `sum_k a_k v_k ~ 0`, where row `k` of `scaled_values` holds the
/// values `v_k` already scaled to integers by the caller. The first
/// `rank` coordinates of short reduced rows carry candidate relation
/// coefficients; every candidate must be confirmed exactly downstream.
pub fn relation_candidates(scaled_values: &[Vec<Int>], max_results: usize) -> Vec<Vec<i64>> {
    let rank = scaled_values.len();
    if rank == 0 {
        return vec![];
    }
    let cols = scaled_values[0].len();
    let mut basis = Vec::with_capacity(rank);
    for (k, vals) in scaled_values.iter().enumerate() {
        let mut row = vec![Int::zero(); rank + cols];
        row[k] = Int::from(1);
        row[rank..].clone_from_slice(vals);
        basis.push(row);
    }
    let reduced = lll_reduce(basis);
    // Rows with the smallest scaled tail are the likeliest relations.
    let mut rows: Vec<&Vec<Int>> = reduced.iter().collect();
    rows.sort_by_key(|r| {
        let mut acc = Int::zero();
        for v in &r[rank..] {
            acc += v * v;
        }
        acc
    });
    let mut out = Vec::new();
    for r in rows.into_iter().take(max_results) {
        let mut a = Vec::with_capacity(rank);
        let mut ok = true;
        for v in &r[..rank] {
            match try_to_i64(v) {
                Some(x) => a.push(x),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && a.iter().any(|&x| x != 0) {
            out.push(a);
        }
    }
    out
}

fn try_to_i64(v: &Int) -> Option<i64> {
    use num_traits::ToPrimitive;
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect()
    }

    fn norm_sq(v: &[Int]) -> Int {
        let mut acc = Int::zero();
        for x in v {
            acc += x * x;
        }
        acc
    }

    fn dot(a: &[Int], b: &[Int]) -> Rat {
        let mut acc = Int::zero();
        for (x, y) in a.iter().zip(b) {
            acc += x * y;
        }
        Rat::from_integer(acc)
    }

    fn gram_det(basis: &[Vec<Int>]) -> Rat {
        let n = basis.len();
        let mut m = crate::linalg::RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, dot(&basis[i], &basis[j]));
            }
        }
        m.det()
    }

    #[test]
    fn classic_three_dim_example() {
        let basis = b(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let before = gram_det(&basis);
        let reduced = lll_reduce(basis);
        // Same lattice (Gram determinant invariant), short vectors.
        assert_eq!(gram_det(&reduced), before);
        for v in &reduced {
            assert!(norm_sq(v) <= Int::from(6), "vector too long: {v:?}");
        }
    }

    #[test]
    fn finds_simple_relation() {
        // 1*2000 + 1*3000 - 1*5000 = 0: relation (1, 1, -1).
        let scaled = b(&[&[2000], &[3000], &[5000]]);
        let cands = relation_candidates(&scaled, 3);
        assert!(cands.iter().any(|a| a == &[1, 1, -1] || a == &[-1, -1, 1]));
    }

    #[test]
    fn log_relation_detected() {
        // log 2, log 3, log 6 scaled by 10^12: log 2 + log 3 = log 6.
        let scaled = b(&[
            &[693_147_180_560],
            &[1_098_612_288_668],
            &[1_791_759_469_228],
        ]);
        let cands = relation_candidates(&scaled, 3);
        assert!(cands.iter().any(|a| a == &[1, 1, -1] || a == &[-1, -1, 1]));
    }
}
