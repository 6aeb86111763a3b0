//! Small dense integer matrices used for Weyl group actions and lattice
//! computations. Sizes never exceed the rank of the root system.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * v[j]).sum())
            .collect()
    }

    pub fn apply_i32<'a>(&'a self, v: &'a [i32]) -> impl Iterator<Item = i32> + 'a {
        let n = self.n;
        (0..n).map(move |i| {
            (0..n)
                .map(|j| self.data[i * n + j] * v[j] as i64)
                .sum::<i64>() as i32
        })
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        IntMatrix { n, data }
    }

    pub fn det(&self) -> i64 {
        det_i64(&self.rows())
    }
}

/// Determinant of a small square integer matrix by fraction-free elimination.
pub fn det_i64(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Generator of the rank-one lattice of integer vectors orthogonal to the
/// given `n-1` linearly independent vectors in `Z^n`: the vector of signed
/// maximal minors, made primitive. Returns `None` if the vectors are
/// dependent.
pub fn primitive_normal(vectors: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    assert_eq!(vectors.len() + 1, n);
    let mut normal = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let d = det_i64(&minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = gcd_all(&normal);
    if g == 0 {
        return None;
    }
    Some(normal.into_iter().map(|x| x / g).collect())
}

/// Whether `k` integer vectors in `Z^n` extend to a basis of the lattice:
/// the gcd of all `k×k` minors must be one.
pub fn is_unimodular_family(vectors: &[Vec<i64>], n: usize) -> bool {
    let k = vectors.len();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    let mut g = 0;
    for cols in combinations(n, k) {
        let minor: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| cols.iter().map(|&c| v[c]).collect())
            .collect();
        g = gcd(g, det_i64(&minor));
        if g == 1 {
            return true;
        }
    }
    g == 1
}

/// Rank of an integer matrix given by rows (over the rationals).
pub fn rank_i64(vectors: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, rank);
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[rank][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd128(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Solves `M x = b` over the rationals for an invertible integer `M`,
/// returning `x` as numerators over a common positive denominator.
pub fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Option<(Vec<i128>, i128)> {
    let n = m.len();
    let d = det_i64(m) as i128;
    if d == 0 {
        return None;
    }
    // Cramer's rule; n is tiny.
    let mut x = Vec::with_capacity(n);
    for c in 0..n {
        let mc: Vec<Vec<i64>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut row = row.clone();
                row[c] = b[i];
                row
            })
            .collect();
        x.push(det_i64(&mc) as i128);
    }
    if d < 0 {
        Some((x.into_iter().map(|v| -v).collect(), -d))
    } else {
        Some((x, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(det_i64(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(
            det_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            -1
        );
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn normal_vector_is_orthogonal_and_primitive() {
        let n = primitive_normal(&[vec![1, 1, 0], vec![0, 2, 2]], 3).unwrap();
        assert_eq!(n.iter().zip([1, 1, 0]).map(|(a, b)| a * b).sum::<i64>(), 0);
        assert_eq!(n.iter().zip([0, 2, 2]).map(|(a, b)| a * b).sum::<i64>(), 0);
        assert_eq!(gcd_all(&n), 1);
    }

    #[test]
    fn unimodular_families() {
        assert!(is_unimodular_family(&[vec![1, 1]], 2));
        assert!(!is_unimodular_family(&[vec![2, 0]], 2));
        assert!(is_unimodular_family(&[vec![1, 0], vec![1, 1]], 2));
        assert!(!is_unimodular_family(&[vec![1, 1], vec![1, -1]], 2));
    }

    #[test]
    fn rational_solve() {
        let (x, d) = solve_rational(&[vec![2, -1], vec![-1, 2]], &[1, 0]).unwrap();
        assert_eq!((x, d), (vec![2, 1], 3));
    }
}
