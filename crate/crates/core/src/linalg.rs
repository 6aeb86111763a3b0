//! Linear algebra over Laurent polynomial rings: fraction-free (Bareiss)
//! elimination and a modular determinant witness.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn div(a: &LaurentPoly, b: &LaurentPoly, what: &str) -> Result<LaurentPoly> {
    a.div_exact(b)
        .ok_or_else(|| Error::InexactDivision(format!("{what}: ({a}) / ({b})")))
}

/// Solves `M Y = det(M)·B` by fraction-free elimination, returning `Y` and
/// `det(M)`. `B` may have several columns; with `B = I` this yields the
/// adjugate.
pub fn bareiss_solve(m: &PolyMatrix, b: &PolyMatrix) -> Result<(PolyMatrix, LaurentPoly)> {
    let n = m.len();
    let k_cols = b.first().map_or(0, |r| r.len());
    let mut a: PolyMatrix = m.clone();
    let mut rhs: PolyMatrix = b.clone();
    let (rank, blocks) = (m[0][0].rank(), m[0][0].blocks());
    let mut prev = LaurentPoly::one(rank, blocks);
    let mut sign_neg = false;
    for k in 0..n {
        // pivot with fewest monomials; ties go to the lower row index
        let p = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].num_terms(), i))
            .ok_or(Error::SingularSystem)?;
        if p != k {
            a.swap(p, k);
            rhs.swap(p, k);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = div(&t, &prev, "elimination")?;
            }
            for j in 0..k_cols {
                let t = &(&a[k][k] * &rhs[i][j]) - &(&a[i][k] * &rhs[k][j]);
                rhs[i][j] = div(&t, &prev, "elimination")?;
            }
            a[i][k] = LaurentPoly::zero(rank, blocks);
        }
        prev = a[k][k].clone();
    }
    let det = if sign_neg { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
    let mut y = vec![vec![LaurentPoly::zero(rank, blocks); k_cols]; n];
    for j in 0..k_cols {
        for i in (0..n).rev() {
            let mut t = &det * &rhs[i][j];
            for l in i + 1..n {
                t -= &(&a[i][l] * &y[l][j]);
            }
            y[i][j] = div(&t, &a[i][i], "back substitution")?;
        }
    }
    Ok((y, det))
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(m: &PolyMatrix) -> Result<LaurentPoly> {
    match bareiss_solve(m, &vec![Vec::new(); m.len()]) {
        Err(Error::SingularSystem) => {
            let p = &m[0][0];
            Ok(LaurentPoly::zero(p.rank(), p.blocks()))
        }
        other => other.map(|(_, d)| d),
    }
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn eval_mod(f: &LaurentPoly, point: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (e, c) in f.terms() {
        let cm = (c % BigInt::from(P)).to_i128().unwrap();
        let mut v = cm.rem_euclid(P as i128) as u64;
        for (k, &x) in e.iter().enumerate() {
            let base = if x < 0 { powmod(point[k], P - 2) } else { point[k] };
            v = mulmod(v, powmod(base, x.unsigned_abs() as u64));
        }
        acc = (acc + v) % P;
    }
    acc
}

fn det_mod(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            det = (P - det) % P;
        }
        det = mulmod(det, m[k][k]);
        let inv = powmod(m[k][k], P - 2);
        for i in k + 1..n {
            let f = mulmod(m[i][k], inv);
            if f == 0 {
                continue;
            }
            for j in k..n {
                m[i][j] = (m[i][j] + P - mulmod(f, m[k][j])) % P;
            }
        }
    }
    det
}

/// Certifies that `det M ≠ 0` by finding an evaluation point modulo the
/// prime `2^61 − 1` where the specialized determinant is nonzero. A `false`
/// answer is inconclusive.
pub fn det_nonzero_witness(m: &PolyMatrix) -> bool {
    let Some(width) = m.first().and_then(|r| r.first()).map(|p| p.width()) else {
        return true;
    };
    for attempt in 0..8u64 {
        let point: Vec<u64> = (0..width as u64)
            .map(|k| 1_000_003 + 7919 * k + 104_729 * attempt + k * k * 31)
            .collect();
        let num: Vec<Vec<u64>> =
            m.iter().map(|r| r.iter().map(|f| eval_mod(f, &point)).collect()).collect();
        if det_mod(num) != 0 {
            return true;
        }
    }
    false
}

/// Matrix–vector product over the Laurent ring.
pub fn mat_vec(m: &PolyMatrix, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    m.iter()
        .map(|row| {
            let mut acc = LaurentPoly::zero(v[0].rank(), v[0].blocks());
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc += &(a * x);
                }
            }
            acc
        })
        .collect()
}

pub fn is_zero_matrix(m: &PolyMatrix) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64) -> LaurentPoly {
        LaurentPoly::constant(1, 1, x)
    }

    fn e(x: i64) -> LaurentPoly {
        LaurentPoly::exp(1, 1, &[x])
    }

    #[test]
    fn integer_system() {
        let m = vec![vec![c(2), c(1)], vec![c(1), c(3)]];
        let b = vec![vec![c(1)], vec![c(2)]];
        let (y, d) = bareiss_solve(&m, &b).unwrap();
        assert_eq!(d, c(5));
        assert_eq!(y, vec![vec![c(1)], vec![c(3)]]);
    }

    #[test]
    fn laurent_system_and_adjugate() {
        // [[1, e], [1, e^-1]]
        let m = vec![vec![c(1), e(1)], vec![c(1), e(-1)]];
        let id = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let (adj, d) = bareiss_solve(&m, &id).unwrap();
        assert_eq!(d, &e(-1) - &e(1));
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = c(0);
                for k in 0..2 {
                    acc += &(&m[i][k] * &adj[k][j]);
                }
                assert_eq!(acc, if i == j { d.clone() } else { c(0) });
            }
        }
        assert!(det_nonzero_witness(&m));
    }

    #[test]
    fn singular() {
        let m = vec![vec![e(1), e(2)], vec![c(1), e(1)]];
        assert!(bareiss_det(&m).unwrap().is_zero());
        assert!(!det_nonzero_witness(&m));
        assert!(matches!(bareiss_solve(&m, &vec![vec![c(1)], vec![c(0)]]), Err(Error::SingularSystem)));
    }
}
