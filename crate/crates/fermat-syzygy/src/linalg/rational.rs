//! Rational elimination. The forward pass is fraction-free (Bareiss): rows
//! are scaled to integers and every intermediate entry is a minor of the
//! scaled matrix, so coefficient growth stays polynomial instead of the
//! exponential blowup of naive rational pivoting. Only the final reduced
//! echelon rows are converted back to rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scales each row by the lcm of its denominators. Row scaling by a nonzero
/// constant changes neither rank nor kernel.
fn integer_rows(rows: usize, cols: usize, data: &[BigRational]) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|i| {
            let mut l = BigInt::one();
            for j in 0..cols {
                l = l.lcm(data[i * cols + j].denom());
            }
            (0..cols)
                .map(|j| {
                    let e = &data[i * cols + j];
                    e.numer() * (&l / e.denom())
                })
                .collect()
        })
        .collect()
}

/// In-place fraction-free forward elimination; returns the pivot columns in
/// order. Zero columns are skipped; the exact-division invariant survives the
/// skips because every entry is still a minor over the pivot columns chosen
/// so far.
fn bareiss_forward(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(super) fn rank(rows: usize, cols: usize, data: &[BigRational]) -> usize {
    let mut m = integer_rows(rows, cols, data);
    bareiss_forward(&mut m, cols).len()
}

pub(super) fn kernel(rows: usize, cols: usize, data: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut m = integer_rows(rows, cols, data);
    let pivots = bareiss_forward(&mut m, cols);
    let npiv = pivots.len();
    // back-substitute the pivot rows into reduced echelon form
    let mut rref: Vec<Vec<BigRational>> = m[..npiv]
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect()
        })
        .collect();
    for k in (0..npiv).rev() {
        let c = pivots[k];
        let pv = rref[k][c].clone();
        debug_assert!(!pv.is_zero());
        for j in c..cols {
            let scaled = &rref[k][j] / &pv;
            rref[k][j] = scaled;
        }
        for k2 in 0..k {
            let f = rref[k2][c].clone();
            if !f.is_zero() {
                for j in c..cols {
                    let delta = &f * &rref[k][j];
                    rref[k2][j] -= delta;
                }
            }
        }
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (k, &c) in pivots.iter().enumerate() {
            if !rref[k][f].is_zero() {
                v[c] = -rref[k][f].clone();
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn bareiss_division_stays_exact_on_rank_deficient_input() {
        // 3x5 with a dependent row and an interior zero column
        let data: Vec<BigRational> = [
            [2, 0, 4, 6, 1],
            [4, 0, 8, 12, 2],
            [1, 0, 3, 5, 7],
        ]
        .iter()
        .flat_map(|r| r.iter().map(|&v| q(v)))
        .collect();
        assert_eq!(rank(3, 5, &data), 2);
        let k = kernel(3, 5, &data);
        assert_eq!(k.len(), 3);
    }
}
