//! Elimination over F_p for odd word-sized p. Row updates run on u64
//! accumulators with a single reduction per entry while p fits in 31 bits;
//! wider moduli fall back to u128 products.

use crate::arith;

fn inv_mod(a: u64, p: u64) -> u64 {
    arith::pow_mod(a, p - 2, p)
}

/// target += m * source (mod p), from column `start` on.
fn add_multiple(p: u64, target: &mut [u64], source: &[u64], m: u64, start: usize) {
    if m == 0 {
        return;
    }
    if p < (1 << 31) {
        for j in start..target.len() {
            let s = source[j];
            if s != 0 {
                target[j] = (target[j] + m * s) % p;
            }
        }
    } else {
        for j in start..target.len() {
            let s = source[j];
            if s != 0 {
                target[j] = ((target[j] as u128 + m as u128 * s as u128) % p as u128) as u64;
            }
        }
    }
}

fn two_rows(a: &mut [u64], cols: usize, i: usize, k: usize) -> (&mut [u64], &mut [u64]) {
    debug_assert!(i != k);
    if i < k {
        let (lo, hi) = a.split_at_mut(k * cols);
        (&mut lo[i * cols..(i + 1) * cols], &mut hi[..cols])
    } else {
        let (lo, hi) = a.split_at_mut(i * cols);
        (&mut hi[..cols], &mut lo[k * cols..(k + 1) * cols])
    }
}

pub(super) fn rank(p: u64, rows: usize, cols: usize, mut a: Vec<u64>) -> usize {
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            if lead != 0 {
                let factor = arith::mul_mod(lead, inv, p);
                let (ti, tr) = two_rows(&mut a, cols, i, r);
                add_multiple(p, ti, tr, p - factor, c);
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis from the reduced row echelon form.
pub(super) fn kernel(p: u64, rows: usize, cols: usize, mut a: Vec<u64>) -> Vec<Vec<u64>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        if inv != 1 {
            for j in c..cols {
                a[r * cols + j] = arith::mul_mod(a[r * cols + j], inv, p);
            }
        }
        for i in 0..rows {
            if i != r {
                let lead = a[i * cols + c];
                if lead != 0 {
                    let (ti, tr) = two_rows(&mut a, cols, i, r);
                    add_multiple(p, ti, tr, p - lead, c);
                }
            }
        }
        pivots.push(c);
        r += 1;
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
        let mut v = vec![0u64; cols];
        v[f] = 1;
        for (k, &c) in pivots.iter().enumerate() {
            let e = a[k * cols + f];
            v[c] = if e == 0 { 0 } else { p - e };
        }
        basis.push(v);
    }
    basis
}
