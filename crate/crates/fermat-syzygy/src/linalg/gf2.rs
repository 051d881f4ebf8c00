//! Bit-packed elimination for characteristic 2: rows are u64 words and a row
//! update is one XOR sweep, which is what makes the large Hilbert-Kunz ranks
//! at p = 2 cheap.

fn words(cols: usize) -> usize {
    cols.div_ceil(64)
}

pub(super) fn pack(rows: usize, cols: usize, entries: &[u64]) -> Vec<Vec<u64>> {
    let w = words(cols);
    let mut out = vec![vec![0u64; w]; rows];
    for i in 0..rows {
        for j in 0..cols {
            if entries[i * cols + j] & 1 == 1 {
                out[i][j / 64] |= 1u64 << (j % 64);
            }
        }
    }
    out
}

fn get_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

pub(super) fn rank(m: &mut [Vec<u64>], cols: usize) -> usize {
    let rows = m.len();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| get_bit(&m[i], c)) else {
            continue;
        };
        m.swap(r, piv);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if get_bit(row, c) {
                for (t, s) in row.iter_mut().zip(pivot_row.iter()) {
                    *t ^= s;
                }
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis over F_2 from the reduced echelon form, unpacked to 0/1
/// entries.
pub(super) fn kernel(rows: usize, cols: usize, entries: &[u64]) -> Vec<Vec<u64>> {
    let mut m = pack(rows, cols, entries);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| get_bit(&m[i], c)) else {
            continue;
        };
        m.swap(r, piv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && get_bit(row, c) {
                for (t, s) in row.iter_mut().zip(pivot_row.iter()) {
                    *t ^= s;
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
            if get_bit(&m[k], f) {
                v[c] = 1;
            }
        }
        basis.push(v);
    }
    basis
}
