//! Exact dense linear algebra over prime fields and the rationals.
//!
//! Everything downstream reduces to two questions about an explicit matrix:
//! its rank and a canonical basis of its kernel. Ranks are computed after an
//! exact structural reduction (columns with a single nonzero entry are peeled
//! off first, which is just Gaussian elimination in a cheap order), then by
//! dense elimination: bit-packed XOR rows for characteristic 2, delayed-
//! reduction word arithmetic for other word-sized primes, and fraction-free
//! (Bareiss) pivoting over the rationals. Kernel bases always come from the
//! reduced row echelon form, so they are canonical and runs are reproducible.

// Elimination kernels walk rows and columns by explicit index on purpose;
// iterator rewrites obscure the pivot bookkeeping.
#![allow(clippy::needless_range_loop)]

mod fp;
mod gf2;
mod rational;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Coefficient field of a computation: F_p for a word-sized prime p, or Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

/// An element of the field named by a [`FieldSpec`]; prime-field values are
/// kept reduced to `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl FieldSpec {
    /// Prime field constructor; rejects composite or zero moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if arith::is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let m = n.mod_floor(&BigInt::from(*p));
                let (_, digits) = m.to_u64_digits();
                Scalar::Fp(if digits.is_empty() { 0 } else { digits[0] })
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = x + y;
                Scalar::Fp(if s >= *p { s - p } else { s })
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(arith::mul_mod(*x, *y, *p))
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Some(Scalar::Fp(arith::pow_mod(*x, p - 2, *p))),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to this field"),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum MatrixData {
    Fp(Vec<u64>),
    Rat(Vec<BigRational>),
}

/// Dense matrix over a [`FieldSpec`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: MatrixData,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field {
            FieldSpec::Prime(_) => MatrixData::Fp(vec![0; rows * cols]),
            FieldSpec::Rationals => MatrixData::Rat(vec![BigRational::zero(); rows * cols]),
        };
        ExactMatrix { field, rows, cols, data }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Integer rows reduced into the field; rows must be rectangular.
    pub fn from_rows_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        match &self.data {
            MatrixData::Fp(a) => Scalar::Fp(a[i * self.cols + j]),
            MatrixData::Rat(a) => Scalar::Rat(a[i * self.cols + j].clone()),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let idx = i * self.cols + j;
        match (&mut self.data, v) {
            (MatrixData::Fp(a), Scalar::Fp(x)) => a[idx] = x,
            (MatrixData::Rat(a), Scalar::Rat(x)) => a[idx] = x,
            _ => panic!("scalar does not belong to this field"),
        }
    }

    /// Adds `v` into entry `(i, j)`; used when scattering polynomial terms.
    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, self.field.add(&cur, v));
    }

    /// Horizontal concatenation of blocks sharing a row count and field.
    pub fn hstack(blocks: &[ExactMatrix]) -> Self {
        assert!(!blocks.is_empty(), "hstack of no blocks");
        let field = blocks[0].field;
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.field == field && b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j));
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn mat_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !self.field.is_zero(&e) {
                        acc = self.field.add(&acc, &self.field.mul(&e, &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    fn is_nonzero_at(&self, i: usize, j: usize) -> bool {
        match &self.data {
            MatrixData::Fp(a) => a[i * self.cols + j] != 0,
            MatrixData::Rat(a) => !a[i * self.cols + j].is_zero(),
        }
    }

    /// Peels columns whose single nonzero entry makes them immediate pivots.
    /// Each peel removes that column and its row and contributes 1 to the
    /// rank; column operations against a unit column touch no other row, so
    /// rank(M) = peeled + rank(remaining minor) exactly.
    fn peel(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut row_alive = vec![true; self.rows];
        let mut col_alive = vec![true; self.cols];
        let mut row_support: Vec<Vec<usize>> = vec![Vec::new(); self.rows];
        let mut col_support: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        let mut col_count = vec![0usize; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.is_nonzero_at(i, j) {
                    row_support[i].push(j);
                    col_support[j].push(i);
                    col_count[j] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..self.cols).filter(|&j| col_count[j] == 1).collect();
        let mut peeled = 0usize;
        while let Some(j) = queue.pop() {
            if !col_alive[j] || col_count[j] != 1 {
                continue;
            }
            let i = match col_support[j].iter().find(|&&i| row_alive[i]) {
                Some(&i) => i,
                None => continue,
            };
            peeled += 1;
            col_alive[j] = false;
            row_alive[i] = false;
            for &j2 in &row_support[i] {
                if col_alive[j2] {
                    col_count[j2] -= 1;
                    if col_count[j2] == 1 {
                        queue.push(j2);
                    } else if col_count[j2] == 0 {
                        col_alive[j2] = false;
                    }
                }
            }
        }
        let rows_kept = (0..self.rows).filter(|&i| row_alive[i]).collect();
        let cols_kept = (0..self.cols)
            .filter(|&j| col_alive[j] && col_count[j] > 0)
            .collect();
        (peeled, rows_kept, cols_kept)
    }

    fn submatrix(&self, rows_keep: &[usize], cols_keep: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.field, rows_keep.len(), cols_keep.len());
        for (i2, &i) in rows_keep.iter().enumerate() {
            for (j2, &j) in cols_keep.iter().enumerate() {
                out.set(i2, j2, self.get(i, j));
            }
        }
        out
    }

    /// Rank over the matrix's field.
    pub fn rank(&self) -> usize {
        let (peeled, rkeep, ckeep) = self.peel();
        if rkeep.is_empty() || ckeep.is_empty() {
            return peeled;
        }
        let sub = self.submatrix(&rkeep, &ckeep);
        peeled
            + match (&sub.data, sub.field) {
                (MatrixData::Fp(a), FieldSpec::Prime(2)) => {
                    let mut packed = gf2::pack(sub.rows, sub.cols, a);
                    gf2::rank(&mut packed, sub.cols)
                }
                (MatrixData::Fp(a), FieldSpec::Prime(p)) => {
                    fp::rank(p, sub.rows, sub.cols, a.clone())
                }
                (MatrixData::Rat(a), _) => rational::rank(sub.rows, sub.cols, a),
                _ => unreachable!("matrix data matches its field"),
            }
    }

    /// Canonical kernel basis read off the reduced row echelon form: one
    /// vector per free column, carrying 1 there and 0 at the other free
    /// columns. Output order follows the free columns ascending.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        match (&self.data, self.field) {
            (MatrixData::Fp(a), FieldSpec::Prime(2)) => {
                gf2::kernel(self.rows, self.cols, a)
                    .into_iter()
                    .map(|v| v.into_iter().map(Scalar::Fp).collect())
                    .collect()
            }
            (MatrixData::Fp(a), FieldSpec::Prime(p)) => {
                fp::kernel(p, self.rows, self.cols, a.clone())
                    .into_iter()
                    .map(|v| v.into_iter().map(Scalar::Fp).collect())
                    .collect()
            }
            (MatrixData::Rat(a), _) => rational::kernel(self.rows, self.cols, a)
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::Rat).collect())
                .collect(),
            _ => unreachable!("matrix data matches its field"),
        }
    }
}

/// Canonical "num/den" rendering with positive denominator, reduced.
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "num/den" or a bare integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("'{s}' is not an exact rational (num or num/den)"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("'{s}' has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// True when `r` is a nonnegative integer with an exact integer square root;
/// returns the root.
pub fn exact_integer_sqrt(r: &BigRational) -> Option<BigInt> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    let n = r.to_integer();
    let root = n.sqrt();
    if &root * &root == n {
        Some(root)
    } else {
        None
    }
}
