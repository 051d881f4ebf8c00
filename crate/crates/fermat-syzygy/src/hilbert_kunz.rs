//! The Hilbert-Kunz function of the ideal (X^2, Y^2, Z^2) on a Fermat curve.
//!
//! HK(q) is the colength of (X^2q, Y^2q, Z^2q) in the homogeneous coordinate
//! ring, computed degree by degree as dim R_n minus the rank of the ideal
//! piece, with early termination once a graded piece of the quotient
//! vanishes (cyclic standard-graded quotients have no gaps). The normalized
//! values HK(q)/q^2 converge to the multiplicity, for which two exact closed
//! forms are provided and cross-checked: 3d + (d/4)(d-3)^2/p^2 and
//! 3d + alpha^2/(d p^2) with alpha = d(d-3)/2.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{exact_integer_sqrt, rat};
use crate::ring::{hilbert_dim, ideal_piece_dim, FermatCurve, NormalPoly, Var};

/// Largest Frobenius-power exponent accepted without an explicit override.
pub const DEFAULT_EXPONENT_CAP: u32 = 256;

/// Colength of (X^a, Y^a, Z^a) in the coordinate ring: the dimension of the
/// quotient, summed over its finitely many graded pieces. Degrees are
/// processed in parallel blocks; the sum stops at the first empty piece.
pub fn frobenius_power_colength(curve: &FermatCurve, a: u32, allow_large: bool) -> Result<u64> {
    if curve.characteristic() == 0 {
        return Err(Error::NotApplicable(
            "Frobenius powers live in positive characteristic".into(),
        ));
    }
    if a == 0 {
        return Err(Error::NotApplicable("the exponent must be positive".into()));
    }
    if a > DEFAULT_EXPONENT_CAP && !allow_large {
        return Err(Error::ResourceCap {
            requested: u64::from(a),
            cap: u64::from(DEFAULT_EXPONENT_CAP),
        });
    }
    let gens = vec![
        NormalPoly::var_power(*curve, Var::X, a),
        NormalPoly::var_power(*curve, Var::Y, a),
        NormalPoly::var_power(*curve, Var::Z, a),
    ];
    // the quotient is a quotient of K[x,y,z]/(x^a,y^a,z^a), whose top
    // degree is 3(a-1); a piece surviving past that bound is impossible
    let safety = 3 * (i64::from(a) - 1) + i64::from(curve.degree());
    let mut total = 0u64;
    let mut block_start = 0i64;
    loop {
        let degrees: Vec<i64> = (block_start..block_start + 8).collect();
        let codims: Vec<usize> = degrees
            .par_iter()
            .map(|&n| hilbert_dim(curve, n) - ideal_piece_dim(curve, &gens, n))
            .collect();
        for (i, &codim) in codims.iter().enumerate() {
            if codim == 0 {
                return Ok(total);
            }
            if degrees[i] > safety {
                return Err(Error::Inconsistency(format!(
                    "quotient by (X^{a}, Y^{a}, Z^{a}) still nonzero in degree {}, \
                     past the socle bound {safety}",
                    degrees[i]
                )));
            }
            total += codim as u64;
        }
        block_start += 8;
    }
}

/// One Hilbert-Kunz sample: q = p^e, the colength HK(q) at exponent a = 2q,
/// and the normalized ratio HK(q)/q^2.
#[derive(Debug, Clone)]
pub struct HKSample {
    pub e: u32,
    pub q: u64,
    pub colength: u64,
    pub ratio: BigRational,
}

/// Hilbert-Kunz samples together with the two closed forms they converge to.
#[derive(Debug, Clone)]
pub struct HKReport {
    pub curve: FermatCurve,
    pub p: u64,
    pub samples: Vec<HKSample>,
    /// True when sampling stopped early at the resource cap.
    pub capped: bool,
    /// 3d + (d/4)(d-3)^2 / p^2.
    pub monsky_value: BigRational,
    /// 3d + alpha^2 / (d p^2) at alpha = d(d-3)/2.
    pub hn_value: BigRational,
    pub alpha_used: i64,
}

/// Computes HK(p^e) for e = 1..e_max. Sampling stops (and the report is
/// flagged capped) when 2 p^e exceeds the exponent cap and no override is
/// given.
pub fn hk_samples(curve: &FermatCurve, e_max: u32, allow_large: bool) -> Result<HKReport> {
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotApplicable(
            "Hilbert-Kunz sampling needs positive characteristic".into(),
        ));
    }
    let d = curve.degree();
    let alpha = alpha_from_degree(d);
    let mut samples = Vec::new();
    let mut capped = false;
    for e in 1..=e_max {
        let Some(q) = p.checked_pow(e) else {
            capped = true;
            break;
        };
        let Some(a_base) = q.checked_mul(2) else {
            capped = true;
            break;
        };
        if a_base > u64::from(DEFAULT_EXPONENT_CAP) && !allow_large {
            capped = true;
            break;
        }
        let a = match u32::try_from(a_base) {
            Ok(a) => a,
            Err(_) => {
                capped = true;
                break;
            }
        };
        let colength = frobenius_power_colength(curve, a, allow_large)?;
        let q_squared = BigInt::from(q) * BigInt::from(q);
        let ratio = BigRational::new(BigInt::from(colength), q_squared);
        samples.push(HKSample {
            e,
            q,
            colength,
            ratio,
        });
    }
    Ok(HKReport {
        curve: *curve,
        p,
        samples,
        capped,
        monsky_value: hk_closed_form_monsky(d, p),
        hn_value: hk_from_hn(d, p, alpha),
        alpha_used: alpha,
    })
}

/// Degree of the destabilizing subbundle as a function of d alone:
/// d(d-3)/2, which is d(ell-1) when d = 2 ell + 1.
pub fn alpha_from_degree(d: u32) -> i64 {
    let d = i64::from(d);
    d * (d - 3) / 2
}

/// The closed form 3d + (d/4)(d-3)^2 / p^2 for the multiplicity.
pub fn hk_closed_form_monsky(d: u32, p: u64) -> BigRational {
    assert!(p > 0, "multiplicity formulas need positive characteristic");
    let d = i64::from(d);
    let p = BigInt::from(p);
    let base = rat(3 * d, 1);
    let correction = BigRational::new(
        BigInt::from(d * (d - 3) * (d - 3)),
        BigInt::from(4) * &p * &p,
    );
    base + correction
}

/// The closed form 3d + alpha^2 / (d p^2) for the multiplicity, with the
/// destabilizing degree alpha as an input.
pub fn hk_from_hn(d: u32, p: u64, alpha: i64) -> BigRational {
    assert!(p > 0, "multiplicity formulas need positive characteristic");
    let d = i64::from(d);
    let p = BigInt::from(p);
    rat(3 * d, 1) + BigRational::new(BigInt::from(alpha * alpha), BigInt::from(d) * &p * &p)
}

/// Recovers the nonnegative alpha with hk_from_hn(d, p, alpha) equal to the
/// Monsky closed form, by exact square root. Always d(d-3)/2.
pub fn solve_alpha_from_hk(d: u32, p: u64) -> u64 {
    let excess = hk_closed_form_monsky(d, p) - rat(3 * i64::from(d), 1);
    let p_big = BigInt::from(p);
    let alpha_squared = excess * BigRational::from_integer(BigInt::from(d) * &p_big * &p_big);
    let root = exact_integer_sqrt(&alpha_squared)
        .expect("the excess over 3d scales to a perfect square");
    let (_, digits) = root.to_u64_digits();
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}
