//! Syzygy bundles on a Fermat curve and their slope bookkeeping.
//!
//! A descriptor names either the rank-2 kernel sheaf Syz(X^e1, Y^e2, Z^e3)(m)
//! of the evaluation map O(m-e1) + O(m-e2) + O(m-e3) -> O(m), or a twist O(t)
//! of the structure sheaf. Degrees and slopes follow from the descriptor
//! alone; global sections are computed exactly as the kernel of the
//! concatenated multiplication matrices. On top of that sit the pullback
//! calculus (Frobenius and covering maps rescale the descriptor data), the
//! rank-2 Harder-Narasimhan engine for primes p congruent to the curve's
//! half-degree, destabilization scans over a window of twists, and the
//! section-count test deciding whether the canonical rank-2 extension splits.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{rat, ExactMatrix};
use crate::ring::{
    fills_at, hilbert_dim, mult_matrix, FermatCurve, FillResult, NormalPoly, Var,
};

/// What a descriptor names: the rank-2 syzygy sheaf of three coordinate
/// powers, twisted, or a twist of the structure sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleKind {
    Syzygy { exponents: [u32; 3], twist: i64 },
    Line { twist: i64 },
}

/// A bundle on a fixed Fermat curve, described symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleDescriptor {
    curve: FermatCurve,
    kind: BundleKind,
}

impl BundleDescriptor {
    /// Syz(X^e1, Y^e2, Z^e3)(m); the exponents must be positive.
    pub fn syzygy(curve: FermatCurve, exponents: [u32; 3], twist: i64) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::NotApplicable(
                "syzygy exponents must be positive".into(),
            ));
        }
        Ok(BundleDescriptor {
            curve,
            kind: BundleKind::Syzygy { exponents, twist },
        })
    }

    /// The line bundle O_C(t).
    pub fn line(curve: FermatCurve, twist: i64) -> Self {
        BundleDescriptor {
            curve,
            kind: BundleKind::Line { twist },
        }
    }

    pub fn curve(&self) -> FermatCurve {
        self.curve
    }

    pub fn kind(&self) -> BundleKind {
        self.kind
    }

    pub fn rank(&self) -> u32 {
        match self.kind {
            BundleKind::Syzygy { .. } => 2,
            BundleKind::Line { .. } => 1,
        }
    }

    /// deg Syz(e)(m) = d(2m - e1 - e2 - e3); deg O(t) = d t.
    pub fn degree(&self) -> i64 {
        let d = i64::from(self.curve.degree());
        match self.kind {
            BundleKind::Syzygy { exponents, twist } => {
                let sum: i64 = exponents.iter().map(|&e| i64::from(e)).sum();
                d * (2 * twist - sum)
            }
            BundleKind::Line { twist } => d * twist,
        }
    }

    /// degree / rank.
    pub fn slope(&self) -> BigRational {
        rat(self.degree(), i64::from(self.rank()))
    }

    /// Pullback along the absolute Frobenius x -> x^p of the curve's own
    /// characteristic: exponents and twist are scaled by p, the degree by p.
    pub fn frobenius_pullback(&self, p: u64) -> Result<BundleDescriptor> {
        if self.curve.characteristic() != p || p == 0 {
            return Err(Error::CharacteristicMismatch {
                curve: self.curve.characteristic(),
                given: p,
            });
        }
        let kind = match self.kind {
            BundleKind::Syzygy { exponents, twist } => BundleKind::Syzygy {
                exponents: scale_exponents(&exponents, p)?,
                twist: scale_twist(twist, p)?,
            },
            BundleKind::Line { twist } => BundleKind::Line {
                twist: scale_twist(twist, p)?,
            },
        };
        Ok(BundleDescriptor {
            curve: self.curve,
            kind,
        })
    }

    /// Pullback along the degree-n^2 cover of the degree-(n d) Fermat curve
    /// that sends each coordinate to its nth power. Exponents and twist are
    /// scaled by n, the degree by n^2.
    pub fn cover_pullback(&self, n: u32) -> Result<BundleDescriptor> {
        if n == 0 {
            return Err(Error::NotApplicable("cover exponent must be positive".into()));
        }
        let target_d = self
            .curve
            .degree()
            .checked_mul(n)
            .ok_or(Error::ResourceCap {
                requested: u64::from(self.curve.degree()) * u64::from(n),
                cap: u64::from(u32::MAX),
            })?;
        let target = FermatCurve::new(target_d, self.curve.characteristic())?;
        let kind = match self.kind {
            BundleKind::Syzygy { exponents, twist } => BundleKind::Syzygy {
                exponents: scale_exponents(&exponents, u64::from(n))?,
                twist: scale_twist(twist, u64::from(n))?,
            },
            BundleKind::Line { twist } => BundleKind::Line {
                twist: scale_twist(twist, u64::from(n))?,
            },
        };
        Ok(BundleDescriptor {
            curve: target,
            kind,
        })
    }

    /// Global sections of a syzygy descriptor: triples (s1, s2, s3) with
    /// s1 X^e1 + s2 Y^e2 + s3 Z^e3 = 0 in the coordinate ring, found as the
    /// kernel of the concatenated multiplication matrices into R_m.
    pub fn section_space(&self) -> Result<SectionSpace> {
        let BundleKind::Syzygy { exponents, twist } = self.kind else {
            return Err(Error::NotApplicable(
                "section spaces are computed for syzygy descriptors; \
                 line bundle sections are counted by the Hilbert function"
                    .into(),
            ));
        };
        let curve = self.curve;
        let m = twist;
        let vars = [Var::X, Var::Y, Var::Z];
        let mut blocks = Vec::with_capacity(3);
        for (i, var) in vars.iter().enumerate() {
            let f = NormalPoly::var_power(curve, *var, exponents[i]);
            blocks.push(mult_matrix(&curve, &f, m - i64::from(exponents[i])));
        }
        let stacked = ExactMatrix::hstack(&blocks);
        let kernel = stacked.kernel_basis();
        let offsets: Vec<usize> = blocks.iter().map(|b| b.cols()).collect();
        let mut basis = Vec::with_capacity(kernel.len());
        for vec in kernel {
            let mut triple = Vec::with_capacity(3);
            let mut start = 0;
            for (i, &width) in offsets.iter().enumerate() {
                let deg = m - i64::from(exponents[i]);
                let mut s = NormalPoly::zero(curve, deg);
                let mons = crate::ring::monomial_basis(&curve, deg);
                for (j, mon) in mons.iter().enumerate() {
                    let c = vec[start + j].clone();
                    if !curve.field().is_zero(&c) {
                        s.add_term(*mon, c);
                    }
                }
                triple.push(s);
                start += width;
            }
            let triple: [NormalPoly; 3] = triple.try_into().expect("three components");
            basis.push(triple);
        }
        Ok(SectionSpace {
            bundle: *self,
            basis,
        })
    }
}

fn scale_exponents(exponents: &[u32; 3], factor: u64) -> Result<[u32; 3]> {
    let mut out = [0u32; 3];
    for (i, &e) in exponents.iter().enumerate() {
        out[i] = u32::try_from(u64::from(e) * factor).map_err(|_| Error::ResourceCap {
            requested: u64::from(e).saturating_mul(factor),
            cap: u64::from(u32::MAX),
        })?;
    }
    Ok(out)
}

fn scale_twist(twist: i64, factor: u64) -> Result<i64> {
    let f = i64::try_from(factor).map_err(|_| Error::ResourceCap {
        requested: factor,
        cap: u64::from(u32::MAX),
    })?;
    twist.checked_mul(f).ok_or(Error::ResourceCap {
        requested: twist.unsigned_abs().saturating_mul(factor),
        cap: u64::from(u32::MAX),
    })
}

impl std::fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            BundleKind::Syzygy { exponents, twist } => write!(
                f,
                "Syz(X^{},Y^{},Z^{})({twist})",
                exponents[0], exponents[1], exponents[2]
            ),
            BundleKind::Line { twist } => write!(f, "O({twist})"),
        }
    }
}

/// A basis of H^0 of a syzygy descriptor. Each basis element is a triple of
/// homogeneous forms satisfying the defining relation exactly.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    bundle: BundleDescriptor,
    basis: Vec<[NormalPoly; 3]>,
}

impl SectionSpace {
    pub fn bundle(&self) -> &BundleDescriptor {
        &self.bundle
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[[NormalPoly; 3]] {
        &self.basis
    }

    /// Re-verify s1 X^e1 + s2 Y^e2 + s3 Z^e3 = 0 for every basis triple by
    /// direct polynomial arithmetic.
    pub fn verify_relations(&self) -> bool {
        let BundleKind::Syzygy { exponents, twist } = self.bundle.kind else {
            return false;
        };
        let curve = self.bundle.curve;
        let vars = [Var::X, Var::Y, Var::Z];
        self.basis.iter().all(|triple| {
            let mut total = NormalPoly::zero(curve, twist);
            for i in 0..3 {
                let power = NormalPoly::var_power(curve, vars[i], exponents[i]);
                total = total.add(&triple[i].mul(&power));
            }
            total.is_zero()
        })
    }
}

/// The twist data at which the pulled-back syzygy bundle acquires its
/// destabilizing section: writes 2p = d k + 2 ell with k even and returns
/// (k, m0) with m0 = d(k + 1 + k/2) = 3p - ell + 1.
pub fn expected_section_twist(curve: &FermatCurve, p: u64) -> Result<(u64, i64)> {
    let ell = curve.half_degree().ok_or_else(|| {
        Error::NotApplicable("the curve degree must be odd, d = 2*ell + 1".into())
    })?;
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = u64::from(curve.degree());
    if d % p == 0 {
        return Err(Error::NotApplicable(format!(
            "prime {p} divides the curve degree {d}"
        )));
    }
    let ell = u64::from(ell);
    if p % d != ell % d {
        return Err(Error::NotApplicable(format!(
            "prime {p} is not congruent to {ell} modulo {d}"
        )));
    }
    // p = ell (mod d) and 2p = dk + 2 ell force k = 2(p - ell)/d, even
    let k = 2 * (p - ell) / d;
    let m0 = i64::try_from(d * (k + 1) + d * k / 2).map_err(|_| Error::ResourceCap {
        requested: d * (k + 1),
        cap: u64::from(u32::MAX),
    })?;
    debug_assert_eq!(m0, 3 * p as i64 - ell as i64 + 1);
    Ok((k, m0))
}

/// The rank-2 Harder-Narasimhan data of F*(Syz(X^2,Y^2,Z^2)(3)) at a prime
/// congruent to the half-degree.
#[derive(Debug, Clone)]
pub struct HNReport {
    pub curve: FermatCurve,
    pub p: u64,
    /// Even integer with 2p = d k + 2 ell.
    pub k: u64,
    /// Twist at which the destabilizing section appears, 3p - ell + 1.
    pub m0: i64,
    /// Degree of the maximal destabilizing line subbundle, d(ell - 1).
    pub alpha: i64,
    pub mu_max: BigRational,
    pub mu_min: BigRational,
    /// deg Syz(2p,2p,2p)(m0) = d(2 - 2 ell).
    pub degree_at_m0: i64,
    pub section_space_dim: usize,
    /// First kernel-basis section under the fixed monomial order.
    pub section: [NormalPoly; 3],
    /// Whether the section's components were certified to have no common
    /// zero on the curve (making the line subsheaf a subbundle).
    pub zero_free: FillResult,
}

/// Computes the Harder-Narasimhan filtration data of the Frobenius pullback
/// of Syz(X^2,Y^2,Z^2)(3) on a curve of odd degree d = 2 ell + 1 >= 5 in
/// characteristic p = ell (mod d): finds the section of Syz(2p,2p,2p)(m0),
/// certifies it zero-free, and checks the slope bookkeeping exactly.
pub fn hn_filtration_rank2(curve: &FermatCurve) -> Result<HNReport> {
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotApplicable(
            "Frobenius pullbacks need positive characteristic".into(),
        ));
    }
    let ell = curve.half_degree().ok_or_else(|| {
        Error::NotApplicable("the curve degree must be odd, d = 2*ell + 1".into())
    })?;
    if ell < 2 {
        return Err(Error::NotApplicable(
            "rank-2 filtration analysis needs half-degree >= 2 (curve degree >= 5)".into(),
        ));
    }
    let (k, m0) = expected_section_twist(curve, p)?;
    let d = i64::from(curve.degree());
    let e = u32::try_from(2 * p).map_err(|_| Error::ResourceCap {
        requested: 2 * p,
        cap: u64::from(u32::MAX),
    })?;
    let bundle = BundleDescriptor::syzygy(*curve, [e, e, e], m0)?;
    let expected_degree = d * (2 - 2 * i64::from(ell));
    if bundle.degree() != expected_degree {
        return Err(Error::Inconsistency(format!(
            "degree of {bundle} is {}, expected {expected_degree}",
            bundle.degree()
        )));
    }
    let space = bundle.section_space()?;
    if space.dimension() == 0 {
        return Err(Error::Inconsistency(format!(
            "{bundle} has no global section at the predicted twist {m0}"
        )));
    }
    let section = space.basis()[0].clone();
    let alpha = d * (i64::from(ell) - 1);
    let mu_max = rat(alpha, 1);
    let mu_min = rat(-alpha, 1);
    let gap = &mu_max - &mu_min;
    let two_g_minus_two = rat(curve.two_g_minus_two(), 1);
    if gap > two_g_minus_two {
        return Err(Error::Inconsistency(format!(
            "slope gap {gap} exceeds 2g - 2 = {two_g_minus_two}"
        )));
    }
    let zero_free = fills_at(curve, &section, None)?;
    Ok(HNReport {
        curve: *curve,
        p,
        k,
        m0,
        alpha,
        mu_max,
        mu_min,
        degree_at_m0: bundle.degree(),
        section_space_dim: space.dimension(),
        section,
        zero_free,
    })
}

/// Evidence recorded for a single twist shift in a destabilization scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftStatus {
    /// Nonzero section at negative degree: the bundle is not semistable.
    Destabilized,
    /// Nonzero section at degree exactly zero; destabilization depends on
    /// the zero locus of the section, which the scan does not resolve.
    Marginal,
    /// No section-based evidence at this shift.
    None,
}

impl ShiftStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShiftStatus::Destabilized => "destabilized",
            ShiftStatus::Marginal => "marginal",
            ShiftStatus::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRow {
    pub shift: i64,
    pub twist: i64,
    pub degree: i64,
    pub h0: usize,
    pub status: ShiftStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanVerdict {
    Destabilized,
    Marginal,
    NoDestabilizerFound,
}

impl ScanVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanVerdict::Destabilized => "destabilized",
            ScanVerdict::Marginal => "marginal",
            ScanVerdict::NoDestabilizerFound => "no-destabilizer-found",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub bundle: BundleDescriptor,
    pub rows: Vec<ScanRow>,
    pub verdict: ScanVerdict,
}

/// Records h^0 of the bundle twisted by each shift in the window and flags
/// shifts where a nonzero section coexists with non-positive degree. Shifts
/// are evaluated concurrently; rows come back in window order.
pub fn destabilization_scan(
    bundle: &BundleDescriptor,
    shift_lo: i64,
    shift_hi: i64,
) -> Result<ScanReport> {
    let BundleKind::Syzygy { exponents, twist } = bundle.kind else {
        return Err(Error::NotApplicable(
            "destabilization scans apply to syzygy descriptors".into(),
        ));
    };
    if shift_lo > shift_hi {
        return Err(Error::EmptyRange);
    }
    let curve = bundle.curve;
    let shifts: Vec<i64> = (shift_lo..=shift_hi).collect();
    let rows: Result<Vec<ScanRow>> = shifts
        .par_iter()
        .map(|&shift| {
            let shifted = BundleDescriptor::syzygy(curve, exponents, twist + shift)?;
            let h0 = shifted.section_space()?.dimension();
            let degree = shifted.degree();
            let status = if h0 > 0 && degree < 0 {
                ShiftStatus::Destabilized
            } else if h0 > 0 && degree == 0 {
                ShiftStatus::Marginal
            } else {
                ShiftStatus::None
            };
            Ok(ScanRow {
                shift,
                twist: twist + shift,
                degree,
                h0,
                status,
            })
        })
        .collect();
    let rows = rows?;
    let verdict = if rows.iter().any(|r| r.status == ShiftStatus::Destabilized) {
        ScanVerdict::Destabilized
    } else if rows.iter().any(|r| r.status == ShiftStatus::Marginal) {
        ScanVerdict::Marginal
    } else {
        ScanVerdict::NoDestabilizerFound
    };
    Ok(ScanReport {
        bundle: *bundle,
        rows,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitVerdict {
    NonSplit,
    Split,
}

impl SplitVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplitVerdict::NonSplit => "non-split",
            SplitVerdict::Split => "split",
        }
    }
}

/// Outcome of the extension split test at a single prime.
#[derive(Debug, Clone)]
pub struct SplitReport {
    pub curve: FermatCurve,
    pub p: u64,
    /// Twist 3p + ell - 1 at which the section count separates the cases.
    pub twist: i64,
    pub h0_observed: usize,
    /// hilbert_dim(d - 3) + 1: the count forced by a split extension.
    pub h0_if_split: usize,
    pub verdict: SplitVerdict,
    /// p does not divide d(ell - 1); splitting would force divisibility.
    pub divisibility_certificate: bool,
}

/// Decides whether the canonical extension carried by Syz(2p,2p,2p)(3p+ell-1)
/// splits, by counting sections: a split extension would contribute one extra
/// section on top of the hilbert_dim(d-3) coming from the twisted canonical
/// subsheaf.
pub fn extension_split_test(curve: &FermatCurve) -> Result<SplitReport> {
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotApplicable(
            "the split test compares Frobenius data; positive characteristic required".into(),
        ));
    }
    let ell = curve.half_degree().ok_or_else(|| {
        Error::NotApplicable("the curve degree must be odd, d = 2*ell + 1".into())
    })?;
    if ell < 2 {
        return Err(Error::NotApplicable(
            "the split test needs half-degree >= 2 (curve degree >= 5)".into(),
        ));
    }
    let (_, _) = expected_section_twist(curve, p)?;
    let d = i64::from(curve.degree());
    let twist = 3 * p as i64 + i64::from(ell) - 1;
    let e = u32::try_from(2 * p).map_err(|_| Error::ResourceCap {
        requested: 2 * p,
        cap: u64::from(u32::MAX),
    })?;
    let bundle = BundleDescriptor::syzygy(*curve, [e, e, e], twist)?;
    let h0_observed = bundle.section_space()?.dimension();
    let h0_if_split = hilbert_dim(curve, d - 3) + 1;
    let verdict = if h0_observed + 1 == h0_if_split {
        SplitVerdict::NonSplit
    } else if h0_observed == h0_if_split {
        SplitVerdict::Split
    } else {
        return Err(Error::Inconsistency(format!(
            "h0 at twist {twist} is {h0_observed}, outside {{{}, {}}}",
            h0_if_split - 1,
            h0_if_split
        )));
    };
    let divisibility_certificate = d * (i64::from(ell) - 1) % p as i64 != 0;
    Ok(SplitReport {
        curve: *curve,
        p,
        twist,
        h0_observed,
        h0_if_split,
        verdict,
        divisibility_certificate,
    })
}

/// The two possibilities for the pulled-back bundle on the elliptic Fermat
/// cubic: the nonsplit self-extension of the structure sheaf, or the
/// trivial bundle O + O.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticType {
    NonsplitSelfExtension,
    Trivial,
}

impl EllipticType {
    pub fn as_str(&self) -> &'static str {
        match self {
            EllipticType::NonsplitSelfExtension => "nonsplit-self-extension",
            EllipticType::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EllipticReport {
    pub p: u64,
    pub residue_mod_3: u64,
    pub h0: usize,
    pub bundle_type: EllipticType,
}

/// On the cubic X^3 + Y^3 + Z^3 = 0 in characteristic p != 3, the pullback
/// F*(Syz(X^2,Y^2,Z^2)(3)) is degree-0 and semistable, and h^0 at twist 3p
/// decides its isomorphism type: 1 for the nonsplit self-extension of O,
/// 2 for the trivial bundle. The type is cross-checked against p mod 3.
pub fn elliptic_frobenius_type(p: u64) -> Result<EllipticReport> {
    let curve = FermatCurve::new(3, p)?;
    let e = u32::try_from(2 * p).map_err(|_| Error::ResourceCap {
        requested: 2 * p,
        cap: u64::from(u32::MAX),
    })?;
    let twist = 3 * i64::try_from(p).expect("prime fits i64");
    let bundle = BundleDescriptor::syzygy(curve, [e, e, e], twist)?;
    let h0 = bundle.section_space()?.dimension();
    let residue = p % 3;
    let bundle_type = match (h0, residue) {
        (1, 1) => EllipticType::NonsplitSelfExtension,
        (2, 2) => EllipticType::Trivial,
        _ => {
            return Err(Error::Inconsistency(format!(
                "h0(Syz(X^{e},Y^{e},Z^{e})({twist})) = {h0} does not match the \
                 residue {residue} of {p} mod 3"
            )))
        }
    };
    Ok(EllipticReport {
        p,
        residue_mod_3: residue,
        h0,
        bundle_type,
    })
}
