//! The homogeneous coordinate ring R = K\[X,Y,Z\]/(X^d + Y^d + Z^d) of a
//! Fermat curve, handled through a normal form that keeps Z-exponents below
//! d by rewriting Z^d as -(X^d + Y^d). Degree pieces of R, multiplication
//! maps between them, and graded pieces of ideals all become explicit
//! matrices over the curve's coefficient field.

mod parse;

pub use parse::parse_polynomial;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec, Scalar};

/// A Fermat curve X^d + Y^d + Z^d = 0 over F_p (p prime, not dividing d) or
/// over the rationals (characteristic 0). Those conditions make the curve
/// smooth, irreducible, of genus (d-1)(d-2)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermatCurve {
    d: u32,
    characteristic: u64,
    half_degree: Option<u32>,
    genus: u64,
    field: FieldSpec,
}

impl FermatCurve {
    pub fn new(d: u32, characteristic: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidCurve("degree must be at least 1".into()));
        }
        let field = if characteristic == 0 {
            FieldSpec::Rationals
        } else {
            FieldSpec::prime(characteristic)?
        };
        if characteristic != 0 && u64::from(d) % characteristic == 0 {
            return Err(Error::InvalidCurve(format!(
                "characteristic {characteristic} divides {d}; the curve would be singular"
            )));
        }
        let dd = i64::from(d);
        Ok(FermatCurve {
            d,
            characteristic,
            half_degree: if d % 2 == 1 { Some((d - 1) / 2) } else { None },
            genus: u64::try_from((dd - 1) * (dd - 2) / 2).expect("genus is nonnegative"),
            field,
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// The integer l with d = 2l + 1; `None` for even d.
    pub fn half_degree(&self) -> Option<u32> {
        self.half_degree
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Degree of the canonical bundle divisor class, d(d-3) = 2g - 2.
    pub fn two_g_minus_two(&self) -> i64 {
        let d = i64::from(self.d);
        d * (d - 3)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

/// Exponent triple X^x Y^y Z^z. The derived order is only used for map keys;
/// bases are listed in graded-lexicographic order with X > Y > Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn total_degree(&self) -> i64 {
        i64::from(self.x) + i64::from(self.y) + i64::from(self.z)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.x == 0 && self.y == 0 && self.z == 0 {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, e) in [("X", self.x), ("Y", self.y), ("Z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// One of the three coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

/// A raw homogeneous polynomial: integer coefficients, exponents not yet
/// subject to the Z-degree bound.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl RawPoly {
    pub fn monomial(x: u32, y: u32, z: u32, coeff: i64) -> Self {
        RawPoly {
            terms: vec![(Monomial::new(x, y, z), BigInt::from(coeff))],
        }
    }

    pub fn plus(mut self, other: RawPoly) -> Self {
        self.terms.extend(other.terms);
        self
    }
}

/// Element of R in normal form: every stored monomial has Z-exponent < d and
/// total degree equal to `degree`. The zero element keeps its declared
/// degree.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalPoly {
    curve: FermatCurve,
    degree: i64,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Expansion of a single (possibly unreduced) monomial in the normal basis:
/// Z^(qd+r) becomes (-1)^q (X^d + Y^d)^q Z^r.
fn reduce_monomial(
    curve: &FermatCurve,
    mon: Monomial,
    coeff: &Scalar,
    out: &mut dyn FnMut(Monomial, Scalar),
) {
    let d = curve.d;
    let field = curve.field;
    if mon.z < d {
        out(mon, coeff.clone());
        return;
    }
    let q = u64::from(mon.z / d);
    let r = mon.z % d;
    for i in 0..=q {
        let mut b = arith::binomial(q, i);
        if q % 2 == 1 {
            b = -b;
        }
        let c = field.mul(coeff, &field.from_bigint(&b));
        if field.is_zero(&c) {
            continue;
        }
        let m = Monomial::new(
            mon.x + d * u32::try_from(i).expect("exponent fits u32"),
            mon.y + d * u32::try_from(q - i).expect("exponent fits u32"),
            r,
        );
        out(m, c);
    }
}

impl NormalPoly {
    pub fn zero(curve: FermatCurve, degree: i64) -> Self {
        NormalPoly {
            curve,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// X^e, Y^e, or Z^e as an element of R (Z-powers get reduced).
    pub fn var_power(curve: FermatCurve, var: Var, e: u32) -> Self {
        let mon = match var {
            Var::X => Monomial::new(e, 0, 0),
            Var::Y => Monomial::new(0, e, 0),
            Var::Z => Monomial::new(0, 0, e),
        };
        let mut poly = NormalPoly::zero(curve, i64::from(e));
        let one = curve.field.one();
        reduce_monomial(&curve, mon, &one, &mut |m, c| poly.add_term(m, c));
        poly
    }

    pub fn curve(&self) -> &FermatCurve {
        &self.curve
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mon: &Monomial) -> Scalar {
        self.terms
            .get(mon)
            .cloned()
            .unwrap_or_else(|| self.curve.field.zero())
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, c: Scalar) {
        debug_assert!(mon.z < self.curve.d, "normal form keeps z-exponent < d");
        debug_assert_eq!(mon.total_degree(), self.degree, "homogeneous terms only");
        let field = self.curve.field;
        let entry = self.terms.entry(mon).or_insert_with(|| field.zero());
        *entry = field.add(entry, &c);
        if field.is_zero(entry) {
            self.terms.remove(&mon);
        }
    }

    /// Sum of two elements of the same degree piece.
    pub fn add(&self, other: &NormalPoly) -> NormalPoly {
        assert_eq!(self.curve, other.curve);
        assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "sum of homogeneous elements of different degrees"
        );
        let mut out = self.clone();
        if out.is_zero() && !other.is_zero() {
            out.degree = other.degree;
        }
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NormalPoly {
        let field = self.curve.field;
        let mut out = NormalPoly::zero(self.curve, self.degree);
        for (m, v) in self.terms.iter() {
            let prod = field.mul(v, c);
            if !field.is_zero(&prod) {
                out.add_term(*m, prod);
            }
        }
        out
    }

    pub fn neg(&self) -> NormalPoly {
        let field = self.curve.field;
        self.scale(&field.neg(&field.one()))
    }

    /// Product in R; the result is reduced back to normal form.
    pub fn mul(&self, other: &NormalPoly) -> NormalPoly {
        assert_eq!(self.curve, other.curve);
        let curve = self.curve;
        let field = curve.field;
        let mut out = NormalPoly::zero(curve, self.degree + other.degree);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                let c = field.mul(ca, cb);
                if field.is_zero(&c) {
                    continue;
                }
                let raw = Monomial::new(ma.x + mb.x, ma.y + mb.y, ma.z + mb.z);
                reduce_monomial(&curve, raw, &c, &mut |m, v| out.add_term(m, v));
            }
        }
        out
    }
}

impl std::fmt::Display for NormalPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // BTreeMap ascends in (x, y, z); reversed, same-degree terms come out
        // in graded-lex order with X > Y > Z
        let mut first = true;
        for (mon, c) in self.terms.iter().rev() {
            let (sign, mag) = match c {
                Scalar::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (" - ", Scalar::Rat(-r.clone()))
                }
                other => (" + ", other.clone()),
            };
            if first {
                if sign == " - " {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            let is_unit_coeff = match &mag {
                Scalar::Fp(v) => *v == 1,
                Scalar::Rat(r) => r == &num_rational::BigRational::from_integer(1.into()),
            };
            if is_unit_coeff && *mon != Monomial::new(0, 0, 0) {
                write!(f, "{mon}")?;
            } else if *mon == Monomial::new(0, 0, 0) {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{mon}")?;
            }
        }
        Ok(())
    }
}

/// Normal form of a raw homogeneous polynomial; rejects inhomogeneous input.
pub fn normal_form(curve: &FermatCurve, raw: &RawPoly) -> Result<NormalPoly> {
    if raw.terms.is_empty() {
        return Ok(NormalPoly::zero(*curve, 0));
    }
    let degree = raw.terms[0].0.total_degree();
    if raw.terms.iter().any(|(m, _)| m.total_degree() != degree) {
        return Err(Error::NonHomogeneous);
    }
    let mut out = NormalPoly::zero(*curve, degree);
    let field = curve.field;
    for (mon, c) in &raw.terms {
        let scalar = field.from_bigint(c);
        if field.is_zero(&scalar) {
            continue;
        }
        reduce_monomial(curve, *mon, &scalar, &mut |m, v| out.add_term(m, v));
    }
    Ok(out)
}

/// dim_K R_n: monomials of total degree n with Z-exponent < d. Equals
/// d*n + 1 - genus once n >= d - 2.
pub fn hilbert_dim(curve: &FermatCurve, n: i64) -> usize {
    if n < 0 {
        return 0;
    }
    let top = i64::from(curve.d - 1).min(n);
    let mut count = 0i64;
    for c in 0..=top {
        count += n - c + 1;
    }
    usize::try_from(count).expect("dimension fits usize")
}

/// The monomial basis of R_n in graded-lex order (X > Y > Z descending).
pub fn monomial_basis(curve: &FermatCurve, n: i64) -> Vec<Monomial> {
    if n < 0 {
        return Vec::new();
    }
    let n = u32::try_from(n).expect("degree fits u32");
    let mut out = Vec::with_capacity(hilbert_dim(curve, i64::from(n)));
    for x in (0..=n).rev() {
        for y in (0..=(n - x)).rev() {
            let z = n - x - y;
            if z < curve.d {
                out.push(Monomial::new(x, y, z));
            }
        }
    }
    out
}

/// Matrix of multiplication by `f` as a map R_n -> R_{n + deg f}, in the
/// canonical monomial bases.
pub fn mult_matrix(curve: &FermatCurve, f: &NormalPoly, n: i64) -> ExactMatrix {
    assert_eq!(curve, f.curve());
    let domain = monomial_basis(curve, n);
    let target = monomial_basis(curve, n + f.degree());
    let mut index = BTreeMap::new();
    for (i, m) in target.iter().enumerate() {
        index.insert(*m, i);
    }
    let field = curve.field;
    let mut mat = ExactMatrix::zeros(field, target.len(), domain.len());
    for (j, mon) in domain.iter().enumerate() {
        for (ft, fc) in f.terms() {
            let raw = Monomial::new(mon.x + ft.x, mon.y + ft.y, mon.z + ft.z);
            reduce_monomial(curve, raw, fc, &mut |m, c| {
                let i = index[&m];
                mat.add_to(i, j, &c);
            });
        }
    }
    mat
}

/// dim_K of the degree-n piece of the ideal generated by `gens`: the rank of
/// the concatenated multiplication matrices R_{n - deg g} -> R_n.
pub fn ideal_piece_dim(curve: &FermatCurve, gens: &[NormalPoly], n: i64) -> usize {
    let blocks: Vec<ExactMatrix> = gens
        .iter()
        .filter(|g| !g.is_zero() && n - g.degree() >= 0)
        .map(|g| mult_matrix(curve, g, n - g.degree()))
        .collect();
    if blocks.is_empty() {
        return 0;
    }
    ExactMatrix::hstack(&blocks).rank()
}

/// Outcome of the zero-locus certificate search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillResult {
    /// The ideal contains the full degree piece R_n; the generators have no
    /// common zero on the curve.
    FillsAt(i64),
    /// No full piece found up to the cap; nothing is certified either way.
    Inconclusive { checked_up_to: i64 },
}

/// Smallest n with (gens)_n = R_n, scanning up to `n_max` (default
/// 6 * max generator degree + 3d). Once a piece fills, every later piece
/// fills too, since R is generated in degree 1 over K.
pub fn fills_at(curve: &FermatCurve, gens: &[NormalPoly], n_max: Option<i64>) -> Result<FillResult> {
    let nonzero: Vec<NormalPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let max_deg = nonzero.iter().map(|g| g.degree()).max().unwrap();
    let min_deg = nonzero.iter().map(|g| g.degree()).min().unwrap();
    let cap = n_max.unwrap_or(6 * max_deg + 3 * i64::from(curve.d));
    for n in min_deg..=cap {
        if ideal_piece_dim(curve, &nonzero, n) == hilbert_dim(curve, n) {
            return Ok(FillResult::FillsAt(n));
        }
    }
    Ok(FillResult::Inconclusive { checked_up_to: cap })
}
