//! Cohomology of the twists `O_C(n)` on a Fermat curve.
//!
//! Since the coordinate ring of C: X^d + Y^d + Z^d = 0 is arithmetically
//! Cohen-Macaulay, h^0(O_C(n)) is just the Hilbert function, and h^1 is read
//! off by duality against the canonical twist d-3. H^1(O_C(m)) additionally
//! carries an explicit monomial basis: the Laurent monomials X^a Y^b Z^c with
//! a < 0, b < 0, 0 <= c < d and a+b+c = m. Extension classes are sparse
//! coefficient vectors in that basis, so nonvanishing is visible term by
//! term without any cocycle manipulation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::ring::{hilbert_dim, FermatCurve};

/// Dimension of H^0(C, O_C(n)).
pub fn h0_line(curve: &FermatCurve, n: i64) -> usize {
    hilbert_dim(curve, n)
}

/// Twist t with omega_C = O_C(t), namely d - 3.
pub fn canonical_twist(curve: &FermatCurve) -> i64 {
    i64::from(curve.degree()) - 3
}

/// Dimension of H^1(C, O_C(n)), by duality h^0(O_C(d - 3 - n)).
pub fn h1_line(curve: &FermatCurve, n: i64) -> usize {
    h0_line(curve, canonical_twist(curve) - n)
}

/// A Laurent monomial X^a Y^b Z^c. Inside the H^1 model the exponents
/// satisfy a < 0, b < 0, 0 <= c < d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CechMonomial {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl CechMonomial {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        CechMonomial { x, y, z }
    }

    pub fn total_degree(&self) -> i64 {
        self.x + self.y + self.z
    }
}

impl std::fmt::Display for CechMonomial {
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

/// Monomial basis of H^1(C, O_C(m)): all X^a Y^b Z^c with a < 0, b < 0,
/// 0 <= c <= d-1 and a + b + c = m. Listed with c descending, then a
/// descending from -1, so the distinguished degree-(d-3) class
/// X^-1 Y^-1 Z^(d-1) always comes first when present.
pub fn cech_h1_basis(curve: &FermatCurve, m: i64) -> Vec<CechMonomial> {
    let d = i64::from(curve.degree());
    let mut basis = Vec::new();
    for c in (0..d).rev() {
        // a + b = m - c with a, b <= -1 forces m - c + 1 <= a <= -1
        let lo = m - c + 1;
        let mut a = -1;
        while a >= lo {
            basis.push(CechMonomial::new(a, m - c - a, c));
            a -= 1;
        }
    }
    debug_assert_eq!(basis.len(), h1_line(curve, m));
    basis
}

/// An element of H^1(C, O_C(m)) written in the monomial basis. The zero
/// class has an empty term map, so nonvanishing is a syntactic check.
#[derive(Debug, Clone, PartialEq)]
pub struct CechClass {
    curve: FermatCurve,
    degree: i64,
    terms: BTreeMap<CechMonomial, Scalar>,
}

impl CechClass {
    pub fn zero(curve: FermatCurve, degree: i64) -> Self {
        CechClass {
            curve,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The class X^-1 Y^-1 Z^(d-1) in H^1(C, O_C(d-3)). It spans that
    /// one-dimensional space and is the obstruction class certifying
    /// non-split extensions of O_C by omega_C.
    pub fn canonical(curve: FermatCurve) -> Self {
        let mon = CechMonomial::new(-1, -1, i64::from(curve.degree()) - 1);
        let one = curve.field().one();
        let mut cls = CechClass::zero(curve, mon.total_degree());
        cls.add_term(mon, one).expect("basis monomial is in range");
        cls
    }

    pub fn curve(&self) -> &FermatCurve {
        &self.curve
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CechMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// Add `coeff * mon`, rejecting monomials outside the H^1 basis region
    /// or of the wrong degree. Cancelled terms are dropped from the map.
    pub fn add_term(&mut self, mon: CechMonomial, coeff: Scalar) -> Result<()> {
        if mon.total_degree() != self.degree {
            return Err(Error::NonHomogeneous);
        }
        let d = i64::from(self.curve.degree());
        if mon.x >= 0 || mon.y >= 0 || mon.z < 0 || mon.z >= d {
            return Err(Error::NotApplicable(format!(
                "{mon} is outside the H^1 basis region (need X, Y exponents < 0 and 0 <= Z exponent < {d})"
            )));
        }
        let field = self.curve.field();
        let entry = self.terms.entry(mon).or_insert_with(|| field.zero());
        *entry = field.add(entry, &coeff);
        if field.is_zero(entry) {
            self.terms.remove(&mon);
        }
        Ok(())
    }

    /// True iff the class is nonzero in H^1, i.e. some basis coefficient
    /// survives.
    pub fn is_nonzero(&self) -> bool {
        !self.terms.is_empty()
    }
}

impl std::fmt::Display for CechClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
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
            let is_unit = match &mag {
                Scalar::Fp(v) => *v == 1,
                Scalar::Rat(r) => r == &num_rational::BigRational::from_integer(1.into()),
            };
            if is_unit {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{mag}*{mon}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn curve(d: u32) -> FermatCurve {
        FermatCurve::new(d, 0).unwrap()
    }

    #[test]
    fn h0_counts_graded_pieces() {
        let c5 = curve(5);
        assert_eq!(h0_line(&c5, -1), 0);
        assert_eq!(h0_line(&c5, 2), 6);
        assert_eq!(h0_line(&curve(3), 0), 1);
    }

    #[test]
    fn canonical_twist_is_degree_minus_three() {
        assert_eq!(canonical_twist(&curve(5)), 2);
        assert_eq!(canonical_twist(&curve(3)), 0);
        assert_eq!(canonical_twist(&curve(7)), 4);
        assert_eq!(canonical_twist(&curve(1)), -2);
    }

    #[test]
    fn canonical_twist_has_genus_many_sections() {
        for d in [1, 3, 5, 7, 9] {
            let c = curve(d);
            assert_eq!(h0_line(&c, canonical_twist(&c)) as u64, c.genus());
        }
    }

    #[test]
    fn h1_by_duality() {
        let c5 = curve(5);
        assert_eq!(h1_line(&c5, 2), 1);
        assert_eq!(h1_line(&c5, 20), 0);
        assert_eq!(h1_line(&c5, -1), 10);
    }

    #[test]
    fn riemann_roch_holds_on_window() {
        for d in [1u32, 3, 5, 7, 9] {
            let c = curve(d);
            let dd = i64::from(d);
            let g = c.genus() as i64;
            for n in -3 * dd..=4 * dd {
                let chi = h0_line(&c, n) as i64 - h1_line(&c, n) as i64;
                assert_eq!(chi, dd * n + 1 - g, "d={d}, n={n}");
            }
        }
    }

    #[test]
    fn serre_duality_is_symmetric() {
        for d in [1u32, 3, 5, 7, 9] {
            let c = curve(d);
            let t = canonical_twist(&c);
            for n in -10..=30 {
                assert_eq!(h1_line(&c, n), h0_line(&c, t - n));
                assert_eq!(h1_line(&c, t - n), h0_line(&c, n));
            }
        }
    }

    #[test]
    fn cech_basis_count_matches_duality_count() {
        // Two independent routes to h^1: exponent enumeration vs the
        // Hilbert function of the dual twist.
        for d in [1u32, 3, 5, 7, 9] {
            let c = curve(d);
            for m in -3..=2 * i64::from(d) {
                let basis = cech_h1_basis(&c, m);
                assert_eq!(basis.len(), h1_line(&c, m), "d={d}, m={m}");
                for mon in &basis {
                    assert!(mon.x < 0 && mon.y < 0);
                    assert!(mon.z >= 0 && mon.z < i64::from(d));
                    assert_eq!(mon.total_degree(), m);
                }
            }
        }
    }

    #[test]
    fn cech_basis_examples() {
        assert_eq!(
            cech_h1_basis(&curve(5), 2),
            vec![CechMonomial::new(-1, -1, 4)]
        );
        assert!(cech_h1_basis(&curve(5), 10).is_empty());
        assert_eq!(
            cech_h1_basis(&curve(3), 0),
            vec![CechMonomial::new(-1, -1, 2)]
        );
    }

    #[test]
    fn canonical_class_spans_h1_of_canonical_twist() {
        for d in [3u32, 5, 7] {
            let c = curve(d);
            let cls = CechClass::canonical(c);
            assert_eq!(cls.degree(), canonical_twist(&c));
            assert!(cls.is_nonzero());
            let mons: Vec<_> = cls.terms().map(|(m, _)| *m).collect();
            assert_eq!(mons, vec![CechMonomial::new(-1, -1, i64::from(d) - 1)]);
            assert_eq!(h1_line(&c, cls.degree()), 1);
        }
        assert!(!CechClass::zero(curve(5), 2).is_nonzero());
    }

    #[test]
    fn canonical_class_displays_as_monomial() {
        let cls = CechClass::canonical(curve(5));
        assert_eq!(cls.to_string(), "X^-1*Y^-1*Z^4");
        assert_eq!(CechClass::zero(curve(5), 2).to_string(), "0");
    }

    #[test]
    fn add_term_rejects_out_of_range_monomials() {
        let c = FermatCurve::new(5, 7).unwrap();
        let one = c.field().one();
        let mut cls = CechClass::zero(c, 2);
        assert!(matches!(
            cls.add_term(CechMonomial::new(-1, -1, 3), one.clone()),
            Err(Error::NonHomogeneous)
        ));
        assert!(matches!(
            cls.add_term(CechMonomial::new(0, -2, 4), one.clone()),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            cls.add_term(CechMonomial::new(-1, -2, 5), one),
            Err(Error::NotApplicable(_))
        ));
        assert!(!cls.is_nonzero());
    }

    #[test]
    fn add_term_cancels_exactly() {
        let c = FermatCurve::new(5, 7).unwrap();
        let field = c.field();
        let mon = CechMonomial::new(-1, -1, 4);
        let mut cls = CechClass::zero(c, 2);
        cls.add_term(mon, field.from_i64(3)).unwrap();
        assert!(cls.is_nonzero());
        cls.add_term(mon, field.from_i64(4)).unwrap();
        assert!(!cls.is_nonzero());
        assert_eq!(cls.terms().count(), 0);
    }
}
