//! Curve invariants and line-bundle cohomology on the plane Fermat curve.
//!
//! Prints the Hilbert function of the coordinate ring, checks the
//! Riemann-Roch count h^0 - h^1 = d*n + 1 - g over a window of twists, and
//! lists the monomial residue basis that represents H^1 in the top degree,
//! where the single class is the canonical one.

use fermat_syzygy::cohomology::{canonical_twist, cech_h1_basis, h0_line, h1_line, CechClass};
use fermat_syzygy::ring::hilbert_dim;
use fermat_syzygy::FermatCurve;

fn main() -> fermat_syzygy::Result<()> {
    let curve = FermatCurve::new(5, 0)?;
    let d = i64::from(curve.degree());
    let g = curve.genus() as i64;
    println!(
        "curve: X^{d} + Y^{d} + Z^{d} = 0 over characteristic {}",
        curve.characteristic()
    );
    println!("genus {g}, 2g - 2 = {}", curve.two_g_minus_two());

    println!("\nn, h^0(O(n)), h^1(O(n)), d*n + 1 - g");
    for n in -3..=8 {
        let h0 = h0_line(&curve, n) as i64;
        let h1 = h1_line(&curve, n) as i64;
        assert_eq!(h0 - h1, d * n + 1 - g, "Riemann-Roch fails at n = {n}");
        assert_eq!(h0_line(&curve, n), hilbert_dim(&curve, n));
        println!("{n:3} {h0:5} {h1:5} {:5}", d * n + 1 - g);
    }

    let k = canonical_twist(&curve);
    println!("\ncanonical twist: {k} (degree of the dualizing line bundle / d)");
    println!("h^0(O({k})) = {} = g", h0_line(&curve, k));
    println!("h^1(O({k})) = {}", h1_line(&curve, k));

    let basis = cech_h1_basis(&curve, k);
    println!("\nH^1(O({k})) residue-monomial basis:");
    for mon in &basis {
        println!("  {mon}");
    }
    let canonical = CechClass::canonical(curve);
    println!(
        "canonical class {} is the unique basis element",
        canonical
            .terms()
            .map(|(m, _)| m.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    );
    assert_eq!(basis.len(), 1);
    Ok(())
}
