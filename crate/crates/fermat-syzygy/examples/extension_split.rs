//! Non-splitness of the canonical rank-2 extension after Frobenius pullback.
//!
//! On the quintic with p = 2 (mod 5), the pulled-back syzygy bundle twisted
//! by 3p + l - 1 sits in an extension of twisted line bundles. If the
//! extension split, its section count would be one higher than observed;
//! the deficit certifies non-splitness, backed by a divisibility
//! certificate p not dividing d*(l - 1). The cubic case is decided purely
//! by the residue of p mod 3.

use fermat_syzygy::bundles::{elliptic_frobenius_type, extension_split_test};
use fermat_syzygy::FermatCurve;

fn main() -> fermat_syzygy::Result<()> {
    println!("quintic, twist 3p + l - 1:");
    println!("p, h^0 observed, h^0 if split, verdict, certificate");
    for p in [2u64, 7, 17] {
        let curve = FermatCurve::new(5, p)?;
        let r = extension_split_test(&curve)?;
        println!(
            "{:2}  {}  {}  {}  {}",
            r.p,
            r.h0_observed,
            r.h0_if_split,
            r.verdict.as_str(),
            r.divisibility_certificate
        );
    }

    println!("\ncubic (elliptic) case, bundle Syz(X^2p, Y^2p, Z^2p)(3p):");
    println!("p, p mod 3, h^0, type");
    for p in [2u64, 5, 7, 13] {
        let r = elliptic_frobenius_type(p)?;
        println!(
            "{:2}  {}  {}  {}",
            r.p,
            r.residue_mod_3,
            r.h0,
            r.bundle_type.as_str()
        );
    }
    Ok(())
}
