//! Hilbert-Kunz function of the Fermat hypersurface ring at the irrelevant
//! maximal ideal, against the two closed forms it converges to.
//!
//! HK(q) counts the colength of the Frobenius-power ideal (X^q, Y^q, Z^q)
//! in k[X,Y,Z]/(X^d + Y^d + Z^d). The normalized ratio HK(q)/q^2 stabilizes
//! at a rational number expressible both directly in (d, p) and through the
//! slope spread alpha of the Harder-Narasimhan filtration; the two forms
//! agree identically, and alpha can be recovered from the limit.

use fermat_syzygy::hilbert_kunz::{
    hk_closed_form_monsky, hk_from_hn, hk_samples, solve_alpha_from_hk,
};
use fermat_syzygy::FermatCurve;

fn main() -> fermat_syzygy::Result<()> {
    let curve = FermatCurve::new(5, 2)?;
    let report = hk_samples(&curve, 5, false)?;
    println!("d = 5, p = 2");
    println!("e, q = p^e, HK(q), HK(q)/q^2");
    for s in &report.samples {
        println!("{}  {:3}  {:6}  {}", s.e, s.q, s.colength, s.ratio);
    }
    println!("limit (direct closed form):   {}", report.monsky_value);
    println!("limit (slope closed form):    {}", report.hn_value);
    println!("alpha used by the slope form: {}", report.alpha_used);

    // The identity holds for every odd degree and prime not dividing it.
    for d in (3u32..=15).step_by(2) {
        for p in [2u64, 3, 7, 11, 13, 31, 47] {
            if p % u64::from(d) == 0 {
                continue;
            }
            let alpha = i64::try_from(u64::from(d) * u64::from(d - 3) / 2).unwrap();
            assert_eq!(hk_closed_form_monsky(d, p), hk_from_hn(d, p, alpha));
        }
    }
    println!("\nclosed forms agree for all odd d in 3..=15 and sampled p");

    let recovered = solve_alpha_from_hk(5, 7);
    println!("alpha recovered from the d = 5, p = 7 limit: {recovered}");
    Ok(())
}
