//! Harder-Narasimhan data of Frobenius-pulled-back syzygy bundles.
//!
//! For d = 2l + 1 and a prime p = l (mod d), the pullback of the cotangent
//! syzygy bundle under Frobenius admits a maximal destabilizing line bundle
//! found by a single section in the critical twist m0. The slope gap
//! mu_max - mu_min always equals 2g - 2. Runs the engine on three curves
//! and certifies the section has no common zero via the fill degree of the
//! ideal its components generate.

use fermat_syzygy::bundles::hn_filtration_rank2;
use fermat_syzygy::ring::FillResult;
use fermat_syzygy::FermatCurve;

fn main() -> fermat_syzygy::Result<()> {
    for (d, p) in [(5u32, 7u64), (5, 17), (7, 3)] {
        let curve = FermatCurve::new(d, p)?;
        let report = hn_filtration_rank2(&curve)?;
        println!("d = {d}, p = {p}:");
        println!("  k = {}  (2p = d*k + 2l)", report.k);
        println!("  critical twist m0 = {}", report.m0);
        println!(
            "  deg Syz(X^2p, Y^2p, Z^2p)(m0) = {}",
            report.degree_at_m0
        );
        println!(
            "  alpha = {}, HN slopes mu_max = {}, mu_min = {}",
            report.alpha, report.mu_max, report.mu_min
        );
        let gap = &report.mu_max - &report.mu_min;
        println!(
            "  slope gap {} = 2g - 2 = {}",
            gap,
            curve.two_g_minus_two()
        );
        println!("  section space dimension: {}", report.section_space_dim);
        println!(
            "  destabilizing section: ({}, {}, {})",
            report.section[0], report.section[1], report.section[2]
        );
        match report.zero_free {
            FillResult::FillsAt(n) => {
                println!("  components generate everything from degree {n}: no common zero")
            }
            FillResult::Inconclusive { checked_up_to } => {
                println!("  common-zero check inconclusive up to degree {checked_up_to}")
            }
        }
        println!();
    }
    Ok(())
}
