//! Slope bookkeeping for Frobenius-descent scenarios.
//!
//! A scenario records finite evidence about a family of bundles: the rank,
//! a uniform slope bound, the fiber degree, and the primes at which the
//! fiber descends along Frobenius. The audit checks the degree
//! divisibilities, then looks for one prime large enough that the scaling
//! mu_max(F^*E) = p * mu_max(E) contradicts the bound, which refutes the
//! not-semistable hypothesis. The replay then shows on an explicit family
//! why dropping the strong-semistability assumption kills the argument.

use fermat_syzygy::descent::{
    audit, counterexample_replay, primes_in_progression, DescentScenario,
};
use num_rational::BigRational;

fn main() -> fermat_syzygy::Result<()> {
    let scenario = DescentScenario {
        rank: 2,
        slope_bound: BigRational::from_integer(10.into()),
        deg_e: 0,
        descent_primes: primes_in_progression(2, 5, 5)?,
        strong_ss_assumed: true,
        generic_not_semistable_hypothesis: true,
        corollary_case: None,
    };
    println!("descent primes: {:?}", scenario.descent_primes);
    let verdict = audit(&scenario)?;
    println!("audit trace:");
    for line in &verdict.trace {
        println!("  {line}");
    }
    println!("conclusion: {}", verdict.conclusion.as_str());
    if let Some(p) = verdict.contradiction_prime {
        println!("contradiction produced at p = {p}");
    }

    // The same evidence without the strong-semistability assumption is
    // inconclusive, and the replay exhibits the reason: a family whose
    // fibers descend at every listed prime yet whose characteristic-zero
    // fiber is destabilized.
    let weak = DescentScenario {
        strong_ss_assumed: false,
        ..scenario
    };
    println!(
        "\nsame scenario, strong-ss dropped: {}",
        audit(&weak)?.conclusion.as_str()
    );

    let replay = counterexample_replay(5, &[2, 7, 17])?;
    println!("\nreplay on the quintic family:");
    println!(
        "char-0 fiber slope {} with subbundle of slope {}: semistable = {}",
        replay.char_zero_slope, replay.subbundle_slope, replay.char_zero_semistable
    );
    for rp in &replay.per_prime {
        println!(
            "p = {:2}: descends (section in twist {}), extension {}",
            rp.p,
            rp.hn.m0,
            rp.split.verdict.as_str()
        );
    }
    println!("{}", replay.inapplicability_reason);
    Ok(())
}
