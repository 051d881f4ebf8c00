//! Command-line dispatch.
//!
//! Each subcommand wraps one engine and prints a deterministic report to
//! standard output: a JSON envelope by default, or a flat CSV projection
//! with `--format csv`. Exit codes separate the failure modes: 1 for usage
//! errors, 2 for precondition violations (reported as a machine-readable
//! error object), and 3 when an internal mathematical cross-check fails,
//! which is the falsification signal and should never happen on valid
//! inputs.

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundles::{
    destabilization_scan, elliptic_frobenius_type, extension_split_test, hn_filtration_rank2,
    BundleDescriptor, HNReport, ScanReport, SplitReport,
};
use crate::descent::{audit, counterexample_replay, primes_in_progression, DescentScenario};
use crate::error::{Error, ErrorClass, Result};
use crate::hilbert_kunz::hk_samples;
use crate::report::{rational_value, CsvTable, RunReport};
use crate::ring::{
    fills_at, hilbert_dim, ideal_piece_dim, normal_form, parse_polynomial, FermatCurve,
    FillResult, NormalPoly,
};

/// Environment variable naming the worker-thread count for parallel scans.
pub const WORKERS_ENV: &str = "FERMAT_SYZYGY_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "fermat-syzygy",
    version,
    about = "Exact section spaces, slopes, and Hilbert-Kunz data for syzygy \
             bundles on Fermat curves"
)]
struct Cli {
    /// Report format: a JSON envelope or a flat CSV projection
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of the curve X^d + Y^d + Z^d = 0
    CurveInfo {
        /// Curve degree d
        #[arg(long)]
        d: u32,
        /// Field characteristic (0 for the rationals)
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Hilbert function of the coordinate ring over a degree window, with
    /// optional ideal and fill data for a generator list
    Hilbert {
        #[arg(long)]
        d: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Degree window a..b (inclusive)
        #[arg(long = "shift-range", value_parser = parse_range, allow_hyphen_values = true)]
        range: (i64, i64),
        /// Comma-separated homogeneous generators, e.g. X^2,Y^2,Z^2
        #[arg(long)]
        gens: Option<String>,
        /// Cap for the fill-degree search
        #[arg(long = "nmax-fill")]
        nmax_fill: Option<i64>,
    },
    /// Global sections of Syz(X^e1, Y^e2, Z^e3)(m) as explicit triples
    Sections {
        #[arg(long)]
        d: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Exponent triple e1,e2,e3
        #[arg(long, value_parser = parse_exponents)]
        exponents: [u32; 3],
        /// Twist m
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Harder-Narasimhan data of the Frobenius pullback at p = ell (mod d)
    Hn {
        #[arg(long)]
        d: u32,
        /// Characteristic p of the fiber
        #[arg(long)]
        p: u64,
    },
    /// h^0 across a window of twist shifts, flagging destabilizing sections
    Scan {
        #[arg(long)]
        d: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_parser = parse_exponents)]
        exponents: [u32; 3],
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        /// Shift window a..b (inclusive)
        #[arg(long = "shift-range", value_parser = parse_range, allow_hyphen_values = true)]
        range: (i64, i64),
    },
    /// Hilbert-Kunz function HK(p^e) and the closed forms it converges to
    Hk {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u64,
        /// Largest Frobenius exponent e to sample
        #[arg(long = "e-max")]
        e_max: u32,
        /// Compute past the exponent safety cap
        #[arg(long = "allow-large", default_value_t = false)]
        allow_large: bool,
    },
    /// Split/non-split verdict for the canonical rank-2 extension at p
    ExtSplit {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u64,
    },
    /// Isomorphism type of the pulled-back bundle on the cubic curve
    Elliptic {
        #[arg(long)]
        p: u64,
    },
    /// Slope-bookkeeping audit of a Frobenius-descent scenario document
    Audit {
        /// Path to the scenario JSON file
        #[arg(long)]
        scenario: std::path::PathBuf,
    },
    /// Full counterexample dossier: per-prime filtration and split reports
    /// plus the characteristic-zero slope table
    Replay {
        #[arg(long)]
        d: u32,
        /// Comma-separated primes, each congruent to the half-degree mod d
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// First primes in an arithmetic progression
    Primes {
        #[arg(long)]
        residue: u64,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        count: usize,
    },
}

fn parse_exponents(s: &str) -> std::result::Result<[u32; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated exponents, e.g. 2,2,2".into());
    }
    let mut out = [0u32; 3];
    for (i, part) in parts.iter().enumerate() {
        out[i] = part
            .trim()
            .parse()
            .map_err(|_| format!("'{part}' is not a nonnegative integer"))?;
    }
    Ok(out)
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("'{s}' is not a range of the form a..b"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("'{a}' is not an integer"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("'{b}' is not an integer"))?;
    Ok((lo, hi))
}

/// Runs the CLI on the given argv and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_workers();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok((name, inputs, outputs, csv)) => {
            let timing = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
            match cli.format {
                Format::Json => print!("{}", RunReport::new(name, inputs, outputs, timing).render()),
                Format::Csv => print!("{}", csv.render()),
            }
            0
        }
        Err(err) => {
            let (class, code) = match err.class() {
                ErrorClass::Precondition => ("precondition", 2),
                ErrorClass::Inconsistency => ("inconsistency", 3),
            };
            let obj = json!({"error": {"class": class, "message": err.to_string()}});
            println!(
                "{}",
                serde_json::to_string_pretty(&obj).expect("error object serializes")
            );
            code
        }
    }
}

fn init_workers() {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

type CommandOutput = (&'static str, Value, Value, CsvTable);

fn dispatch(cmd: &Cmd) -> Result<CommandOutput> {
    match cmd {
        Cmd::CurveInfo { d, characteristic } => cmd_curve_info(*d, *characteristic),
        Cmd::Hilbert {
            d,
            characteristic,
            range,
            gens,
            nmax_fill,
        } => cmd_hilbert(*d, *characteristic, *range, gens.as_deref(), *nmax_fill),
        Cmd::Sections {
            d,
            characteristic,
            exponents,
            twist,
        } => cmd_sections(*d, *characteristic, *exponents, *twist),
        Cmd::Hn { d, p } => cmd_hn(*d, *p),
        Cmd::Scan {
            d,
            characteristic,
            exponents,
            twist,
            range,
        } => cmd_scan(*d, *characteristic, *exponents, *twist, *range),
        Cmd::Hk {
            d,
            p,
            e_max,
            allow_large,
        } => cmd_hk(*d, *p, *e_max, *allow_large),
        Cmd::ExtSplit { d, p } => cmd_ext_split(*d, *p),
        Cmd::Elliptic { p } => cmd_elliptic(*p),
        Cmd::Audit { scenario } => cmd_audit(scenario),
        Cmd::Replay { d, primes } => cmd_replay(*d, primes),
        Cmd::Primes {
            residue,
            modulus,
            count,
        } => cmd_primes(*residue, *modulus, *count),
    }
}

fn curve_value(curve: &FermatCurve) -> Value {
    json!({
        "degree": curve.degree(),
        "characteristic": curve.characteristic(),
        "half_degree": curve.half_degree(),
        "genus": curve.genus(),
        "two_g_minus_two": curve.two_g_minus_two(),
        "canonical_twist": crate::cohomology::canonical_twist(curve),
    })
}

fn fill_value(fill: &FillResult) -> Value {
    match fill {
        FillResult::FillsAt(n) => json!({"certified": true, "fills_at": n}),
        FillResult::Inconclusive { checked_up_to } => {
            json!({"certified": false, "checked_up_to": checked_up_to})
        }
    }
}

fn fill_csv(fill: &FillResult) -> String {
    match fill {
        FillResult::FillsAt(n) => format!("fills-at-{n}"),
        FillResult::Inconclusive { checked_up_to } => {
            format!("inconclusive-up-to-{checked_up_to}")
        }
    }
}

fn hn_value(report: &HNReport) -> Value {
    json!({
        "p": report.p,
        "k": report.k,
        "m0": report.m0,
        "alpha": report.alpha,
        "mu_max": rational_value(&report.mu_max),
        "mu_min": rational_value(&report.mu_min),
        "degree_at_m0": report.degree_at_m0,
        "section_space_dim": report.section_space_dim,
        "section": report.section.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "zero_free": fill_value(&report.zero_free),
    })
}

fn split_value(report: &SplitReport) -> Value {
    json!({
        "p": report.p,
        "twist": report.twist,
        "h0_observed": report.h0_observed,
        "h0_if_split": report.h0_if_split,
        "verdict": report.verdict.as_str(),
        "divisibility_certificate": report.divisibility_certificate,
    })
}

fn scan_value(report: &ScanReport) -> Value {
    json!({
        "bundle": report.bundle.to_string(),
        "rows": report.rows.iter().map(|r| json!({
            "shift": r.shift,
            "twist": r.twist,
            "degree": r.degree,
            "h0": r.h0,
            "status": r.status.as_str(),
        })).collect::<Vec<_>>(),
        "verdict": report.verdict.as_str(),
    })
}

fn cmd_curve_info(d: u32, characteristic: u64) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, characteristic)?;
    let inputs = json!({"d": d, "char": characteristic});
    let outputs = curve_value(&curve);
    let mut csv = CsvTable::new(vec![
        "degree",
        "characteristic",
        "half_degree",
        "genus",
        "two_g_minus_two",
        "canonical_twist",
    ]);
    csv.push_row(vec![
        curve.degree().to_string(),
        curve.characteristic().to_string(),
        curve
            .half_degree()
            .map_or_else(String::new, |l| l.to_string()),
        curve.genus().to_string(),
        curve.two_g_minus_two().to_string(),
        crate::cohomology::canonical_twist(&curve).to_string(),
    ]);
    Ok(("curve-info", inputs, outputs, csv))
}

fn parse_gens(curve: &FermatCurve, raw: &str) -> Result<Vec<NormalPoly>> {
    raw.split(',')
        .map(|src| normal_form(curve, &parse_polynomial(src)?))
        .collect()
}

fn cmd_hilbert(
    d: u32,
    characteristic: u64,
    (lo, hi): (i64, i64),
    gens_raw: Option<&str>,
    nmax_fill: Option<i64>,
) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, characteristic)?;
    if lo > hi {
        return Err(Error::EmptyRange);
    }
    let gens = gens_raw.map(|raw| parse_gens(&curve, raw)).transpose()?;
    let mut rows = Vec::new();
    let mut csv = CsvTable::new(vec!["n", "hilbert_dim", "ideal_dim", "quotient_dim"]);
    for n in lo..=hi {
        let dim = hilbert_dim(&curve, n);
        let (ideal, quotient) = match &gens {
            Some(gens) => {
                let ideal = ideal_piece_dim(&curve, gens, n);
                (Some(ideal), Some(dim - ideal))
            }
            None => (None, None),
        };
        rows.push(json!({
            "n": n,
            "hilbert_dim": dim,
            "ideal_dim": ideal,
            "quotient_dim": quotient,
        }));
        csv.push_row(vec![
            n.to_string(),
            dim.to_string(),
            ideal.map_or_else(String::new, |v| v.to_string()),
            quotient.map_or_else(String::new, |v| v.to_string()),
        ]);
    }
    let fill = match &gens {
        Some(gens) => Some(fills_at(&curve, gens, nmax_fill)?),
        None => None,
    };
    let inputs = json!({
        "d": d,
        "char": characteristic,
        "range": {"from": lo, "to": hi},
        "gens": gens_raw,
        "nmax_fill": nmax_fill,
    });
    let outputs = json!({
        "curve": curve_value(&curve),
        "rows": rows,
        "fill": fill.as_ref().map(fill_value),
    });
    Ok(("hilbert", inputs, outputs, csv))
}

fn cmd_sections(
    d: u32,
    characteristic: u64,
    exponents: [u32; 3],
    twist: i64,
) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, characteristic)?;
    let bundle = BundleDescriptor::syzygy(curve, exponents, twist)?;
    let space = bundle.section_space()?;
    if !space.verify_relations() {
        return Err(Error::Inconsistency(
            "a computed section fails the defining syzygy relation".into(),
        ));
    }
    let basis: Vec<Vec<String>> = space
        .basis()
        .iter()
        .map(|t| t.iter().map(|s| s.to_string()).collect())
        .collect();
    let inputs = json!({
        "d": d,
        "char": characteristic,
        "exponents": exponents,
        "twist": twist,
    });
    let outputs = json!({
        "bundle": bundle.to_string(),
        "rank": bundle.rank(),
        "degree": bundle.degree(),
        "slope": rational_value(&bundle.slope()),
        "dimension": space.dimension(),
        "basis": basis,
        "relations_verified": true,
    });
    let mut csv = CsvTable::new(vec!["index", "s1", "s2", "s3"]);
    for (i, triple) in space.basis().iter().enumerate() {
        csv.push_row(vec![
            i.to_string(),
            triple[0].to_string(),
            triple[1].to_string(),
            triple[2].to_string(),
        ]);
    }
    Ok(("sections", inputs, outputs, csv))
}

fn cmd_hn(d: u32, p: u64) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, p)?;
    let report = hn_filtration_rank2(&curve)?;
    let inputs = json!({"d": d, "p": p});
    let outputs = json!({
        "curve": curve_value(&curve),
        "hn": hn_value(&report),
    });
    let mut csv = CsvTable::new(vec![
        "p",
        "k",
        "m0",
        "alpha",
        "mu_max",
        "mu_min",
        "degree_at_m0",
        "section_space_dim",
        "zero_free",
    ]);
    csv.push_row(vec![
        report.p.to_string(),
        report.k.to_string(),
        report.m0.to_string(),
        report.alpha.to_string(),
        crate::linalg::rational_str(&report.mu_max),
        crate::linalg::rational_str(&report.mu_min),
        report.degree_at_m0.to_string(),
        report.section_space_dim.to_string(),
        fill_csv(&report.zero_free),
    ]);
    Ok(("hn", inputs, outputs, csv))
}

fn cmd_scan(
    d: u32,
    characteristic: u64,
    exponents: [u32; 3],
    twist: i64,
    (lo, hi): (i64, i64),
) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, characteristic)?;
    let bundle = BundleDescriptor::syzygy(curve, exponents, twist)?;
    let report = destabilization_scan(&bundle, lo, hi)?;
    let inputs = json!({
        "d": d,
        "char": characteristic,
        "exponents": exponents,
        "twist": twist,
        "shift_range": {"from": lo, "to": hi},
    });
    let outputs = scan_value(&report);
    let mut csv = CsvTable::new(vec!["shift", "twist", "degree", "h0", "status"]);
    for row in &report.rows {
        csv.push_row(vec![
            row.shift.to_string(),
            row.twist.to_string(),
            row.degree.to_string(),
            row.h0.to_string(),
            row.status.as_str().to_string(),
        ]);
    }
    Ok(("scan", inputs, outputs, csv))
}

fn cmd_hk(d: u32, p: u64, e_max: u32, allow_large: bool) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, p)?;
    let report = hk_samples(&curve, e_max, allow_large)?;
    let inputs = json!({"d": d, "p": p, "e_max": e_max, "allow_large": allow_large});
    let outputs = json!({
        "p": report.p,
        "alpha_used": report.alpha_used,
        "monsky_value": rational_value(&report.monsky_value),
        "hn_value": rational_value(&report.hn_value),
        "capped": report.capped,
        "samples": report.samples.iter().map(|s| json!({
            "e": s.e,
            "q": s.q,
            "colength": s.colength,
            "ratio": rational_value(&s.ratio),
        })).collect::<Vec<_>>(),
    });
    let mut csv = CsvTable::new(vec!["row", "e", "q", "colength", "ratio"]);
    for s in &report.samples {
        csv.push_row(vec![
            "sample".to_string(),
            s.e.to_string(),
            s.q.to_string(),
            s.colength.to_string(),
            crate::linalg::rational_str(&s.ratio),
        ]);
    }
    csv.push_row(vec![
        "closed-form-monsky".to_string(),
        String::new(),
        String::new(),
        String::new(),
        crate::linalg::rational_str(&report.monsky_value),
    ]);
    csv.push_row(vec![
        "closed-form-slopes".to_string(),
        String::new(),
        String::new(),
        String::new(),
        crate::linalg::rational_str(&report.hn_value),
    ]);
    Ok(("hk", inputs, outputs, csv))
}

fn cmd_ext_split(d: u32, p: u64) -> Result<CommandOutput> {
    let curve = FermatCurve::new(d, p)?;
    let report = extension_split_test(&curve)?;
    let inputs = json!({"d": d, "p": p});
    let outputs = split_value(&report);
    let mut csv = CsvTable::new(vec![
        "p",
        "twist",
        "h0_observed",
        "h0_if_split",
        "verdict",
        "divisibility_certificate",
    ]);
    csv.push_row(vec![
        report.p.to_string(),
        report.twist.to_string(),
        report.h0_observed.to_string(),
        report.h0_if_split.to_string(),
        report.verdict.as_str().to_string(),
        report.divisibility_certificate.to_string(),
    ]);
    Ok(("ext-split", inputs, outputs, csv))
}

fn cmd_elliptic(p: u64) -> Result<CommandOutput> {
    let report = elliptic_frobenius_type(p)?;
    let inputs = json!({"p": p});
    let outputs = json!({
        "p": report.p,
        "residue_mod_3": report.residue_mod_3,
        "h0": report.h0,
        "bundle_type": report.bundle_type.as_str(),
    });
    let mut csv = CsvTable::new(vec!["p", "residue_mod_3", "h0", "bundle_type"]);
    csv.push_row(vec![
        report.p.to_string(),
        report.residue_mod_3.to_string(),
        report.h0.to_string(),
        report.bundle_type.as_str().to_string(),
    ]);
    Ok(("elliptic", inputs, outputs, csv))
}

fn cmd_audit(path: &std::path::Path) -> Result<CommandOutput> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
    let scenario = DescentScenario::from_json(&raw)?;
    let verdict = audit(&scenario)?;
    let inputs = json!({
        "scenario": serde_json::to_value(&scenario).expect("scenario serializes"),
    });
    let outputs = json!({
        "conclusion": verdict.conclusion.as_str(),
        "contradiction_prime": verdict.contradiction_prime,
        "degree_forced_zero": verdict.degree_forced_zero,
        "trace": verdict.trace,
    });
    let mut csv = CsvTable::new(vec![
        "conclusion",
        "contradiction_prime",
        "degree_forced_zero",
    ]);
    csv.push_row(vec![
        verdict.conclusion.as_str().to_string(),
        verdict
            .contradiction_prime
            .map_or_else(String::new, |p| p.to_string()),
        verdict.degree_forced_zero.to_string(),
    ]);
    Ok(("audit", inputs, outputs, csv))
}

fn cmd_replay(d: u32, primes: &[u64]) -> Result<CommandOutput> {
    let report = counterexample_replay(d, primes)?;
    let inputs = json!({"d": d, "primes": primes});
    let outputs = json!({
        "d": report.d,
        "ell": report.ell,
        "char_zero": {
            "bundle_slope": rational_value(&report.char_zero_slope),
            "subbundle_slope": rational_value(&report.subbundle_slope),
            "semistable": report.char_zero_semistable,
        },
        "strong_ss_assumed": report.strong_ss_assumed,
        "inapplicability_reason": report.inapplicability_reason,
        "per_prime": report.per_prime.iter().map(|rp| json!({
            "p": rp.p,
            "hn": hn_value(&rp.hn),
            "split": split_value(&rp.split),
        })).collect::<Vec<_>>(),
    });
    let mut csv = CsvTable::new(vec![
        "p",
        "alpha",
        "m0",
        "section_space_dim",
        "zero_free",
        "split_verdict",
        "h0_observed",
        "h0_if_split",
    ]);
    for rp in &report.per_prime {
        csv.push_row(vec![
            rp.p.to_string(),
            rp.hn.alpha.to_string(),
            rp.hn.m0.to_string(),
            rp.hn.section_space_dim.to_string(),
            fill_csv(&rp.hn.zero_free),
            rp.split.verdict.as_str().to_string(),
            rp.split.h0_observed.to_string(),
            rp.split.h0_if_split.to_string(),
        ]);
    }
    Ok(("replay", inputs, outputs, csv))
}

fn cmd_primes(residue: u64, modulus: u64, count: usize) -> Result<CommandOutput> {
    let primes = primes_in_progression(residue, modulus, count)?;
    let inputs = json!({"residue": residue, "modulus": modulus, "count": count});
    let outputs = json!({"primes": primes});
    let mut csv = CsvTable::new(vec!["index", "prime"]);
    for (i, p) in primes.iter().enumerate() {
        csv.push_row(vec![i.to_string(), p.to_string()]);
    }
    Ok(("primes", inputs, outputs, csv))
}
