//! Text output: CSV tables with 15 significant digits and JSON summaries.

use std::fmt::Write as _;
use std::io::{self, Write};

use serde_json::{json, Value};

use crate::experiments::{BaselineRow, MarkovRow, SweepSummary};
use crate::statevector::StateVector;

/// Significant digits written for every float in CSV output.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Fixed notation for magnitudes in `[1e-5, 1e15)`, scientific otherwise.
/// Zero prints as `0`, and negative zero as `0` too so sign noise does not
/// leak into byte comparisons.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs();
    if !(1e-5..1e15).contains(&mag) {
        return format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    }
    let exponent = mag.log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
    // A carry (9.99.. -> 10.0..) leaves one extra digit, which is harmless.
    format!("{x:.decimals$}")
}

fn csv_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

/// Row-major `N x N` matrix as CSV, no header.
pub fn matrix_csv(matrix: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in matrix {
        csv_row(
            &mut out,
            &row.iter().map(|&x| fmt_sig(x)).collect::<Vec<_>>(),
        );
    }
    out
}

/// A state vector as a single CSV row.
pub fn state_csv(sv: &StateVector) -> String {
    let mut out = String::new();
    csv_row(
        &mut out,
        &sv.amplitudes()
            .iter()
            .map(|&x| fmt_sig(x))
            .collect::<Vec<_>>(),
    );
    out
}

pub const RECORD_HEADER: &str =
    "sample_index,variance,variance_ratio,success_probability,success_amplitude";

/// Per-sample records of a sweep, with header.
pub fn write_records_csv<W: Write>(mut w: W, summary: &SweepSummary) -> io::Result<()> {
    writeln!(w, "{RECORD_HEADER}")?;
    for r in &summary.records {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.sample_index,
            fmt_sig(r.variance),
            fmt_sig(r.variance_ratio),
            fmt_sig(r.success_probability),
            fmt_sig(r.success_amplitude)
        )?;
    }
    Ok(())
}

pub fn records_csv(summary: &SweepSummary) -> String {
    let mut buf = Vec::new();
    write_records_csv(&mut buf, summary).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Bins, fits and extremal statistics with an echo of the configuration.
/// Records are left to the CSV.
pub fn summary_json(summary: &SweepSummary) -> Value {
    let width = summary.bin_width();
    let bins: Vec<Value> = (0..summary.bin_centers.len())
        .map(|b| {
            json!({
                "lower": b as f64 * width,
                "upper": (b + 1) as f64 * width,
                "center": summary.bin_centers[b],
                "count": summary.bin_counts[b],
                "mean": summary.bin_means[b],
                "std_error": summary.bin_std_errors[b],
            })
        })
        .collect();
    let config = &summary.config;
    json!({
        "config": {
            "n": config.grover.n(),
            "marked": config.grover.marked(),
            "schedule": config.grover.schedule().to_string(),
            "iterations": config.grover.iterations(),
            "ensemble": config.ensemble,
            "num_samples": config.num_samples,
            "seed": config.seed,
            "num_bins": config.num_bins,
            "metric": config.metric,
        },
        "bins": bins,
        "fit_on_records": summary.fit_on_records,
        "fit_on_bins": summary.fit_on_bins,
        "min_success": summary.min_success,
        "mean_success_top_decile_variance": summary.mean_success_top_decile_variance,
    })
}

pub const BASELINE_HEADER: &str = "n,iterations,success_amplitude_pct,success_probability_pct";

pub fn baseline_csv(rows: &[BaselineRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{BASELINE_HEADER}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            r.iterations,
            fmt_sig(r.amplitude_pct),
            fmt_sig(r.probability_pct)
        )
        .unwrap();
    }
    out
}

pub const MARKOV_HEADER: &str = "eps,mean_exceedance,markov_bound";

pub fn markov_csv(rows: &[MarkovRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{MARKOV_HEADER}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{},{},{}",
            fmt_sig(r.eps),
            fmt_sig(r.mean_exceedance),
            fmt_sig(r.bound)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::build_diffusion_matrix;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.25), "0.250000000000000");
        assert_eq!(fmt_sig(-0.75), "-0.750000000000000");
        assert_eq!(fmt_sig(97.227_182_413_150_28), "97.2271824131503");
        assert_eq!(fmt_sig(100.0), "100.000000000000");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.5e-9), "1.50000000000000e-9");
        assert_eq!(fmt_sig(0.001_234), "0.00123400000000000");
    }

    #[test]
    fn digits_round_trip_closely() {
        for &x in &[
            0.353_553_390_593_273_8,
            1.0 / 3.0,
            0.972_271_824_131_502_8,
            12_345.678_901_234_5,
        ] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-14);
        }
    }

    #[test]
    fn matrix_layout() {
        let csv = matrix_csv(&build_diffusion_matrix(2).unwrap());
        assert_eq!(csv, "0,1.00000000000000\n1.00000000000000,0\n");
    }
}
