//! CSV output of experiment records.

use std::io::Write;
use std::path::Path;

use super::{ExperimentRecord, HarnessError};

pub const CSV_HEADER: [&str; 15] = [
    "budget",
    "algorithm",
    "threshold",
    "motif_size",
    "seed_cost",
    "pi",
    "motif_profit",
    "theta",
    "kpt",
    "seeds",
    "master_seed",
    "time_kpt_ms",
    "time_rr_ms",
    "time_greedy_ms",
    "time_sim_ms",
];

/// Formats `x` with `digits` significant digits, no exponent for ordinary magnitudes.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn sig6(x: f64) -> String {
    format_sig(x, 6)
}

fn row(r: &ExperimentRecord) -> Vec<String> {
    vec![
        sig6(r.budget),
        r.algorithm.clone(),
        r.threshold.to_string(),
        r.motif_size.map(|s| s.to_string()).unwrap_or_default(),
        sig6(r.seed_cost),
        sig6(r.pi),
        sig6(r.motif_profit),
        r.theta.map(|t| t.to_string()).unwrap_or_default(),
        r.kpt.map(sig6).unwrap_or_default(),
        r.seeds.join(";"),
        r.master_seed.to_string(),
        sig6(r.time_kpt_ms),
        sig6(r.time_rr_ms),
        sig6(r.time_greedy_ms),
        sig6(r.time_sim_ms),
    ]
}

/// Writes records as CSV. Refuses an empty record list.
pub fn write_csv_to(records: &[ExperimentRecord], out: impl Write) -> Result<(), HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::NoRecords);
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(records: &[ExperimentRecord], path: impl AsRef<Path>) -> Result<(), HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::NoRecords);
    }
    let file = std::fs::File::create(path)?;
    write_csv_to(records, std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> ExperimentRecord {
        ExperimentRecord {
            budget: 10.0,
            algorithm: "RIS".into(),
            threshold: 2,
            motif_size: Some(3),
            seeds: vec!["3".into(), "17".into()],
            seed_cost: 7.5,
            pi: 1.0 / 3.0,
            motif_profit: -2.25,
            theta: Some(1234),
            kpt: Some(12.345678),
            master_seed: 42,
            time_kpt_ms: 0.5,
            time_rr_ms: 1.0,
            time_greedy_ms: 2.0,
            time_sim_ms: 3.0,
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_sig(123456789.0, 6), "123456789");
        assert_eq!(format_sig(12.345678, 6), "12.3457");
        assert_eq!(format_sig(-2.25, 6), "-2.25");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(10.0, 6), "10");
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv_to(&[record()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "10,RIS,2,3,7.5,0.333333,-2.25,1234,12.3457,3;17,42,0.5,1,2,3"
        );
    }

    #[test]
    fn empty_refused() {
        assert!(matches!(
            write_csv_to(&[], Vec::new()),
            Err(HarnessError::NoRecords)
        ));
    }
}
