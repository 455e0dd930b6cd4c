//! Result rows and their CSV form.
//!
//! The emitter is hand-rolled so the byte-level output is fully pinned:
//! a fixed column order, floats at 6 significant digits, `NA` for undefined
//! values, and `\n` line endings. Identical rows always serialize to
//! identical bytes, which the determinism checks rely on. The wall-clock
//! column is diagnostic and excluded by default for the same reason; pass
//! `timing = true` to append it.

use std::fmt::Write as _;

use thiserror::Error;

pub const RESULT_SCHEMA: u32 = 1;

/// Column order of the results CSV (without the optional `wall_ms`).
pub const COLUMNS: [&str; 34] = [
    "schema",
    "experiment",
    "kind",
    "model",
    "family",
    "n",
    "instance",
    "variant",
    "k",
    "d",
    "p0",
    "mu",
    "coupling_map",
    "layout",
    "routing_seed",
    "noise_seed",
    "mode",
    "backend",
    "shots",
    "twoq_count",
    "twoq_depth",
    "swaps",
    "p_all",
    "p_bit",
    "p_erase",
    "p_erase_r1",
    "delta",
    "mi_mean",
    "p_r0",
    "p_msg",
    "n_r0",
    "n_r1",
    "undefined",
    "status",
];

/// One grid point of one experiment. Every row is self-describing: together
/// with the master seed its identifying fields reproduce its metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub schema: u32,
    pub experiment: String,
    pub kind: String,
    pub model: String,
    pub family: String,
    pub n: usize,
    pub instance: usize,
    pub variant: String,
    pub k: usize,
    pub d: usize,
    pub p0: Option<f64>,
    /// μ as hex, bit i of the value = μ_i.
    pub mu: String,
    pub coupling_map: String,
    pub layout: String,
    pub routing_seed: Option<u64>,
    pub noise_seed: u64,
    pub mode: String,
    pub backend: String,
    pub shots: u64,
    pub twoq_count: usize,
    pub twoq_depth: usize,
    pub swaps: usize,
    pub p_all: Option<f64>,
    pub p_bit: Option<f64>,
    pub p_erase: Option<f64>,
    pub p_erase_r1: Option<f64>,
    pub delta: Option<f64>,
    pub mi_mean: Option<f64>,
    pub p_r0: Option<f64>,
    pub p_msg: Option<f64>,
    pub n_r0: f64,
    pub n_r1: f64,
    /// Semicolon-joined names of undefined metrics.
    pub undefined: String,
    /// `ok`, or the per-row failure marker.
    pub status: String,
    pub wall_ms: u64,
}

impl ResultRow {
    /// Canonical ordering key; output rows are sorted by identity, never by
    /// arrival order.
    pub fn sort_key(
        &self,
    ) -> (
        String,
        String,
        String,
        String,
        usize,
        usize,
        usize,
        u64,
        usize,
        String,
        u64,
    ) {
        (
            self.experiment.clone(),
            self.kind.clone(),
            self.model.clone(),
            self.family.clone(),
            self.n,
            self.k,
            self.d,
            self.p0.map_or(u64::MAX, f64::to_bits),
            self.instance,
            self.variant.clone(),
            self.routing_seed.unwrap_or(u64::MAX),
        )
    }

    fn csv_line(&self, timing: bool) -> String {
        let mut out = String::new();
        let fields: Vec<String> = vec![
            self.schema.to_string(),
            self.experiment.clone(),
            self.kind.clone(),
            self.model.clone(),
            self.family.clone(),
            self.n.to_string(),
            self.instance.to_string(),
            self.variant.clone(),
            self.k.to_string(),
            self.d.to_string(),
            fmt_opt(self.p0),
            self.mu.clone(),
            self.coupling_map.clone(),
            self.layout.clone(),
            self.routing_seed.map_or_else(|| "NA".into(), |s| s.to_string()),
            self.noise_seed.to_string(),
            self.mode.clone(),
            self.backend.clone(),
            self.shots.to_string(),
            self.twoq_count.to_string(),
            self.twoq_depth.to_string(),
            self.swaps.to_string(),
            fmt_opt(self.p_all),
            fmt_opt(self.p_bit),
            fmt_opt(self.p_erase),
            fmt_opt(self.p_erase_r1),
            fmt_opt(self.delta),
            fmt_opt(self.mi_mean),
            fmt_opt(self.p_r0),
            fmt_opt(self.p_msg),
            fmt_sig(self.n_r0),
            fmt_sig(self.n_r1),
            self.undefined.clone(),
            self.status.clone(),
        ];
        for (i, field) in fields.iter().enumerate() {
            debug_assert!(!field.contains(','), "CSV field with comma: {field}");
            if i > 0 {
                out.push(',');
            }
            out.push_str(field);
        }
        if timing {
            let _ = write!(out, ",{}", self.wall_ms);
        }
        out
    }
}

/// Six significant digits, positional where readable, `NA` for non-finite.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return "NA".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..=8).contains(&mag) {
        let precision = (5 - mag).max(0) as usize;
        format!("{x:.precision$}")
    } else {
        format!("{x:.5e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), fmt_sig)
}

/// Serialize rows (pre-sorted by the caller) to CSV text. Identical inputs
/// produce identical bytes.
pub fn emit_csv(rows: &[ResultRow], timing: bool) -> String {
    let mut out = String::new();
    out.push_str(&COLUMNS.join(","));
    if timing {
        out.push_str(",wall_ms");
    }
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line(timing));
        out.push('\n');
    }
    out
}

pub fn write_csv(rows: &[ResultRow], path: &std::path::Path, timing: bool) -> std::io::Result<()> {
    std::fs::write(path, emit_csv(rows, timing))
}

/// Parse a results CSV produced by [`emit_csv`]. Columns are located by
/// header name; all canonical columns must be present and any missing ones
/// are reported together.
pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>, CsvError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(CsvError::Empty)?;
    let names: Vec<&str> = header.split(',').collect();
    let missing: Vec<String> = COLUMNS
        .iter()
        .filter(|c| !names.contains(c))
        .map(|c| c.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(CsvError::MissingColumns(missing.join(", ")));
    }
    let col = |name: &str| names.iter().position(|&n| n == name).unwrap();
    let timing_col = names.iter().position(|&n| n == "wall_ms");

    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(CsvError::FieldCount {
                line: idx + 2,
                found: fields.len(),
                expected: names.len(),
            });
        }
        let get = |name: &str| fields[col(name)];
        let bad = |name: &'static str| CsvError::BadField {
            line: idx + 2,
            column: name,
        };
        let parse_usize =
            |name: &'static str| get(name).parse::<usize>().map_err(|_| bad(name));
        let parse_u64 = |name: &'static str| get(name).parse::<u64>().map_err(|_| bad(name));
        let parse_f64 = |name: &'static str| get(name).parse::<f64>().map_err(|_| bad(name));
        let parse_opt = |name: &'static str| -> Result<Option<f64>, CsvError> {
            match get(name) {
                "NA" => Ok(None),
                s => s.parse::<f64>().map(Some).map_err(|_| bad(name)),
            }
        };
        rows.push(ResultRow {
            schema: get("schema").parse().map_err(|_| bad("schema"))?,
            experiment: get("experiment").to_string(),
            kind: get("kind").to_string(),
            model: get("model").to_string(),
            family: get("family").to_string(),
            n: parse_usize("n")?,
            instance: parse_usize("instance")?,
            variant: get("variant").to_string(),
            k: parse_usize("k")?,
            d: parse_usize("d")?,
            p0: parse_opt("p0")?,
            mu: get("mu").to_string(),
            coupling_map: get("coupling_map").to_string(),
            layout: get("layout").to_string(),
            routing_seed: match get("routing_seed") {
                "NA" => None,
                s => Some(s.parse::<u64>().map_err(|_| bad("routing_seed"))?),
            },
            noise_seed: parse_u64("noise_seed")?,
            mode: get("mode").to_string(),
            backend: get("backend").to_string(),
            shots: parse_u64("shots")?,
            twoq_count: parse_usize("twoq_count")?,
            twoq_depth: parse_usize("twoq_depth")?,
            swaps: parse_usize("swaps")?,
            p_all: parse_opt("p_all")?,
            p_bit: parse_opt("p_bit")?,
            p_erase: parse_opt("p_erase")?,
            p_erase_r1: parse_opt("p_erase_r1")?,
            delta: parse_opt("delta")?,
            mi_mean: parse_opt("mi_mean")?,
            p_r0: parse_opt("p_r0")?,
            p_msg: parse_opt("p_msg")?,
            n_r0: parse_f64("n_r0")?,
            n_r1: parse_f64("n_r1")?,
            undefined: get("undefined").to_string(),
            status: get("status").to_string(),
            wall_ms: match timing_col {
                Some(c) => fields[c].parse().unwrap_or(0),
                None => 0,
            },
        });
    }
    Ok(rows)
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("empty results file")]
    Empty,
    #[error("missing columns: {0}")]
    MissingColumns(String),
    #[error("line {line}: {found} fields, expected {expected}")]
    FieldCount {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: cannot parse column {column}")]
    BadField { line: usize, column: &'static str },
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_row() -> ResultRow {
        ResultRow {
            schema: RESULT_SCHEMA,
            experiment: "demo".into(),
            kind: "scaling".into(),
            model: "hex_quiet".into(),
            family: "sparse".into(),
            n: 4,
            instance: 0,
            variant: "protocol".into(),
            k: 0,
            d: 0,
            p0: None,
            mu: "1".into(),
            coupling_map: "heavy_hex:3x4".into(),
            layout: "interleave_pairs".into(),
            routing_seed: Some(3),
            noise_seed: 77,
            mode: "sampled".into(),
            backend: "stabilizer".into(),
            shots: 4096,
            twoq_count: 11,
            twoq_depth: 5,
            swaps: 0,
            p_all: Some(0.8112781244591329),
            p_bit: Some(0.9),
            p_erase: Some(1.0),
            p_erase_r1: Some(1.0),
            delta: Some(0.75),
            mi_mean: None,
            p_r0: Some(0.5),
            p_msg: Some(0.5),
            n_r0: 2048.0,
            n_r1: 2048.0,
            undefined: "mi_mean".into(),
            status: "ok".into(),
            wall_ms: 12,
        }
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig(0.8112781244591329), "0.811278");
        assert_eq!(fmt_sig(1.0), "1.00000");
        assert_eq!(fmt_sig(4096.0), "4096.00");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(0.000123456789), "0.000123457");
        assert_eq!(fmt_sig(1.23456789e-7), "1.23457e-7");
        assert_eq!(fmt_sig(f64::NAN), "NA");
    }

    #[test]
    fn emit_is_deterministic_and_header_only_when_empty() {
        let empty = emit_csv(&[], false);
        assert_eq!(empty.lines().count(), 1);
        assert!(empty.starts_with("schema,experiment,"));

        let rows = vec![sample_row(), sample_row()];
        assert_eq!(emit_csv(&rows, false), emit_csv(&rows, false));
    }

    #[test]
    fn round_trip_parse() {
        let rows = vec![sample_row()];
        let text = emit_csv(&rows, false);
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        // bytes are the invariant: re-serializing the parse is identical
        assert_eq!(emit_csv(&parsed, false), text);
        assert_eq!(parsed[0].mi_mean, None);
        assert_eq!(parsed[0].routing_seed, Some(3));
    }

    #[test]
    fn timing_column_is_optional() {
        let rows = vec![sample_row()];
        let with = emit_csv(&rows, true);
        assert!(with.lines().next().unwrap().ends_with(",wall_ms"));
        let parsed = parse_csv(&with).unwrap();
        assert_eq!(parsed[0].wall_ms, 12);
        // and round-trips without it
        let without = emit_csv(&rows, false);
        assert!(!without.contains("wall_ms"));
    }

    #[test]
    fn missing_columns_reported_by_name() {
        match parse_csv("schema,experiment\n") {
            Err(CsvError::MissingColumns(names)) => {
                assert!(names.contains("p_all"));
                assert!(names.contains("mu"));
            }
            other => panic!("expected missing columns, got {other:?}"),
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn fmt_sig_round_trips_within_relative_error(x in -1.0e9f64..1.0e9) {
                let printed = fmt_sig(x);
                let back: f64 = printed.parse().unwrap();
                let tol = (x.abs() * 1e-5).max(1e-12);
                prop_assert!((back - x).abs() <= tol, "{x} -> {printed} -> {back}");
            }
        }
    }
}
