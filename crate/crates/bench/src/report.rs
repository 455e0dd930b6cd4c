//! Plot-data aggregation: grouped mean ± standard deviation per x-value,
//! one series per (backend model, family or variant), as CSV. Undefined
//! metric values are excluded from aggregation, not coerced to zero.

use std::collections::BTreeMap;

use thiserror::Error;

use branchsim::metrics::frontier;

use crate::row::{fmt_sig, ResultRow, RESULT_SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    TransferVsN,
    ErasurePilot,
    MiVsN,
    SeedSpread,
    CousinsDelta,
    Amplitude,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::TransferVsN,
        Figure::ErasurePilot,
        Figure::MiVsN,
        Figure::SeedSpread,
        Figure::CousinsDelta,
        Figure::Amplitude,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Figure::TransferVsN => "transfer_vs_n",
            Figure::ErasurePilot => "erasure_pilot",
            Figure::MiVsN => "mi_vs_n",
            Figure::SeedSpread => "seed_spread",
            Figure::CousinsDelta => "cousins_delta",
            Figure::Amplitude => "amplitude",
        }
    }

    pub fn parse(s: &str) -> Option<Figure> {
        Figure::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// One observation: series name, numeric sort key for x, x label, y value.
type Observation = (String, u64, String, Option<f64>);

/// Observations selected per figure; `None` ys are dropped by aggregation.
fn observations(figure: Figure, row: &ResultRow) -> Vec<Observation> {
    let over_n = |y: Option<f64>| -> Vec<Observation> {
        vec![(
            format!("{}/{}", row.model, row.family),
            row.n as u64,
            row.n.to_string(),
            y,
        )]
    };
    match figure {
        Figure::TransferVsN => over_n(row.p_all),
        Figure::MiVsN => over_n(row.mi_mean),
        Figure::SeedSpread => over_n(row.p_all),
        Figure::ErasurePilot => vec![
            (
                format!("{}/{}/{}", row.model, row.family, row.variant),
                0,
                row.variant.clone(),
                row.p_erase,
            ),
            (
                format!("{}/{}/{}/r1", row.model, row.family, row.variant),
                0,
                row.variant.clone(),
                row.p_erase_r1,
            ),
        ],
        Figure::CousinsDelta => vec![(
            format!("{}/{}", row.model, row.family),
            row.d as u64,
            row.d.to_string(),
            row.delta,
        )],
        Figure::Amplitude => {
            let x_sort = row.p0.map_or(u64::MAX, f64::to_bits);
            let x = row.p0.map_or_else(|| "NA".to_string(), fmt_sig);
            vec![
                (
                    format!("{}/{}/p_r0", row.model, row.variant),
                    x_sort,
                    x.clone(),
                    row.p_r0,
                ),
                (
                    format!("{}/{}/p_msg", row.model, row.variant),
                    x_sort,
                    x,
                    row.p_msg,
                ),
            ]
        }
    }
}

/// Aggregate rows into plot data for one figure.
pub fn report(rows: &[ResultRow], figure: Figure) -> Result<String, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::NoRows);
    }
    let mut groups: BTreeMap<(String, u64, String), Vec<f64>> = BTreeMap::new();
    for row in rows {
        for (series, x_sort, x, y) in observations(figure, row) {
            if let Some(y) = y {
                groups.entry((series, x_sort, x)).or_default().push(y);
            }
        }
    }
    if groups.is_empty() {
        return Err(ReportError::NoData(figure.name()));
    }
    let mut out = String::from("schema,figure,series,x,mean,std,count\n");
    for ((series, _, x), values) in groups {
        let count = values.len();
        let mean = values.iter().sum::<f64>() / count as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count as f64;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            RESULT_SCHEMA,
            figure.name(),
            series,
            x,
            fmt_sig(mean),
            fmt_sig(var.sqrt()),
            count
        ));
    }
    Ok(out)
}

/// Per (model, family): largest n whose mean p_all meets the frontier
/// threshold.
pub fn frontier_map(
    rows: &[ResultRow],
) -> Result<BTreeMap<(String, String), Option<usize>>, ReportError> {
    let mut series: BTreeMap<(String, String), BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
    for row in rows {
        if let Some(p_all) = row.p_all {
            series
                .entry((row.model.clone(), row.family.clone()))
                .or_default()
                .entry(row.n)
                .or_default()
                .push(p_all);
        }
    }
    if series.is_empty() {
        return Err(ReportError::NoData("frontier"));
    }
    let mut out = BTreeMap::new();
    for ((model, family), by_n) in series {
        let means: BTreeMap<usize, f64> = by_n
            .into_iter()
            .map(|(n, vals)| (n, vals.iter().sum::<f64>() / vals.len() as f64))
            .collect();
        let front = frontier(&means).map_err(|e| ReportError::Frontier(e.to_string()))?;
        out.insert((model, family), front);
    }
    Ok(out)
}

/// The frontier table as CSV, mirroring the shape of the paper-style
/// summary: one row per (model, family).
pub fn frontier_table(rows: &[ResultRow]) -> Result<String, ReportError> {
    let map = frontier_map(rows)?;
    let mut out = String::from("schema,model,family,frontier_n\n");
    for ((model, family), front) in map {
        out.push_str(&format!(
            "{},{},{},{}\n",
            RESULT_SCHEMA,
            model,
            family,
            front.map_or_else(|| "none".to_string(), |n| n.to_string())
        ));
    }
    Ok(out)
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no rows to aggregate")]
    NoRows,
    #[error("no defined values for figure {0}; check the input columns")]
    NoData(&'static str),
    #[error("frontier: {0}")]
    Frontier(String),
}
