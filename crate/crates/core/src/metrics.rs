//! Transfer, erasure, branch-contrast, mutual-information, and frontier
//! statistics over outcome tables.
//!
//! All conditional metrics condition on the branch label `R`. Metrics whose
//! conditioning set is empty are *undefined* (`None`), never coerced to
//! zero, so aggregation can exclude them. Two erasure conventions are
//! computed: `p_erase` conditions on the message-bearing branch (`R = 0`
//! once the swap has run, `R = 1` without it), which is the convention under
//! which the no-uncompute control degrades erasure; `p_erase_r1` is the
//! literal `R = 1` conditioning. Mutual information uses the plug-in
//! estimator on the empirical joint of `(R, P_i)` with no bias correction;
//! conditioning sample sizes are reported so users can judge bias.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{Register, RegisterMap};
use crate::outcome::{OutcomeDistribution, ShotTable};
use crate::protocol::ProtocolKind;

/// Threshold for the frontier statistic: largest n with mean p_all ≥ 0.1.
pub const FRONTIER_THRESHOLD: f64 = 0.1;

/// A weighted view over outcomes, shared by sampled tables (weights are
/// counts) and exact distributions (weights are probabilities).
#[derive(Debug, Clone)]
pub struct Outcomes {
    pairs: Vec<(u128, f64)>,
    registers: RegisterMap,
}

impl Outcomes {
    pub fn from_table(table: &ShotTable) -> Result<Self, MetricsError> {
        let registers = *table.registers().ok_or(MetricsError::MissingRegisters)?;
        Ok(Outcomes {
            pairs: table.iter().map(|(k, c)| (k, c as f64)).collect(),
            registers,
        })
    }

    pub fn from_distribution(dist: &OutcomeDistribution) -> Result<Self, MetricsError> {
        let registers = *dist.registers().ok_or(MetricsError::MissingRegisters)?;
        Ok(Outcomes {
            pairs: dist.iter().collect(),
            registers,
        })
    }

    fn weight_where(&self, pred: impl Fn(&RegisterMap, u128) -> bool) -> f64 {
        self.pairs
            .iter()
            .filter(|&&(key, _)| pred(&self.registers, key))
            .map(|&(_, w)| w)
            .sum()
    }
}

impl<'a> TryFrom<&'a ShotTable> for Outcomes {
    type Error = MetricsError;
    fn try_from(table: &'a ShotTable) -> Result<Self, MetricsError> {
        Self::from_table(table)
    }
}

impl<'a> TryFrom<&'a OutcomeDistribution> for Outcomes {
    type Error = MetricsError;
    fn try_from(dist: &'a OutcomeDistribution) -> Result<Self, MetricsError> {
        Self::from_distribution(dist)
    }
}

/// String and bitwise transfer: `p_all = Pr(P = μ | R = 0)` and
/// `p_bit = mean_i Pr(P_i = μ_i | R = 0)`. Undefined when no shot has R = 0.
pub fn transfer_metrics(outcomes: &Outcomes, mu: &[bool]) -> (Option<f64>, Option<f64>) {
    let w0 = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == 0);
    if w0 <= 0.0 {
        return (None, None);
    }
    let mu_value: u64 = mu
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i));
    let all = outcomes.weight_where(|regs, key| {
        regs.value(Register::R, key) == 0 && regs.value(Register::P, key) == mu_value
    });
    let mut bit_sum = 0.0;
    for (i, &bit) in mu.iter().enumerate() {
        bit_sum += outcomes.weight_where(|regs, key| {
            regs.value(Register::R, key) == 0 && regs.bit(Register::P, i, key) == bit
        });
    }
    (
        Some(all / w0),
        Some(bit_sum / (w0 * mu.len() as f64)),
    )
}

/// Memory erasure `Pr(M = 0…0 | branch)` for both conventions:
/// `.0` conditions on the message-bearing branch of `kind`, `.1` on the
/// literal `R = 1`.
pub fn erasure_metrics(outcomes: &Outcomes, kind: ProtocolKind) -> (Option<f64>, Option<f64>) {
    let erase_given = |branch: u64| -> Option<f64> {
        let w = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == branch);
        if w <= 0.0 {
            return None;
        }
        let erased = outcomes.weight_where(|regs, key| {
            regs.value(Register::R, key) == branch && regs.value(Register::M, key) == 0
        });
        Some(erased / w)
    };
    (erase_given(kind.message_branch()), erase_given(1))
}

/// Branch contrast: mean over active bits of
/// `Pr(P_i = 1 | R = 0) − Pr(P_i = 1 | R = 1)`. Undefined when either branch
/// is empty or no bit is active.
pub fn branch_contrast(outcomes: &Outcomes, mu: &[bool]) -> Option<f64> {
    let active: Vec<usize> = mu
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    if active.is_empty() {
        return None;
    }
    let w0 = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == 0);
    let w1 = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == 1);
    if w0 <= 0.0 || w1 <= 0.0 {
        return None;
    }
    let mut sum = 0.0;
    for &i in &active {
        let p0 = outcomes.weight_where(|regs, key| {
            regs.value(Register::R, key) == 0 && regs.bit(Register::P, i, key)
        }) / w0;
        let p1 = outcomes.weight_where(|regs, key| {
            regs.value(Register::R, key) == 1 && regs.bit(Register::P, i, key)
        }) / w1;
        sum += p0 - p1;
    }
    Some(sum / active.len() as f64)
}

/// Plug-in mutual information `I(R; P_i)` in bits for each active bit, plus
/// the mean over active bits. Undefined on empty tables or weight-0
/// messages.
pub fn mutual_information(outcomes: &Outcomes, mu: &[bool]) -> Option<(Vec<f64>, f64)> {
    let active: Vec<usize> = mu
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    if active.is_empty() {
        return None;
    }
    let total: f64 = outcomes.pairs.iter().map(|&(_, w)| w).sum();
    if total <= 0.0 {
        return None;
    }
    let mut per_bit = Vec::with_capacity(active.len());
    for &i in &active {
        // joint[r][b] over (R, P_i)
        let mut joint = [[0.0f64; 2]; 2];
        for &(key, w) in &outcomes.pairs {
            let r = outcomes.registers.value(Register::R, key) as usize & 1;
            let b = usize::from(outcomes.registers.bit(Register::P, i, key));
            joint[r][b] += w;
        }
        let p_r = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
        let p_b = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
        let mut mi = 0.0;
        for r in 0..2 {
            for b in 0..2 {
                let p = joint[r][b] / total;
                if p > 0.0 {
                    mi += p * (p * total * total / (p_r[r] * p_b[b])).log2();
                }
            }
        }
        per_bit.push(mi.clamp(0.0, 1.0));
    }
    let mean = per_bit.iter().sum::<f64>() / per_bit.len() as f64;
    Some((per_bit, mean))
}

/// The full per-instance metrics block.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub p_all: Option<f64>,
    pub p_bit: Option<f64>,
    /// Erasure conditioned on the message-bearing branch.
    pub p_erase: Option<f64>,
    /// Erasure conditioned on the literal R = 1.
    pub p_erase_r1: Option<f64>,
    pub delta: Option<f64>,
    pub mi_per_bit: Option<Vec<f64>>,
    pub mi_mean: Option<f64>,
    /// Weight of the R = 0 conditioning set (counts or probability mass).
    pub n_r0: f64,
    /// Weight of the R = 1 conditioning set.
    pub n_r1: f64,
}

impl MetricsRecord {
    pub fn compute(outcomes: &Outcomes, mu: &[bool], kind: ProtocolKind) -> MetricsRecord {
        let (p_all, p_bit) = transfer_metrics(outcomes, mu);
        let (p_erase, p_erase_r1) = erasure_metrics(outcomes, kind);
        let delta = branch_contrast(outcomes, mu);
        let (mi_per_bit, mi_mean) = match mutual_information(outcomes, mu) {
            Some((bits, mean)) => (Some(bits), Some(mean)),
            None => (None, None),
        };
        let n_r0 = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == 0);
        let n_r1 = outcomes.weight_where(|regs, key| regs.value(Register::R, key) == 1);
        MetricsRecord {
            p_all,
            p_bit,
            p_erase,
            p_erase_r1,
            delta,
            mi_per_bit,
            mi_mean,
            n_r0,
            n_r1,
        }
    }

    /// Names of the undefined metrics, for the results file.
    pub fn undefined_markers(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.p_all.is_none() {
            out.push("p_all");
        }
        if self.p_bit.is_none() {
            out.push("p_bit");
        }
        if self.p_erase.is_none() {
            out.push("p_erase");
        }
        if self.p_erase_r1.is_none() {
            out.push("p_erase_r1");
        }
        if self.delta.is_none() {
            out.push("delta");
        }
        if self.mi_mean.is_none() {
            out.push("mi_mean");
        }
        out
    }
}

/// Largest `n` in the series whose mean `p_all` meets
/// [`FRONTIER_THRESHOLD`]; `None` when no n qualifies. Empty series are an
/// error, not an answer.
pub fn frontier(series: &BTreeMap<usize, f64>) -> Result<Option<usize>, MetricsError> {
    if series.is_empty() {
        return Err(MetricsError::EmptySeries);
    }
    Ok(series
        .iter()
        .filter(|&(_, &p)| p >= FRONTIER_THRESHOLD)
        .map(|(&n, _)| n)
        .max())
}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("outcome data carries no register map")]
    MissingRegisters,
    #[error("frontier requires a non-empty series")]
    EmptySeries,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::RegisterMap;
    use crate::outcome::ShotTable;
    use crate::protocol::{build, Family, MessageSpec, VariantSpec};
    use crate::statevector::run_exact;

    /// Assemble a table by hand. Keys follow the measured-bit convention:
    /// Q = bit 0, R = bit 1, F = bit 2, M from bit 3, P from bit 3 + n.
    fn table(n: usize, entries: &[(u128, u64)]) -> ShotTable {
        let regs = RegisterMap::new(n, 0).unwrap();
        crate::outcome::ShotTable::new(
            entries.iter().copied().collect(),
            regs.measured_width(),
            Some(regs),
        )
    }

    fn exact(family: Family, n: usize, variant: &VariantSpec) -> (Outcomes, MessageSpec) {
        let m = MessageSpec::generate(family, n, 0).unwrap();
        let dist = run_exact(&build(&m, variant)).unwrap();
        (Outcomes::from_distribution(&dist).unwrap(), m)
    }

    #[test]
    fn ideal_protocol_metrics_are_all_one() {
        for family in [Family::Sparse, Family::Dense] {
            for n in [1usize, 2, 3] {
                let (out, m) = exact(family, n, &VariantSpec::protocol());
                let rec = MetricsRecord::compute(&out, m.mu(), ProtocolKind::Protocol);
                assert!((rec.p_all.unwrap() - 1.0).abs() < 1e-12);
                assert!((rec.p_bit.unwrap() - 1.0).abs() < 1e-12);
                assert!((rec.p_erase.unwrap() - 1.0).abs() < 1e-12);
                assert!((rec.delta.unwrap() - 1.0).abs() < 1e-12);
                assert!((rec.mi_mean.unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn no_swap_sends_message_to_r1() {
        let (out, m) = exact(Family::Sparse, 1, &VariantSpec::no_swap());
        let rec = MetricsRecord::compute(&out, m.mu(), ProtocolKind::NoSwap);
        assert!((rec.p_all.unwrap() - 0.0).abs() < 1e-12);
        assert!((rec.delta.unwrap() + 1.0).abs() < 1e-12, "delta = -1");
        // uncompute still runs: erasure holds in the message branch (R = 1)
        assert!((rec.p_erase.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_uncompute_keeps_memory_record() {
        let (out, m) = exact(Family::Sparse, 1, &VariantSpec::no_uncompute());
        let rec = MetricsRecord::compute(&out, m.mu(), ProtocolKind::NoUncompute);
        assert!((rec.p_all.unwrap() - 1.0).abs() < 1e-12);
        // memory record M = μ survives in the message branch (R = 0)
        assert!((rec.p_erase.unwrap() - 0.0).abs() < 1e-12);
        // the literal R = 1 convention instead sees an erased memory
        assert!((rec.p_erase_r1.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_wrong_bit_per_shot() {
        // n = 4, all shots in R = 0 with P = μ ^ (one rotating wrong bit);
        // μ = 1111.
        let mu = vec![true; 4];
        let p_base: u128 = 0b1111 << 7; // P occupies bits 7..11
        let entries: Vec<(u128, u64)> = (0..4)
            .map(|i| (p_base ^ (1u128 << (7 + i)), 25))
            .collect();
        let t = table(4, &entries);
        let out = Outcomes::from_table(&t).unwrap();
        let (p_all, p_bit) = transfer_metrics(&out, &mu);
        assert_eq!(p_all.unwrap(), 0.0);
        assert!((p_bit.unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn transfer_undefined_without_r0_shots() {
        // every shot has R = 1 (bit 1 set)
        let t = table(1, &[(0b10, 7)]);
        let out = Outcomes::from_table(&t).unwrap();
        let (p_all, p_bit) = transfer_metrics(&out, &[true]);
        assert!(p_all.is_none() && p_bit.is_none());
    }

    #[test]
    fn scrambled_table_has_zero_contrast() {
        // P independent of R: all four (R, P) combinations equally likely
        let t = table(1, &[(0b00000, 10), (0b10000, 10), (0b00010, 10), (0b10010, 10)]);
        let out = Outcomes::from_table(&t).unwrap();
        let delta = branch_contrast(&out, &[true]).unwrap();
        assert!(delta.abs() < 1e-12);
        let (_, mi) = mutual_information(&out, &[true]).unwrap();
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn amplitude_mi_is_binary_entropy() {
        let m = MessageSpec::generate(Family::Sparse, 1, 0).unwrap();
        let v = VariantSpec::protocol().with_amplitude(0.25).unwrap();
        let dist = run_exact(&build(&m, &v)).unwrap();
        let out = Outcomes::from_distribution(&dist).unwrap();
        let (_, mi) = mutual_information(&out, m.mu()).unwrap();
        let h = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        assert!((mi - h).abs() < 1e-12);
        assert!((mi - 0.8113).abs() < 1e-4);
    }

    #[test]
    fn frontier_examples() {
        let series: BTreeMap<usize, f64> = [
            (1, 0.9),
            (2, 0.8),
            (4, 0.5),
            (8, 0.15),
            (16, 0.05),
            (24, 0.01),
            (32, 0.0),
        ]
        .into_iter()
        .collect();
        assert_eq!(frontier(&series).unwrap(), Some(8));

        let all_good: BTreeMap<usize, f64> =
            [1, 2, 4, 8, 16, 24, 32].into_iter().map(|n| (n, 1.0)).collect();
        assert_eq!(frontier(&all_good).unwrap(), Some(32));

        let all_bad: BTreeMap<usize, f64> =
            [1, 2, 4].into_iter().map(|n| (n, 0.05)).collect();
        assert_eq!(frontier(&all_bad).unwrap(), None);

        assert!(frontier(&BTreeMap::new()).is_err());
    }

    #[test]
    fn undefined_markers_list_missing_metrics() {
        let t = table(1, &[(0b10, 7)]); // R = 1 only
        let out = Outcomes::from_table(&t).unwrap();
        let rec = MetricsRecord::compute(&out, &[true], ProtocolKind::Protocol);
        let markers = rec.undefined_markers();
        assert!(markers.contains(&"p_all"));
        assert!(markers.contains(&"delta"));
        assert!(!markers.contains(&"p_erase_r1"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_table(n: usize) -> impl Strategy<Value = ShotTable> {
            let bits = 3 + 2 * n;
            proptest::collection::btree_map(0u128..(1 << bits), 1u64..50, 1..40)
                .prop_map(move |counts| {
                    let regs = RegisterMap::new(n, 0).unwrap();
                    ShotTable::new(counts, bits, Some(regs))
                })
        }

        proptest! {
            #[test]
            fn p_all_at_most_p_bit(t in arb_table(3), mu_bits in 0u64..8) {
                let mu: Vec<bool> = (0..3).map(|i| (mu_bits >> i) & 1 == 1).collect();
                let out = Outcomes::from_table(&t).unwrap();
                if let (Some(p_all), Some(p_bit)) = transfer_metrics(&out, &mu) {
                    prop_assert!(p_all <= p_bit + 1e-12);
                }
            }

            #[test]
            fn metrics_stay_in_declared_ranges(t in arb_table(2), mu_bits in 1u64..4) {
                let mu: Vec<bool> = (0..2).map(|i| (mu_bits >> i) & 1 == 1).collect();
                let out = Outcomes::from_table(&t).unwrap();
                let rec = MetricsRecord::compute(&out, &mu, ProtocolKind::Protocol);
                for p in [rec.p_all, rec.p_bit, rec.p_erase, rec.p_erase_r1]
                    .into_iter()
                    .flatten()
                {
                    prop_assert!((0.0..=1.0).contains(&p));
                }
                if let Some(d) = rec.delta {
                    prop_assert!((-1.0..=1.0).contains(&d));
                }
                if let Some(mi) = rec.mi_mean {
                    prop_assert!((0.0..=1.0).contains(&mi));
                }
            }

            #[test]
            fn frontier_is_monotone_in_series_values(
                values in proptest::collection::vec(0.0f64..1.0, 5),
                bump in 0usize..5,
                extra in 0.0f64..0.5,
            ) {
                let grid = [1usize, 2, 4, 8, 16];
                let series: BTreeMap<usize, f64> =
                    grid.iter().copied().zip(values.iter().copied()).collect();
                let mut raised = series.clone();
                let key = grid[bump];
                raised.insert(key, (values[bump] + extra).min(1.0));
                let before = frontier(&series).unwrap();
                let after = frontier(&raised).unwrap();
                prop_assert!(after.unwrap_or(0) >= before.unwrap_or(0));
            }
        }
    }
}
