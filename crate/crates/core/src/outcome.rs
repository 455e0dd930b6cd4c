//! Outcome containers: exact distributions and sampled shot tables.
//!
//! Outcome keys pack the measured bits of one shot into a `u128`: bit `j` of
//! the key is the measured value of the circuit's `j`-th measured qubit. For
//! logical circuits that means bit 0 is `Q`, bit 1 is `R`, bit 2 is `F`,
//! then `M` ascending, then `P` ascending; routed circuits use the same
//! logical bit order regardless of where qubits ended up physically.

use std::collections::BTreeMap;

use crate::circuit::{Register, RegisterMap};

/// Exact Born-rule probabilities over measured outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    probs: BTreeMap<u128, f64>,
    measured_bits: usize,
    registers: Option<RegisterMap>,
}

impl OutcomeDistribution {
    pub(crate) fn new(
        probs: BTreeMap<u128, f64>,
        measured_bits: usize,
        registers: Option<RegisterMap>,
    ) -> Self {
        debug_assert!(probs.values().all(|&p| p >= 0.0));
        debug_assert!(
            (probs.values().sum::<f64>() - 1.0).abs() < 1e-12,
            "distribution must be normalized"
        );
        OutcomeDistribution {
            probs,
            measured_bits,
            registers,
        }
    }

    pub fn measured_bits(&self) -> usize {
        self.measured_bits
    }

    pub fn registers(&self) -> Option<&RegisterMap> {
        self.registers.as_ref()
    }

    pub fn probability(&self, key: u128) -> f64 {
        self.probs.get(&key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, f64)> + '_ {
        self.probs.iter().map(|(&k, &p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Marginal probability that a measured register equals `value`.
    pub fn register_marginal(&self, reg: Register, value: u64) -> f64 {
        let regs = self
            .registers
            .as_ref()
            .expect("register marginal requires a register map");
        self.probs
            .iter()
            .filter(|(&key, _)| regs.value(reg, key) == value)
            .map(|(_, &p)| p)
            .sum()
    }

    /// Total variation distance to another distribution over the same bits.
    pub fn total_variation(&self, other: &OutcomeDistribution) -> f64 {
        half_l1(
            self.probs.iter().map(|(&k, &p)| (k, p)),
            other.probs.iter().map(|(&k, &p)| (k, p)),
        )
    }
}

/// Histogram of sampled measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotTable {
    counts: BTreeMap<u128, u64>,
    shots: u64,
    measured_bits: usize,
    registers: Option<RegisterMap>,
}

impl ShotTable {
    pub(crate) fn new(
        counts: BTreeMap<u128, u64>,
        measured_bits: usize,
        registers: Option<RegisterMap>,
    ) -> Self {
        let shots = counts.values().sum();
        ShotTable {
            counts,
            shots,
            measured_bits,
            registers,
        }
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn measured_bits(&self) -> usize {
        self.measured_bits
    }

    pub fn registers(&self) -> Option<&RegisterMap> {
        self.registers.as_ref()
    }

    pub fn count(&self, key: u128) -> u64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn frequency(&self, key: u128) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(key) as f64 / self.shots as f64
        }
    }

    /// Restrict to shots where `reg` equals `value`. Returns `None` when the
    /// condition selects no shots, so callers can mark downstream metrics
    /// undefined instead of coercing them to zero.
    pub fn condition(&self, reg: Register, value: u64) -> Option<ShotTable> {
        let regs = self
            .registers
            .as_ref()
            .expect("conditioning requires a register map");
        let counts: BTreeMap<u128, u64> = self
            .counts
            .iter()
            .filter(|(&key, _)| regs.value(reg, key) == value)
            .map(|(&key, &c)| (key, c))
            .collect();
        if counts.is_empty() {
            None
        } else {
            Some(ShotTable::new(counts, self.measured_bits, self.registers))
        }
    }

    /// Empirical total variation distance to another table.
    pub fn total_variation(&self, other: &ShotTable) -> f64 {
        let lhs = self
            .counts
            .iter()
            .map(|(&k, &c)| (k, c as f64 / self.shots.max(1) as f64));
        let rhs = other
            .counts
            .iter()
            .map(|(&k, &c)| (k, c as f64 / other.shots.max(1) as f64));
        half_l1(lhs, rhs)
    }
}

fn half_l1(
    lhs: impl Iterator<Item = (u128, f64)>,
    rhs: impl Iterator<Item = (u128, f64)>,
) -> f64 {
    let mut merged: BTreeMap<u128, f64> = BTreeMap::new();
    for (k, p) in lhs {
        *merged.entry(k).or_insert(0.0) += p;
    }
    for (k, p) in rhs {
        *merged.entry(k).or_insert(0.0) -= p;
    }
    merged.values().map(|d| d.abs()).sum::<f64>() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[(u128, u64)]) -> ShotTable {
        let regs = RegisterMap::new(1, 0).unwrap();
        ShotTable::new(entries.iter().copied().collect(), 5, Some(regs))
    }

    #[test]
    fn shots_is_sum_of_counts() {
        let t = table(&[(0b00001, 3), (0b00010, 5)]);
        assert_eq!(t.shots(), 8);
        assert_eq!(t.count(0b00001), 3);
        assert_eq!(t.count(0b11111), 0);
    }

    #[test]
    fn conditioning_filters_by_register_value() {
        // R is bit 1
        let t = table(&[(0b00000, 4), (0b00010, 6)]);
        let r0 = t.condition(Register::R, 0).unwrap();
        assert_eq!(r0.shots(), 4);
        let r1 = t.condition(Register::R, 1).unwrap();
        assert_eq!(r1.shots(), 6);
        assert!(t.condition(Register::Q, 1).is_none());
    }

    #[test]
    fn conditioning_is_idempotent() {
        let t = table(&[(0b00000, 4), (0b00010, 6)]);
        let once = t.condition(Register::R, 0).unwrap();
        let twice = once.condition(Register::R, 0).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn tvd_of_identical_tables_is_zero() {
        let t = table(&[(0, 10), (2, 30)]);
        assert_eq!(t.total_variation(&t), 0.0);
        let u = table(&[(0, 30), (2, 10)]);
        assert!((t.total_variation(&u) - 0.5).abs() < 1e-12);
    }
}
