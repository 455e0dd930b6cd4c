//! Plumbing shared by the simulation backends: error type, SWAP expansion,
//! per-shot RNG streams, trajectory event drawing, and parallel shot
//! accumulation.
//!
//! Determinism contract: a sampled run is a pure function of
//! `(circuit, noise, shots, seed)`. Each shot derives its own ChaCha stream
//! from the seed by counter, so results are bitwise identical regardless of
//! how shots are scheduled across workers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::Gate;
use crate::noise::{draw_one_qubit, draw_two_qubit, NoiseEvent, NoiseModel};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("circuit width {width} exceeds the statevector limit of {limit} qubits")]
    CapacityExceeded { width: usize, limit: usize },
    #[error("stabilizer backend cannot run non-Clifford gate {gate}")]
    NonClifford { gate: String },
}

/// Expand SWAPs to their 3-CX decomposition so each constituent CX receives
/// its own depolarizing draw.
pub(crate) fn expand_swaps(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    for gate in gates {
        match *gate {
            Gate::Swap(a, b) => {
                out.push(Gate::Cx(a, b));
                out.push(Gate::Cx(b, a));
                out.push(Gate::Cx(a, b));
            }
            g => out.push(g),
        }
    }
    out
}

/// Fresh RNG stream for one shot.
pub(crate) fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Draw the Pauli injections for one shot, in gate order. The draw sequence
/// is fixed: one uniform per gate whose arity has nonzero noise, followed
/// immediately by the Pauli choice when triggered.
pub(crate) fn draw_events(
    gates: &[Gate],
    noise: &NoiseModel,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, NoiseEvent)> {
    let mut events = Vec::new();
    for (idx, gate) in gates.iter().enumerate() {
        match *gate {
            Gate::Cx(a, b) => {
                if noise.p2 > 0.0 && rng.random::<f64>() < noise.p2 {
                    events.push((idx, draw_two_qubit(a, b, rng)));
                }
            }
            Gate::Swap(..) => unreachable!("swaps are expanded before sampling"),
            Gate::X(q) | Gate::H(q) | Gate::Ry(q, _) => {
                if noise.p1 > 0.0 && rng.random::<f64>() < noise.p1 {
                    events.push((idx, draw_one_qubit(q, rng)));
                }
            }
        }
    }
    events
}

/// Flip each measured bit independently with the readout probability.
pub(crate) fn apply_readout(
    key: u128,
    measured_bits: usize,
    readout: f64,
    rng: &mut ChaCha8Rng,
) -> u128 {
    if readout <= 0.0 {
        return key;
    }
    let mut out = key;
    for bit in 0..measured_bits {
        if rng.random::<f64>() < readout {
            out ^= 1u128 << bit;
        }
    }
    out
}

/// Run `shots` independent shots in parallel and accumulate a histogram.
/// `shot_fn` must depend only on the shot index.
pub(crate) fn collect_shots<F>(shots: u64, shot_fn: F) -> BTreeMap<u128, u64>
where
    F: Fn(u64) -> u128 + Sync,
{
    (0..shots)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u128, u64>, shot| {
            *acc.entry(shot_fn(shot)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, count) in b {
                *a.entry(key).or_insert(0) += count;
            }
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_expansion() {
        let expanded = expand_swaps(&[Gate::H(0), Gate::Swap(0, 1), Gate::X(1)]);
        assert_eq!(
            expanded,
            vec![
                Gate::H(0),
                Gate::Cx(0, 1),
                Gate::Cx(1, 0),
                Gate::Cx(0, 1),
                Gate::X(1)
            ]
        );
    }

    #[test]
    fn shot_streams_are_independent_and_reproducible() {
        let mut a = shot_rng(7, 0);
        let mut b = shot_rng(7, 1);
        let mut a2 = shot_rng(7, 0);
        let xa: f64 = a.random();
        let xb: f64 = b.random();
        let xa2: f64 = a2.random();
        assert_eq!(xa, xa2);
        assert_ne!(xa, xb);
    }

    #[test]
    fn ideal_noise_draws_nothing() {
        let gates = expand_swaps(&[Gate::H(0), Gate::Cx(0, 1)]);
        let mut rng = shot_rng(0, 0);
        let before: u64 = rng.clone().random();
        let events = draw_events(&gates, &NoiseModel::ideal(), &mut rng);
        assert!(events.is_empty());
        // no RNG consumed when all rates are zero
        assert_eq!(rng.random::<u64>(), before);
    }

    #[test]
    fn collect_counts_sum_to_shots() {
        let counts = collect_shots(1000, |shot| u128::from(shot % 3));
        assert_eq!(counts.values().sum::<u64>(), 1000);
        assert_eq!(counts.len(), 3);
    }
}
