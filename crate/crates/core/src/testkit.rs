//! Seeded random-circuit generation for cross-backend validation.
//!
//! The ensemble is tuned so two independent 100k-shot samplers of the same
//! circuit stay well under the 0.02 TVD acceptance bound: widths 5–8, at
//! most two H gates (one on the wider circuits), a handful of CX, and an
//! occasional SWAP. Wider or more diffuse circuits would drown the
//! comparison in multinomial sampling noise rather than backend differences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};

/// A seeded random Clifford circuit over X, H, CX, and SWAP.
pub fn random_clifford_circuit(seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = rng.random_range(5..=8usize);
    let h_budget = if width >= 7 { 1 } else { 2 };
    let n_h = rng.random_range(0..=h_budget);
    let n_x = rng.random_range(1..=3);
    let n_cx = rng.random_range(2..=4);
    let n_swap = rng.random_range(0..=1);

    let mut gates: Vec<Gate> = Vec::new();
    for _ in 0..n_h {
        gates.push(Gate::H(rng.random_range(0..width)));
    }
    for _ in 0..n_x {
        gates.push(Gate::X(rng.random_range(0..width)));
    }
    let pair = |rng: &mut ChaCha8Rng| loop {
        let a = rng.random_range(0..width);
        let b = rng.random_range(0..width);
        if a != b {
            return (a, b);
        }
    };
    for _ in 0..n_cx {
        let (a, b) = pair(&mut rng);
        gates.push(Gate::Cx(a, b));
    }
    for _ in 0..n_swap {
        let (a, b) = pair(&mut rng);
        gates.push(Gate::Swap(a, b));
    }
    gates.shuffle(&mut rng);
    Circuit::bare(width, gates).expect("generated gates are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_seeded() {
        assert_eq!(random_clifford_circuit(4), random_clifford_circuit(4));
        assert_ne!(random_clifford_circuit(4), random_clifford_circuit(5));
    }

    #[test]
    fn circuits_are_clifford_and_bounded() {
        for seed in 0..40 {
            let c = random_clifford_circuit(seed);
            assert!(c.clifford_only());
            assert!(c.width() <= 12);
        }
    }
}
