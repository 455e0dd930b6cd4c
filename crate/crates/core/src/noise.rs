//! Depolarizing gate noise plus independent readout bit flips.
//!
//! Noise is sampled per shot as a stochastic Pauli trajectory: after each
//! gate, with probability `p1` (one-qubit) or `p2` (two-qubit) a uniformly
//! random nontrivial Pauli is applied to the touched qubits. Routing SWAPs
//! are expanded to their 3-CX decomposition before injection, so routing
//! overhead costs noise. Readout flips each measured bit independently.

use rand::Rng;
use thiserror::Error;

/// One- and two-qubit depolarizing probabilities plus a readout flip
/// probability. `(0, 0, 0)` is the ideal model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub p1: f64,
    pub p2: f64,
    pub readout: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, readout: f64) -> Result<Self, NoiseError> {
        for (name, p) in [("p1", p1), ("p2", p2), ("readout", readout)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(NoiseError::OutOfRange {
                    name,
                    value: p,
                });
            }
        }
        Ok(NoiseModel { p1, p2, readout })
    }

    pub const fn ideal() -> Self {
        NoiseModel {
            p1: 0.0,
            p2: 0.0,
            readout: 0.0,
        }
    }

    /// Low-noise synthetic tier. The values are artifact choices, not device
    /// calibrations.
    pub const fn quiet() -> Self {
        NoiseModel {
            p1: 0.0005,
            p2: 0.005,
            readout: 0.01,
        }
    }

    /// High-noise synthetic tier.
    pub const fn noisy() -> Self {
        NoiseModel {
            p1: 0.002,
            p2: 0.02,
            readout: 0.03,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "ideal" => Some(Self::ideal()),
            "quiet" => Some(Self::quiet()),
            "noisy" => Some(Self::noisy()),
            _ => None,
        }
    }

    pub fn is_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_code(code: u8) -> Option<Pauli> {
        match code {
            0 => None,
            1 => Some(Pauli::X),
            2 => Some(Pauli::Y),
            3 => Some(Pauli::Z),
            _ => unreachable!("pauli code {code}"),
        }
    }
}

/// A Pauli injection drawn for one gate of one shot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseEvent {
    One {
        qubit: usize,
        pauli: Pauli,
    },
    /// One of the 15 nontrivial two-qubit Paulis; at least one factor is set.
    Two {
        a: usize,
        b: usize,
        pauli_a: Option<Pauli>,
        pauli_b: Option<Pauli>,
    },
}

/// Draw a uniform nontrivial single-qubit Pauli.
pub(crate) fn draw_one_qubit<R: Rng>(qubit: usize, rng: &mut R) -> NoiseEvent {
    let pauli = match rng.random_range(0u8..3) {
        0 => Pauli::X,
        1 => Pauli::Y,
        _ => Pauli::Z,
    };
    NoiseEvent::One { qubit, pauli }
}

/// Draw a uniform nontrivial two-qubit Pauli (15 choices).
pub(crate) fn draw_two_qubit<R: Rng>(a: usize, b: usize, rng: &mut R) -> NoiseEvent {
    let code = rng.random_range(1u8..16);
    NoiseEvent::Two {
        a,
        b,
        pauli_a: Pauli::from_code(code >> 2),
        pauli_b: Pauli::from_code(code & 0b11),
    }
}

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("noise probability {name} = {value} outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(NoiseModel::new(0.0, 0.5, 1.0).is_ok());
        assert!(NoiseModel::new(-0.1, 0.0, 0.0).is_err());
        assert!(NoiseModel::new(0.0, 1.1, 0.0).is_err());
        assert!(NoiseModel::ideal().is_ideal());
        assert!(!NoiseModel::quiet().is_ideal());
    }

    #[test]
    fn presets_by_name() {
        assert_eq!(NoiseModel::preset("quiet"), Some(NoiseModel::quiet()));
        assert_eq!(NoiseModel::preset("noisy"), Some(NoiseModel::noisy()));
        assert_eq!(NoiseModel::preset("ideal"), Some(NoiseModel::ideal()));
        assert_eq!(NoiseModel::preset("loud"), None);
    }

    #[test]
    fn two_qubit_draws_cover_all_fifteen() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..2000 {
            match draw_two_qubit(0, 1, &mut rng) {
                NoiseEvent::Two {
                    pauli_a, pauli_b, ..
                } => {
                    assert!(pauli_a.is_some() || pauli_b.is_some());
                    seen.insert(format!("{pauli_a:?}/{pauli_b:?}"));
                }
                other => panic!("unexpected event {other:?}"),
            }
        }
        assert_eq!(seen.len(), 15);
    }
}
