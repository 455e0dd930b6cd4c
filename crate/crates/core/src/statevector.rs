//! Dense statevector backend: exact distributions for any supported gate
//! set, and noisy trajectory sampling for circuits with RY preparations.
//!
//! The state is a flat `Vec<Complex64>` indexed so that bit `q` of a basis
//! index is the state of qubit `q`. Width is capped (default
//! [`DEFAULT_STATEVECTOR_LIMIT`]) since memory doubles per qubit.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::noise::{NoiseEvent, NoiseModel, Pauli};
use crate::outcome::{OutcomeDistribution, ShotTable};
use crate::sim::{
    apply_readout, collect_shots, draw_events, expand_swaps, shot_rng, SimError,
};

/// Default cap on dense-simulation width.
pub const DEFAULT_STATEVECTOR_LIMIT: usize = 24;

pub(crate) struct State {
    amps: Vec<Complex64>,
}

impl State {
    pub(crate) fn zero(width: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; 1 << width];
        amps[0] = Complex64::ONE;
        State { amps }
    }

    pub(crate) fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::X(q) => self.apply_x(q),
            Gate::H(q) => self.apply_h(q),
            Gate::Ry(q, angle) => self.apply_ry(q, angle),
            Gate::Cx(c, t) => self.apply_cx(c, t),
            Gate::Swap(a, b) => self.apply_swap(a, b),
        }
    }

    pub(crate) fn apply_pauli(&mut self, q: usize, pauli: Pauli) {
        match pauli {
            Pauli::X => self.apply_x(q),
            Pauli::Y => self.apply_y(q),
            Pauli::Z => self.apply_z(q),
        }
    }

    fn apply_x(&mut self, q: usize) {
        let mask = 1usize << q;
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for low in 0..mask {
                self.amps.swap(base + low, base + low + mask);
            }
        }
    }

    fn apply_y(&mut self, q: usize) {
        let mask = 1usize << q;
        let i = Complex64::I;
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for low in 0..mask {
                let a0 = self.amps[base + low];
                let a1 = self.amps[base + low + mask];
                self.amps[base + low] = -i * a1;
                self.amps[base + low + mask] = i * a0;
            }
        }
    }

    fn apply_z(&mut self, q: usize) {
        let mask = 1usize << q;
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for low in 0..mask {
                self.amps[base + low + mask] = -self.amps[base + low + mask];
            }
        }
    }

    fn apply_h(&mut self, q: usize) {
        let mask = 1usize << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for low in 0..mask {
                let a0 = self.amps[base + low];
                let a1 = self.amps[base + low + mask];
                self.amps[base + low] = (a0 + a1) * s;
                self.amps[base + low + mask] = (a0 - a1) * s;
            }
        }
    }

    fn apply_ry(&mut self, q: usize, angle: f64) {
        let mask = 1usize << q;
        let c = (angle / 2.0).cos();
        let s = (angle / 2.0).sin();
        for base in (0..self.amps.len()).step_by(mask << 1) {
            for low in 0..mask {
                let a0 = self.amps[base + low];
                let a1 = self.amps[base + low + mask];
                self.amps[base + low] = c * a0 - s * a1;
                self.amps[base + low + mask] = s * a0 + c * a1;
            }
        }
    }

    fn apply_cx(&mut self, c: usize, t: usize) {
        let cmask = 1usize << c;
        let tmask = 1usize << t;
        for idx in 0..self.amps.len() {
            if idx & cmask != 0 && idx & tmask == 0 {
                self.amps.swap(idx, idx | tmask);
            }
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let amask = 1usize << a;
        let bmask = 1usize << b;
        for idx in 0..self.amps.len() {
            if idx & amask != 0 && idx & bmask == 0 {
                self.amps.swap(idx, idx ^ amask ^ bmask);
            }
        }
    }

    /// Inclusive cumulative probabilities in basis-index order.
    fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.amps
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect()
    }

    /// First basis index whose running probability exceeds `u`, scanning in
    /// ascending index order (the same order as [`State::cumulative`]).
    fn sample_index(&self, u: f64) -> usize {
        let mut acc = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            acc += amp.norm_sqr();
            if acc > u {
                return idx;
            }
        }
        self.amps.len() - 1
    }
}

fn extract_measured(index: usize, measured: &[usize]) -> u128 {
    let mut key = 0u128;
    for (bit, &q) in measured.iter().enumerate() {
        key |= (((index >> q) & 1) as u128) << bit;
    }
    key
}

fn check_capacity(circuit: &Circuit, limit: usize) -> Result<(), SimError> {
    if circuit.width() > limit {
        return Err(SimError::CapacityExceeded {
            width: circuit.width(),
            limit,
        });
    }
    Ok(())
}

/// Exact Born-rule distribution over the measured qubits, marginalizing any
/// unmeasured ones.
pub fn run_exact(circuit: &Circuit) -> Result<OutcomeDistribution, SimError> {
    run_exact_with_limit(circuit, DEFAULT_STATEVECTOR_LIMIT)
}

pub fn run_exact_with_limit(
    circuit: &Circuit,
    limit: usize,
) -> Result<OutcomeDistribution, SimError> {
    check_capacity(circuit, limit)?;
    let mut state = State::zero(circuit.width());
    for gate in circuit.gates() {
        state.apply(gate);
    }
    let mut probs: BTreeMap<u128, f64> = BTreeMap::new();
    for (index, amp) in state.amps.iter().enumerate() {
        let p = amp.norm_sqr();
        if p > 0.0 {
            *probs.entry(extract_measured(index, circuit.measured())).or_insert(0.0) += p;
        }
    }
    Ok(OutcomeDistribution::new(
        probs,
        circuit.measured().len(),
        circuit.registers().copied(),
    ))
}

/// Sample noisy shots on the dense backend. Same trajectory semantics as the
/// stabilizer sampler, but supports RY.
pub fn sample_statevector(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotTable, SimError> {
    sample_statevector_with_limit(circuit, noise, shots, seed, DEFAULT_STATEVECTOR_LIMIT)
}

pub fn sample_statevector_with_limit(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
    limit: usize,
) -> Result<ShotTable, SimError> {
    check_capacity(circuit, limit)?;
    let gates = expand_swaps(circuit.gates());
    let measured = circuit.measured();

    // Shots with no Pauli injection sample from the ideal state, computed
    // once; only shots that triggered an event replay the full trajectory.
    let mut ideal = State::zero(circuit.width());
    for gate in &gates {
        ideal.apply(gate);
    }
    let cumulative = ideal.cumulative();

    let counts = collect_shots(shots, |shot| {
        let mut rng = shot_rng(seed, shot);
        let events = draw_events(&gates, noise, &mut rng);
        let u: f64 = rng.random();
        let index = if events.is_empty() {
            cumulative
                .partition_point(|&c| c <= u)
                .min(cumulative.len() - 1)
        } else {
            let mut state = State::zero(circuit.width());
            let mut next = events.iter().peekable();
            for (idx, gate) in gates.iter().enumerate() {
                state.apply(gate);
                while let Some((at, event)) = next.peek() {
                    if *at != idx {
                        break;
                    }
                    match *event {
                        NoiseEvent::One { qubit, pauli } => state.apply_pauli(qubit, pauli),
                        NoiseEvent::Two {
                            a,
                            b,
                            pauli_a,
                            pauli_b,
                        } => {
                            if let Some(p) = pauli_a {
                                state.apply_pauli(a, p);
                            }
                            if let Some(p) = pauli_b {
                                state.apply_pauli(b, p);
                            }
                        }
                    }
                    next.next();
                }
            }
            state.sample_index(u)
        };
        let key = extract_measured(index, measured);
        apply_readout(key, measured.len(), noise.readout, &mut rng)
    });

    Ok(ShotTable::new(
        counts,
        measured.len(),
        circuit.registers().copied(),
    ))
}
