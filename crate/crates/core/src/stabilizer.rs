//! Stabilizer tableau backend for Clifford-only circuits.
//!
//! States are tracked as a binary tableau of `2w + 1` Pauli rows over `w`
//! qubits: `w` destabilizer rows, `w` stabilizer rows, and one scratch row
//! used by deterministic measurements. Row `i`'s Pauli on qubit `q` is
//! encoded by the X and Z bit pair, with a separate phase exponent per row
//! (a power of i, 0..4). Gates act in O(w) bit operations per row pair and
//! measurements in O(w²), so widths far beyond statevector reach (the dense
//! n = 32 protocol needs 67 qubits) stay cheap.
//!
//! The update rules follow the Aaronson–Gottesman CHP construction; the
//! phase bookkeeping for row multiplication is done word-parallel with
//! popcounts rather than bit-by-bit.

use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::noise::{NoiseEvent, NoiseModel, Pauli};
use crate::outcome::ShotTable;
use crate::sim::{apply_readout, collect_shots, draw_events, expand_swaps, shot_rng, SimError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    width: usize,
    words: usize,
    /// X bits, `rows × words`, row-major.
    x: Vec<u64>,
    /// Z bits, same layout.
    z: Vec<u64>,
    /// Phase exponent of i per row, mod 4. Valid states only use 0 and 2.
    r: Vec<u8>,
}

impl Tableau {
    /// A fresh tableau stabilizing |0…0⟩.
    pub fn new(width: usize) -> Self {
        assert!(width >= 1, "tableau needs at least one qubit");
        let words = width.div_ceil(64);
        let rows = 2 * width + 1;
        let mut t = Tableau {
            width,
            words,
            x: vec![0; rows * words],
            z: vec![0; rows * words],
            r: vec![0; rows],
        };
        for q in 0..width {
            t.x[q * words + (q >> 6)] = 1u64 << (q & 63); // destabilizer X_q
            t.z[(width + q) * words + (q >> 6)] = 1u64 << (q & 63); // stabilizer Z_q
        }
        t
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    fn xw(&self, row: usize, word: usize) -> u64 {
        self.x[row * self.words + word]
    }

    #[inline]
    fn zw(&self, row: usize, word: usize) -> u64 {
        self.z[row * self.words + word]
    }

    pub fn apply_h(&mut self, q: usize) {
        let (w, bit) = (q >> 6, 1u64 << (q & 63));
        for row in 0..2 * self.width {
            let xi = row * self.words + w;
            let xb = self.x[xi] & bit != 0;
            let zb = self.z[xi] & bit != 0;
            if xb != zb {
                self.x[xi] ^= bit;
                self.z[xi] ^= bit;
            }
            if xb && zb {
                self.r[row] ^= 2;
            }
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        let (w, bit) = (q >> 6, 1u64 << (q & 63));
        for row in 0..2 * self.width {
            if self.zw(row, w) & bit != 0 {
                self.r[row] ^= 2;
            }
        }
    }

    pub fn apply_y(&mut self, q: usize) {
        let (w, bit) = (q >> 6, 1u64 << (q & 63));
        for row in 0..2 * self.width {
            if (self.xw(row, w) ^ self.zw(row, w)) & bit != 0 {
                self.r[row] ^= 2;
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        let (w, bit) = (q >> 6, 1u64 << (q & 63));
        for row in 0..2 * self.width {
            if self.xw(row, w) & bit != 0 {
                self.r[row] ^= 2;
            }
        }
    }

    pub fn apply_cx(&mut self, c: usize, t: usize) {
        assert_ne!(c, t, "control equals target");
        let (wc, bitc) = (c >> 6, 1u64 << (c & 63));
        let (wt, bitt) = (t >> 6, 1u64 << (t & 63));
        for row in 0..2 * self.width {
            let base = row * self.words;
            let xc = self.x[base + wc] & bitc != 0;
            let zc = self.z[base + wc] & bitc != 0;
            let xt = self.x[base + wt] & bitt != 0;
            let zt = self.z[base + wt] & bitt != 0;
            if xc && zt && (xt == zc) {
                self.r[row] ^= 2;
            }
            if xc {
                self.x[base + wt] ^= bitt;
            }
            if zt {
                self.z[base + wc] ^= bitc;
            }
        }
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "swap of a qubit with itself");
        let (wa, bita) = (a >> 6, 1u64 << (a & 63));
        let (wb, bitb) = (b >> 6, 1u64 << (b & 63));
        for row in 0..2 * self.width {
            let base = row * self.words;
            let xa = self.x[base + wa] & bita != 0;
            let xb = self.x[base + wb] & bitb != 0;
            if xa != xb {
                self.x[base + wa] ^= bita;
                self.x[base + wb] ^= bitb;
            }
            let za = self.z[base + wa] & bita != 0;
            let zb = self.z[base + wb] & bitb != 0;
            if za != zb {
                self.z[base + wa] ^= bita;
                self.z[base + wb] ^= bitb;
            }
        }
    }

    pub fn apply_pauli(&mut self, q: usize, pauli: Pauli) {
        match pauli {
            Pauli::X => self.apply_x(q),
            Pauli::Y => self.apply_y(q),
            Pauli::Z => self.apply_z(q),
        }
    }

    /// Apply a circuit gate. Fails on RY.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        match *gate {
            Gate::X(q) => self.apply_x(q),
            Gate::H(q) => self.apply_h(q),
            Gate::Cx(c, t) => self.apply_cx(c, t),
            Gate::Swap(a, b) => self.apply_swap(a, b),
            Gate::Ry(q, angle) => {
                return Err(SimError::NonClifford {
                    gate: format!("RY({angle}) on qubit {q}"),
                })
            }
        }
        Ok(())
    }

    /// Phase exponent (power of i, mod 4) picked up when row `a`'s operator
    /// left-multiplies row `b`'s, accumulated word-parallel.
    fn row_mul_phase(&self, a: usize, b: usize) -> u8 {
        let mut e: i32 = 0;
        for w in 0..self.words {
            let xa = self.xw(a, w);
            let za = self.zw(a, w);
            let xb = self.xw(b, w);
            let zb = self.zw(b, w);
            let ya = xa & za;
            let x_only_a = xa & !za;
            let z_only_a = !xa & za;
            let yb = xb & zb;
            let x_only_b = xb & !zb;
            let z_only_b = !xb & zb;
            // Y·Z, X·Y, Z·X pick up +i; Y·X, X·Z, Z·Y pick up −i
            let plus = (ya & z_only_b) | (x_only_a & yb) | (z_only_a & x_only_b);
            let minus = (ya & x_only_b) | (x_only_a & z_only_b) | (z_only_a & yb);
            e += plus.count_ones() as i32 - minus.count_ones() as i32;
        }
        (e + i32::from(self.r[a]) + i32::from(self.r[b])).rem_euclid(4) as u8
    }

    /// Row `b` := row `a` · row `b`.
    fn row_mul(&mut self, a: usize, b: usize) {
        self.r[b] = self.row_mul_phase(a, b);
        for w in 0..self.words {
            self.x[b * self.words + w] ^= self.x[a * self.words + w];
            self.z[b * self.words + w] ^= self.z[a * self.words + w];
        }
    }

    fn row_copy(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            self.x[dst * self.words + w] = self.x[src * self.words + w];
            self.z[dst * self.words + w] = self.z[src * self.words + w];
        }
        self.r[dst] = self.r[src];
    }

    fn row_clear(&mut self, row: usize) {
        for w in 0..self.words {
            self.x[row * self.words + w] = 0;
            self.z[row * self.words + w] = 0;
        }
        self.r[row] = 0;
    }

    /// Projective Z-basis measurement of qubit `q`. Indeterminate outcomes
    /// draw one bool from `rng`.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let (wq, bit) = (q >> 6, 1u64 << (q & 63));
        let width = self.width;
        let pivot = (width..2 * width).find(|&row| self.xw(row, wq) & bit != 0);

        if let Some(p) = pivot {
            // Random outcome: clear X_q from every other row using row p,
            // demote row p to its destabilizer slot, then replace it with
            // ±Z_q at a random sign.
            for row in 0..2 * width {
                if row != p && self.xw(row, wq) & bit != 0 {
                    self.row_mul(p, row);
                }
            }
            self.row_copy(p, p - width);
            self.row_clear(p);
            self.z[p * self.words + wq] |= bit;
            let one = rng.random::<bool>();
            self.r[p] = if one { 2 } else { 0 };
            one
        } else {
            // Deterministic outcome: multiply into the scratch row the
            // stabilizers whose destabilizer partners anticommute with Z_q.
            let scratch = 2 * width;
            self.row_clear(scratch);
            for row in 0..width {
                if self.xw(row, wq) & bit != 0 {
                    self.row_mul(row + width, scratch);
                }
            }
            debug_assert!(self.r[scratch].is_multiple_of(2), "phase of a real state");
            self.r[scratch] == 2
        }
    }
}

/// Sample noisy shots on the stabilizer backend. Each shot replays the
/// circuit as a fresh trajectory; shots without any Pauli injection reuse a
/// cached copy of the ideal pre-measurement tableau.
pub fn sample_stabilizer(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotTable, SimError> {
    if let Some(gate) = circuit.gates().iter().find(|g| matches!(g, Gate::Ry(..))) {
        return Err(SimError::NonClifford {
            gate: format!("{gate:?}"),
        });
    }
    let gates = expand_swaps(circuit.gates());
    let measured = circuit.measured();

    let mut ideal = Tableau::new(circuit.width());
    for gate in &gates {
        ideal.apply(gate).expect("clifford-only checked above");
    }

    let counts = collect_shots(shots, |shot| {
        let mut rng = shot_rng(seed, shot);
        let events = draw_events(&gates, noise, &mut rng);
        let mut tableau = if events.is_empty() {
            ideal.clone()
        } else {
            let mut t = Tableau::new(circuit.width());
            let mut next = events.iter().peekable();
            for (idx, gate) in gates.iter().enumerate() {
                t.apply(gate).expect("clifford-only checked above");
                while let Some((at, event)) = next.peek() {
                    if *at != idx {
                        break;
                    }
                    match *event {
                        NoiseEvent::One { qubit, pauli } => t.apply_pauli(qubit, pauli),
                        NoiseEvent::Two {
                            a,
                            b,
                            pauli_a,
                            pauli_b,
                        } => {
                            if let Some(p) = pauli_a {
                                t.apply_pauli(a, p);
                            }
                            if let Some(p) = pauli_b {
                                t.apply_pauli(b, p);
                            }
                        }
                    }
                    next.next();
                }
            }
            t
        };
        let mut key = 0u128;
        for (bit, &q) in measured.iter().enumerate() {
            if tableau.measure(q, &mut rng) {
                key |= 1u128 << bit;
            }
        }
        apply_readout(key, measured.len(), noise.readout, &mut rng)
    });

    Ok(ShotTable::new(
        counts,
        measured.len(),
        circuit.registers().copied(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn measure_all(t: &mut Tableau, rng: &mut ChaCha8Rng) -> Vec<bool> {
        (0..t.width()).map(|q| t.measure(q, rng)).collect()
    }

    #[test]
    fn fresh_state_measures_all_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut t = Tableau::new(70);
        assert!(measure_all(&mut t, &mut rng).iter().all(|&b| !b));
    }

    #[test]
    fn x_flips_deterministically() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut t = Tableau::new(3);
        t.apply_x(1);
        assert_eq!(measure_all(&mut t, &mut rng), vec![false, true, false]);
    }

    #[test]
    fn bell_pair_outcomes_correlate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut ones = 0;
        for _ in 0..200 {
            let mut t = Tableau::new(2);
            t.apply_h(0);
            t.apply_cx(0, 1);
            let a = t.measure(0, &mut rng);
            let b = t.measure(1, &mut rng);
            assert_eq!(a, b, "bell outcomes must agree");
            ones += u32::from(a);
        }
        assert!((50..150).contains(&ones), "unbiased coin, got {ones}/200");
    }

    #[test]
    fn ghz_across_word_boundary() {
        // qubits 0 and 65 live in different u64 words
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let mut t = Tableau::new(66);
            t.apply_h(0);
            t.apply_cx(0, 65);
            let a = t.measure(0, &mut rng);
            let b = t.measure(65, &mut rng);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn swap_moves_excitation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut t = Tableau::new(2);
        t.apply_x(0);
        t.apply_swap(0, 1);
        assert_eq!(measure_all(&mut t, &mut rng), vec![false, true]);
    }

    #[test]
    fn y_equals_ixz_up_to_phase_on_outcomes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut t = Tableau::new(1);
        t.apply_y(0);
        assert!(t.measure(0, &mut rng));
    }

    #[test]
    fn repeated_measurement_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut t = Tableau::new(1);
        t.apply_h(0);
        let first = t.measure(0, &mut rng);
        for _ in 0..5 {
            assert_eq!(t.measure(0, &mut rng), first);
        }
    }

    #[test]
    fn rejects_non_clifford() {
        let c = Circuit::bare(1, vec![Gate::Ry(0, 0.3)]).unwrap();
        match sample_stabilizer(&c, &NoiseModel::ideal(), 10, 0) {
            Err(SimError::NonClifford { .. }) => {}
            other => panic!("expected non-Clifford error, got {other:?}"),
        }
    }

    #[test]
    fn readout_one_inverts_deterministic_outcome() {
        let c = Circuit::bare(2, vec![Gate::X(0)]).unwrap();
        let noise = NoiseModel::new(0.0, 0.0, 1.0).unwrap();
        let t = sample_stabilizer(&c, &noise, 64, 0).unwrap();
        assert_eq!(t.count(0b10), 64);
    }

    #[test]
    fn determinism_under_seed() {
        let c = Circuit::bare(4, vec![Gate::H(0), Gate::Cx(0, 1), Gate::Swap(1, 3)]).unwrap();
        let noise = NoiseModel::new(0.01, 0.05, 0.02).unwrap();
        let a = sample_stabilizer(&c, &noise, 300, 11).unwrap();
        let b = sample_stabilizer(&c, &noise, 300, 11).unwrap();
        assert_eq!(a, b);
    }
}
