//! Gate-level circuit representation with named registers.
//!
//! A [`Circuit`] is an ordered gate list over a fixed number of qubits plus a
//! [`RegisterMap`] naming the role of each qubit and the list of qubits
//! measured at the end. There is no DAG: gate order is the single source of
//! truth, and the depth statistic re-derives dependencies on demand with an
//! as-soon-as-possible layering over two-qubit gates only. One-qubit gates do
//! not occupy layers.

use std::fmt::Write as _;
use std::ops::Range;

use thiserror::Error;

/// Qubit roles in a message-transfer circuit.
///
/// `Q` is the measured qubit, `R` the branch label, `F` the friend's state,
/// `M` the n-bit memory, `P` the n-bit paper register, and `S` an optional
/// unmeasured internal-state register used by the divergence stress test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Register {
    Q,
    R,
    F,
    M,
    P,
    S,
}

impl Register {
    pub const fn name(self) -> &'static str {
        match self {
            Register::Q => "Q",
            Register::R => "R",
            Register::F => "F",
            Register::M => "M",
            Register::P => "P",
            Register::S => "S",
        }
    }

    pub fn parse(s: &str) -> Option<Register> {
        match s {
            "Q" => Some(Register::Q),
            "R" => Some(Register::R),
            "F" => Some(Register::F),
            "M" => Some(Register::M),
            "P" => Some(Register::P),
            "S" => Some(Register::S),
            _ => None,
        }
    }
}

/// Assignment of qubit index ranges to register roles.
///
/// The layout is fixed: `Q`, `R`, `F` on qubits 0..3, then `M` (n qubits),
/// then `P` (n qubits), then the optional `S` (k qubits) at the top. Ranges
/// are therefore disjoint and cover the width by construction. `S` is the
/// only unmeasured register; because it sits at the top, the measured bit
/// position of every measured qubit equals its qubit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterMap {
    n: usize,
    k: usize,
}

impl RegisterMap {
    /// A map with `n` message bits and `k` internal-state bits. `n` must be
    /// at least 1.
    pub fn new(n: usize, k: usize) -> Result<Self, CircuitError> {
        if n == 0 {
            return Err(CircuitError::EmptyMessage);
        }
        Ok(RegisterMap { n, k })
    }

    pub fn message_bits(&self) -> usize {
        self.n
    }

    pub fn internal_bits(&self) -> usize {
        self.k
    }

    /// Total qubit count covered by the registers.
    pub fn width(&self) -> usize {
        3 + 2 * self.n + self.k
    }

    /// Number of measured qubits (everything except `S`).
    pub fn measured_width(&self) -> usize {
        3 + 2 * self.n
    }

    pub fn range(&self, reg: Register) -> Range<usize> {
        let n = self.n;
        match reg {
            Register::Q => 0..1,
            Register::R => 1..2,
            Register::F => 2..3,
            Register::M => 3..3 + n,
            Register::P => 3 + n..3 + 2 * n,
            Register::S => 3 + 2 * n..3 + 2 * n + self.k,
        }
    }

    /// Qubit index of bit `i` of register `reg`.
    pub fn qubit(&self, reg: Register, i: usize) -> usize {
        let range = self.range(reg);
        assert!(i < range.len(), "bit {i} out of range for {}", reg.name());
        range.start + i
    }

    /// Extract the value of a measured register from an outcome key.
    ///
    /// Bit `j` of an outcome key is the measured value of qubit `j`; bit `i`
    /// of the returned value is bit `i` of the register. `S` is unmeasured
    /// and has no value in an outcome key.
    pub fn value(&self, reg: Register, key: u128) -> u64 {
        debug_assert!(reg != Register::S, "S is never measured");
        let range = self.range(reg);
        let mask = if range.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << range.len()) - 1
        };
        ((key >> range.start) as u64) & mask
    }

    /// Extract bit `i` of register `reg` from an outcome key.
    pub fn bit(&self, reg: Register, i: usize, key: u128) -> bool {
        debug_assert!(reg != Register::S, "S is never measured");
        (key >> self.qubit(reg, i)) & 1 == 1
    }
}

/// A single gate. Indices are logical or physical depending on whether the
/// circuit has been routed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    /// Y-rotation by the given angle in radians.
    Ry(usize, f64),
    /// Controlled-X with (control, target).
    Cx(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx(..) | Gate::Swap(..))
    }

    /// The one or two qubits the gate acts on.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::Ry(q, _) => (q, None),
            Gate::Cx(a, b) | Gate::Swap(a, b) => (a, Some(b)),
        }
    }

    fn validate(&self, width: usize) -> Result<(), CircuitError> {
        let (a, b) = self.qubits();
        if a >= width {
            return Err(CircuitError::QubitOutOfRange { index: a, width });
        }
        if let Some(b) = b {
            if b >= width {
                return Err(CircuitError::QubitOutOfRange { index: b, width });
            }
            if a == b {
                return Err(CircuitError::DuplicateQubits(a));
            }
        }
        if let Gate::Ry(_, angle) = self {
            if !angle.is_finite() {
                return Err(CircuitError::NonFiniteAngle);
            }
        }
        Ok(())
    }
}

/// How two-qubit statistics account for SWAP gates.
///
/// SWAP only ever appears as a routing artifact; [`CountMode::NativeCx`]
/// expands it to its 3-CX decomposition, matching superconducting native-gate
/// accounting, while [`CountMode::Gate`] counts it as a single gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    #[default]
    NativeCx,
    Gate,
}

/// An immutable gate-level circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    registers: Option<RegisterMap>,
    measured: Vec<usize>,
}

impl Circuit {
    /// A logical circuit whose width comes from the register map; every
    /// qubit except the `S` register is measured, in index order.
    pub fn with_registers(registers: RegisterMap, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let width = registers.width();
        let measured = (0..registers.measured_width()).collect();
        Self::build(width, gates, Some(registers), measured)
    }

    /// A circuit with no register roles; all qubits are measured. Useful for
    /// randomized backend tests.
    pub fn bare(width: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        Self::build(width, gates, None, (0..width).collect())
    }

    /// A physical-index circuit as produced by routing: `width` is the size
    /// of the coupling map and `measured` lists the physical qubits holding
    /// the logical measured qubits, in logical measurement order.
    pub fn physical(
        width: usize,
        registers: Option<RegisterMap>,
        measured: Vec<usize>,
        gates: Vec<Gate>,
    ) -> Result<Self, CircuitError> {
        if let Some(regs) = &registers {
            if measured.len() != regs.measured_width() {
                return Err(CircuitError::BadMeasuredSet(format!(
                    "expected {} measured qubits, got {}",
                    regs.measured_width(),
                    measured.len()
                )));
            }
        }
        Self::build(width, gates, registers, measured)
    }

    fn build(
        width: usize,
        gates: Vec<Gate>,
        registers: Option<RegisterMap>,
        measured: Vec<usize>,
    ) -> Result<Self, CircuitError> {
        if width == 0 {
            return Err(CircuitError::ZeroWidth);
        }
        if let Some(regs) = &registers {
            if regs.width() > width {
                return Err(CircuitError::WidthMismatch {
                    expected: regs.width(),
                    actual: width,
                });
            }
        }
        for gate in &gates {
            gate.validate(width)?;
        }
        if measured.is_empty() || measured.len() > 128 {
            return Err(CircuitError::BadMeasuredSet(format!(
                "measured qubit count {} not in 1..=128",
                measured.len()
            )));
        }
        let mut seen = vec![false; width];
        for &q in &measured {
            if q >= width {
                return Err(CircuitError::QubitOutOfRange { index: q, width });
            }
            if seen[q] {
                return Err(CircuitError::BadMeasuredSet(format!(
                    "qubit {q} measured twice"
                )));
            }
            seen[q] = true;
        }
        Ok(Circuit {
            width,
            gates,
            registers,
            measured,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn registers(&self) -> Option<&RegisterMap> {
        self.registers.as_ref()
    }

    /// Measured qubits in measurement-bit order: bit `j` of an outcome key
    /// is the measured value of `measured()[j]`.
    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    /// True iff the circuit contains no RY gate, i.e. it can run on the
    /// stabilizer backend.
    pub fn clifford_only(&self) -> bool {
        !self.gates.iter().any(|g| matches!(g, Gate::Ry(..)))
    }

    /// Number of two-qubit gates, with SWAP weighted per `mode`.
    pub fn two_qubit_count(&self, mode: CountMode) -> usize {
        self.gates
            .iter()
            .map(|g| match (g, mode) {
                (Gate::Cx(..), _) => 1,
                (Gate::Swap(..), CountMode::NativeCx) => 3,
                (Gate::Swap(..), CountMode::Gate) => 1,
                _ => 0,
            })
            .sum()
    }

    /// Two-qubit depth under greedy as-soon-as-possible layering.
    ///
    /// Gates are processed in program order; each two-qubit gate lands on
    /// layer `1 + max(layer of the last two-qubit gate touching either
    /// qubit)`. In native-CX mode a SWAP advances its pair by 3 layers.
    pub fn two_qubit_depth(&self, mode: CountMode) -> usize {
        let mut layer = vec![0usize; self.width];
        let mut depth = 0;
        for gate in &self.gates {
            let (a, b) = match *gate {
                Gate::Cx(a, b) | Gate::Swap(a, b) => (a, b),
                _ => continue,
            };
            let step = match (gate, mode) {
                (Gate::Swap(..), CountMode::NativeCx) => 3,
                _ => 1,
            };
            let next = layer[a].max(layer[b]) + step;
            layer[a] = next;
            layer[b] = next;
            depth = depth.max(next);
        }
        depth
    }

    /// Line-oriented text form: a header block followed by one gate per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("circuit v1\n");
        let _ = writeln!(out, "width {}", self.width);
        match &self.registers {
            Some(regs) => {
                let _ = writeln!(
                    out,
                    "registers n {} k {}",
                    regs.message_bits(),
                    regs.internal_bits()
                );
                for reg in [
                    Register::Q,
                    Register::R,
                    Register::F,
                    Register::M,
                    Register::P,
                    Register::S,
                ] {
                    let range = regs.range(reg);
                    let _ = writeln!(out, "# {} {} {}", reg.name(), range.start, range.len());
                }
            }
            None => out.push_str("registers none\n"),
        }
        out.push_str("measured");
        for q in &self.measured {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
        for gate in &self.gates {
            match *gate {
                Gate::X(q) => {
                    let _ = writeln!(out, "X {q}");
                }
                Gate::H(q) => {
                    let _ = writeln!(out, "H {q}");
                }
                Gate::Ry(q, angle) => {
                    let _ = writeln!(out, "RY {q} {angle}");
                }
                Gate::Cx(a, b) => {
                    let _ = writeln!(out, "CX {a} {b}");
                }
                Gate::Swap(a, b) => {
                    let _ = writeln!(out, "SWAP {a} {b}");
                }
            }
        }
        out
    }

    /// Parse the text form produced by [`Circuit::to_text`].
    pub fn from_text(text: &str) -> Result<Self, CircuitError> {
        let err = |line: usize, message: &str| CircuitError::Parse {
            line,
            message: message.to_string(),
        };
        let mut width: Option<usize> = None;
        let mut registers: Option<Option<RegisterMap>> = None;
        let mut measured: Option<Vec<usize>> = None;
        let mut gates: Vec<Gate> = Vec::new();
        let mut saw_header = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let head = parts.next().unwrap();
            let num = |parts: &mut dyn Iterator<Item = &str>| -> Result<usize, CircuitError> {
                parts
                    .next()
                    .ok_or_else(|| err(line, "missing field"))?
                    .parse::<usize>()
                    .map_err(|_| err(line, "expected an integer"))
            };
            match head {
                "circuit" => {
                    if parts.next() != Some("v1") {
                        return Err(err(line, "unsupported circuit format version"));
                    }
                    saw_header = true;
                }
                "width" => width = Some(num(&mut parts)?),
                "registers" => match parts.next() {
                    Some("none") => registers = Some(None),
                    Some("n") => {
                        let n = num(&mut parts)?;
                        if parts.next() != Some("k") {
                            return Err(err(line, "expected `k` after message bits"));
                        }
                        let k = num(&mut parts)?;
                        registers = Some(Some(RegisterMap::new(n, k)?));
                    }
                    _ => return Err(err(line, "malformed registers line")),
                },
                "measured" => {
                    let mut qubits = Vec::new();
                    for part in parts.by_ref() {
                        qubits.push(
                            part.parse::<usize>()
                                .map_err(|_| err(line, "expected an integer"))?,
                        );
                    }
                    measured = Some(qubits);
                }
                "X" => gates.push(Gate::X(num(&mut parts)?)),
                "H" => gates.push(Gate::H(num(&mut parts)?)),
                "RY" => {
                    let q = num(&mut parts)?;
                    let angle = parts
                        .next()
                        .ok_or_else(|| err(line, "missing angle"))?
                        .parse::<f64>()
                        .map_err(|_| err(line, "expected an angle"))?;
                    gates.push(Gate::Ry(q, angle));
                }
                "CX" => {
                    let a = num(&mut parts)?;
                    gates.push(Gate::Cx(a, num(&mut parts)?));
                }
                "SWAP" => {
                    let a = num(&mut parts)?;
                    gates.push(Gate::Swap(a, num(&mut parts)?));
                }
                other => return Err(err(line, &format!("unknown directive `{other}`"))),
            }
        }

        if !saw_header {
            return Err(err(0, "missing `circuit v1` header"));
        }
        let width = width.ok_or_else(|| err(0, "missing width"))?;
        let registers = registers.ok_or_else(|| err(0, "missing registers line"))?;
        let measured = measured.ok_or_else(|| err(0, "missing measured line"))?;
        match registers {
            Some(regs) => Self::physical(width, Some(regs), measured, gates),
            None => Self::build(width, gates, None, measured),
        }
    }
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("register map requires at least one message bit")]
    EmptyMessage,
    #[error("circuit width must be at least 1")]
    ZeroWidth,
    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("two-qubit gate acts twice on qubit {0}")]
    DuplicateQubits(usize),
    #[error("rotation angle must be finite")]
    NonFiniteAngle,
    #[error("register map needs width {expected} but circuit has width {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("invalid measured qubit set: {0}")]
    BadMeasuredSet(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent depth oracle: build the dependency DAG explicitly and take
    /// the longest path over two-qubit gates.
    fn depth_oracle(width: usize, gates: &[Gate], mode: CountMode) -> usize {
        let twoq: Vec<(usize, usize, usize)> = gates
            .iter()
            .filter_map(|g| match (g, mode) {
                (Gate::Cx(a, b), _) => Some((*a, *b, 1)),
                (Gate::Swap(a, b), CountMode::NativeCx) => Some((*a, *b, 3)),
                (Gate::Swap(a, b), CountMode::Gate) => Some((*a, *b, 1)),
                _ => None,
            })
            .collect();
        // longest[i] = depth of the chain ending at gate i
        let mut longest = vec![0usize; twoq.len()];
        let mut best = 0;
        for i in 0..twoq.len() {
            let (a, b, w) = twoq[i];
            let mut pred = 0;
            for j in (0..i).rev() {
                let (c, d, _) = twoq[j];
                if c == a || c == b || d == a || d == b {
                    pred = pred.max(longest[j]);
                    // keep scanning: an earlier gate on the *other* qubit may
                    // end a longer chain
                }
            }
            longest[i] = pred + w;
            best = best.max(longest[i]);
        }
        let _ = width;
        best
    }

    fn dense_n2() -> Circuit {
        let regs = RegisterMap::new(2, 0).unwrap();
        let gates = vec![
            Gate::H(0),
            Gate::Cx(0, 2),
            Gate::Cx(2, 1),
            Gate::Cx(1, 3),
            Gate::Cx(1, 4),
            Gate::Cx(3, 5),
            Gate::Cx(4, 6),
            Gate::Cx(5, 3),
            Gate::Cx(6, 4),
            Gate::X(0),
            Gate::X(1),
            Gate::X(2),
        ];
        Circuit::with_registers(regs, gates).unwrap()
    }

    #[test]
    fn register_layout_is_contiguous_and_disjoint() {
        let regs = RegisterMap::new(4, 3).unwrap();
        assert_eq!(regs.width(), 14);
        assert_eq!(regs.measured_width(), 11);
        let mut covered = vec![false; regs.width()];
        for reg in [
            Register::Q,
            Register::R,
            Register::F,
            Register::M,
            Register::P,
            Register::S,
        ] {
            for q in regs.range(reg) {
                assert!(!covered[q], "qubit {q} covered twice");
                covered[q] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn register_map_rejects_empty_message() {
        assert!(matches!(
            RegisterMap::new(0, 2),
            Err(CircuitError::EmptyMessage)
        ));
    }

    #[test]
    fn value_extraction() {
        let regs = RegisterMap::new(2, 0).unwrap();
        // Q(bit 0)=1, F(bit 2)=1, M0(bit 3)=1, P1(bit 6)=1
        let key: u128 = (1 << 0) | (1 << 2) | (1 << 3) | (1 << 6);
        assert_eq!(regs.value(Register::Q, key), 1);
        assert_eq!(regs.value(Register::R, key), 0);
        assert_eq!(regs.value(Register::M, key), 0b01);
        assert_eq!(regs.value(Register::P, key), 0b10);
        assert!(regs.bit(Register::P, 1, key));
        assert!(!regs.bit(Register::P, 0, key));
    }

    #[test]
    fn gate_validation() {
        assert!(Circuit::bare(2, vec![Gate::Cx(0, 0)]).is_err());
        assert!(Circuit::bare(2, vec![Gate::Cx(0, 2)]).is_err());
        assert!(Circuit::bare(2, vec![Gate::Ry(0, f64::NAN)]).is_err());
        assert!(Circuit::bare(2, vec![Gate::Cx(0, 1)]).is_ok());
    }

    #[test]
    fn empty_circuit_counts() {
        let c = Circuit::bare(3, vec![]).unwrap();
        assert_eq!(c.two_qubit_count(CountMode::NativeCx), 0);
        assert_eq!(c.two_qubit_depth(CountMode::NativeCx), 0);
    }

    #[test]
    fn swap_counts_three_in_native_mode() {
        let c = Circuit::bare(2, vec![Gate::Swap(0, 1)]).unwrap();
        assert_eq!(c.two_qubit_count(CountMode::NativeCx), 3);
        assert_eq!(c.two_qubit_count(CountMode::Gate), 1);
        assert_eq!(c.two_qubit_depth(CountMode::NativeCx), 3);
        assert_eq!(c.two_qubit_depth(CountMode::Gate), 1);
    }

    #[test]
    fn dense_n2_count_and_depth() {
        let c = dense_n2();
        assert_eq!(c.two_qubit_count(CountMode::NativeCx), 8);
        assert_eq!(c.two_qubit_depth(CountMode::NativeCx), 6);
        assert_eq!(
            depth_oracle(c.width(), c.gates(), CountMode::NativeCx),
            6,
            "oracle disagrees"
        );
    }

    #[test]
    fn parallel_cx_depth_one() {
        let gates: Vec<Gate> = (0..4).map(|i| Gate::Cx(2 * i, 2 * i + 1)).collect();
        let c = Circuit::bare(8, gates).unwrap();
        assert_eq!(c.two_qubit_depth(CountMode::NativeCx), 1);
    }

    #[test]
    fn depth_ignores_one_qubit_gates() {
        let mut gates = vec![Gate::Cx(0, 1), Gate::Cx(1, 2)];
        let c = Circuit::bare(3, gates.clone()).unwrap();
        let base = c.two_qubit_depth(CountMode::NativeCx);
        gates.insert(1, Gate::H(1));
        gates.push(Gate::X(0));
        let c2 = Circuit::bare(3, gates).unwrap();
        assert_eq!(c2.two_qubit_depth(CountMode::NativeCx), base);
    }

    #[test]
    fn text_round_trip() {
        let c = dense_n2();
        let text = c.to_text();
        let parsed = Circuit::from_text(&text).unwrap();
        assert_eq!(parsed, c);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn text_round_trip_bare_with_ry() {
        let c = Circuit::bare(
            2,
            vec![Gate::Ry(0, 2.0 * (0.3f64).sqrt().acos()), Gate::Swap(0, 1)],
        )
        .unwrap();
        let parsed = Circuit::from_text(&c.to_text()).unwrap();
        assert_eq!(parsed, c);
        assert!(!parsed.clifford_only());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Circuit::from_text("circuit v1\nwidth 2\nbogus 1\n").is_err());
        assert!(Circuit::from_text("width 2\nmeasured 0\n").is_err());
        assert!(Circuit::from_text("circuit v2\n").is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_gates(width: usize) -> impl Strategy<Value = Vec<Gate>> {
            let gate = (0..5u8, 0..width, 0..width).prop_filter_map(
                "distinct qubits",
                move |(kind, a, b)| match kind {
                    0 => Some(Gate::X(a)),
                    1 => Some(Gate::H(a)),
                    2 => Some(Gate::Ry(a, 0.7)),
                    3 if a != b => Some(Gate::Cx(a, b)),
                    4 if a != b => Some(Gate::Swap(a, b)),
                    _ => None,
                },
            );
            proptest::collection::vec(gate, 0..40)
        }

        proptest! {
            #[test]
            fn depth_at_most_count(gates in arb_gates(6)) {
                let c = Circuit::bare(6, gates).unwrap();
                for mode in [CountMode::NativeCx, CountMode::Gate] {
                    prop_assert!(c.two_qubit_depth(mode) <= c.two_qubit_count(mode));
                }
            }

            #[test]
            fn depth_matches_dag_oracle(gates in arb_gates(6)) {
                let c = Circuit::bare(6, gates).unwrap();
                for mode in [CountMode::NativeCx, CountMode::Gate] {
                    prop_assert_eq!(
                        c.two_qubit_depth(mode),
                        depth_oracle(6, c.gates(), mode)
                    );
                }
            }

            #[test]
            fn depth_invariant_under_one_qubit_insertion(
                gates in arb_gates(6),
                pos in 0usize..40,
                q in 0usize..6,
            ) {
                let c = Circuit::bare(6, gates.clone()).unwrap();
                let mut padded = gates;
                padded.insert(pos.min(padded.len()), Gate::H(q));
                let c2 = Circuit::bare(6, padded).unwrap();
                prop_assert_eq!(
                    c.two_qubit_depth(CountMode::NativeCx),
                    c2.two_qubit_depth(CountMode::NativeCx)
                );
            }

            #[test]
            fn text_round_trips(gates in arb_gates(5)) {
                let c = Circuit::bare(5, gates).unwrap();
                let parsed = Circuit::from_text(&c.to_text()).unwrap();
                prop_assert_eq!(parsed, c);
            }
        }
    }
}
