//! Builders for the message-transfer circuit family, its controls, and the
//! divergence and amplitude stress variants.
//!
//! The emitted gate order is: prepare `Q` (H, or RY for the amplitude
//! variant), `CX Q→F`, `CX F→R`, the divergence writes `CX R→S_j`, the
//! message writes `CX R→M_i` on active bits only, the message-independent
//! copy `CX M_i→P_i` on all bits, the message-independent uncompute
//! `CX P_i→M_i` on all bits (skipped by the no-uncompute control), and
//! finally the partial branch swap `X` on `Q`, `R`, `F` plus the divergent
//! `S` positions (skipped entirely by the no-swap control).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Register, RegisterMap};

/// Message families controlling the compiled entangling depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// One-hot `10⋯0`; write/uncompute depth is constant in message size.
    Sparse,
    /// Hamming weight `⌊n/2⌋` at seeded uniformly random positions.
    Half,
    /// All-ones `11⋯1`; the deepest family after compilation.
    Dense,
    /// Caller-provided bits.
    Explicit,
}

impl Family {
    pub const fn name(self) -> &'static str {
        match self {
            Family::Sparse => "sparse",
            Family::Half => "half",
            Family::Dense => "dense",
            Family::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "sparse" => Some(Family::Sparse),
            "half" => Some(Family::Half),
            "dense" => Some(Family::Dense),
            "explicit" => Some(Family::Explicit),
            _ => None,
        }
    }
}

/// A concrete message: family plus the bitstring `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageSpec {
    family: Family,
    mu: Vec<bool>,
}

impl MessageSpec {
    /// Generate a message of size `n`. Sparse and dense are deterministic;
    /// half draws its active positions from the seeded generator, so the
    /// same seed always yields the same `μ`.
    pub fn generate(family: Family, n: usize, seed: u64) -> Result<Self, ProtocolError> {
        if n == 0 {
            return Err(ProtocolError::EmptyMessage);
        }
        let mut mu = vec![false; n];
        match family {
            Family::Sparse => mu[0] = true,
            Family::Dense => mu.iter_mut().for_each(|b| *b = true),
            Family::Half => {
                let weight = n / 2;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for idx in rand::seq::index::sample(&mut rng, n, weight) {
                    mu[idx] = true;
                }
            }
            Family::Explicit => return Err(ProtocolError::ExplicitNeedsBits),
        }
        Ok(MessageSpec { family, mu })
    }

    /// A message with explicitly given bits.
    pub fn explicit(mu: Vec<bool>) -> Result<Self, ProtocolError> {
        if mu.is_empty() {
            return Err(ProtocolError::EmptyMessage);
        }
        Ok(MessageSpec {
            family: Family::Explicit,
            mu,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[bool] {
        &self.mu
    }

    pub fn weight(&self) -> usize {
        self.mu.iter().filter(|&&b| b).count()
    }

    /// `μ` as an integer with bit `i` equal to `μ_i`.
    pub fn mu_value(&self) -> u128 {
        self.mu
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &b)| acc | (u128::from(b) << i))
    }

    /// `μ` written left to right, e.g. `1000` for sparse `n = 4`.
    pub fn bitstring(&self) -> String {
        self.mu.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Which protocol variant to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProtocolKind {
    /// The full protocol including uncompute and the partial branch swap.
    Protocol,
    /// Omits the partial branch swap; the message stays in the `R = 1` branch.
    NoSwap,
    /// Omits memory uncomputation; the sender keeps a record of `μ`.
    NoUncompute,
}

impl ProtocolKind {
    pub const fn name(self) -> &'static str {
        match self {
            ProtocolKind::Protocol => "protocol",
            ProtocolKind::NoSwap => "no_swap",
            ProtocolKind::NoUncompute => "no_uncompute",
        }
    }

    pub fn parse(s: &str) -> Option<ProtocolKind> {
        match s {
            "protocol" => Some(ProtocolKind::Protocol),
            "no_swap" => Some(ProtocolKind::NoSwap),
            "no_uncompute" => Some(ProtocolKind::NoUncompute),
            _ => None,
        }
    }

    /// The branch label value carrying the paper record of `μ` at the end of
    /// the circuit: `R = 0` once the swap has run, `R = 1` without it.
    pub fn message_branch(self) -> u64 {
        match self {
            ProtocolKind::NoSwap => 1,
            _ => 0,
        }
    }
}

/// Divergence stress parameters: a `k`-qubit unmeasured internal register
/// whose branch states differ on the first `d` positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CousinsSpec {
    pub internal_bits: usize,
    pub divergence: usize,
}

/// Full variant description: protocol kind plus the optional amplitude and
/// divergence stress parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantSpec {
    kind: ProtocolKind,
    amplitude_p0: Option<f64>,
    cousins: Option<CousinsSpec>,
}

impl VariantSpec {
    pub fn new(kind: ProtocolKind) -> Self {
        VariantSpec {
            kind,
            amplitude_p0: None,
            cousins: None,
        }
    }

    pub fn protocol() -> Self {
        Self::new(ProtocolKind::Protocol)
    }

    pub fn no_swap() -> Self {
        Self::new(ProtocolKind::NoSwap)
    }

    pub fn no_uncompute() -> Self {
        Self::new(ProtocolKind::NoUncompute)
    }

    /// Prepare `Q` with `Pr(Q = 0) = p0` instead of a uniform superposition.
    pub fn with_amplitude(mut self, p0: f64) -> Result<Self, ProtocolError> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(ProtocolError::AmplitudeOutOfRange(p0));
        }
        self.amplitude_p0 = Some(p0);
        Ok(self)
    }

    /// Add the divergence register (`d ≤ k` required).
    pub fn with_cousins(mut self, k: usize, d: usize) -> Result<Self, ProtocolError> {
        if d > k {
            return Err(ProtocolError::DivergenceTooLarge { d, k });
        }
        self.cousins = Some(CousinsSpec {
            internal_bits: k,
            divergence: d,
        });
        Ok(self)
    }

    pub fn kind(&self) -> ProtocolKind {
        self.kind
    }

    pub fn amplitude_p0(&self) -> Option<f64> {
        self.amplitude_p0
    }

    pub fn cousins(&self) -> Option<CousinsSpec> {
        self.cousins
    }
}

/// Build the circuit for a message and variant. Deterministic: the same
/// inputs always produce the same gate list.
pub fn build(message: &MessageSpec, variant: &VariantSpec) -> Circuit {
    let n = message.n();
    let (k, d) = variant
        .cousins
        .map_or((0, 0), |c| (c.internal_bits, c.divergence));
    let regs = RegisterMap::new(n, k).expect("message is non-empty");
    let q = regs.qubit(Register::Q, 0);
    let r = regs.qubit(Register::R, 0);
    let f = regs.qubit(Register::F, 0);

    let mut gates = Vec::with_capacity(3 + d + message.weight() + 2 * n + 3 + d);
    match variant.amplitude_p0 {
        // RY(2·arccos(√p0))|0⟩ has Pr(0) = p0
        Some(p0) => gates.push(Gate::Ry(q, 2.0 * p0.sqrt().acos())),
        None => gates.push(Gate::H(q)),
    }
    gates.push(Gate::Cx(q, f));
    gates.push(Gate::Cx(f, r));
    for j in 0..d {
        gates.push(Gate::Cx(r, regs.qubit(Register::S, j)));
    }
    for (i, &active) in message.mu().iter().enumerate() {
        if active {
            gates.push(Gate::Cx(r, regs.qubit(Register::M, i)));
        }
    }
    for i in 0..n {
        gates.push(Gate::Cx(regs.qubit(Register::M, i), regs.qubit(Register::P, i)));
    }
    if variant.kind != ProtocolKind::NoUncompute {
        for i in 0..n {
            gates.push(Gate::Cx(regs.qubit(Register::P, i), regs.qubit(Register::M, i)));
        }
    }
    if variant.kind != ProtocolKind::NoSwap {
        gates.push(Gate::X(q));
        gates.push(Gate::X(r));
        gates.push(Gate::X(f));
        for j in 0..d {
            gates.push(Gate::X(regs.qubit(Register::S, j)));
        }
    }
    Circuit::with_registers(regs, gates).expect("builder emits valid gates")
}

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("message size must be at least 1")]
    EmptyMessage,
    #[error("the explicit family requires explicit bits; use MessageSpec::explicit")]
    ExplicitNeedsBits,
    #[error("amplitude p0 = {0} outside [0, 1]")]
    AmplitudeOutOfRange(f64),
    #[error("divergence d = {d} exceeds internal register size k = {k}")]
    DivergenceTooLarge { d: usize, k: usize },
}
