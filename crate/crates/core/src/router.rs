//! Logical-to-physical qubit mapping and seeded SWAP-insertion routing.
//!
//! The router is a deliberately simple seeded shortest-path inserter: a CX
//! whose endpoints are not adjacent walks its control toward the target
//! along a BFS shortest path, emitting one SWAP per step and breaking ties
//! between equal-length paths with the routing seed. That reproduces the
//! two phenomena under study, depth growth from routing overhead and
//! seed-to-seed variability, while staying a replaceable strategy behind
//! one interface. A peephole pass cancelling adjacent identical CX pairs
//! runs on the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::coupling::CouplingMap;
use crate::sim::SimError;
use crate::statevector::run_exact;

/// Bijection between logical qubits and the physical vertices holding them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    log_to_phys: Vec<usize>,
    phys_to_log: Vec<Option<usize>>,
}

impl Layout {
    /// Build from a logical→physical assignment over `num_physical`
    /// vertices. The assignment must be injective and in range.
    pub fn new(log_to_phys: Vec<usize>, num_physical: usize) -> Result<Self, RouterError> {
        if log_to_phys.len() > num_physical {
            return Err(RouterError::WidthExceedsMap {
                width: log_to_phys.len(),
                vertices: num_physical,
            });
        }
        let mut phys_to_log = vec![None; num_physical];
        for (logical, &phys) in log_to_phys.iter().enumerate() {
            if phys >= num_physical {
                return Err(RouterError::BadLayout(format!(
                    "physical vertex {phys} out of range"
                )));
            }
            if phys_to_log[phys].is_some() {
                return Err(RouterError::BadLayout(format!(
                    "physical vertex {phys} assigned twice"
                )));
            }
            phys_to_log[phys] = Some(logical);
        }
        Ok(Layout {
            log_to_phys,
            phys_to_log,
        })
    }

    pub fn width(&self) -> usize {
        self.log_to_phys.len()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.log_to_phys[logical]
    }

    pub fn logical(&self, physical: usize) -> Option<usize> {
        self.phys_to_log[physical]
    }

    /// Exchange whatever sits on two physical vertices.
    fn swap_physical(&mut self, a: usize, b: usize) {
        let la = self.phys_to_log[a];
        let lb = self.phys_to_log[b];
        self.phys_to_log[a] = lb;
        self.phys_to_log[b] = la;
        if let Some(l) = la {
            self.log_to_phys[l] = b;
        }
        if let Some(l) = lb {
            self.log_to_phys[l] = a;
        }
    }
}

/// Initial placement strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutStrategy {
    /// Identity on the first `width` vertices.
    Trivial,
    /// Uniform permutation drawn from the seed.
    SeededRandom,
    /// Walk a long path through the map and place qubits along it in the
    /// order Q, F, R, M_0, P_0, M_1, P_1, …, S, so each (M_i, P_i) pair is
    /// adjacent and R sits next to M_0 where the topology permits.
    InterleavePairs,
}

impl LayoutStrategy {
    pub const fn name(self) -> &'static str {
        match self {
            LayoutStrategy::Trivial => "trivial",
            LayoutStrategy::SeededRandom => "seeded_random",
            LayoutStrategy::InterleavePairs => "interleave_pairs",
        }
    }

    pub fn parse(s: &str) -> Option<LayoutStrategy> {
        match s {
            "trivial" => Some(LayoutStrategy::Trivial),
            "seeded_random" => Some(LayoutStrategy::SeededRandom),
            "interleave_pairs" => Some(LayoutStrategy::InterleavePairs),
            _ => None,
        }
    }
}

/// A routed circuit: physical indices, the layouts before and after, and the
/// seed that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    pub initial_layout: Layout,
    pub final_layout: Layout,
    pub seed: u64,
    pub swap_count: usize,
}

/// Compute an initial layout for `circuit` on `map`.
pub fn initial_layout(
    circuit: &Circuit,
    map: &CouplingMap,
    strategy: LayoutStrategy,
    seed: u64,
) -> Result<Layout, RouterError> {
    let width = circuit.width();
    let vertices = map.num_vertices();
    if width > vertices {
        return Err(RouterError::WidthExceedsMap { width, vertices });
    }
    match strategy {
        LayoutStrategy::Trivial => Layout::new((0..width).collect(), vertices),
        LayoutStrategy::SeededRandom => {
            let mut order: Vec<usize> = (0..vertices).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            use rand::seq::SliceRandom;
            order.shuffle(&mut rng);
            order.truncate(width);
            Layout::new(order, vertices)
        }
        LayoutStrategy::InterleavePairs => {
            let order = interleave_order(circuit);
            let path = long_path(map, order.len());
            let mut assignment = vec![usize::MAX; width];
            let mut used = vec![false; vertices];
            for (slot, &logical) in order.iter().enumerate() {
                if slot < path.len() {
                    assignment[logical] = path[slot];
                    used[path[slot]] = true;
                }
            }
            // Overflow that did not fit on the path lands on the nearest
            // unused vertices, BFS-ordered from the end of the path.
            let anchor = path.last().copied().unwrap_or(0);
            let dist = map.distances_from(anchor);
            let mut free: Vec<usize> = (0..vertices).filter(|&v| !used[v]).collect();
            free.sort_by_key(|&v| (dist[v], v));
            let mut free = free.into_iter();
            for slot in assignment.iter_mut() {
                if *slot == usize::MAX {
                    *slot = free.next().expect("map has at least `width` vertices");
                }
            }
            Layout::new(assignment, vertices)
        }
    }
}

/// Qubit placement order for [`LayoutStrategy::InterleavePairs`].
fn interleave_order(circuit: &Circuit) -> Vec<usize> {
    use crate::circuit::Register;
    match circuit.registers() {
        Some(regs) => {
            let mut order = vec![
                regs.qubit(Register::Q, 0),
                regs.qubit(Register::F, 0),
                regs.qubit(Register::R, 0),
            ];
            for i in 0..regs.message_bits() {
                order.push(regs.qubit(Register::M, i));
                order.push(regs.qubit(Register::P, i));
            }
            for j in 0..regs.internal_bits() {
                order.push(regs.qubit(Register::S, j));
            }
            order
        }
        None => (0..circuit.width()).collect(),
    }
}

/// Deterministic long-path search: depth-first with backtracking from every
/// minimum-degree start, extending toward the unvisited neighbor with the
/// fewest onward options first (ties by index), under a fixed step budget.
/// Stops as soon as a path of `target` vertices is found.
fn long_path(map: &CouplingMap, target: usize) -> Vec<usize> {
    let vertices = map.num_vertices();
    let target = target.min(vertices).max(1);
    let candidates = |v: usize, visited: &[bool]| -> Vec<usize> {
        let mut c: Vec<usize> = map
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !visited[u])
            .collect();
        c.sort_by_key(|&u| {
            (
                map.neighbors(u).iter().filter(|&&w| !visited[w]).count(),
                u,
            )
        });
        c
    };
    let min_degree = (0..vertices).map(|v| map.degree(v)).min().unwrap_or(0);
    let starts: Vec<usize> = (0..vertices)
        .filter(|&v| map.degree(v) == min_degree)
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut budget: u32 = 2_000_000;
    for start in starts {
        if budget == 0 || best.len() >= target {
            break;
        }
        let mut visited = vec![false; vertices];
        visited[start] = true;
        let mut path = vec![start];
        let mut frames = vec![(candidates(start, &visited), 0usize)];
        if path.len() > best.len() {
            best = path.clone();
        }
        while let Some((cands, next)) = frames.last_mut() {
            if best.len() >= target || budget == 0 {
                break;
            }
            budget -= 1;
            if *next < cands.len() {
                let v = cands[*next];
                *next += 1;
                visited[v] = true;
                path.push(v);
                if path.len() > best.len() {
                    best = path.clone();
                }
                let c = candidates(v, &visited);
                frames.push((c, 0));
            } else {
                frames.pop();
                let v = path.pop().expect("path tracks frames");
                visited[v] = false;
            }
        }
    }
    best
}

/// Route a logical circuit onto a coupling map.
///
/// Gates are processed in program order. A two-qubit gate on non-adjacent
/// vertices inserts SWAPs along a seeded BFS shortest path, moving the
/// control toward the target until they are adjacent; one-qubit gates only
/// relabel. Every two-qubit gate in the output acts on a coupling-map edge.
pub fn route(
    circuit: &Circuit,
    map: &CouplingMap,
    layout: &Layout,
    seed: u64,
) -> Result<RoutedCircuit, RouterError> {
    if circuit.width() > map.num_vertices() {
        return Err(RouterError::WidthExceedsMap {
            width: circuit.width(),
            vertices: map.num_vertices(),
        });
    }
    if layout.width() != circuit.width() {
        return Err(RouterError::BadLayout(format!(
            "layout covers {} qubits but circuit has {}",
            layout.width(),
            circuit.width()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = layout.clone();
    let mut gates: Vec<Gate> = Vec::with_capacity(circuit.gates().len());
    let mut swap_count = 0usize;

    for gate in circuit.gates() {
        match *gate {
            Gate::X(q) => gates.push(Gate::X(current.physical(q))),
            Gate::H(q) => gates.push(Gate::H(current.physical(q))),
            Gate::Ry(q, angle) => gates.push(Gate::Ry(current.physical(q), angle)),
            Gate::Cx(c, t) | Gate::Swap(c, t) => {
                let target = current.physical(t);
                let mut control = current.physical(c);
                if !map.is_adjacent(control, target) {
                    let dist = map.distances_from(target);
                    while dist[control] > 1 {
                        let step = dist[control] - 1;
                        let choices: Vec<usize> = map
                            .neighbors(control)
                            .iter()
                            .copied()
                            .filter(|&v| dist[v] == step)
                            .collect();
                        let next = choices[rng.random_range(0..choices.len())];
                        gates.push(Gate::Swap(control, next));
                        current.swap_physical(control, next);
                        swap_count += 1;
                        control = next;
                    }
                }
                match gate {
                    Gate::Cx(..) => gates.push(Gate::Cx(control, target)),
                    // a semantic swap exchanges the states in place; the
                    // layout is untouched, unlike routing swaps
                    _ => gates.push(Gate::Swap(control, target)),
                }
            }
        }
    }

    let gates = peephole_cancel(map.num_vertices(), gates);
    let measured = circuit
        .measured()
        .iter()
        .map(|&q| current.physical(q))
        .collect();
    let routed = Circuit::physical(
        map.num_vertices(),
        circuit.registers().copied(),
        measured,
        gates,
    )
    .map_err(|e| RouterError::BadLayout(e.to_string()))?;
    Ok(RoutedCircuit {
        circuit: routed,
        initial_layout: layout.clone(),
        final_layout: current,
        seed,
        swap_count,
    })
}

/// Cancel adjacent identical CX pairs (no intervening gate on either qubit).
/// Stands in, together with the router, for a vendor optimization pipeline.
fn peephole_cancel(width: usize, mut gates: Vec<Gate>) -> Vec<Gate> {
    loop {
        let mut last_on: Vec<Option<usize>> = vec![None; width];
        let mut keep = vec![true; gates.len()];
        let mut cancelled = false;
        for idx in 0..gates.len() {
            let gate = gates[idx];
            let (a, b) = gate.qubits();
            if let (Gate::Cx(..), Some(b)) = (gate, b) {
                if let (Some(i), Some(j)) = (last_on[a], last_on[b]) {
                    if i == j && keep[i] && gates[i] == gate {
                        keep[i] = false;
                        keep[idx] = false;
                        cancelled = true;
                        last_on[a] = None;
                        last_on[b] = None;
                        continue;
                    }
                }
            }
            last_on[a] = Some(idx);
            if let Some(b) = b {
                last_on[b] = Some(idx);
            }
        }
        if !cancelled {
            return gates;
        }
        gates = gates
            .iter()
            .zip(keep)
            .filter_map(|(&g, k)| k.then_some(g))
            .collect();
    }
}

/// True iff the routed circuit reproduces the original's exact outcome
/// distribution (per-outcome difference at most 1e-10), with the
/// final-layout permutation undone by the routed circuit's measured-qubit
/// list.
pub fn verify_equivalence(original: &Circuit, routed: &RoutedCircuit) -> Result<bool, SimError> {
    let reference = run_exact(original)?;
    let actual = run_exact(&routed.circuit)?;
    let mut keys: Vec<u128> = reference.iter().map(|(k, _)| k).collect();
    keys.extend(actual.iter().map(|(k, _)| k));
    keys.sort_unstable();
    keys.dedup();
    Ok(keys
        .into_iter()
        .all(|k| (reference.probability(k) - actual.probability(k)).abs() <= 1e-10))
}

#[derive(Debug, Error)]
pub enum RouterError {
    #[error("circuit width {width} exceeds coupling map size {vertices}")]
    WidthExceedsMap { width: usize, vertices: usize },
    #[error("invalid layout: {0}")]
    BadLayout(String),
}
