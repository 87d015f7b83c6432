//! Deterministic enumeration engine. A scan walks every circuit of a given
//! size in lexicographic order — per slot, gates in set order crossed with
//! ordered distinct-qubit tuples in lexicographic order — carrying the
//! circuit prefix's action on a set of tracked input columns so each new
//! gate costs one sparse matrix application instead of a full re-simulation.
//!
//! Work is partitioned into blocks by the first slot's choice. Blocks are
//! pure and merge in block order, so sequential and parallel execution
//! produce identical results: a detection hit is always the lexicographically
//! first circuit reaching the detection threshold, and the reported best is
//! always the maximum score with ties broken by enumeration order.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::circuit::{Op, QuantumCircuit};
use crate::error::{Error, Result};
use crate::exec::{map_blocks, ExecMode};
use crate::gates::{qubit_tuples, GateSet};
use crate::linalg::C64;
use crate::sim::{apply_gate, basis_state};

/// One slot choice: a gate index paired with an ordered qubit tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub gate: usize,
    pub qubits: Vec<usize>,
}

/// The canonical per-slot choice list: gates in set order, each crossed with
/// its ordered distinct-qubit tuples in lexicographic order.
pub fn placement_list(gs: &GateSet, width: usize) -> Vec<Placement> {
    let mut out = Vec::new();
    for (g, def) in gs.gates().iter().enumerate() {
        for qubits in qubit_tuples(def.arity, width) {
            out.push(Placement { gate: g, qubits });
        }
    }
    out
}

/// Number of circuits with exactly `s` gates: (per-slot choices)^s, saturating.
pub fn count_circuits(gs: &GateSet, width: usize, s: usize) -> u128 {
    let p = gs.placements_on(width);
    let mut total: u128 = 1;
    for _ in 0..s {
        total = total.saturating_mul(p);
    }
    total
}

/// Number of circuits with at most `s` gates: sum of count_circuits over
/// sizes 0..=s, saturating.
pub fn enumeration_total(gs: &GateSet, width: usize, s: usize) -> u128 {
    let p = gs.placements_on(width);
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for k in 0..=s {
        total = total.saturating_add(pow);
        if k < s {
            pow = pow.saturating_mul(p);
        }
    }
    total
}

/// Errors out when enumerating all circuits of size up to `s` would exceed
/// the budget.
pub fn check_budget(gs: &GateSet, width: usize, s: usize, budget: u128) -> Result<()> {
    let count = enumeration_total(gs, width, s);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    Ok(())
}

/// Materializes every circuit with exactly `s` gates, in enumeration order.
pub fn enumerate_circuits(
    gs: &GateSet,
    n: usize,
    t: usize,
    s: usize,
    budget: u128,
) -> Result<Vec<QuantumCircuit>> {
    let width = n + t;
    let count = count_circuits(gs, width, s);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let placements = placement_list(gs, width);
    let mut out = Vec::with_capacity(count as usize);
    let mut path = vec![0usize; s];
    loop {
        out.push(circuit_from_path(n, t, None, &placements, &path));
        // Odometer increment on the most significant trailing position.
        let mut d = s;
        loop {
            if d == 0 {
                return Ok(out);
            }
            d -= 1;
            path[d] += 1;
            if path[d] < placements.len() {
                break;
            }
            path[d] = 0;
        }
        if s == 0 {
            return Ok(out);
        }
    }
}

fn circuit_from_path(
    n: usize,
    t: usize,
    output_qubit: Option<usize>,
    placements: &[Placement],
    path: &[usize],
) -> QuantumCircuit {
    QuantumCircuit {
        n,
        t,
        ops: path
            .iter()
            .map(|&c| Op {
                gate: placements[c].gate,
                qubits: placements[c].qubits.clone(),
            })
            .collect(),
        output_qubit,
    }
}

/// A leaf score: the scalar objective plus, for output-free scans, the
/// qubit that achieved it.
#[derive(Clone, Copy, Debug)]
pub struct Scored {
    pub value: f64,
    pub out_qubit: Option<usize>,
}

/// Objective evaluated at every enumerated circuit.
///
/// `score(cols, bar)` must return the exact score whenever the true score is
/// at least `bar`; when the true score is below `bar` it may stop early and
/// return any value in [true score, bar). Scans pass `bar` no higher than
/// both the detection threshold and the current block best, which keeps
/// detection and best-tracking exact.
pub trait ScanKernel: Sync {
    /// Basis indices (on the full width-qubit register) whose columns the
    /// scan tracks through every circuit prefix.
    fn tracked_inputs(&self) -> Vec<usize>;
    /// Score of a circuit from its action on the tracked columns.
    fn score(&self, cols: &[Vec<C64>], bar: f64) -> Scored;
    /// Output qubit plus the input qubits the output must connect to, when
    /// a disconnected circuit provably scores at most 1/2 (enables cone
    /// pruning for detection thresholds above 1/2).
    fn cone_requirements(&self) -> Option<(usize, Vec<usize>)>;
}

/// Scan configuration shared by the decision and search oracles.
pub struct ScanConfig {
    pub exec: ExecMode,
    /// Detection threshold: the scan short-circuits at the first circuit
    /// (in enumeration order) scoring at least `alpha - tol`.
    pub alpha: f64,
    pub tol: f64,
    /// Enable connected-component pruning when the kernel offers cone
    /// requirements and `alpha` exceeds 1/2.
    pub cone_prune: bool,
    /// Skip circuits at the top scanned size that leave some ancilla qubit
    /// untouched (heuristic; sound only in special regimes, default off).
    pub untouched_ancilla_prune: bool,
}

/// Outcome of an ascending scan over sizes 0..=s.
pub struct ScanOutcome {
    /// First circuit (by size, then enumeration order) scoring >= alpha-tol.
    pub hit: Option<(QuantumCircuit, f64, usize)>,
    /// Highest score seen among evaluated circuits, with the earliest
    /// (size, enumeration order) achiever; None when nothing was evaluated.
    pub best: Option<(f64, QuantumCircuit, usize)>,
    /// Leaves actually scored, deterministic for fixed inputs: pruned
    /// subtrees are excluded and, on a hit, only blocks at or before the
    /// hit block count.
    pub evaluated: u128,
}

struct ConePrune {
    out: usize,
    required: Vec<usize>,
    /// Components one gate can eliminate: max gate arity - 1.
    max_merge: usize,
}

/// Tiny union-find over at most 16 wires with clone-by-copy semantics.
#[derive(Clone, Copy)]
struct MiniUf {
    parent: [u8; 16],
}

impl MiniUf {
    fn new(width: usize) -> MiniUf {
        let mut parent = [0u8; 16];
        for (i, p) in parent.iter_mut().enumerate().take(width) {
            *p = i as u8;
        }
        MiniUf { parent }
    }

    fn find(&mut self, mut i: u8) -> u8 {
        while self.parent[i as usize] != i {
            let gp = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = gp;
            i = gp;
        }
        i
    }

    fn union(&mut self, a: u8, b: u8) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }

    /// Number of distinct components among {out} ∪ required.
    fn comps_over(&mut self, out: usize, required: &[usize]) -> usize {
        let mut roots: u16 = 1 << self.find(out as u8);
        for &q in required {
            roots |= 1 << self.find(q as u8);
        }
        roots.count_ones() as usize
    }
}

struct BlockOut {
    hit: Option<(Vec<usize>, Scored)>,
    best: Option<(f64, Vec<usize>, Option<usize>)>,
    evaluated: u128,
}

struct BlockScan<'a, K: ScanKernel> {
    kern: &'a K,
    placements: &'a [Placement],
    width: usize,
    s: usize,
    alpha: f64,
    tol: f64,
    cone: Option<&'a ConePrune>,
    /// Ancilla qubit range that must be touched at the top size (opt-in).
    require_touched: Option<std::ops::Range<usize>>,
    winner: &'a AtomicUsize,
    block: usize,
    gs: &'a GateSet,
    // Per-depth workspaces: columns after the op at that depth, union-find
    // state, and touched-qubit mask.
    cols: Vec<Vec<Vec<C64>>>,
    ufs: Vec<MiniUf>,
    touched: Vec<u32>,
    path: Vec<usize>,
    out: BlockOut,
}

enum Flow {
    Continue,
    Stop,
}

impl<'a, K: ScanKernel> BlockScan<'a, K> {
    fn run(mut self, base_cols: &[Vec<C64>]) -> BlockOut {
        if self.winner.load(Ordering::Relaxed) < self.block {
            return self.out;
        }
        self.path[0] = self.block;
        self.enter_depth(0, base_cols, MiniUf::new(self.width), 0);
        self.out
    }

    /// Applies the op chosen at `depth` (already stored in self.path) to the
    /// parent state and either scores the leaf or recurses.
    fn enter_depth(
        &mut self,
        depth: usize,
        parent_cols: &[Vec<C64>],
        parent_uf: MiniUf,
        parent_touched: u32,
    ) -> Flow {
        let choice = self.path[depth];
        let placement = &self.placements[choice];
        // Copy parent columns into this depth's workspace and apply the gate.
        let matrix = &self.gs.gate(placement.gate).matrix;
        {
            let ws = &mut self.cols[depth];
            for (dst, src) in ws.iter_mut().zip(parent_cols.iter()) {
                dst.copy_from_slice(src);
                apply_gate(dst, self.width, matrix, &placement.qubits);
            }
        }
        let mut uf = parent_uf;
        let mut touched = parent_touched;
        for w in placement.qubits.windows(2) {
            uf.union(w[0] as u8, w[1] as u8);
        }
        for &q in &placement.qubits {
            touched |= 1 << q;
        }
        if let Some(cone) = self.cone {
            let remaining = self.s - depth - 1;
            if uf.comps_over(cone.out, &cone.required) - 1 > remaining * cone.max_merge {
                return Flow::Continue;
            }
        }
        self.ufs[depth] = uf;
        self.touched[depth] = touched;

        if depth + 1 == self.s {
            return self.leaf(depth);
        }
        for next in 0..self.placements.len() {
            if self.winner.load(Ordering::Relaxed) < self.block {
                return Flow::Stop;
            }
            self.path[depth + 1] = next;
            let uf = self.ufs[depth];
            let tch = self.touched[depth];
            if let Flow::Stop = self.enter_child(depth + 1, uf, tch) {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Recurses into `depth` using cols[depth - 1] as the parent buffer,
    /// moving it out temporarily so the child level can be written.
    fn enter_child(&mut self, depth: usize, uf: MiniUf, touched: u32) -> Flow {
        let parent = std::mem::take(&mut self.cols[depth - 1]);
        let flow = self.enter_depth(depth, &parent, uf, touched);
        self.cols[depth - 1] = parent;
        flow
    }

    fn leaf(&mut self, depth: usize) -> Flow {
        if let Some(range) = &self.require_touched {
            let touched = self.touched[depth];
            if range.clone().any(|q| touched & (1 << q) == 0) {
                return Flow::Continue;
            }
        }
        let block_best = self.out.best.as_ref().map_or(f64::NEG_INFINITY, |b| b.0);
        let bar = (self.alpha - self.tol).min(block_best);
        let scored = self.kern.score(&self.cols[depth], bar);
        self.out.evaluated += 1;
        if scored.value >= self.alpha - self.tol {
            self.out.hit = Some((self.path.clone(), scored));
            self.winner.fetch_min(self.block, Ordering::Relaxed);
            return Flow::Stop;
        }
        if scored.value > block_best {
            self.out.best = Some((scored.value, self.path.clone(), scored.out_qubit));
        }
        Flow::Continue
    }
}

/// Scans sizes 0..=s_upper in ascending order, stopping at the first size
/// containing a circuit that scores at least `alpha - tol`; the returned hit
/// is the enumeration-order first such circuit at that size. When no size
/// hits, `best` reports the maximum score over everything evaluated.
pub fn scan_ascending<K: ScanKernel>(
    kern: &K,
    gs: &GateSet,
    n: usize,
    t: usize,
    s_upper: usize,
    cfg: &ScanConfig,
) -> ScanOutcome {
    let width = n + t;
    let placements = placement_list(gs, width);
    let base_cols: Vec<Vec<C64>> = kern
        .tracked_inputs()
        .iter()
        .map(|&i| basis_state(width, i))
        .collect();
    let cone_data = if cfg.cone_prune && cfg.alpha > 0.5 + cfg.tol {
        kern.cone_requirements().map(|(out, required)| ConePrune {
            out,
            required,
            max_merge: gs.gates().iter().map(|g| g.arity).max().unwrap_or(1) - 1,
        })
    } else {
        None
    };

    let mut outcome = ScanOutcome {
        hit: None,
        best: None,
        evaluated: 0,
    };

    for size in 0..=s_upper {
        if size == 0 {
            let scored = kern.score(&base_cols, f64::NEG_INFINITY);
            outcome.evaluated += 1;
            let circuit = |out: Option<usize>| circuit_from_path(n, t, out, &placements, &[]);
            if scored.value >= cfg.alpha - cfg.tol {
                outcome.hit = Some((circuit(scored.out_qubit), scored.value, 0));
                return outcome;
            }
            outcome.best = Some((scored.value, circuit(scored.out_qubit), 0));
            continue;
        }
        if placements.is_empty() {
            break;
        }
        let winner = AtomicUsize::new(usize::MAX);
        let require_touched = if cfg.untouched_ancilla_prune && t >= 1 && t <= s_upper && size == s_upper
        {
            Some(n..width)
        } else {
            None
        };
        let blocks = map_blocks(cfg.exec, placements.len(), |b| {
            let scan = BlockScan {
                kern,
                placements: &placements,
                width,
                s: size,
                alpha: cfg.alpha,
                tol: cfg.tol,
                cone: cone_data.as_ref(),
                require_touched: require_touched.clone(),
                winner: &winner,
                block: b,
                gs,
                cols: (0..size)
                    .map(|_| base_cols.iter().map(|c| vec![C64::new(0.0, 0.0); c.len()]).collect())
                    .collect(),
                ufs: vec![MiniUf::new(width); size],
                touched: vec![0; size],
                path: vec![0; size],
                out: BlockOut {
                    hit: None,
                    best: None,
                    evaluated: 0,
                },
            };
            scan.run(&base_cols)
        });

        // Deterministic merge in block order.
        let hit_block = blocks.iter().position(|b| b.hit.is_some());
        match hit_block {
            Some(hb) => {
                for b in blocks.iter().take(hb + 1) {
                    outcome.evaluated += b.evaluated;
                }
                let (path, scored) = blocks[hb].hit.as_ref().unwrap();
                let c = circuit_from_path(n, t, scored.out_qubit, &placements, path);
                outcome.hit = Some((c, scored.value, size));
                return outcome;
            }
            None => {
                for b in &blocks {
                    outcome.evaluated += b.evaluated;
                    if let Some((score, path, out)) = &b.best {
                        let better = outcome.best.as_ref().map_or(true, |cur| *score > cur.0);
                        if better {
                            let c = circuit_from_path(n, t, *out, &placements, path);
                            outcome.best = Some((*score, c, size));
                        }
                    }
                }
            }
        }
    }
    outcome
}

/// Folds an arbitrary accumulator over every circuit of exactly `s` gates:
/// per first-op block, `leaf` is called in enumeration order on the tracked
/// columns; block accumulators are merged in block order. No pruning and no
/// early exit, so the fold sees every circuit.
pub fn fold_exact_size<T: Send>(
    gs: &GateSet,
    n: usize,
    t: usize,
    s: usize,
    inputs: &[usize],
    exec: ExecMode,
    init: impl Fn() -> T + Sync,
    leaf: impl Fn(&mut T, &[Vec<C64>]) + Sync,
    merge: impl Fn(T, T) -> T,
) -> T {
    let width = n + t;
    let base_cols: Vec<Vec<C64>> = inputs.iter().map(|&i| basis_state(width, i)).collect();
    if s == 0 {
        let mut acc = init();
        leaf(&mut acc, &base_cols);
        return acc;
    }
    let placements = placement_list(gs, width);
    if placements.is_empty() {
        return init();
    }
    let blocks = map_blocks(exec, placements.len(), |b| {
        let mut acc = init();
        let mut levels: Vec<Vec<Vec<C64>>> = (0..s)
            .map(|_| {
                base_cols
                    .iter()
                    .map(|c| vec![C64::new(0.0, 0.0); c.len()])
                    .collect()
            })
            .collect();
        let mut path = vec![0usize; s];
        path[0] = b;
        fold_rec(
            gs, &placements, width, s, 0, &base_cols, &mut levels, &mut path, &mut acc, &leaf,
        );
        acc
    });
    blocks.into_iter().fold(init(), merge)
}

#[allow(clippy::too_many_arguments)]
fn fold_rec<T>(
    gs: &GateSet,
    placements: &[Placement],
    width: usize,
    s: usize,
    depth: usize,
    parent: &[Vec<C64>],
    levels: &mut [Vec<Vec<C64>>],
    path: &mut Vec<usize>,
    acc: &mut T,
    leaf: &impl Fn(&mut T, &[Vec<C64>]),
) {
    let placement = &placements[path[depth]];
    let matrix = &gs.gate(placement.gate).matrix;
    let (cur, rest) = levels.split_first_mut().unwrap();
    for (dst, src) in cur.iter_mut().zip(parent.iter()) {
        dst.copy_from_slice(src);
        apply_gate(dst, width, matrix, &placement.qubits);
    }
    if depth + 1 == s {
        leaf(acc, cur);
        return;
    }
    for next in 0..placements.len() {
        path[depth + 1] = next;
        fold_rec(gs, placements, width, s, depth + 1, cur, rest, path, acc, leaf);
    }
}
