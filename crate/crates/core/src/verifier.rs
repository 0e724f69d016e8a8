//! Exhaustive check that the strategy forces its outcome against every
//! adversary.
//!
//! The tree is explored by replay: a run follows a prefix of choice indices
//! and stops at the first decision beyond it, reporting the canonical
//! options there. Each option is then explored with the prefix extended by
//! one. Builder is deterministic, so the prefix alone fixes the position.
//!
//! Options at each decision are `canonical_moves`: used legal colors plus
//! one unused color. Unused colors are interchangeable under color
//! permutation, so this covers every adversary up to relabeling.

use std::collections::BTreeMap;
use std::time::Instant;

use dashmap::DashSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::adversary::{canonical_moves, Adversary, AdversaryError, Decision};
use crate::color::Color;
use crate::game::{GameState, DEFAULT_OMEGA};
use crate::session::{Halt, Session};
use crate::strategy::{run, Routine, Step};
use crate::trace::{replay, Trace};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub omega: usize,
    pub routine: Routine,
    /// Starting position; the empty game when `None`.
    pub start: Option<Trace>,
    pub memo: bool,
    /// Worker threads; 1 explores sequentially.
    pub parallel: usize,
    /// Keep the traces of the first this many leaves.
    pub keep_leaf_traces: usize,
    /// Keep at most this many failure traces.
    pub keep_failures: usize,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            omega: DEFAULT_OMEGA,
            routine: Routine::Master,
            start: None,
            memo: false,
            parallel: 1,
            keep_leaf_traces: 0,
            keep_failures: 16,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub error: String,
    pub trace: Trace,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub routine: String,
    pub omega: usize,
    pub total_leaves: u64,
    pub memo_hits: u64,
    /// Builder moves made by the strategy, not counting the start position.
    pub max_depth: usize,
    pub max_intervals: usize,
    pub max_clique_seen: usize,
    pub max_colors_seen: usize,
    pub containment_violations: u64,
    pub strategy_errors: u64,
    /// Every leaf ended in one of the routine's outcomes; for the master
    /// strategy that means all seven colors.
    pub all_leaves_force_7: bool,
    pub outcomes: BTreeMap<String, u64>,
    /// Leaves passing through each routine-to-routine step.
    pub transitions: BTreeMap<String, u64>,
    pub duration_ms: u128,
    #[serde(skip)]
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub leaf_traces: Vec<Trace>,
}

impl VerificationReport {
    fn empty() -> VerificationReport {
        VerificationReport {
            all_leaves_force_7: true,
            ..VerificationReport::default()
        }
    }

    fn merge(mut self, o: VerificationReport, opts: &VerifyOptions) -> VerificationReport {
        self.total_leaves += o.total_leaves;
        self.memo_hits += o.memo_hits;
        self.max_depth = self.max_depth.max(o.max_depth);
        self.max_intervals = self.max_intervals.max(o.max_intervals);
        self.max_clique_seen = self.max_clique_seen.max(o.max_clique_seen);
        self.max_colors_seen = self.max_colors_seen.max(o.max_colors_seen);
        self.containment_violations += o.containment_violations;
        self.strategy_errors += o.strategy_errors;
        self.all_leaves_force_7 &= o.all_leaves_force_7;
        for (k, v) in o.outcomes {
            *self.outcomes.entry(k).or_default() += v;
        }
        for (k, v) in o.transitions {
            *self.transitions.entry(k).or_default() += v;
        }
        self.failures.extend(o.failures);
        self.failures.truncate(opts.keep_failures);
        self.leaf_traces.extend(o.leaf_traces);
        self.leaf_traces.truncate(opts.keep_leaf_traces);
        self
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "routine {} (omega {}): {} leaves, {} memo hits, max depth {}, max intervals {}, \
             max clique {}, max colors {}, {} ms\n",
            self.routine,
            self.omega,
            self.total_leaves,
            self.memo_hits,
            self.max_depth,
            self.max_intervals,
            self.max_clique_seen,
            self.max_colors_seen,
            self.duration_ms
        );
        for (k, v) in &self.outcomes {
            s += &format!("  outcome {k}: {v}\n");
        }
        for (k, v) in &self.transitions {
            s += &format!("  {k}: {v}\n");
        }
        s += &format!(
            "containment violations {}, strategy errors {}, all leaves forced: {}",
            self.containment_violations, self.strategy_errors, self.all_leaves_force_7
        );
        s
    }
}

/// Memo key: the view plus any interval spanning it, relabeled by first
/// occurrence, with the used-color count and the strategy position.
type MemoKey = (Vec<u8>, usize, String);

fn memo_key(d: &Decision<'_>) -> MemoKey {
    let base = d.pending.base();
    let (l, r) = base.walls();
    let mut spanning: Vec<_> = base
        .intervals()
        .iter()
        .filter(|iv| iv.lo < l && iv.hi > r)
        .collect();
    spanning.sort_by_key(|iv| iv.lo);
    let cols = d
        .view
        .columns
        .iter()
        .map(|c| (c.side.bit(), c.color))
        .chain(spanning.iter().map(|iv| (2, iv.color)));
    let mut map = [u8::MAX; 7];
    let mut next = 0u8;
    let mut key = Vec::new();
    for (side, color) in cols {
        let slot = &mut map[color.index()];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        key.push(side * 8 + *slot);
    }
    (key, base.used_colors().len(), d.position.to_string())
}

/// Follows a prefix of option indices, then stops at the next decision.
struct Explorer {
    prefix: Vec<u8>,
    next: usize,
    frontier: Option<(Vec<Color>, Option<MemoKey>)>,
    memo: bool,
}

impl Adversary for Explorer {
    fn name(&self) -> String {
        "canonical".to_string()
    }

    fn choose(&mut self, d: &Decision<'_>) -> Result<Color, AdversaryError> {
        let options = canonical_moves(d.pending);
        if let Some(&i) = self.prefix.get(self.next) {
            self.next += 1;
            return Ok(options[i as usize]);
        }
        let key = self.memo.then(|| memo_key(d));
        self.frontier = Some((options, key));
        Err(AdversaryError::Exhausted(self.next))
    }
}

#[allow(clippy::large_enum_variant)]
enum Node {
    Leaf(Result<Step, Halt>, GameState, Trace, Vec<&'static str>),
    Branch(Vec<Color>, Option<MemoKey>),
}

fn run_prefix(opts: &VerifyOptions, start: &(GameState, Trace), prefix: &[u8]) -> Node {
    let mut explorer = Explorer {
        prefix: prefix.to_vec(),
        next: 0,
        frontier: None,
        memo: opts.memo,
    };
    let result = {
        let mut s = if opts.start.is_some() {
            Session::resume(start.0.clone(), start.1.clone(), &mut explorer)
        } else {
            Session::new(opts.omega, &mut explorer)
        };
        let r = run(&mut s, opts.routine);
        let (state, trace, path) = s.into_parts();
        (r, state, trace, path)
    };
    match (result.0, explorer.frontier) {
        (Err(Halt::Adversary(AdversaryError::Exhausted(_))), Some((options, key))) => {
            Node::Branch(options, key)
        }
        (r, _) => Node::Leaf(r, result.1, result.2, result.3),
    }
}

/// Independent pairwise check of the geometric rules and proper coloring.
fn violations(state: &GameState) -> u64 {
    let ivs = state.intervals();
    let mut bad = 0;
    for (i, a) in ivs.iter().enumerate() {
        for b in &ivs[i + 1..] {
            let nested = (a.lo < b.lo && b.hi < a.hi) || (b.lo < a.lo && a.hi < b.hi);
            let shared = [a.lo, a.hi].iter().any(|p| *p == b.lo || *p == b.hi);
            let clash = a.color == b.color && a.lo <= b.hi && b.lo <= a.hi;
            if nested || shared || clash {
                bad += 1;
            }
        }
    }
    bad
}

fn leaf_report(
    opts: &VerifyOptions,
    start_moves: usize,
    r: Result<Step, Halt>,
    state: GameState,
    trace: Trace,
    path: Vec<&'static str>,
) -> VerificationReport {
    let mut rep = VerificationReport::empty();
    rep.total_leaves = 1;
    rep.max_depth = trace.moves.len() - start_moves;
    rep.max_intervals = state.intervals().len();
    rep.max_clique_seen = state.clique_size();
    rep.max_colors_seen = state.used_colors().len();
    rep.containment_violations = violations(&state);

    let mut error = None;
    match &r {
        Ok(step) => {
            let name = step.name();
            *rep.outcomes.entry(name.to_string()).or_default() += 1;
            if !opts.routine.outcomes().contains(&name) {
                error = Some(format!("ended in {name}"));
            } else if matches!(step, Step::Game) && !state.is_game() {
                error = Some("reported game without seven colors".to_string());
            }
        }
        Err(h) => {
            rep.strategy_errors = 1;
            error = Some(h.to_string());
        }
    }
    if rep.containment_violations > 0 && error.is_none() {
        error = Some("rule violation in final state".to_string());
    }
    if rep.max_clique_seen > opts.omega && error.is_none() {
        error = Some(format!("clique of size {}", rep.max_clique_seen));
    }

    let mut hops: Vec<&str> = path.clone();
    if let Ok(step) = &r {
        if matches!(step, Step::Game) {
            hops.push("game");
        }
    }
    for w in hops.windows(2) {
        *rep.transitions.entry(format!("{}->{}", w[0], w[1])).or_default() += 1;
    }

    if let Some(error) = error {
        rep.all_leaves_force_7 = false;
        if opts.keep_failures > 0 {
            rep.failures.push(Failure { error, trace: trace.clone() });
        }
    }
    if opts.keep_leaf_traces > 0 {
        rep.leaf_traces.push(trace);
    }
    rep
}

struct Ctx<'o> {
    opts: &'o VerifyOptions,
    start: (GameState, Trace),
    memo: DashSet<MemoKey>,
    split_depth: usize,
}

fn explore(ctx: &Ctx<'_>, prefix: Vec<u8>) -> VerificationReport {
    let opts = ctx.opts;
    match run_prefix(opts, &ctx.start, &prefix) {
        Node::Leaf(r, state, trace, path) => {
            leaf_report(opts, ctx.start.1.moves.len(), r, state, trace, path)
        }
        Node::Branch(options, key) => {
            if let Some(k) = &key {
                if ctx.memo.contains(k) {
                    let mut rep = VerificationReport::empty();
                    rep.memo_hits = 1;
                    return rep;
                }
            }
            let child = |i: usize| {
                let mut p = prefix.clone();
                p.push(i as u8);
                explore(ctx, p)
            };
            let reports: Vec<VerificationReport> =
                if opts.parallel > 1 && prefix.len() < ctx.split_depth {
                    (0..options.len()).into_par_iter().map(child).collect()
                } else {
                    (0..options.len()).map(child).collect()
                };
            let rep = reports
                .into_iter()
                .fold(VerificationReport::empty(), |a, b| a.merge(b, opts));
            if let Some(k) = key {
                ctx.memo.insert(k);
            }
            rep
        }
    }
}

/// Explores every canonical adversary against `opts.routine`.
pub fn verify(opts: &VerifyOptions) -> VerificationReport {
    let started = Instant::now();
    let start = match &opts.start {
        Some(t) => (replay(t).expect("start trace replays"), t.clone()),
        None => (GameState::new(opts.omega), Trace::new(opts.omega)),
    };
    let ctx = Ctx {
        opts,
        start,
        memo: DashSet::new(),
        split_depth: 6,
    };
    let mut rep = if opts.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .expect("thread pool");
        pool.install(|| explore(&ctx, Vec::new()))
    } else {
        explore(&ctx, Vec::new())
    };
    rep.routine = opts.routine.to_string();
    rep.omega = opts.omega;
    rep.duration_ms = started.elapsed().as_millis();
    rep
}

/// The master strategy from the empty game at clique bound `omega`.
pub fn verify_forced_win(omega: usize, memo: bool, parallel: usize) -> VerificationReport {
    verify(&VerifyOptions {
        omega,
        memo,
        parallel,
        ..VerifyOptions::default()
    })
}
