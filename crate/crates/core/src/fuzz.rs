//! Random on-line presentations colored by First-Fit.
//!
//! Placement legality comes from the game rules. Colors are plain integers
//! here, since First-Fit may need up to `2 * omega - 1` of them and the game
//! palette has seven.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coord::Coord;
use crate::game::check_placement;

const GRID: u32 = 16;

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub omega: usize,
    pub trials: usize,
    pub max_colors: usize,
    pub max_clique: usize,
    pub max_intervals: usize,
    /// Trials where First-Fit exceeded `2 * omega - 1` colors.
    pub violations: usize,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A First-Fit colored presentation.
#[derive(Debug, Clone, Default)]
pub struct FirstFitGame {
    pub spans: Vec<(Coord, Coord)>,
    pub colors: Vec<usize>,
}

impl FirstFitGame {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().map(|c| c + 1).max().unwrap_or(0)
    }

    pub fn clique_size(&self) -> usize {
        let mut events: Vec<(Coord, u8)> = Vec::new();
        for &(lo, hi) in &self.spans {
            events.push((lo, 0));
            events.push((hi, 1));
        }
        events.sort();
        let (mut cur, mut best) = (0usize, 0usize);
        for (_, kind) in events {
            if kind == 0 {
                cur += 1;
                best = best.max(cur);
            } else {
                cur -= 1;
            }
        }
        best
    }
}

/// Up to `target` accepted intervals in random on-line order; rejected
/// proposals are skipped.
pub fn random_first_fit_game(omega: usize, target: usize, rng: &mut impl Rng) -> FirstFitGame {
    let mut g = FirstFitGame::default();
    let top = 1u128 << GRID;
    let mut attempts = 0;
    while g.spans.len() < target && attempts < target * 40 {
        attempts += 1;
        let len = rng.gen_range(top / 64..top / 4);
        let lo = rng.gen_range(1..top - len);
        let lo_c = Coord::new(lo, GRID).expect("on grid");
        let hi_c = Coord::new(lo + len, GRID).expect("on grid");
        if check_placement(&g.spans, (Coord::ZERO, Coord::ONE), omega, lo_c, hi_c).is_err() {
            continue;
        }
        let taken: Vec<usize> = g
            .spans
            .iter()
            .zip(&g.colors)
            .filter(|((a, b), _)| *a <= hi_c && lo_c <= *b)
            .map(|(_, &c)| c)
            .collect();
        let color = (0..).find(|c| !taken.contains(c)).expect("unbounded palette");
        g.spans.push((lo_c, hi_c));
        g.colors.push(color);
    }
    g
}

pub fn fuzz_first_fit_bound(omega: usize, n_trials: usize, seed: u64) -> FuzzReport {
    assert!(omega >= 1, "omega must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = FuzzReport {
        omega,
        trials: n_trials,
        max_colors: 0,
        max_clique: 0,
        max_intervals: 0,
        violations: 0,
    };
    for _ in 0..n_trials {
        let target = rng.gen_range(4..=64);
        let g = random_first_fit_game(omega, target, &mut rng);
        let colors = g.num_colors();
        rep.max_colors = rep.max_colors.max(colors);
        rep.max_clique = rep.max_clique.max(g.clique_size());
        rep.max_intervals = rep.max_intervals.max(g.spans.len());
        if colors > 2 * omega - 1 {
            rep.violations += 1;
        }
    }
    rep
}
