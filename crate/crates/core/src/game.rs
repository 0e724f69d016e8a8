//! Game mechanics: presenting intervals, coloring them, moving the walls.
//!
//! States are values. `present`, `assign` and `set_walls` return new states
//! and never touch their inputs.

use serde::Serialize;
use thiserror::Error;

use crate::color::{Color, ColorSet};
use crate::coord::Coord;

pub const DEFAULT_OMEGA: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PlacedInterval {
    pub lo: Coord,
    pub hi: Coord,
    pub color: Color,
    /// 1-based position in the move history.
    pub move_index: usize,
}

impl PlacedInterval {
    /// Closed-interval intersection.
    pub fn meets(&self, lo: Coord, hi: Coord) -> bool {
        self.lo <= hi && lo <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("interval endpoints out of order: {0} >= {1}")]
    InvalidOrder(Coord, Coord),
    #[error("[{lo}, {hi}] is not strictly inside the walls ({left}, {right})")]
    Wall {
        lo: Coord,
        hi: Coord,
        left: Coord,
        right: Coord,
    },
    #[error("endpoint {0} is already used by move {1}")]
    DuplicateEndpoint(Coord, usize),
    #[error("candidate and move {0} are nested")]
    Containment(usize),
    #[error("candidate would create a clique of size {0}")]
    Clique(usize),
    #[error("color {color} is used by intersecting move {conflict}")]
    ColorConflict { color: Color, conflict: usize },
    #[error("walls ({l}, {r}) do not nest inside ({left}, {right})")]
    WallOrder {
        l: Coord,
        r: Coord,
        left: Coord,
        right: Coord,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    intervals: Vec<PlacedInterval>,
    wall_left: Coord,
    wall_right: Coord,
    omega: usize,
    used: ColorSet,
}

impl GameState {
    /// Empty game on `[0, 1]` with clique bound `omega`.
    pub fn new(omega: usize) -> GameState {
        assert!(omega >= 1, "omega must be positive");
        GameState {
            intervals: Vec::new(),
            wall_left: Coord::ZERO,
            wall_right: Coord::ONE,
            omega,
            used: ColorSet::EMPTY,
        }
    }

    pub fn intervals(&self) -> &[PlacedInterval] {
        &self.intervals
    }

    pub fn walls(&self) -> (Coord, Coord) {
        (self.wall_left, self.wall_right)
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn used_colors(&self) -> ColorSet {
        self.used
    }

    pub fn present(&self, lo: Coord, hi: Coord) -> Result<PendingMove, GameError> {
        let spans: Vec<(Coord, Coord)> = self.intervals.iter().map(|iv| (iv.lo, iv.hi)).collect();
        check_placement(&spans, self.walls(), self.omega, lo, hi)?;
        Ok(PendingMove {
            base: self.clone(),
            lo,
            hi,
        })
    }

    pub fn set_walls(&self, l: Coord, r: Coord) -> Result<GameState, GameError> {
        if l < self.wall_left || l >= r || r > self.wall_right {
            return Err(GameError::WallOrder {
                l,
                r,
                left: self.wall_left,
                right: self.wall_right,
            });
        }
        let mut next = self.clone();
        next.wall_left = l;
        next.wall_right = r;
        Ok(next)
    }

    /// Maximum number of intervals covering a single point.
    pub fn clique_size(&self) -> usize {
        clique_of(self.intervals.iter().map(|iv| (iv.lo, iv.hi)))
    }

    /// True when all seven colors appear.
    pub fn is_game(&self) -> bool {
        self.used == ColorSet::FULL
    }
}

/// Geometric legality of `[lo, hi]` against uncolored `spans`, given in
/// move order. Errors name moves by 1-based index into `spans`.
pub fn check_placement(
    spans: &[(Coord, Coord)],
    walls: (Coord, Coord),
    omega: usize,
    lo: Coord,
    hi: Coord,
) -> Result<(), GameError> {
    if lo >= hi {
        return Err(GameError::InvalidOrder(lo, hi));
    }
    let (left, right) = walls;
    if lo <= left || hi >= right {
        return Err(GameError::Wall { lo, hi, left, right });
    }
    for (i, &(a, b)) in spans.iter().enumerate() {
        for p in [lo, hi] {
            if p == a || p == b {
                return Err(GameError::DuplicateEndpoint(p, i + 1));
            }
        }
        if (a < lo && hi < b) || (lo < a && b < hi) {
            return Err(GameError::Containment(i + 1));
        }
    }
    let clique = clique_of(spans.iter().copied().chain(std::iter::once((lo, hi))));
    if clique > omega {
        return Err(GameError::Clique(clique));
    }
    Ok(())
}

fn clique_of(intervals: impl Iterator<Item = (Coord, Coord)>) -> usize {
    // Closed intervals: at a shared coordinate, openings sort before closings.
    let mut events: Vec<(Coord, u8)> = Vec::new();
    for (lo, hi) in intervals {
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

/// A presented interval awaiting its color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendingMove {
    base: GameState,
    lo: Coord,
    hi: Coord,
}

impl PendingMove {
    pub fn base(&self) -> &GameState {
        &self.base
    }

    pub fn candidate(&self) -> (Coord, Coord) {
        (self.lo, self.hi)
    }

    /// Colors of intervals meeting the candidate.
    pub fn neighbor_colors(&self) -> ColorSet {
        self.base
            .intervals
            .iter()
            .filter(|iv| iv.meets(self.lo, self.hi))
            .map(|iv| iv.color)
            .collect()
    }

    pub fn legal_colors(&self) -> ColorSet {
        self.neighbor_colors().complement()
    }

    pub fn assign(&self, color: Color) -> Result<GameState, GameError> {
        if let Some(iv) = self
            .base
            .intervals
            .iter()
            .find(|iv| iv.color == color && iv.meets(self.lo, self.hi))
        {
            return Err(GameError::ColorConflict {
                color,
                conflict: iv.move_index,
            });
        }
        let mut next = self.base.clone();
        next.intervals.push(PlacedInterval {
            lo: self.lo,
            hi: self.hi,
            color,
            move_index: self.base.intervals.len() + 1,
        });
        next.used = next.used.with(color);
        Ok(next)
    }
}
