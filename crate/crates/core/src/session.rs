//! A running game between Builder's strategy and one adversary.
//!
//! Strategy routines work in *view* coordinates. In the normal orientation
//! the view is the real line; when mirrored, view point `v` is real point
//! `1 - v`, so the view matrix is the dual of the real one. Routines written
//! once for a pattern therefore also serve its dual.
//!
//! Placements are addressed by gaps of the view matrix: gap `g` is the open
//! stretch just before column `g`, bounded by its neighbouring endpoints or
//! the walls.

use serde::Serialize;
use thiserror::Error;

use crate::adversary::{Adversary, AdversaryError, Decision};
use crate::color::{Color, ColorSet};
use crate::coord::{Coord, CoordError};
use crate::game::{GameError, GameState, PlacedInterval};
use crate::matrix::{endpoints, Column, Endpoint, StateMatrix};
use crate::pattern::{Pattern, PatternName, Sigma};
use crate::trace::{Trace, TraceMove, Walls};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Normal,
    Mirrored,
}

/// A strategy step the rules or the plan did not allow. Raised only by
/// transcription bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("at {position}, move {move_number}: {source}")]
    Game {
        position: String,
        move_number: usize,
        source: GameError,
    },
    #[error("at {position}: {source}")]
    Coord { position: String, source: CoordError },
    #[error("at {position}: expected {expected:?} in view {view:?}")]
    NoMatch {
        position: String,
        expected: Vec<PatternName>,
        view: StateMatrix,
    },
    #[error("at {position}: {detail}")]
    Unexpected { position: String, detail: String },
}

/// Why a strategy run stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Halt {
    /// All seven colors are in use.
    #[error("all seven colors used")]
    Won,
    #[error("adversary: {0}")]
    Adversary(AdversaryError),
    #[error("adversary answered {color} at move {move_number}: {source}")]
    IllegalColor {
        color: Color,
        move_number: usize,
        source: GameError,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// A pattern located in the current view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub pattern: PatternName,
    pub start: usize,
    pub len: usize,
    pub sigma: Sigma,
    /// Found in the dual of the view; flip orientation before use.
    pub dual: bool,
}

impl Binding {
    pub fn color(&self, var: char) -> Color {
        self.sigma.color(var)
    }
}

/// Outcome of one separation, in view coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationResult {
    /// Sorted left to right.
    pub placed: Vec<PlacedInterval>,
    /// Intervals `0..threshold_j` got colors in Y, the rest did not.
    pub threshold_j: usize,
}

impl SeparationResult {
    pub fn colors(&self) -> Vec<Color> {
        self.placed.iter().map(|iv| iv.color).collect()
    }
}

pub struct Session<'a> {
    state: GameState,
    adversary: &'a mut dyn Adversary,
    orientation: Orientation,
    trace: Trace,
    position: String,
    local_moves: usize,
    path: Vec<&'static str>,
}

impl<'a> Session<'a> {
    pub fn new(omega: usize, adversary: &'a mut dyn Adversary) -> Session<'a> {
        Session {
            state: GameState::new(omega),
            adversary,
            orientation: Orientation::Normal,
            trace: Trace::new(omega),
            position: String::new(),
            local_moves: 0,
            path: Vec::new(),
        }
    }

    /// Continues from a replayed trace.
    pub fn resume(
        state: GameState,
        trace: Trace,
        adversary: &'a mut dyn Adversary,
    ) -> Session<'a> {
        Session {
            state,
            adversary,
            orientation: Orientation::Normal,
            trace,
            position: String::new(),
            local_moves: 0,
            path: Vec::new(),
        }
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn into_parts(self) -> (GameState, Trace, Vec<&'static str>) {
        (self.state, self.trace, self.path)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Routines entered so far, in order.
    pub fn path(&self) -> &[&'static str] {
        &self.path
    }

    pub fn position(&self) -> &str {
        &self.position
    }

    pub fn won(&self) -> bool {
        self.state.is_game()
    }

    pub(crate) fn enter(&mut self, routine: &'static str) {
        self.path.push(routine);
        self.position = routine.to_string();
        self.local_moves = 0;
    }

    /// Refines the position label within the current routine.
    pub(crate) fn mark(&mut self, label: &str) {
        self.position.push('/');
        self.position.push_str(label);
    }

    pub fn flip(&mut self) {
        self.orientation = match self.orientation {
            Orientation::Normal => Orientation::Mirrored,
            Orientation::Mirrored => Orientation::Normal,
        };
    }

    /// Real interval behind view interval `[lo, hi]`.
    fn real_interval(&self, lo: Coord, hi: Coord) -> (Coord, Coord) {
        match self.orientation {
            Orientation::Normal => (lo, hi),
            Orientation::Mirrored => (hi.reflect(), lo.reflect()),
        }
    }

    pub fn view_endpoints(&self) -> Vec<Endpoint> {
        let mut eps = endpoints(&self.state);
        if self.orientation == Orientation::Mirrored {
            eps.reverse();
            for e in &mut eps {
                e.at = e.at.reflect();
                e.side = e.side.flip();
            }
        }
        eps
    }

    pub fn view_matrix(&self) -> StateMatrix {
        StateMatrix::new(
            self.view_endpoints()
                .iter()
                .map(|e| Column { side: e.side, color: e.color })
                .collect(),
        )
    }

    pub fn view_walls(&self) -> (Coord, Coord) {
        let (l, r) = self.state.walls();
        match self.orientation {
            Orientation::Normal => (l, r),
            Orientation::Mirrored => (r.reflect(), l.reflect()),
        }
    }

    /// Colors appearing in the view.
    pub fn view_colors(&self) -> ColorSet {
        self.view_endpoints().iter().map(|e| e.color).collect()
    }

    fn coord_err(&self, source: CoordError) -> Halt {
        Halt::Strategy(StrategyError::Coord {
            position: self.position.clone(),
            source,
        })
    }

    pub(crate) fn unexpected(&self, detail: impl Into<String>) -> Halt {
        Halt::Strategy(StrategyError::Unexpected {
            position: self.position.clone(),
            detail: detail.into(),
        })
    }

    fn mid(&self, a: Coord, b: Coord) -> Result<Coord, Halt> {
        Coord::midpoint(a, b).map_err(|e| self.coord_err(e))
    }

    /// Bounds of view gap `g`.
    pub fn gap(&self, g: usize) -> Result<(Coord, Coord), Halt> {
        let eps = self.view_endpoints();
        if g > eps.len() {
            return Err(self.unexpected(format!("gap {g} of a {}-column view", eps.len())));
        }
        let (wl, wr) = self.view_walls();
        let lo = if g == 0 { wl } else { eps[g - 1].at };
        let hi = eps.get(g).map_or(wr, |e| e.at);
        Ok((lo, hi))
    }

    /// Presents view interval `[lo, hi]` and returns the adversary's color.
    /// Stops with `Halt::Won` once all seven colors are used.
    pub fn present_view(&mut self, lo: Coord, hi: Coord) -> Result<Color, Halt> {
        let (rlo, rhi) = self.real_interval(lo, hi);
        let move_number = self.state.intervals().len() + 1;
        let pending = self.state.present(rlo, rhi).map_err(|source| {
            Halt::Strategy(StrategyError::Game {
                position: self.position.clone(),
                move_number,
                source,
            })
        })?;
        let view = self.view_matrix();
        let position = format!("{}#{}", self.position, self.local_moves);
        let decision = Decision {
            pending: &pending,
            position: &position,
            view: &view,
        };
        let color = self.adversary.choose(&decision).map_err(Halt::Adversary)?;
        self.state = pending.assign(color).map_err(|source| Halt::IllegalColor {
            color,
            move_number,
            source,
        })?;
        self.local_moves += 1;
        self.trace.moves.push(TraceMove {
            lo: rlo,
            hi: rhi,
            color,
            walls: None,
        });
        if self.won() {
            return Err(Halt::Won);
        }
        Ok(color)
    }

    /// Presents an interval from the middle of gap `gl` to the middle of gap
    /// `gr`. With `gl == gr` the interval sits inside the single gap.
    pub fn place(&mut self, gl: usize, gr: usize) -> Result<Color, Halt> {
        let (a, b) = self.gap(gl)?;
        let (lo, hi) = if gl == gr {
            let m = self.mid(a, b)?;
            (self.mid(a, m)?, self.mid(m, b)?)
        } else {
            let (c, d) = self.gap(gr)?;
            (self.mid(a, b)?, self.mid(c, d)?)
        };
        self.present_view(lo, hi)
    }

    /// Moves the walls to view positions `(l, r)`.
    pub fn set_view_walls(&mut self, l: Coord, r: Coord) -> Result<(), Halt> {
        let (rl, rr) = self.real_interval(l, r);
        self.state = self.state.set_walls(rl, rr).map_err(|source| {
            Halt::Strategy(StrategyError::Game {
                position: self.position.clone(),
                move_number: self.state.intervals().len(),
                source,
            })
        })?;
        let walls = Walls { left: rl, right: rr };
        match self.trace.moves.last_mut() {
            Some(m) => m.walls = Some(walls),
            None => return Err(self.unexpected("wall update before the first move")),
        }
        Ok(())
    }

    /// Shrinks the walls so the view is exactly the bound window.
    pub fn focus(&mut self, b: &Binding) -> Result<(), Halt> {
        let eps = self.view_endpoints();
        let (mut l, mut r) = self.view_walls();
        if b.start > 0 {
            l = self.mid(eps[b.start - 1].at, eps[b.start].at)?;
        }
        let end = b.start + b.len;
        if end < eps.len() {
            r = self.mid(eps[end - 1].at, eps[end].at)?;
        }
        if (l, r) != self.view_walls() {
            self.set_view_walls(l, r)?;
        }
        Ok(())
    }

    /// Moves the right view wall to just after view column `col`.
    pub fn cut_after(&mut self, col: usize) -> Result<(), Halt> {
        let (l, _) = self.view_walls();
        let (a, b) = self.gap(col + 1)?;
        let r = self.mid(a, b)?;
        self.set_view_walls(l, r)
    }

    /// First window of the view matching `name`, then of the view's dual.
    pub fn locate(&self, name: PatternName) -> Option<Binding> {
        self.locate_in(name, false).or_else(|| self.locate_in(name, true))
    }

    pub fn locate_in(&self, name: PatternName, dual: bool) -> Option<Binding> {
        let mut view = self.view_matrix();
        if dual {
            view = view.dual();
        }
        let p = Pattern::get(name);
        let (start, sigma) = p.find_in(&view.columns)?;
        Some(Binding {
            pattern: name,
            start,
            len: p.columns.len(),
            sigma,
            dual,
        })
    }

    /// The first of `names` found directly in the view.
    pub fn expect(&self, names: &[PatternName]) -> Result<Binding, Halt> {
        names
            .iter()
            .find_map(|&n| self.locate_in(n, false))
            .ok_or_else(|| {
                Halt::Strategy(StrategyError::NoMatch {
                    position: self.position.clone(),
                    expected: names.to_vec(),
                    view: self.view_matrix(),
                })
            })
    }

    /// Separation: presents `k` intervals with left endpoints in
    /// `left_gap` and right endpoints in `right_gap` (view coordinates) so
    /// that, left to right, those colored in `y` come first.
    pub fn separate(
        &mut self,
        k: usize,
        y: ColorSet,
        left_gap: (Coord, Coord),
        right_gap: (Coord, Coord),
    ) -> Result<SeparationResult, Halt> {
        let ((a1, b1), (a2, b2)) = (left_gap, right_gap);
        if !(a1 < b1 && b1 < a2 && a2 < b2) {
            return Err(self.unexpected("separation gaps out of order"));
        }
        let mut placed: Vec<PlacedInterval> = Vec::with_capacity(k);
        let mut j = 0;
        for t in 0..k {
            let (lo, hi) = if t == 0 {
                (self.mid(a1, b1)?, self.mid(a2, b2)?)
            } else if j == 0 {
                (self.mid(a1, placed[0].lo)?, self.mid(a2, placed[0].hi)?)
            } else if j == t {
                (self.mid(placed[t - 1].lo, b1)?, self.mid(placed[t - 1].hi, b2)?)
            } else {
                (
                    self.mid(placed[j - 1].lo, placed[j].lo)?,
                    self.mid(placed[j - 1].hi, placed[j].hi)?,
                )
            };
            let color = self.present_view(lo, hi)?;
            placed.insert(
                j,
                PlacedInterval {
                    lo,
                    hi,
                    color,
                    move_index: self.state.intervals().len(),
                },
            );
            if y.contains(color) {
                j += 1;
            }
        }
        Ok(SeparationResult {
            placed,
            threshold_j: j,
        })
    }

    /// Separation between view gaps `gl` and `gr`. With `gl == gr` the gap
    /// is split into a left and a right part.
    pub fn separate_at(
        &mut self,
        k: usize,
        y: ColorSet,
        gl: usize,
        gr: usize,
    ) -> Result<SeparationResult, Halt> {
        let (a, b) = self.gap(gl)?;
        if gl == gr {
            let m = self.mid(a, b)?;
            let (q1, q3) = (self.mid(a, m)?, self.mid(m, b)?);
            return self.separate(k, y, (a, q1), (q3, b));
        }
        let right = self.gap(gr)?;
        self.separate(k, y, (a, b), right)
    }
}
