//! Step-at-a-time play for a remote Algorithm.
//!
//! Builder is deterministic, so a game is fully described by the colors
//! Algorithm has answered. Each query replays the strategy on those colors
//! and stops at the first unanswered presentation.

use serde::Serialize;

use crate::adversary::{Adversary, AdversaryError, Decision};
use crate::color::{Color, ColorSet};
use crate::game::{GameState, PendingMove};
use crate::matrix::{state_matrix, StateMatrix};
use crate::pattern::{match_pattern, PatternName};
use crate::session::{Halt, Orientation, Session, StrategyError};
use crate::strategy::{run, Routine, Step};
use crate::fixture::fixture;
use crate::trace::{replay, Trace};

/// Answers from a list, then records the next presentation and stops.
struct Remote<'c> {
    colors: &'c [Color],
    next: usize,
    waiting: Option<PendingMove>,
}

impl Adversary for Remote<'_> {
    fn name(&self) -> String {
        "remote".to_string()
    }

    fn choose(&mut self, d: &Decision<'_>) -> Result<Color, AdversaryError> {
        if let Some(&c) = self.colors.get(self.next) {
            self.next += 1;
            return Ok(c);
        }
        self.waiting = Some(d.pending.clone());
        Err(AdversaryError::Exhausted(self.next))
    }
}

#[derive(Debug, Clone)]
pub struct Position {
    pub state: GameState,
    pub trace: Trace,
    /// The presentation awaiting a color; `None` once the game is over.
    pub pending: Option<PendingMove>,
    pub outcome: Option<Step>,
    pub orientation: Orientation,
    pub path: Vec<&'static str>,
}

impl Position {
    pub fn finished(&self) -> bool {
        self.pending.is_none()
    }

    pub fn legal_colors(&self) -> ColorSet {
        self.pending
            .as_ref()
            .map_or(ColorSet::EMPTY, |p| p.legal_colors())
    }

    pub fn matrix(&self) -> StateMatrix {
        state_matrix(&self.state)
    }

    /// Named states currently visible, for hints.
    pub fn hints(&self) -> Vec<Hint> {
        PatternName::ALL
            .into_iter()
            .filter_map(|name| {
                match_pattern(&self.state, name).map(|b| Hint {
                    pattern: name,
                    columns: b.column_range().collect(),
                    dual: b.dual,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Hint {
    pub pattern: PatternName,
    pub columns: Vec<usize>,
    pub dual: bool,
}

/// Replays `colors` as Algorithm's answers against `routine`. The master
/// strategy and the opening start from the empty game, other routines from
/// the fixture of their starting state. An illegal answer is reported with
/// its move number.
pub fn position_after(omega: usize, routine: Routine, colors: &[Color]) -> Result<Position, Halt> {
    let mut remote = Remote {
        colors,
        next: 0,
        waiting: None,
    };
    let (result, state, trace, orientation, path) = {
        let mut s = match routine.start() {
            None => Session::new(omega, &mut remote),
            Some(name) => {
                let t = fixture(name, omega);
                let state = replay(&t).expect("fixtures replay");
                Session::resume(state, t, &mut remote)
            }
        };
        let r = run(&mut s, routine);
        let orientation = s.orientation();
        let (state, trace, path) = s.into_parts();
        (r, state, trace, orientation, path)
    };
    let (pending, outcome) = match result {
        Ok(step) => (None, Some(step)),
        Err(Halt::Adversary(AdversaryError::Exhausted(_))) if remote.waiting.is_some() => {
            (remote.waiting, None)
        }
        Err(e) => return Err(e),
    };
    if remote.next < colors.len() {
        return Err(Halt::Strategy(StrategyError::Unexpected {
            position: "game over".to_string(),
            detail: format!("{} answers given, {} used", colors.len(), remote.next),
        }));
    }
    Ok(Position {
        state,
        trace,
        pending,
        outcome,
        orientation,
        path,
    })
}
