//! Versioned JSON move logs.
//!
//! A trace lists every presented interval with the color it received and the
//! walls in force after that round, when they changed. Coordinates are exact
//! `"num/2^k"` strings, so export and import are inverse.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::Color;
use crate::coord::Coord;
use crate::game::{GameError, GameState, DEFAULT_OMEGA};

pub const TRACE_FORMAT: &str = "sevencolor-trace";
pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Walls {
    pub left: Coord,
    pub right: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceMove {
    pub lo: Coord,
    pub hi: Coord,
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walls: Option<Walls>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trace {
    pub format: String,
    pub version: u32,
    pub omega: usize,
    pub moves: Vec<TraceMove>,
}

impl Default for Trace {
    fn default() -> Trace {
        Trace::new(DEFAULT_OMEGA)
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported trace format {0:?} version {1}")]
    Version(String, u32),
    #[error("move {index}: {source}")]
    Replay {
        /// 1-based index of the offending move.
        index: usize,
        source: GameError,
    },
}

impl Trace {
    pub fn new(omega: usize) -> Trace {
        Trace {
            format: TRACE_FORMAT.to_string(),
            version: TRACE_VERSION,
            omega,
            moves: Vec::new(),
        }
    }

    /// Colors in move order, for scripted replay.
    pub fn colors(&self) -> Vec<Color> {
        self.moves.iter().map(|m| m.color).collect()
    }
}

pub fn export_trace(trace: &Trace) -> String {
    serde_json::to_string_pretty(trace).expect("traces always serialize")
}

pub fn import_trace(json: &str) -> Result<Trace, TraceError> {
    let trace: Trace = serde_json::from_str(json)?;
    if trace.format != TRACE_FORMAT || trace.version != TRACE_VERSION {
        return Err(TraceError::Version(trace.format, trace.version));
    }
    Ok(trace)
}

/// Replays every move through the game rules.
pub fn replay(trace: &Trace) -> Result<GameState, TraceError> {
    let mut state = GameState::new(trace.omega);
    for (i, m) in trace.moves.iter().enumerate() {
        let at = |source| TraceError::Replay { index: i + 1, source };
        state = state.present(m.lo, m.hi).map_err(at)?.assign(m.color).map_err(at)?;
        if let Some(w) = m.walls {
            state = state.set_walls(w.left, w.right).map_err(at)?;
        }
    }
    Ok(state)
}
