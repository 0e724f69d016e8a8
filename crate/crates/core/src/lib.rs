//! On-line proper interval coloring: game rules, Builder's 7-color strategy
//! for clique bound 4, adversaries, and an exhaustive verifier.

// Errors carry the offending coordinates; they are rare and off the hot path.
#![allow(clippy::result_large_err)]

pub mod adversary;
pub mod color;
pub mod coord;
pub mod fixture;
pub mod fuzz;
pub mod game;
pub mod interactive;
pub mod matrix;
pub mod pattern;
pub mod render;
pub mod session;
pub mod strategy;
pub mod trace;
pub mod verifier;

pub use adversary::{canonical_moves, first_fit, Adversary, Decision, FirstFit, RandomAdversary, Scripted};
pub use color::{Color, ColorSet};
pub use coord::Coord;
pub use game::{GameError, GameState, PendingMove, PlacedInterval};
pub use matrix::{state_matrix, Side, StateMatrix};
pub use pattern::{match_pattern, MatchBinding, Pattern, PatternName};
pub use session::{Halt, Orientation, SeparationResult, Session};
pub use strategy::{run, run_master, Routine, Step};
pub use trace::{export_trace, import_trace, replay, Trace};
pub use verifier::{verify, verify_forced_win, VerificationReport, VerifyOptions};
