//! Concrete states realizing a named pattern, for running single routines.
//!
//! The pattern's columns become the whole wall-restricted view. Intervals cut
//! by the window get their missing endpoint just outside the walls, ordered
//! so that no interval contains another.

use crate::color::Color;
use crate::coord::Coord;
use crate::game::{GameError, GameState};
use crate::matrix::{Side, StateMatrix};
use crate::pattern::{Pattern, PatternName};
use crate::trace::{replay, Trace, TraceMove, Walls};

const EXP: u32 = 10;

fn at(units: u128) -> Coord {
    Coord::new(units, EXP).expect("fixture coordinates stay below 1")
}

/// A trace whose final state has exactly `m` as its view, colored as written.
pub fn trace_for_matrix(m: &StateMatrix, omega: usize) -> Result<Trace, GameError> {
    let n = m.len() as u128;
    // outside-left points in 8..256, window in 512.., outside-right above it
    let window = |i: usize| 512 + 8 * (i as u128 + 1);
    let wall_l = 512 + 4;
    let wall_r = window(m.len() - 1) + 4;

    let mut open: Vec<Option<(usize, u128)>> = vec![None; 7];
    let mut spans: Vec<(Option<u128>, Option<u128>, Color)> = Vec::new();
    for (i, col) in m.columns.iter().enumerate() {
        let slot = &mut open[col.color.index()];
        match col.side {
            Side::Left => {
                spans.push((Some(window(i)), None, col.color));
                *slot = Some((spans.len() - 1, window(i)));
            }
            Side::Right => match slot.take() {
                Some((k, _)) => spans[k].1 = Some(window(i)),
                None => spans.push((None, Some(window(i)), col.color)),
            },
        }
    }
    // Missing left ends follow the order of right ends; missing right ends
    // follow the order of left ends.
    let mut left_open: Vec<usize> = (0..spans.len()).filter(|&k| spans[k].0.is_none()).collect();
    left_open.sort_by_key(|&k| spans[k].1);
    for (rank, k) in left_open.into_iter().enumerate() {
        spans[k].0 = Some(8 + 8 * rank as u128);
    }
    let mut right_open: Vec<usize> = (0..spans.len()).filter(|&k| spans[k].1.is_none()).collect();
    right_open.sort_by_key(|&k| spans[k].0);
    for (rank, k) in right_open.into_iter().enumerate() {
        spans[k].1 = Some(wall_r + 8 * (rank as u128 + 1));
    }
    debug_assert!(wall_r + 8 * (n + 1) < 1 << EXP);

    let mut ivs: Vec<(u128, u128, Color)> = spans
        .into_iter()
        .map(|(lo, hi, c)| (lo.unwrap(), hi.unwrap(), c))
        .collect();
    ivs.sort();
    let mut trace = Trace::new(omega);
    trace.moves = ivs
        .into_iter()
        .map(|(lo, hi, color)| TraceMove {
            lo: at(lo),
            hi: at(hi),
            color,
            walls: None,
        })
        .collect();
    if let Some(last) = trace.moves.last_mut() {
        last.walls = Some(Walls {
            left: at(wall_l),
            right: at(wall_r),
        });
    }
    replay(&trace).map_err(|e| match e {
        crate::trace::TraceError::Replay { source, .. } => source,
        other => unreachable!("replay of a built trace: {other}"),
    })?;
    Ok(trace)
}

/// Fixture for a named pattern with each variable colored by its own letter.
pub fn fixture(name: PatternName, omega: usize) -> Trace {
    if name == PatternName::Game {
        return trace_for_matrix(
            &StateMatrix::parse(
                "0 1 0 1 0 1 0 1 0 1 0 1 0 1",
                "a a b b c c d d e e f f g g",
            )
            .expect("literal matrix"),
            omega,
        )
        .expect("disjoint intervals always fit");
    }
    trace_for_matrix(&Pattern::get(name).matrix(), omega)
        .unwrap_or_else(|e| panic!("pattern {name} has no realization: {e}"))
}

/// The replayed fixture state.
pub fn fixture_state(name: PatternName, omega: usize) -> GameState {
    replay(&fixture(name, omega)).expect("fixtures replay")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::state_matrix;

    #[test]
    fn every_pattern_is_realized_exactly() {
        for p in Pattern::all() {
            if p.name == PatternName::Game {
                continue;
            }
            let s = fixture_state(p.name, 4);
            assert_eq!(state_matrix(&s), p.matrix(), "{}", p.name);
            assert!(s.clique_size() <= 4);
        }
        assert!(fixture_state(PatternName::Game, 4).is_game());
    }
}
