//! State matrices: the sorted endpoint sides and colors of a game state.

use std::fmt;

use serde::Serialize;

use crate::color::{Color, ColorSet, NUM_COLORS};
use crate::coord::Coord;
use crate::game::GameState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn bit(self) -> u8 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn from_bit(b: u8) -> Option<Side> {
        match b {
            0 => Some(Side::Left),
            1 => Some(Side::Right),
            _ => None,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Column {
    pub side: Side,
    pub color: Color,
}

/// Columns in ascending endpoint order. A wall-restricted matrix may cut
/// intervals, so per-color balance holds only for unrestricted states.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct StateMatrix {
    pub columns: Vec<Column>,
}

impl StateMatrix {
    pub fn new(columns: Vec<Column>) -> StateMatrix {
        StateMatrix { columns }
    }

    /// Builds a matrix from two parallel strings such as `"1 0 1"` and `"a c b"`.
    pub fn parse(sides: &str, colors: &str) -> Option<StateMatrix> {
        let sides: Vec<&str> = sides.split_whitespace().collect();
        let colors: Vec<&str> = colors.split_whitespace().collect();
        if sides.len() != colors.len() {
            return None;
        }
        let columns = sides
            .iter()
            .zip(&colors)
            .map(|(s, c)| {
                Some(Column {
                    side: Side::from_bit(s.parse().ok()?)?,
                    color: c.parse().ok()?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(StateMatrix { columns })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn colors(&self) -> ColorSet {
        self.columns.iter().map(|c| c.color).collect()
    }

    /// Every right endpoint closes an earlier left endpoint of its color and
    /// no color is left open.
    pub fn is_balanced(&self) -> bool {
        let mut open = ColorSet::EMPTY;
        for col in &self.columns {
            match col.side {
                Side::Left if open.contains(col.color) => return false,
                Side::Left => open = open.with(col.color),
                Side::Right if !open.contains(col.color) => return false,
                Side::Right => open = open.without(col.color),
            }
        }
        open.is_empty()
    }

    /// Reversed column order with every side flipped.
    pub fn dual(&self) -> StateMatrix {
        StateMatrix {
            columns: self
                .columns
                .iter()
                .rev()
                .map(|c| Column {
                    side: c.side.flip(),
                    color: c.color,
                })
                .collect(),
        }
    }

    /// Relabels colors in order of first occurrence.
    pub fn canonical_form(&self) -> StateMatrix {
        let mut map = [None::<Color>; NUM_COLORS];
        let mut next = 0;
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let slot = &mut map[c.color.index()];
                let color = *slot.get_or_insert_with(|| {
                    next += 1;
                    Color::ALL[next - 1]
                });
                Column { side: c.side, color }
            })
            .collect();
        StateMatrix { columns }
    }

    /// Equal up to a permutation of colors.
    pub fn equivalent(&self, other: &StateMatrix) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn sides_string(&self) -> String {
        let v: Vec<String> = self.columns.iter().map(|c| c.side.bit().to_string()).collect();
        v.join(" ")
    }

    pub fn colors_string(&self) -> String {
        let v: Vec<String> = self.columns.iter().map(|c| c.color.to_string()).collect();
        v.join(" ")
    }
}

impl fmt::Debug for StateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / {}]", self.sides_string(), self.colors_string())
    }
}

impl fmt::Display for StateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.sides_string())?;
        write!(f, "{}", self.colors_string())
    }
}

/// A matrix column together with the coordinate behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoint {
    pub at: Coord,
    pub side: Side,
    pub color: Color,
}

/// Endpoints strictly between the walls, ascending.
pub fn endpoints(state: &GameState) -> Vec<Endpoint> {
    let (l, r) = state.walls();
    let mut out: Vec<Endpoint> = state
        .intervals()
        .iter()
        .flat_map(|iv| {
            [
                Endpoint { at: iv.lo, side: Side::Left, color: iv.color },
                Endpoint { at: iv.hi, side: Side::Right, color: iv.color },
            ]
        })
        .filter(|e| l < e.at && e.at < r)
        .collect();
    out.sort_by_key(|e| e.at);
    out
}

/// The wall-restricted state matrix.
pub fn state_matrix(state: &GameState) -> StateMatrix {
    StateMatrix {
        columns: endpoints(state)
            .into_iter()
            .map(|e| Column { side: e.side, color: e.color })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str, c: &str) -> StateMatrix {
        StateMatrix::parse(s, c).unwrap()
    }

    #[test]
    fn matrix_of_two_intervals() {
        let s = GameState::new(4);
        let s = s
            .present("1/2^3".parse().unwrap(), "3/2^3".parse().unwrap())
            .unwrap()
            .assign("a".parse().unwrap())
            .unwrap();
        let s = s
            .present("1/2^2".parse().unwrap(), "1/2^1".parse().unwrap())
            .unwrap()
            .assign("b".parse().unwrap())
            .unwrap();
        assert_eq!(state_matrix(&s), m("0 0 1 1", "a b a b"));
        assert!(state_matrix(&GameState::new(4)).is_empty());
    }

    #[test]
    fn dual_reverses_and_flips() {
        assert_eq!(m("0 0 1 1", "a b a b").dual(), m("0 0 1 1", "b a b a"));
        assert_eq!(StateMatrix::default().dual(), StateMatrix::default());
    }

    #[test]
    fn equivalence() {
        let x = m("0 0 1 1", "a b a b");
        assert!(x.equivalent(&x));
        assert!(x.equivalent(&m("0 0 1 1", "b a b a")));
        assert!(!m("0 1", "a a").equivalent(&m("0 0", "a b")));
        assert!(!x.equivalent(&m("0 0 1 1", "a a b b")));
    }

    #[test]
    fn canonical_relabels_by_first_occurrence() {
        assert_eq!(m("0 0 1 1", "c d c d").canonical_form(), m("0 0 1 1", "a b a b"));
        let x = m("1 0 1 0 1 0 0", "a c b a c b d");
        assert_eq!(x.canonical_form().canonical_form(), x.canonical_form());
    }

    #[test]
    fn balance() {
        assert!(m("0 0 1 1", "a b a b").is_balanced());
        assert!(!m("1 0", "a a").is_balanced());
        assert!(!m("0 0", "a a").is_balanced());
    }
}
