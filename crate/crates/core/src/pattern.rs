//! Named state templates and contiguous-window matching.
//!
//! Pattern columns use color variables `a..g`. A match binds distinct
//! variables to distinct colors.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::color::{Color, ColorSet, NUM_COLORS};
use crate::coord::Coord;
use crate::game::GameState;
use crate::matrix::{endpoints, Column, Side, StateMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternName {
    Aab,
    Bab,
    Abcab,
    Abcac,
    Abcad,
    Bd,
    Ed,
    Abcde,
    Game,
}

impl PatternName {
    pub const ALL: [PatternName; 9] = [
        PatternName::Aab,
        PatternName::Bab,
        PatternName::Abcab,
        PatternName::Abcac,
        PatternName::Abcad,
        PatternName::Bd,
        PatternName::Ed,
        PatternName::Abcde,
        PatternName::Game,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PatternName::Aab => "aab",
            PatternName::Bab => "bab",
            PatternName::Abcab => "abcab",
            PatternName::Abcac => "abcac",
            PatternName::Abcad => "abcad",
            PatternName::Bd => "bd",
            PatternName::Ed => "ed",
            PatternName::Abcde => "abcde",
            PatternName::Game => "game",
        }
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternName {
    type Err = String;

    fn from_str(s: &str) -> Result<PatternName, String> {
        PatternName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown pattern {s:?}"))
    }
}

/// A column of a pattern: a side and a color variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternColumn {
    pub side: Side,
    pub var: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: PatternName,
    pub columns: Vec<PatternColumn>,
}

#[derive(Deserialize)]
struct PatternFile {
    version: u32,
    patterns: Vec<PatternEntry>,
}

#[derive(Deserialize)]
struct PatternEntry {
    name: PatternName,
    sides: String,
    vars: String,
}

static TABLE: OnceLock<Vec<Pattern>> = OnceLock::new();

fn table() -> &'static [Pattern] {
    TABLE.get_or_init(|| {
        let file: PatternFile = serde_json::from_str(include_str!("../data/patterns.json"))
            .expect("pattern table is valid JSON");
        assert_eq!(file.version, 1, "unsupported pattern table version");
        file.patterns
            .into_iter()
            .map(|e| {
                let m = StateMatrix::parse(&e.sides, &e.vars).expect("pattern row");
                Pattern {
                    name: e.name,
                    columns: m
                        .columns
                        .iter()
                        .map(|c| PatternColumn { side: c.side, var: c.color })
                        .collect(),
                }
            })
            .collect()
    })
}

impl Pattern {
    pub fn get(name: PatternName) -> &'static Pattern {
        table()
            .iter()
            .find(|p| p.name == name)
            .expect("every pattern name has a table row")
    }

    pub fn all() -> &'static [Pattern] {
        table()
    }

    /// The pattern as a matrix with each variable read as its own color.
    pub fn matrix(&self) -> StateMatrix {
        StateMatrix::new(
            self.columns
                .iter()
                .map(|c| Column { side: c.side, color: c.var })
                .collect(),
        )
    }

    /// Leftmost window of `cols` equal to this pattern under an injective
    /// variable binding.
    pub fn find_in(&self, cols: &[Column]) -> Option<(usize, Sigma)> {
        let n = self.columns.len();
        if n == 0 || n > cols.len() {
            return None;
        }
        (0..=cols.len() - n).find_map(|start| {
            self.bind(&cols[start..start + n]).map(|sigma| (start, sigma))
        })
    }

    fn bind(&self, window: &[Column]) -> Option<Sigma> {
        let mut sigma = Sigma::default();
        let mut taken = ColorSet::EMPTY;
        for (p, c) in self.columns.iter().zip(window) {
            if p.side != c.side {
                return None;
            }
            match sigma.0[p.var.index()] {
                Some(bound) if bound != c.color => return None,
                Some(_) => {}
                None => {
                    if taken.contains(c.color) {
                        return None;
                    }
                    taken = taken.with(c.color);
                    sigma.0[p.var.index()] = Some(c.color);
                }
            }
        }
        Some(sigma)
    }
}

/// Binding of pattern variables to colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Sigma([Option<Color>; NUM_COLORS]);

impl Sigma {
    pub fn identity() -> Sigma {
        Sigma(Color::ALL.map(Some))
    }

    /// Color bound to variable `var` (given by its letter).
    pub fn get(&self, var: char) -> Option<Color> {
        let c: Color = var.to_string().parse().ok()?;
        self.0[c.index()]
    }

    /// Color bound to `var`. Panics if the pattern has no such variable.
    pub fn color(&self, var: char) -> Color {
        self.get(var)
            .unwrap_or_else(|| panic!("pattern variable {var} is unbound"))
    }

    pub fn image(&self) -> ColorSet {
        self.0.iter().flatten().copied().collect()
    }
}

impl Serialize for Sigma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        for (i, c) in self.0.iter().enumerate() {
            if let Some(c) = c {
                map.serialize_entry(&Color::ALL[i], c)?;
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchBinding {
    pub pattern: PatternName,
    /// Start of the window in the matrix it was found in.
    pub start: usize,
    pub len: usize,
    pub sigma: Sigma,
    /// Real coordinates behind the matched columns, in window order.
    pub anchor_coords: Vec<Coord>,
    /// Found in the dual matrix; `start` then indexes the dual.
    pub dual: bool,
}

impl MatchBinding {
    pub fn column_range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// First binding of `name` in the wall-restricted matrix of `state`, then in
/// its dual. `game` matches any state using all seven colors.
pub fn match_pattern(state: &GameState, name: PatternName) -> Option<MatchBinding> {
    if name == PatternName::Game {
        return state.is_game().then(|| MatchBinding {
            pattern: name,
            start: 0,
            len: 0,
            sigma: Sigma::identity(),
            anchor_coords: Vec::new(),
            dual: false,
        });
    }
    let pattern = Pattern::get(name);
    let eps = endpoints(state);
    let cols: Vec<Column> = eps
        .iter()
        .map(|e| Column { side: e.side, color: e.color })
        .collect();
    let n = pattern.columns.len();
    if let Some((start, sigma)) = pattern.find_in(&cols) {
        return Some(MatchBinding {
            pattern: name,
            start,
            len: n,
            sigma,
            anchor_coords: eps[start..start + n].iter().map(|e| e.at).collect(),
            dual: false,
        });
    }
    let dual = StateMatrix::new(cols).dual();
    let (start, sigma) = pattern.find_in(&dual.columns)?;
    let coords: Vec<Coord> = eps.iter().rev().map(|e| e.at).collect();
    Some(MatchBinding {
        pattern: name,
        start,
        len: n,
        sigma,
        anchor_coords: coords[start..start + n].to_vec(),
        dual: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads() {
        for name in PatternName::ALL {
            assert_eq!(Pattern::get(name).name, name);
        }
        assert_eq!(Pattern::get(PatternName::Bd).columns.len(), 7);
        assert_eq!(Pattern::get(PatternName::Ed).columns.len(), 8);
        assert_eq!(Pattern::get(PatternName::Abcde).columns.len(), 10);
    }

    #[test]
    fn bd_found_inside_larger_matrix() {
        let m = StateMatrix::parse("0 1 0 1 0 1 0 0 1", "g a e f a e f b g").unwrap();
        let (start, sigma) = Pattern::get(PatternName::Bd).find_in(&m.columns).unwrap();
        assert_eq!(start, 1);
        assert_eq!(sigma.color('a'), "a".parse().unwrap());
        assert_eq!(sigma.color('c'), "e".parse().unwrap());
        assert_eq!(sigma.color('d'), "b".parse().unwrap());
    }

    #[test]
    fn injectivity_is_enforced() {
        let m = StateMatrix::parse("1 0 1 0 1 0 0", "a c b a c b a").unwrap();
        assert!(Pattern::get(PatternName::Bd).find_in(&m.columns).is_none());
    }

    #[test]
    fn aab_and_bab_are_distinct() {
        let aab = Pattern::get(PatternName::Aab).matrix();
        let bab = Pattern::get(PatternName::Bab).matrix();
        assert!(!aab.equivalent(&bab));
        assert!(Pattern::get(PatternName::Bab).find_in(&aab.columns).is_none());
    }
}
