use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of colors in the palette.
pub const NUM_COLORS: usize = 7;

/// One of the seven colors `a..g`, ordered alphabetically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

impl Color {
    pub const ALL: [Color; NUM_COLORS] = [
        Color(0),
        Color(1),
        Color(2),
        Color(3),
        Color(4),
        Color(5),
        Color(6),
    ];

    pub fn from_index(i: usize) -> Option<Color> {
        (i < NUM_COLORS).then_some(Color(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn symbol(self) -> char {
        (b'a' + self.0) as char
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown color {0:?}, expected one of a..g")]
pub struct ParseColorError(String);

impl FromStr for Color {
    type Err = ParseColorError;

    fn from_str(s: &str) -> Result<Color, ParseColorError> {
        match s.as_bytes() {
            [b @ b'a'..=b'g'] => Ok(Color(b - b'a')),
            _ => Err(ParseColorError(s.to_string())),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Color, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the palette as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const FULL: ColorSet = ColorSet((1 << NUM_COLORS) - 1);

    pub fn of(colors: &[Color]) -> ColorSet {
        colors.iter().fold(ColorSet::EMPTY, |s, &c| s.with(c))
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c.0) != 0
    }

    pub fn with(self, c: Color) -> ColorSet {
        ColorSet(self.0 | (1 << c.0))
    }

    pub fn without(self, c: Color) -> ColorSet {
        ColorSet(self.0 & !(1 << c.0))
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn complement(self) -> ColorSet {
        ColorSet(!self.0 & Self::FULL.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Smallest color not in the set.
    pub fn first_missing(self) -> Option<Color> {
        Color::ALL.into_iter().find(|&c| !self.contains(c))
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(it: I) -> ColorSet {
        it.into_iter().fold(ColorSet::EMPTY, |s, c| s.with(c))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for c in self.iter() {
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
