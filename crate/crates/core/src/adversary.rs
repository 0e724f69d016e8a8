//! Algorithm players.

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::color::Color;
use crate::game::PendingMove;
use crate::matrix::StateMatrix;

/// What an adversary sees when asked for a color.
pub struct Decision<'a> {
    pub pending: &'a PendingMove,
    /// Strategy position label, stable across runs.
    pub position: &'a str,
    /// Wall-restricted matrix in the strategy's current orientation.
    pub view: &'a StateMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdversaryError {
    #[error("script exhausted after {0} colors")]
    Exhausted(usize),
    #[error("no legal color")]
    Stuck,
    /// Raised by the verifier to cut an already explored subtree.
    #[error("subtree pruned")]
    Pruned,
}

pub trait Adversary {
    fn name(&self) -> String;
    fn choose(&mut self, d: &Decision<'_>) -> Result<Color, AdversaryError>;
}

/// Alphabetically smallest legal color.
pub fn first_fit(pending: &PendingMove) -> Option<Color> {
    pending.legal_colors().iter().next()
}

/// Every legal color already in use plus the first unused color.
///
/// Unused colors are interchangeable up to a permutation of colors, so one
/// representative covers them all.
pub fn canonical_moves(pending: &PendingMove) -> Vec<Color> {
    let used = pending.base().used_colors();
    let legal = pending.legal_colors();
    let mut out: Vec<Color> = used.iter().filter(|&c| legal.contains(c)).collect();
    if let Some(fresh) = used.first_missing() {
        // An unused color never meets the candidate.
        out.push(fresh);
    }
    out
}

pub struct FirstFit;

impl Adversary for FirstFit {
    fn name(&self) -> String {
        "first-fit".to_string()
    }

    fn choose(&mut self, d: &Decision<'_>) -> Result<Color, AdversaryError> {
        first_fit(d.pending).ok_or(AdversaryError::Stuck)
    }
}

/// Uniform choice over legal colors from a seeded stream.
pub struct RandomAdversary {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomAdversary {
    pub fn new(seed: u64) -> RandomAdversary {
        RandomAdversary {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Adversary for RandomAdversary {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose(&mut self, d: &Decision<'_>) -> Result<Color, AdversaryError> {
        d.pending
            .legal_colors()
            .iter()
            .choose(&mut self.rng)
            .ok_or(AdversaryError::Stuck)
    }
}

/// Replays a fixed color sequence. Colors are not checked here; the game
/// rejects illegal ones.
pub struct Scripted {
    colors: Vec<Color>,
    next: usize,
}

impl Scripted {
    pub fn new(colors: Vec<Color>) -> Scripted {
        Scripted { colors, next: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.next
    }
}

impl Adversary for Scripted {
    fn name(&self) -> String {
        "scripted".to_string()
    }

    fn choose(&mut self, _: &Decision<'_>) -> Result<Color, AdversaryError> {
        let c = *self
            .colors
            .get(self.next)
            .ok_or(AdversaryError::Exhausted(self.next))?;
        self.next += 1;
        Ok(c)
    }
}

/// Builds a named adversary. `scripted` needs a trace and is built directly.
pub fn by_name(name: &str, seed: u64) -> Result<Box<dyn Adversary + Send>, String> {
    match name {
        "first-fit" => Ok(Box::new(FirstFit)),
        "random" => Ok(Box::new(RandomAdversary::new(seed))),
        other => Err(format!(
            "unknown adversary {other:?}, expected first-fit, random or scripted"
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorSet;
    use crate::game::GameState;

    fn play(s: &GameState, lo: &str, hi: &str, c: &str) -> GameState {
        s.present(lo.parse().unwrap(), hi.parse().unwrap())
            .unwrap()
            .assign(c.parse().unwrap())
            .unwrap()
    }

    fn col(s: &str) -> Color {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_moves_collapse_fresh_colors() {
        let s = GameState::new(4);
        let p = s.present("1/2^2".parse().unwrap(), "1/2^1".parse().unwrap()).unwrap();
        assert_eq!(canonical_moves(&p), vec![col("a")]);

        let s = play(&s, "1/2^3", "1/2^2", "a");
        let p = s.present("3/2^4".parse().unwrap(), "1/2^1".parse().unwrap()).unwrap();
        assert_eq!(canonical_moves(&p), vec![col("b")]);

        let s = play(&s, "5/2^3", "7/2^3", "b");
        let p = s.present("9/2^4".parse().unwrap(), "5/2^4".parse().unwrap());
        assert!(p.is_err());
        let p = s.present("5/2^4".parse().unwrap(), "9/2^4".parse().unwrap()).unwrap();
        assert_eq!(canonical_moves(&p), vec![col("a"), col("b"), col("c")]);
    }

    #[test]
    fn first_fit_picks_smallest() {
        let s = play(&GameState::new(4), "1/2^3", "1/2^1", "a");
        let s = play(&s, "1/2^2", "5/2^3", "b");
        let p = s.present("3/2^3".parse().unwrap(), "3/2^2".parse().unwrap()).unwrap();
        assert_eq!(p.neighbor_colors(), ColorSet::of(&[col("a"), col("b")]));
        assert_eq!(first_fit(&p), Some(col("c")));
    }
}
