//! Builder's strategy for clique bound 4.
//!
//! Each routine starts from a named state located in the view, shrinks the
//! walls to exactly that window, and then places intervals by fixed view gap
//! indices. Branches depend only on which window interval shares a color
//! with the reply, so every routine is invariant under color permutation.
//!
//! ```text
//! opening ─┬─ aab* ─(flip)─ aab ─┐
//!          ├─ bab* ─(flip)─ bab ─┼─ abcab ── bd ── game
//!          │                     ├─ abcac ─┬ bd
//!          │                     │         └ ed ── game
//!          │                     └─ abcad ── bd | ed | game
//!          └─ abcde ─┬─ aab ...
//!                    └─ game
//! ```

use std::fmt;
use std::str::FromStr;

use crate::color::ColorSet;
use crate::pattern::PatternName::{self, *};
use crate::session::{Binding, Halt, Session};

/// Where a routine left the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// A named state, located in the view (or its dual, if flagged).
    At(Binding),
    /// All seven colors used.
    Game,
}

impl Step {
    pub fn name(&self) -> PatternName {
        match self {
            Step::At(b) => b.pattern,
            Step::Game => Game,
        }
    }
}

/// Strategy routines addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Routine {
    Master,
    Opening,
    Aab,
    Bab,
    Abcab,
    Abcac,
    Abcad,
    Bd,
    Ed,
    Abcde,
}

impl Routine {
    pub const ALL: [Routine; 10] = [
        Routine::Master,
        Routine::Opening,
        Routine::Aab,
        Routine::Bab,
        Routine::Abcab,
        Routine::Abcac,
        Routine::Abcad,
        Routine::Bd,
        Routine::Ed,
        Routine::Abcde,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Routine::Master => "master",
            Routine::Opening => "opening",
            Routine::Aab => "aab",
            Routine::Bab => "bab",
            Routine::Abcab => "abcab",
            Routine::Abcac => "abcac",
            Routine::Abcad => "abcad",
            Routine::Bd => "bd",
            Routine::Ed => "ed",
            Routine::Abcde => "abcde",
        }
    }

    /// Named state the routine starts from; `None` means the empty game.
    pub fn start(self) -> Option<PatternName> {
        match self {
            Routine::Master | Routine::Opening => None,
            Routine::Aab => Some(Aab),
            Routine::Bab => Some(Bab),
            Routine::Abcab => Some(Abcab),
            Routine::Abcac => Some(Abcac),
            Routine::Abcad => Some(Abcad),
            Routine::Bd => Some(Bd),
            Routine::Ed => Some(Ed),
            Routine::Abcde => Some(Abcde),
        }
    }

    /// States the routine may end in.
    pub fn outcomes(self) -> &'static [PatternName] {
        match self {
            Routine::Opening => &[Aab, Bab, Abcde],
            Routine::Aab | Routine::Bab => &[Abcab, Abcac, Abcad],
            Routine::Abcab => &[Bd],
            Routine::Abcac => &[Bd, Ed],
            Routine::Abcde => &[Game, Aab],
            Routine::Master | Routine::Abcad | Routine::Bd | Routine::Ed => &[Game],
        }
    }
}

impl fmt::Display for Routine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Routine {
    type Err = String;

    fn from_str(s: &str) -> Result<Routine, String> {
        Routine::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown routine {s:?}"))
    }
}

/// Treats `Halt::Won` as reaching the game state.
fn settle(r: Result<Step, Halt>) -> Result<Step, Halt> {
    match r {
        Err(Halt::Won) => Ok(Step::Game),
        other => other,
    }
}

/// Runs `routine` from the current state until it reaches one of its
/// outcomes. Routines whose outcome is the game state keep dispatching
/// through intermediate named states.
pub fn run(s: &mut Session<'_>, routine: Routine) -> Result<Step, Halt> {
    settle(run_inner(s, routine))
}

fn run_inner(s: &mut Session<'_>, routine: Routine) -> Result<Step, Halt> {
    if s.won() {
        return Ok(Step::Game);
    }
    let mut step = match routine.start() {
        None => opening(s)?,
        Some(name) => {
            let b = s.locate(name).ok_or_else(|| {
                s.unexpected(format!("no {name} state to start {routine} from"))
            })?;
            enter_named(s, b)?
        }
    };
    let goal = routine.outcomes();
    loop {
        if routine != Routine::Master && goal.contains(&step.name()) {
            return Ok(step);
        }
        match step {
            Step::Game => return Ok(step),
            Step::At(b) => step = enter_named(s, b)?,
        }
    }
}

/// Runs the routine that starts at `b`, flipping orientation first if `b`
/// was found in the dual view.
pub fn enter_named(s: &mut Session<'_>, b: Binding) -> Result<Step, Halt> {
    let b = if b.dual {
        s.flip();
        s.locate_in(b.pattern, false)
            .ok_or_else(|| s.unexpected(format!("{} lost after flip", b.pattern)))?
    } else {
        b
    };
    match b.pattern {
        Aab => aab_to_abcax(s, &b),
        Bab => bab_to_abcax(s, &b),
        Abcab => abcab_to_bd(s, &b),
        Abcac => abcac_to_bd_or_ed(s, &b),
        Abcad => abcad_to_game(s, &b),
        Bd => bd_to_game(s, &b),
        Ed => ed_to_game(s, &b),
        Abcde => abcde_to_game(s, &b),
        Game => Ok(Step::Game),
    }
}

pub fn run_master(s: &mut Session<'_>) -> Result<Step, Halt> {
    run(s, Routine::Master)
}

fn at(s: &Session<'_>, names: &[PatternName]) -> Result<Step, Halt> {
    s.expect(names).map(Step::At)
}

fn unfinished(s: &Session<'_>) -> Result<Step, Halt> {
    Err(s.unexpected("closing moves left a color unused"))
}

/// Five intervals from the empty game. Ends in aab* or bab* (flagged dual)
/// or abcde.
pub fn opening(s: &mut Session<'_>) -> Result<Step, Halt> {
    s.enter("opening");
    let first = s.place(0, 0)?;
    let second = s.place(0, 1)?;
    // view: 0β 0α 1β 1α, then intervals stacked to the right of it
    for (gl, gr) in [(4, 4), (4, 5), (4, 6)] {
        let x = s.place(gl, gr)?;
        let name = if x == first {
            Aab
        } else if x == second {
            Bab
        } else {
            continue;
        };
        s.mark(name.as_str());
        return s
            .locate_in(name, true)
            .map(Step::At)
            .ok_or_else(|| s.unexpected(format!("no dual {name} after the opening")));
    }
    at(s, &[Abcde])
}

/// aab: 1a 0a 0b 1a 1b.
pub fn aab_to_abcax(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("aab");
    s.focus(b)?;
    let bb = b.color('b');
    let x = s.place(0, 1)?;
    let y = s.place(2, 4)?;
    // view: 0x 1a 0y 1x 0a 1y 0b 1a 1b
    let next = if x == bb {
        Abcab
    } else if y == bb {
        Abcac
    } else {
        Abcad
    };
    at(s, &[next])
}

/// bab: 1b 0a 0b 1a 1b.
pub fn bab_to_abcax(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("bab");
    s.focus(b)?;
    let aa = b.color('a');
    let c = s.place(0, 2)?;
    let x = s.place(6, 7)?;
    // view: 0c 1b 0a 1c 0b 1a 0x 1b 1x
    let next = if x == aa {
        Abcac
    } else if x == c {
        Abcab
    } else {
        Abcad
    };
    at(s, &[next])
}

/// abcab: 0b 1a 0c 1b 0a 1c 0b 1a 1b.
pub fn abcab_to_bd(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("abcab");
    s.focus(b)?;
    let y = ColorSet::FULL.without(b.color('c'));
    s.separate_at(2, y, 7, 9)?;
    // bd occupies columns 1..=7 once the second new left endpoint is cut off
    s.cut_after(7)?;
    at(s, &[Bd])
}

/// abcac: 0b 1a 0c 1b 0a 1c 0c 1a 1c.
pub fn abcac_to_bd_or_ed(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("abcac");
    s.focus(b)?;
    s.separate_at(2, ColorSet::of(&[b.color('b')]), 6, 8)?;
    s.cut_after(7)?;
    at(s, &[Bd, Ed])
}

/// abcad: 0b 1a 0c 1b 0a 1c 0d 1a 1d.
pub fn abcad_to_game(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("abcad");
    s.focus(b)?;
    let (aa, bb, cc, dd) = (b.color('a'), b.color('b'), b.color('c'), b.color('d'));
    let x = s.place(7, 9)?;
    // view: 0b 1a 0c 1b 0a 1c 0d 0x 1a 1d 1x
    if x == cc {
        s.mark("x=c");
        s.place(6, 9)?;
        s.cut_after(7)?;
        return at(s, &[Bd, Ed]);
    }
    if x != bb {
        s.mark("x=e");
        s.cut_after(7)?;
        return at(s, &[Ed]);
    }
    s.mark("x=b");
    let sep = s.separate_at(2, ColorSet::FULL.without(aa), 9, 11)?;
    let y = sep.placed[0].color;
    // view: 0b 1a 0c 1b 0a 1c 0d 0x 1a 0y 0y' 1d 1x 1y 1y'
    if y == cc {
        s.mark("y=c");
        s.place(6, 10)?;
        s.cut_after(7)?;
        return at(s, &[Ed]);
    }
    s.mark("y=e");
    let sep = s.separate_at(2, ColorSet::of(&[dd]), 0, 3)?;
    let z = sep.placed[1].color;
    if z == y {
        s.mark("z=e");
        s.place(6, 11)?;
        s.place(10, 16)?;
    } else {
        s.mark("z=f");
        let w = s.place(7, 11)?;
        if w == z {
            s.mark("w=f");
            s.place(10, 16)?;
        } else {
            s.mark("w=e");
            s.place(6, 12)?;
        }
    }
    unfinished(s)
}

/// bd: 1a 0c 1b 0a 1c 0b 0d.
pub fn bd_to_game(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("bd");
    s.focus(b)?;
    let d = b.color('d');
    let sep = s.separate_at(2, ColorSet::of(&[d]), 0, 3)?;
    if sep.placed[0].color == d {
        s.mark("x=d");
        s.place(5, 10)?;
        s.place(7, 13)?;
    } else {
        s.mark("x=f");
        s.place(5, 11)?;
    }
    unfinished(s)
}

/// ed: 0b 1a 0c 1b 0a 1c 0e 0d.
pub fn ed_to_game(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("ed");
    s.focus(b)?;
    let sep = s.separate_at(2, ColorSet::of(&[b.color('e')]), 0, 3)?;
    if sep.placed[1].color == b.color('d') {
        s.mark("y=d");
        s.place(6, 11)?;
        s.place(8, 14)?;
    } else {
        s.mark("y=f");
        s.place(6, 12)?;
    }
    unfinished(s)
}

/// abcde: 0a 0b 1a 1b 0c 0d 0e 1c 1d 1e.
pub fn abcde_to_game(s: &mut Session<'_>, b: &Binding) -> Result<Step, Halt> {
    s.enter("abcde");
    s.focus(b)?;
    let window = b.sigma.image();
    let [a, bb, c, d, e] = ['a', 'b', 'c', 'd', 'e'].map(|v| b.color(v));
    // An isolated clique of four in the empty gap left of the window.
    let left = ColorSet::of(&[bb, e]).union(window.complement());
    let k4 = s.separate_at(4, left, 0, 0)?;
    let last = k4.placed[3].color;
    if last == a {
        s.mark("r=a");
        return at(s, &[Aab]);
    }
    if last != c && last != d {
        return Err(s.unexpected(format!("clique closed with color {last}")));
    }
    s.mark("r=c");
    let sep = s.separate_at(2, ColorSet::of(&[a, bb, c, d]), 7, 10)?;
    if sep.placed[1].color == e {
        s.mark("y=e");
        s.place(13, 18)?;
        s.place(15, 21)?;
    } else {
        s.mark("y=f");
        s.place(13, 19)?;
    }
    unfinished(s)
}
