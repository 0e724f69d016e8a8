//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use sevencolor_core::color::NUM_COLORS;
use sevencolor_core::matrix::Column;
use sevencolor_core::{Color, ColorSet, Coord, GameState, Side, StateMatrix};

const GRID: u32 = 10;

/// Random legal game: intervals on a 2^-10 grid with random legal colors,
/// then with even odds a random pair of walls between grid points.
pub fn random_state(rng: &mut impl Rng, omega: usize, target: usize) -> GameState {
    let top = 1u128 << GRID;
    let mut s = GameState::new(omega);
    for _ in 0..target * 8 {
        if s.intervals().len() >= target {
            break;
        }
        let len = rng.gen_range(top / 32..top / 3);
        let lo = rng.gen_range(1..top - len);
        let (lo, hi) = (Coord::new(lo, GRID).unwrap(), Coord::new(lo + len, GRID).unwrap());
        let Ok(p) = s.present(lo, hi) else { continue };
        let legal: Vec<Color> = p.legal_colors().iter().collect();
        let Some(&c) = legal.choose(rng) else { continue };
        s = p.assign(c).unwrap();
    }
    if rng.gen_bool(0.5) {
        // Odd numerators one level finer never hit an endpoint.
        let mut a = 2 * rng.gen_range(0..top) + 1;
        let mut b = 2 * rng.gen_range(0..top) + 1;
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if a != b {
            s = s
                .set_walls(Coord::new(a, GRID + 1).unwrap(), Coord::new(b, GRID + 1).unwrap())
                .unwrap();
        }
    }
    s
}

/// Applies a color permutation given as images of `a..g`.
pub fn permute(m: &StateMatrix, perm: &[Color; NUM_COLORS]) -> StateMatrix {
    StateMatrix::new(
        m.columns
            .iter()
            .map(|c| Column {
                side: c.side,
                color: perm[c.color.index()],
            })
            .collect(),
    )
}

pub fn random_perm(rng: &mut impl Rng) -> [Color; NUM_COLORS] {
    let mut p = Color::ALL;
    p.shuffle(rng);
    p
}

/// Reference dual, built column by column from the definition.
pub fn dual_oracle(m: &StateMatrix) -> StateMatrix {
    let n = m.columns.len();
    StateMatrix::new(
        (0..n)
            .map(|i| {
                let c = m.columns[n - 1 - i];
                let side = if c.side == Side::Left { Side::Right } else { Side::Left };
                Column { side, color: c.color }
            })
            .collect(),
    )
}

/// Whether some window of `s` equals `p` under an injective recoloring.
pub fn contains_oracle(s: &StateMatrix, p: &StateMatrix) -> bool {
    let (n, k) = (s.columns.len(), p.columns.len());
    if k > n {
        return false;
    }
    (0..=n - k).any(|start| {
        let mut fwd = [None::<Color>; NUM_COLORS];
        let mut back = [None::<Color>; NUM_COLORS];
        p.columns.iter().zip(&s.columns[start..start + k]).all(|(pc, sc)| {
            if pc.side != sc.side {
                return false;
            }
            let f = fwd[pc.color.index()].get_or_insert(sc.color);
            let b = back[sc.color.index()].get_or_insert(pc.color);
            *f == sc.color && *b == pc.color
        })
    })
}

/// Checks a separation of `k` intervals placed in gaps `(a1, b1)` and
/// `(a2, b2)`: left endpoints increase inside the left gap, right endpoints
/// increase inside the right gap, and a color is in `y` exactly for the
/// first `j` intervals. `placed` pairs `(lo, hi, color)` in placement order.
pub fn separation_holds(
    placed: &[(Coord, Coord, Color)],
    gaps: ((Coord, Coord), (Coord, Coord)),
    y: ColorSet,
    j: usize,
) -> Result<(), String> {
    let ((a1, b1), (a2, b2)) = gaps;
    let mut sorted = placed.to_vec();
    sorted.sort_by_key(|p| p.0);
    for w in sorted.windows(2) {
        if w[0].1 >= w[1].1 {
            return Err(format!("right endpoints out of order: {w:?}"));
        }
    }
    for &(lo, hi, _) in &sorted {
        if !(a1 < lo && lo < b1 && a2 < hi && hi < b2) {
            return Err(format!("interval [{lo}, {hi}] outside its gaps"));
        }
    }
    if j > sorted.len() {
        return Err(format!("threshold {j} exceeds {}", sorted.len()));
    }
    for (i, p) in sorted.iter().enumerate() {
        if y.contains(p.2) != (i < j) {
            return Err(format!("interval {} colored {} breaks threshold {j}", i + 1, p.2));
        }
    }
    Ok(())
}
