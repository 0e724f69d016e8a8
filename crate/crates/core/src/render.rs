//! ASCII diagrams: one bar per interval in endpoint order, walls marked `|`.

use crate::coord::Coord;
use crate::game::GameState;
use crate::matrix::state_matrix;

enum Mark {
    Point(Coord),
    Wall(Coord),
}

impl Mark {
    fn at(&self) -> Coord {
        match self {
            Mark::Point(c) | Mark::Wall(c) => *c,
        }
    }
}

pub fn render(state: &GameState) -> String {
    let (l, r) = state.walls();
    let mut marks: Vec<Mark> = state
        .intervals()
        .iter()
        .flat_map(|iv| [Mark::Point(iv.lo), Mark::Point(iv.hi)])
        .collect();
    marks.push(Mark::Wall(l));
    marks.push(Mark::Wall(r));
    // A wall coinciding with an endpoint is drawn before it.
    marks.sort_by_key(|m| (m.at(), matches!(m, Mark::Point(_))));
    let col_of = |c: Coord, wall: bool| {
        2 * marks
            .iter()
            .position(|m| m.at() == c && matches!(m, Mark::Wall(_)) == wall)
            .expect("every coordinate has a mark")
    };
    let width = 2 * marks.len();
    let label_width = 8;

    let mut out = String::new();
    let mut walls = vec![' '; width];
    walls[col_of(l, true)] = '|';
    walls[col_of(r, true)] = '|';
    out += &format!("{:<label_width$}{}\n", "walls", walls.iter().collect::<String>());

    let mut rows: Vec<_> = state.intervals().iter().collect();
    rows.sort_by_key(|iv| iv.lo);
    for iv in rows {
        let mut line = vec![' '; width];
        let (a, b) = (col_of(iv.lo, false), col_of(iv.hi, false));
        for ch in &mut line[a..=b] {
            *ch = '=';
        }
        line[a] = '[';
        line[b] = ']';
        for x in [col_of(l, true), col_of(r, true)] {
            if line[x] == ' ' {
                line[x] = ':';
            }
        }
        let label = format!("#{} {}", iv.move_index, iv.color);
        out += &format!("{label:<label_width$}{}\n", line.iter().collect::<String>().trim_end());
    }
    let m = state_matrix(state);
    out += &format!("sides   {}\ncolors  {}\n", m.sides_string(), m.colors_string());
    out
}
