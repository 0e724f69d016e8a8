//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sevencolor_core::fuzz::random_first_fit_game;
use sevencolor_core::{
    export_trace, import_trace, replay, run_master, state_matrix, verify, Adversary, Color,
    ColorSet, Coord, FirstFit, Pattern, PatternName, RandomAdversary, Scripted, Session,
    VerifyOptions,
};

use common::{contains_oracle, dual_oracle, permute, random_perm, random_state, separation_holds};

/// Leaves and depth of the unmemoized master tree at clique bound 4, as
/// recorded on the first verified run.
const MASTER_LEAVES: u64 = 630_851;
const MASTER_MAX_DEPTH: usize = 19;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: String) -> Outcome {
    Outcome { ok: true, detail }
}

fn fail(detail: String) -> Outcome {
    Outcome { ok: false, detail }
}

fn forced_win(leaf_traces: &mut Vec<sevencolor_core::Trace>) -> Outcome {
    let rep = verify(&VerifyOptions {
        keep_leaf_traces: 50,
        ..VerifyOptions::default()
    });
    *leaf_traces = rep.leaf_traces.clone();
    let memo = verify(&VerifyOptions {
        memo: true,
        ..VerifyOptions::default()
    });
    let detail = format!(
        "{} leaves, depth {}, clique {}, colors {}, {} violations, {} errors, {} ms; memoized {} leaves agree: {}",
        rep.total_leaves,
        rep.max_depth,
        rep.max_clique_seen,
        rep.max_colors_seen,
        rep.containment_violations,
        rep.strategy_errors,
        rep.duration_ms,
        memo.total_leaves,
        memo.all_leaves_force_7,
    );
    let ok = rep.all_leaves_force_7
        && rep.max_clique_seen <= 4
        && rep.containment_violations == 0
        && rep.strategy_errors == 0
        && rep.total_leaves == MASTER_LEAVES
        && rep.max_depth == MASTER_MAX_DEPTH
        && memo.all_leaves_force_7
        && memo.strategy_errors == 0;
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = 8;
    let mut failures = Vec::new();
    let mut thresholds = [0usize; 7];
    for trial in 0..500 {
        let k = rng.gen_range(1..=6);
        let y: ColorSet = Color::ALL.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        let mut pts: Vec<u128> = Vec::new();
        while pts.len() < 4 {
            let p = rng.gen_range(1..1u128 << grid);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts.sort();
        let c: Vec<Coord> = pts.iter().map(|&p| Coord::new(p, grid).unwrap()).collect();
        let gaps = ((c[0], c[1]), (c[2], c[3]));
        let mut adv: Box<dyn Adversary> = match trial % 3 {
            0 => Box::new(RandomAdversary::new(trial)),
            1 => {
                let mut colors = Color::ALL.to_vec();
                colors.shuffle(&mut rng);
                Box::new(Scripted::new(colors))
            }
            _ => Box::new(FirstFit),
        };
        // Room for k mutually overlapping intervals.
        let mut s = Session::new(7, adv.as_mut());
        let r = match s.separate(k, y, gaps.0, gaps.1) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("trial {trial}: {e}"));
                continue;
            }
        };
        let placed: Vec<_> = s
            .state()
            .intervals()
            .iter()
            .map(|iv| (iv.lo, iv.hi, iv.color))
            .collect();
        let j = placed.iter().filter(|p| y.contains(p.2)).count();
        let check = if placed.len() != k {
            Err(format!("{} intervals placed", placed.len()))
        } else if j != r.threshold_j {
            Err(format!("reported threshold {} but {j} colors in Y", r.threshold_j))
        } else {
            separation_holds(&placed, gaps, y, j)
        };
        if let Err(e) = check {
            failures.push(format!("trial {trial}: {e}"));
        }
        thresholds[j] += 1;
    }
    let detail = format!("500 scenarios, threshold histogram {thresholds:?}, {} failures", failures.len());
    if failures.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {}", failures[0]))
    }
}

/// Re-derives First-Fit and the bound from the raw presentation.
fn first_fit_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = Vec::new();
    let mut bad = 0;
    for omega in 1..=5usize {
        let mut max_colors = 0;
        for _ in 0..1000 {
            let target = rng.gen_range(4..=64);
            let g = random_first_fit_game(omega, target, &mut rng);
            let n = g.spans.len();
            for i in 0..n {
                let (lo, hi) = g.spans[i];
                let mut taken = Vec::new();
                for t in 0..i {
                    let (a, b) = g.spans[t];
                    if (a < lo && hi < b) || (lo < a && b < hi) {
                        bad += 1;
                    }
                    if a <= hi && lo <= b {
                        taken.push(g.colors[t]);
                    }
                }
                let ff = (0..).find(|c| !taken.contains(c)).unwrap();
                if g.colors[i] != ff {
                    bad += 1;
                }
                let depth = g.spans[..=i]
                    .iter()
                    .filter(|(a, b)| *a <= lo && lo <= *b)
                    .count();
                if depth > omega {
                    bad += 1;
                }
            }
            let used = g.colors.iter().map(|c| c + 1).max().unwrap_or(0);
            max_colors = max_colors.max(used);
            if used > 2 * omega - 1 {
                bad += 1;
            }
        }
        worst.push(max_colors);
    }
    let detail = format!("max colors for omega 1..=5: {worst:?}, {bad} violations");
    if bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn state_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let bd = Pattern::get(PatternName::Bd);
    let bd_m = bd.matrix();
    let bd_dual = dual_oracle(&bd_m);
    let mut bad = Vec::new();
    let mut bd_seen = 0;
    let mut checked = 0;
    let mut samples = Vec::new();
    // Master games reach bd often; random games rarely do.
    for seed in 0..40 {
        let mut adv = RandomAdversary::new(1000 + seed);
        let mut s = Session::new(4, &mut adv);
        run_master(&mut s).unwrap();
        let t = s.trace().clone();
        for n in 1..=t.moves.len() {
            let mut prefix = t.clone();
            prefix.moves.truncate(n);
            samples.push(replay(&prefix).unwrap());
        }
    }
    samples.truncate(400);
    while samples.len() < 1000 {
        let target = rng.gen_range(1..=14);
        let omega = rng.gen_range(2..=5);
        samples.push(random_state(&mut rng, omega, target));
    }
    for (i, st) in samples.iter().enumerate() {
        let m = state_matrix(st);
        let p1 = permute(&m, &random_perm(&mut rng));
        let p2 = permute(&p1, &random_perm(&mut rng));
        let other = state_matrix(&samples[(i * 7 + 13) % samples.len()]);
        let mut law = |ok: bool, name: &str| {
            if !ok {
                bad.push(format!("sample {i}: {name}"));
            }
        };
        law(m.dual().dual() == m, "dual involution");
        law(m.dual() == dual_oracle(&m), "dual definition");
        law(m.equivalent(&m), "reflexive");
        law(m.equivalent(&p1) && p1.equivalent(&m), "symmetric");
        law(p1.equivalent(&p2) && m.equivalent(&p2), "transitive");
        law(
            m.equivalent(&other) == other.equivalent(&m)
                && m.equivalent(&other) == (m.canonical_form() == other.canonical_form()),
            "symmetric on unrelated pair",
        );
        law(m.canonical_form().canonical_form() == m.canonical_form(), "idempotent");
        law(p1.canonical_form() == m.canonical_form(), "permutation invariant");
        let direct = bd.find_in(&m.columns).is_some();
        law(direct == contains_oracle(&m, &bd_m), "bd match agrees with oracle");
        law(direct == contains_oracle(&m.dual(), &bd_dual), "bd iff bd* in S*");
        bd_seen += usize::from(direct);
        checked += 1;
    }
    let detail = format!("{checked} matrices, {bd_seen} contain bd, {} counterexamples", bad.len());
    if bad.is_empty() && checked == 1000 && bd_seen > 0 {
        pass(detail)
    } else {
        fail(format!("{detail} {:?}", bad.first()))
    }
}

fn trace_round_trip(leaf_traces: &[sevencolor_core::Trace]) -> Outcome {
    let mut bad = 0;
    for t in leaf_traces {
        let text = export_trace(t);
        let back = match import_trace(&text) {
            Ok(b) => b,
            Err(_) => {
                bad += 1;
                continue;
            }
        };
        let ok = &back == t
            && export_trace(&back) == text
            && replay(&back).map(|s| state_matrix(&s)).ok() == replay(t).map(|s| state_matrix(&s)).ok();
        if !ok {
            bad += 1;
        }
    }
    let detail = format!("{} leaf traces, {bad} mismatches", leaf_traces.len());
    if leaf_traces.len() == 50 && bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn smoke() -> Outcome {
    let mut results = Vec::new();
    let mut ff = FirstFit;
    let mut s = Session::new(4, &mut ff);
    let r = run_master(&mut s);
    results.push((r.is_ok(), s.state().used_colors().len(), s.state().clique_size()));
    for seed in 0..100 {
        let mut adv = RandomAdversary::new(seed);
        let mut s = Session::new(4, &mut adv);
        let r = run_master(&mut s);
        results.push((r.is_ok(), s.state().used_colors().len(), s.state().clique_size()));
    }
    let good = results.iter().filter(|&&(ok, c, w)| ok && c == 7 && w <= 4).count();
    let detail = format!("{good}/{} games end with exactly 7 colors", results.len());
    if good == results.len() {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let mut leaf_traces = Vec::new();
    let mut all_ok = true;
    let mut report = |name: &str, f: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let o = f();
        all_ok &= o.ok;
        println!(
            "{} {name}: {} ({:.1}s)",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            started.elapsed().as_secs_f64()
        );
    };
    report("forced seven colors, omega 4", &mut || forced_win(&mut leaf_traces));
    report("separation postcondition", &mut separation);
    report("first-fit bound fuzz", &mut first_fit_fuzz);
    report("state algebra laws", &mut state_algebra);
    report("trace round trip", &mut || trace_round_trip(&leaf_traces));
    report("single adversary smoke", &mut smoke);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
