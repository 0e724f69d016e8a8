mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sevencolor_core::matrix::Column;
use sevencolor_core::trace::TraceMove;
use sevencolor_core::{
    export_trace, import_trace, replay, state_matrix, Color, ColorSet, Coord, RandomAdversary,
    Session, Side, StateMatrix, Trace,
};

use common::{contains_oracle, dual_oracle, permute, random_perm, random_state, separation_holds};

fn coord(num: u128, exp: u32) -> Coord {
    Coord::new(num % (1u128 << exp), exp).unwrap()
}

fn arb_matrix() -> impl Strategy<Value = StateMatrix> {
    prop::collection::vec((any::<bool>(), 0usize..7), 0..16).prop_map(|cols| {
        StateMatrix::new(
            cols.into_iter()
                .map(|(s, c)| Column {
                    side: if s { Side::Right } else { Side::Left },
                    color: Color::ALL[c],
                })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn midpoint_lies_strictly_between(a in 0u128..1 << 40, b in 0u128..1 << 40, e in 40u32..60) {
        prop_assume!(a != b);
        let (lo, hi) = (coord(a.min(b), e), coord(a.max(b), e));
        let m = Coord::midpoint(lo, hi).unwrap();
        prop_assert!(lo < m && m < hi);
        prop_assert_eq!(m.reflect().reflect(), m);
        prop_assert_eq!(m.to_string().parse::<Coord>().unwrap(), m);
        prop_assert!(Coord::midpoint(hi, lo).is_err());
    }

    #[test]
    fn matrix_laws(m in arb_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = permute(&m, &random_perm(&mut rng));
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual(), dual_oracle(&m));
        prop_assert_eq!(m.canonical_form().canonical_form(), m.canonical_form());
        prop_assert_eq!(p.canonical_form(), m.canonical_form());
        prop_assert!(m.equivalent(&p) && p.equivalent(&m));
        prop_assert_eq!(m.dual().canonical_form().len(), m.len());
    }

    #[test]
    fn pattern_found_iff_dual_found_in_dual(m in arb_matrix(), name in 0usize..8) {
        let pat = &sevencolor_core::Pattern::all()[name];
        let pm = pat.matrix();
        let direct = pat.find_in(&m.columns).is_some();
        prop_assert_eq!(direct, contains_oracle(&m, &pm));
        prop_assert_eq!(direct, contains_oracle(&m.dual(), &pm.dual()));
    }

    #[test]
    fn random_games_stay_legal(seed in any::<u64>(), omega in 1usize..=5, n in 1usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, omega, n);
        let ivs = s.intervals();
        prop_assert!(s.clique_size() <= omega);
        for (i, p) in ivs.iter().enumerate() {
            for q in &ivs[..i] {
                prop_assert!(!(q.lo < p.lo && p.hi < q.hi) && !(p.lo < q.lo && q.hi < p.hi));
                if p.meets(q.lo, q.hi) {
                    prop_assert_ne!(p.color, q.color);
                }
            }
        }
        // Walls only cut the matrix.
        prop_assert!(state_matrix(&s).len() <= 2 * ivs.len());
    }

    #[test]
    fn random_traces_round_trip(seed in any::<u64>(), n in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, 4, n);
        let mut t = Trace::new(4);
        let mut moves: Vec<_> = s.intervals().to_vec();
        moves.sort_by_key(|iv| iv.move_index);
        t.moves = moves
            .iter()
            .map(|iv| TraceMove { lo: iv.lo, hi: iv.hi, color: iv.color, walls: None })
            .collect();
        let back = import_trace(&export_trace(&t)).unwrap();
        prop_assert_eq!(&back, &t);
        let replayed = replay(&back).unwrap();
        prop_assert_eq!(replayed.intervals(), moves.as_slice());
    }

    #[test]
    fn separation_postcondition(seed in any::<u64>(), k in 1usize..=6, ybits in 0u8..128) {
        let y: ColorSet = Color::ALL.into_iter().filter(|c| ybits >> c.index() & 1 == 1).collect();
        let gaps = (
            ("1/2^4".parse().unwrap(), "5/2^4".parse().unwrap()),
            ("9/2^4".parse().unwrap(), "15/2^4".parse().unwrap()),
        );
        let mut adv = RandomAdversary::new(seed);
        let mut s = Session::new(7, &mut adv);
        let r = s.separate(k, y, gaps.0, gaps.1).unwrap();
        let placed: Vec<_> = s.state().intervals().iter().map(|iv| (iv.lo, iv.hi, iv.color)).collect();
        prop_assert_eq!(placed.len(), k);
        prop_assert_eq!(separation_holds(&placed, gaps, y, r.threshold_j), Ok(()));
    }
}
