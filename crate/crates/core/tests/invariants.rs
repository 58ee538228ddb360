use ilmt::census;
use ilmt::embed::{embed_full, verify_embedding};
use ilmt::generator::{generate, ilmt_step, GeneratingSequence, StepKind};
use ilmt::iso::{automorphism_count, is_isomorphic};
use ilmt::props::{self, Direction};
use ilmt::pursuit;
use ilmt::Tournament;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tournament(n: usize, seed: u64) -> Tournament {
    Tournament::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn arb_tournament(lo: usize, hi: usize) -> impl Strategy<Value = Tournament> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| tournament(n, seed))
}

fn arb_sequence(max_len: usize) -> impl Strategy<Value = GeneratingSequence> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(GeneratingSequence::new)
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reverse_is_an_involution(g in arb_tournament(1, 70)) {
        prop_assert_eq!(g.reverse().reverse(), g.clone());
        prop_assert_eq!(g.reverse().arc_count(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn step_shape(g in arb_tournament(1, 40), zero in any::<bool>()) {
        let kind = StepKind::from_bit(!zero);
        let n = g.n();
        let (h, map) = ilmt_step(&g, kind).unwrap();
        prop_assert_eq!(h.n(), 2 * n);
        let parents: Vec<usize> = (0..n).collect();
        let clones: Vec<usize> = (0..n).map(|x| map.clone_of(x)).collect();
        prop_assert_eq!(h.induced(&parents).unwrap(), g.clone());
        let block = h.induced(&clones).unwrap();
        prop_assert_eq!(block, if zero { g.reverse() } else { g.clone() });
        for x in 0..n {
            prop_assert!(h.has_arc(map.clone_of(x), x));
            for y in (0..n).filter(|&y| y != x) {
                prop_assert_eq!(h.has_arc(map.clone_of(x), y), g.has_arc(x, y));
            }
        }
    }

    #[test]
    fn steps_commute_with_relabelling(
        (g, perm) in (2usize..=20, any::<u64>()).prop_flat_map(|(n, s)| (Just(tournament(n, s)), arb_perm(n))),
        zero in any::<bool>(),
    ) {
        let kind = StepKind::from_bit(!zero);
        let n = g.n();
        let a = ilmt_step(&g, kind).unwrap().0;
        let b = ilmt_step(&g.permuted(&perm).unwrap(), kind).unwrap().0;
        // x goes to perm[x] and its clone to the clone of perm[x]
        let f = |u: usize| if u < n { perm[u] } else { perm[u - n] + n };
        for u in 0..2 * n {
            for v in (0..2 * n).filter(|&v| v != u) {
                prop_assert_eq!(a.has_arc(u, v), b.has_arc(f(u), f(v)));
            }
        }
    }

    #[test]
    fn isomorphism_is_symmetric_and_sees_relabelling(
        (g, perm) in (1usize..=8, any::<u64>()).prop_flat_map(|(n, s)| (Just(tournament(n, s)), arb_perm(n))),
        other in any::<u64>(),
    ) {
        let p = g.permuted(&perm).unwrap();
        prop_assert_eq!(p.degree_profile(), g.degree_profile());
        let map = is_isomorphic(&g, &p).unwrap().expect("relabelling is an isomorphism");
        for (u, v) in g.arcs() {
            prop_assert!(p.has_arc(map[u], map[v]));
        }
        let h = tournament(g.n(), other);
        prop_assert_eq!(
            is_isomorphic(&g, &h).unwrap().is_some(),
            is_isomorphic(&h, &g).unwrap().is_some()
        );
    }

    #[test]
    fn automorphism_groups_are_odd(g in arb_tournament(1, 7)) {
        let a = automorphism_count(&g).unwrap();
        prop_assert_eq!(a % 2, 1);
        prop_assert_eq!(factorial(g.n() as u64) % a, 0);
    }

    #[test]
    fn three_census(g in arb_tournament(3, 70)) {
        let c = census::census3(&g);
        prop_assert_eq!(c, census::census3_naive(&g));
        prop_assert_eq!(c.a + c.b, census::binom(g.n() as u64, 3));
    }

    #[test]
    fn four_census(g in arb_tournament(4, 24)) {
        let c = census::census4(&g).unwrap();
        prop_assert_eq!(c, census::census4_enumerate(&g).unwrap());
        prop_assert_eq!(c.total(), census::binom(g.n() as u64, 4));
    }

    #[test]
    fn recurrence_tracks_generation(g in arb_tournament(3, 8), s in arb_sequence(4)) {
        let rows = census::census3_recurrence(g.n() as u64, census::census3(&g).a, &s, s.len()).unwrap();
        let (h, _) = generate(&g, &s, s.len()).unwrap();
        let c = census::census3(&h);
        let last = rows.last().unwrap();
        prop_assert_eq!(&last.a, &BigUint::from(c.a));
        prop_assert_eq!(&last.b, &BigUint::from(c.b));
    }

    #[test]
    fn diameter_three_after_a_zero_step(g in arb_tournament(3, 16), s in arb_sequence(2)) {
        prop_assume!(g.sink().is_none());
        let mut bits = vec![false];
        bits.extend(s.bits());
        let s = GeneratingSequence::new(bits);
        let (h, _) = generate(&g, &s, s.len()).unwrap();
        let d = props::diameter(&h);
        prop_assert!(matches!(d, Some(1..=3)), "diameter {:?}", d);
    }

    #[test]
    fn connectivity_matches_cut_enumeration(g in arb_tournament(2, 10)) {
        let fast = props::connectivity(&g).unwrap();
        prop_assert_eq!(fast.kappa, props::connectivity_by_enumeration(&g).unwrap().kappa);
        prop_assert_eq!(fast.cut.len(), fast.kappa);
        if fast.kappa > 0 {
            prop_assert!(props::separates(&g, &fast.cut).unwrap());
        }
    }

    #[test]
    fn out_domination_survives_steps(g in arb_tournament(1, 6), s in arb_sequence(3)) {
        let (h, _) = generate(&g, &s, s.len()).unwrap();
        prop_assert_eq!(
            props::domination(&h, Direction::Out).unwrap().gamma,
            props::domination(&g, Direction::Out).unwrap().gamma
        );
    }

    #[test]
    fn domination_witnesses(g in arb_tournament(1, 30)) {
        for dir in [Direction::In, Direction::Out] {
            let d = props::domination(&g, dir).unwrap();
            prop_assert_eq!(d.set.len(), d.gamma);
            prop_assert!(props::is_dominating(&g, &d.set, dir).unwrap());
        }
        let one = props::domination(&g, Direction::In).unwrap().gamma == 1;
        prop_assert_eq!(one, g.source().is_some());
    }

    #[test]
    fn colourings_are_proper(g in arb_tournament(1, 14)) {
        let exact = props::chromatic_number(&g).unwrap();
        let greedy = props::greedy_coloring(&g);
        prop_assert!(exact.exact);
        prop_assert!(exact.chi <= greedy.chi);
        prop_assert!(props::is_proper_coloring(&g, &exact.classes));
        prop_assert!(props::is_proper_coloring(&g, &greedy.classes));
    }

    #[test]
    fn cops_within_in_domination(g in arb_tournament(1, 7)) {
        // cops on an in-dominating set catch the robber on their first move
        let r = pursuit::cop_number(&g).unwrap();
        prop_assert!(r.cop_number <= props::domination(&g, Direction::In).unwrap().gamma);
        prop_assert!(pursuit::verify_strategy(&g, &r.certificate));
    }

    #[test]
    fn embeddings_verify(
        base in arb_tournament(4, 6),
        target in arb_tournament(1, 4),
        ones in prop::collection::vec(0usize..3, 4),
    ) {
        // 0-steps with some 1-steps in between
        let mut bits = Vec::new();
        for k in ones {
            bits.extend(std::iter::repeat_n(true, k));
            bits.push(false);
        }
        let s = GeneratingSequence::new(bits);
        let e = embed_full(&base, &s, &target).unwrap();
        prop_assert!(verify_embedding(&e));
        prop_assert_eq!(e.zeros_used, target.n());
        prop_assert_eq!(e.host_order, base.n() << e.steps);
        let induced = e.host.induced(&e.image).unwrap();
        prop_assert_eq!(induced, target);
    }
}
