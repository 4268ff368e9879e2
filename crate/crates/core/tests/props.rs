//! Property tests for the structural invariants: pair antisymmetry, induced
//! composition, transform group laws, and serialization round-trips.

use proptest::prelude::*;

use gdr_core::digraph::{Digraph, PairType};
use gdr_core::ep::random_digraph;
use gdr_core::transform::Transform;

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_digraph(n, seed))
}

proptest! {
    #[test]
    fn pair_orientation_is_antisymmetric(g in arb_digraph(9)) {
        let n = g.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if x == y { continue; }
                let forward = g.pair_type(x, y).unwrap();
                let backward = g.pair_type(y, x).unwrap();
                prop_assert_eq!(forward, backward.reversed());
                prop_assert_eq!(forward == PairType::Out, backward == PairType::In);
            }
        }
    }

    #[test]
    fn induced_composes_with_relabelling(g in arb_digraph(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = g.vertex_count();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut s: Vec<usize> = (0..n).collect();
        s.shuffle(&mut rng);
        s.truncate(n - 1);
        let mut t: Vec<usize> = (0..s.len()).collect();
        t.shuffle(&mut rng);
        t.truncate(s.len().saturating_sub(1));
        let lhs = g.induced(&s).unwrap().induced(&t).unwrap();
        let composed: Vec<usize> = t.iter().map(|&i| s[i]).collect();
        prop_assert_eq!(lhs, g.induced(&composed).unwrap());
    }

    #[test]
    fn switch_is_an_involution(g in arb_digraph(9), picks in prop::collection::vec(any::<bool>(), 9)) {
        let a: Vec<usize> = (0..g.vertex_count()).filter(|&v| picks[v]).collect();
        let sw = Transform::switch(a);
        prop_assert_eq!(sw.apply(&sw.apply(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn reverse_is_an_involution(g in arb_digraph(9)) {
        let r = Transform::Reverse;
        prop_assert_eq!(r.apply(&r.apply(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn rot_has_order_dividing_three(g in arb_digraph(9), labels in prop::collection::vec(0u8..3, 9)) {
        let n = g.vertex_count();
        let mut pieces: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for v in 0..n {
            pieces[labels[v] as usize].push(v);
        }
        let [a, b, c] = pieces;
        let rot = Transform::rot(a, b, c);
        let mut cur = g.clone();
        for _ in 0..3 {
            cur = rot.apply(&cur).unwrap();
        }
        prop_assert_eq!(cur, g);
    }

    #[test]
    fn isomorphism_agrees_with_exhaustive_search_on_four_vertices(
        s1 in any::<u64>(),
        s2 in any::<u64>(),
        same in any::<bool>(),
    ) {
        use itertools::Itertools;
        let g = random_digraph(4, s1);
        let h = if same {
            // A relabelled copy, so positives show up often.
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s2);
            let mut p: Vec<usize> = (0..4).collect();
            p.shuffle(&mut rng);
            g.relabelled(&p).unwrap()
        } else {
            random_digraph(4, s2)
        };
        let brute = (0..4).permutations(4).any(|p| {
            (0..4).all(|x| (0..4).filter(|&y| y != x).all(|y| {
                g.pair_type(x, y).unwrap() == h.pair_type(p[x], p[y]).unwrap()
            }))
        });
        prop_assert_eq!(g.is_isomorphic(&h).is_some(), brute);
    }

    #[test]
    fn digraph_json_round_trips(g in arb_digraph(10)) {
        let text = g.to_json();
        prop_assert_eq!(Digraph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn transform_json_round_trips(g in arb_digraph(6), picks in prop::collection::vec(any::<bool>(), 6)) {
        let a: Vec<usize> = (0..g.vertex_count()).filter(|&v| picks[v]).collect();
        let t = Transform::compose(vec![
            Transform::Reverse,
            Transform::switch(a),
            Transform::GraphReverse,
        ]);
        let parsed = Transform::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(parsed.apply(&g).unwrap(), t.apply(&g).unwrap());
        prop_assert_eq!(parsed, t);
    }

    #[test]
    fn graph_switch_cut_is_symmetric(g in arb_digraph(8), picks in prop::collection::vec(any::<bool>(), 8)) {
        let n = g.vertex_count();
        let a: Vec<usize> = (0..n).filter(|&v| picks[v]).collect();
        let complement: Vec<usize> = (0..n).filter(|&v| !picks[v]).collect();
        prop_assert_eq!(
            Transform::GraphSwitch { a }.apply(&g).unwrap(),
            Transform::GraphSwitch { a: complement }.apply(&g).unwrap()
        );
    }
}
