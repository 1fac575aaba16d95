//! Property tests for the combinatorial layer: move involutions, the Weyl
//! action, Okada versus brute force on random rectangles, and JSON
//! round-trips.

use proptest::prelude::*;

use efm_core::half::Weight;
use efm_core::shapes::okada_expand;
use efm_core::symfunc::lr_product_brute;
use efm_core::tableaux::{move_si, tab_family, weight_of, weyl_act, Gen};
use efm_core::{EfmParameters, Partition, SkewShape};

// A pool of small valid parameter sets to draw tableaux from.
fn param_pool() -> Vec<EfmParameters> {
    let mut out = Vec::new();
    for (n, p, q, a, b, xi) in [
        (3, 1, 2, 2, 2, vec![2, 1]),
        (4, 1, 1, 2, 2, vec![]),
        (5, 1, 2, 1, 3, vec![2]),
        (4, 2, 2, 1, 2, vec![1, 1]),
        (6, 1, 2, 2, 2, vec![]),
    ] {
        out.push(EfmParameters::new(n, p, q, a, b, Partition::new(xi).unwrap()).unwrap());
    }
    out
}

proptest! {
    #[test]
    fn move_si_is_an_involution(which in 0usize..5, pick in any::<u64>(), i_raw in any::<u64>()) {
        let pool = param_pool();
        let params = &pool[which];
        let fam = tab_family(params).unwrap();
        let t = &fam[(pick % fam.len() as u64) as usize];
        let i = 1 + (i_raw % (params.n as u64 - 1)) as usize;
        if let Some(u) = move_si(t, i) {
            let back = move_si(&u, i);
            prop_assert_eq!(back.as_ref(), Some(t));
            // weights exchange coordinates i, i+1
            let z = weight_of(t, params);
            prop_assert_eq!(weight_of(&u, params), weyl_act(&[Gen::S(i)], &z));
        } else {
            // blocked exactly when the coordinates differ by one
            let z = weight_of(t, params);
            prop_assert_eq!((z.coord(i) - z.coord(i + 1)).doubled().abs(), 2);
        }
    }

    #[test]
    fn weyl_word_inverts(doubled in prop::collection::vec(-6i64..=6, 1..6), word_raw in prop::collection::vec(any::<u8>(), 0..8)) {
        let z = Weight::from_doubled(doubled.iter().map(|d| d * 2).collect());
        let n = z.len();
        let word: Vec<Gen> = word_raw
            .iter()
            .map(|&b| {
                if n == 1 || b % (n as u8) == 0 {
                    Gen::Gamma
                } else {
                    Gen::S((b % n as u8) as usize)
                }
            })
            .collect();
        let moved = weyl_act(&word, &z);
        let back: Vec<Gen> = word.iter().rev().copied().collect();
        prop_assert_eq!(weyl_act(&back, &moved), z);
    }

    #[test]
    fn okada_matches_brute_force(a in 0usize..=3, b in 0usize..=3, q in 1usize..=2, p_raw in 1usize..=2) {
        let p = p_raw.min(q);
        let nus = okada_expand(a, p, b, q).unwrap();
        for nu in &nus {
            prop_assert_eq!(nu.size(), p * a + q * b);
        }
        let lr = lr_product_brute(
            &Partition::new(vec![a; p]).unwrap(),
            &Partition::new(vec![b; q]).unwrap(),
            p + q,
        )
        .unwrap();
        prop_assert_eq!(lr.len(), nus.len());
        for nu in &nus {
            prop_assert_eq!(lr.get(nu), Some(&1));
        }
    }

    #[test]
    fn shape_json_roundtrip(outer in prop::collection::vec(0usize..=5, 1..5)) {
        let mut sorted = outer.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        let outer = Partition::new(sorted.clone()).unwrap();
        let inner = Partition::new(sorted.iter().map(|&x| x / 2).collect()).unwrap();
        let shape = SkewShape::new(outer, inner).unwrap();
        let js = serde_json::to_string(&shape).unwrap();
        let back: SkewShape = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, shape);
    }

    #[test]
    fn weight_json_roundtrip(doubled in prop::collection::vec(-9i64..=9, 0..6)) {
        let z = Weight::from_doubled(doubled);
        let js = serde_json::to_string(&z).unwrap();
        let back: Weight = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, z);
    }
}
