use proptest::prelude::*;
use sdepth_core::format::{parse_ideal, render_ideal_structured, render_ideal_text};
use sdepth_core::{minimalize, sdepth_ideal, sdepth_quotient, Monomial, MonomialIdeal, SearchConfig};

const PROBE: u32 = 6;

fn ideal_strategy(max_arity: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_arity).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..=4)
            .prop_map(move |gens| {
                let gens = gens.into_iter().map(|e| Monomial::new(e).unwrap());
                minimalize(n, gens).unwrap()
            })
    })
}

fn pair_strategy() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1..=3usize).prop_flat_map(|n| {
        let one = prop::collection::vec(prop::collection::vec(0..=3u32, n), 0..=4);
        (one.clone(), one).prop_map(move |(a, b)| {
            let mk = |v: Vec<Vec<u32>>| minimalize(n, v.into_iter().map(|e| Monomial::new(e).unwrap())).unwrap();
            (mk(a), mk(b))
        })
    })
}

fn probe_points(n: usize) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=PROBE).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|e| Monomial::new(e).unwrap()).collect()
}

fn member(i: &MonomialIdeal, w: &Monomial) -> bool {
    i.generators().iter().any(|g| g.divides(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_intersection_are_union_and_meet((a, b) in pair_strategy()) {
        let s = a.sum(&b).unwrap();
        let m = a.intersect(&b).unwrap();
        for w in probe_points(a.arity()) {
            prop_assert_eq!(member(&s, &w), member(&a, &w) || member(&b, &w));
            prop_assert_eq!(member(&m, &w), member(&a, &w) && member(&b, &w));
        }
    }

    #[test]
    fn product_matches_pairwise_divisibility((a, b) in pair_strategy()) {
        let p = a.product(&b).unwrap();
        for w in probe_points(a.arity()) {
            let expected = a.generators().iter().any(|x| {
                b.generators().iter().any(|y| x.mul(y).unwrap().divides(&w).unwrap())
            });
            prop_assert_eq!(member(&p, &w), expected);
        }
    }

    #[test]
    fn colon_duality((a, b) in pair_strategy()) {
        let c = a.colon_ideal(&b).unwrap();
        for w in probe_points(a.arity()) {
            let expected = b.generators().iter().all(|v| member(&a, &w.mul(v).unwrap()));
            prop_assert_eq!(member(&c, &w), expected);
            if let Some(v) = b.generators().first() {
                let single = a.colon(v).unwrap();
                prop_assert_eq!(member(&single, &w), member(&a, &w.mul(v).unwrap()));
            }
        }
    }

    #[test]
    fn saturation_laws(i in ideal_strategy(3, 3)) {
        let sat = i.saturate();
        prop_assert_eq!(sat.saturate(), sat.clone());
        prop_assert!(sat.contains_ideal(&i).unwrap());
        // w is in the saturation iff a high power of every variable pushes it into I
        let n = i.arity();
        for w in probe_points(n) {
            let pushed = (0..n).all(|j| {
                let mut e = w.exponents().to_vec();
                e[j] += 4;
                member(&i, &Monomial::new(e).unwrap())
            });
            prop_assert_eq!(member(&sat, &w), pushed);
        }
    }

    #[test]
    fn minimalize_is_a_fixed_point(i in ideal_strategy(3, 3)) {
        let again = minimalize(i.arity(), i.generators().to_vec()).unwrap();
        prop_assert_eq!(&again, &i);
        for (x, y) in i.generators().iter().zip(i.generators().iter().skip(1)) {
            prop_assert!(x < y);
        }
        for x in i.generators() {
            for y in i.generators() {
                prop_assert!(x == y || !x.divides(y).unwrap());
            }
        }
    }

    #[test]
    fn encodings_round_trip(i in ideal_strategy(4, 3)) {
        prop_assert_eq!(parse_ideal(&render_ideal_text(&i)).unwrap(), i.clone());
        prop_assert_eq!(parse_ideal(&render_ideal_structured(&i)).unwrap(), i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sdepth_is_invariant_under_relabeling(i in ideal_strategy(3, 2), seed in 0usize..6) {
        prop_assume!(!i.is_zero());
        let n = i.arity();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed % n);
        if seed >= 3 {
            perm.reverse();
        }
        let j = i.permuted(&perm).unwrap();
        let cfg = SearchConfig::default();
        prop_assert_eq!(sdepth_ideal(&i, &cfg).unwrap().s, sdepth_ideal(&j, &cfg).unwrap().s);
        if !i.is_unit() {
            let ring = MonomialIdeal::unit(n);
            prop_assert_eq!(
                sdepth_quotient(&ring, &i, &cfg).unwrap().s,
                sdepth_quotient(&ring, &j, &cfg).unwrap().s
            );
        }
    }
}
