use std::cmp::Ordering;

use betagap::analytics::DEFAULT_TOL;
use betagap::cli::parse_spec;
use betagap::covers::labeled_iso;
use betagap::seqcore::least_period;
use betagap::*;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn ep_word(
    max_pre: usize,
    max_per: usize,
    letters: std::ops::RangeInclusive<u32>,
) -> impl Strategy<Value = EpWord> {
    (
        prop::collection::vec(letters.clone(), 0..=max_pre),
        prop::collection::vec(letters, 1..=max_per),
    )
        .prop_map(|(pre, per)| EpWord::new(pre, per))
}

/// Valid expansions of 1: finite or eventually periodic.
fn valid_parry() -> impl Strategy<Value = ParrySeq> {
    let finite = prop::collection::vec(0u32..=1, 0..=9).prop_map(|mid| {
        let mut d = vec![1];
        d.extend(mid);
        d.push(1);
        ParrySeq::finite(d).unwrap()
    });
    let periodic = ep_word(5, 4, 0..=1)
        .prop_filter("starts with 1", |w| w.letter(0) == 1 && !w.is_eventually(0))
        .prop_map(ParrySeq::Periodic);
    prop_oneof![finite, periodic].prop_filter("valid", |s| validate_parry(s).is_valid())
}

fn sofic_gap() -> impl Strategy<Value = GapSet> {
    let finite = prop::collection::btree_set(1usize..10, 1..5).prop_map(|rest| {
        let mut v = vec![0];
        v.extend(rest);
        GapSet::from_list(&v).unwrap()
    });
    let periodic = ep_word(3, 3, 1..=4).prop_map(|w| GapSet::periodic(0, w).unwrap());
    prop_oneof![finite, periodic]
}

fn prefix_cmp(u: &EpWord, v: &EpWord, n: usize) -> Ordering {
    u.prefix(n).cmp(&v.prefix(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_is_unique(w in ep_word(4, 4, 0..=2), extra in 0usize..3) {
        let mut pre = w.pre().to_vec();
        for _ in 0..extra {
            pre.extend_from_slice(w.period());
        }
        let mut per = w.period().to_vec();
        per.extend_from_slice(w.period());
        prop_assert_eq!(EpWord::new(pre, per), w);
    }

    #[test]
    fn shift_agrees_with_letters(w in ep_word(4, 4, 0..=2), k in 0usize..12) {
        let s = w.shift(k);
        for i in 0..20 {
            prop_assert_eq!(s.letter(i), w.letter(i + k));
        }
    }

    #[test]
    fn compare_matches_long_prefix(u in ep_word(4, 4, 0..=2), v in ep_word(4, 4, 0..=2)) {
        prop_assert_eq!(lex_compare(&u, &v), prefix_cmp(&u, &v, 200));
        prop_assert_eq!(lex_compare(&u, &v), lex_compare(&v, &u).reverse());
    }

    #[test]
    fn round_trip_through_gap(s in valid_parry()) {
        let g = ass_of_beta(&s).unwrap();
        prop_assert_eq!(star_condition(&g).unwrap(), StarVerdict::Holds);
        let r = ass_of_gap(&g).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.parry, s);
    }

    #[test]
    fn star_iff_partner(s in sofic_gap()) {
        let star = star_condition(&s).unwrap();
        match ass_of_gap(&s) {
            Ok(r) => {
                prop_assert!(star.holds());
                if r.exact {
                    prop_assert_eq!(ass_of_beta(&r.parry).unwrap(), normalize(&s));
                }
            }
            Err(Error::StarFails(n)) => prop_assert_eq!(star, StarVerdict::FailsAt(n)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn zeta_relation(s in valid_parry()) {
        let g = ass_of_beta(&s).unwrap();
        let zb = zeta_beta(&s).unwrap();
        let zg = zeta_gap(&g).unwrap();
        if s.is_full_shift() || matches!(s, ParrySeq::Finite(_)) {
            prop_assert_eq!(zb, zg);
        } else {
            prop_assert_eq!(zb, zg.mul_poly(&Poly::new(vec![1, -1])).unwrap());
        }
    }

    #[test]
    fn entropy_agrees_across_correspondence(s in valid_parry()) {
        let b = entropy_beta(&s, DEFAULT_TOL).unwrap();
        let g = entropy_gap(&ass_of_beta(&s).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!((b.mid() - g.mid()).abs() <= 2.0 * DEFAULT_TOL);
        prop_assert!(b.width() <= DEFAULT_TOL && g.width() <= DEFAULT_TOL);
    }

    #[test]
    fn levels_of_images(s in valid_parry()) {
        let level = equivalence_level(&s, &ass_of_beta(&s).unwrap()).unwrap().level;
        let expected = if classify_beta(&s) == BetaClass::Sft {
            EquivalenceLevel::Conjugate
        } else {
            EquivalenceLevel::RRAlmostConjugate
        };
        prop_assert_eq!(level, expected);
    }

    #[test]
    fn relabelled_beta_cover_is_gap_cover(s in valid_parry()) {
        let relabeled = betagap::covers::relabel_to_gap(&fischer_beta(&s, None).unwrap()).unwrap();
        let cover = fischer_gap(&ass_of_beta(&s).unwrap(), None).unwrap().graph;
        prop_assert!(labeled_iso(&relabeled, &cover).unwrap().is_some());
    }

    #[test]
    fn covers_are_fischer(s in sofic_gap()) {
        let f = betagap::covers::check_presentation(&fischer_gap(&s, None).unwrap().graph);
        prop_assert!(f.right_resolving && f.irreducible && f.follower_separated);
    }

    #[test]
    fn min_factor_is_a_factor(s in sofic_gap()) {
        let g = fischer_gap(&s, None).unwrap().graph.underlying();
        let f = betagap::covers::min_factor_matrix(&g);
        for (p, block) in f.partition.blocks.iter().enumerate() {
            for &v in block {
                for (q, target) in f.partition.blocks.iter().enumerate() {
                    let c: u32 = target.iter().map(|&u| g[v][u]).sum();
                    prop_assert_eq!(c, f.quotient[p][q]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_matches_brute_force(s in sofic_gap(), b in valid_parry()) {
        let n = 9;
        let zg = series_pn(&zeta_gap(&s).unwrap(), n).unwrap().counts;
        let zb = series_pn(&zeta_beta(&b).unwrap(), n).unwrap().counts;
        for k in 1..=n {
            prop_assert_eq!(zg[k - 1], periodic_count(System::Gap(&s), k).unwrap(), "gap {} n = {}", s, k);
            prop_assert_eq!(zb[k - 1], periodic_count(System::Beta(&b), k).unwrap(), "beta {} n = {}", b, k);
        }
    }

    #[test]
    fn family_repeats_d_word(s in valid_parry(), j in 0usize..4) {
        prop_assume!(matches!(s, ParrySeq::Finite(_)));
        let s0 = ass_of_beta(&s).unwrap();
        let sj = family_sj(&s0, j).unwrap();
        prop_assert_eq!(d_word(&sj).unwrap(), d_word(&s0).unwrap().repeat(j + 1));
        let q0 = min_factor(&fischer_gap(&s0, None).unwrap().graph).quotient;
        let qj = min_factor(&fischer_gap(&sj, None).unwrap().graph).quotient;
        prop_assert!(graph_iso(&q0, &qj).unwrap().is_some());
    }

    #[test]
    fn non_primitive_blocks(values in prop::collection::btree_set(1usize..12, 1..6)) {
        let mut v = vec![0];
        v.extend(values);
        let s = GapSet::from_list(&v).unwrap();
        let d = d_word(&s).unwrap();
        let f = min_factor(&fischer_gap(&s, None).unwrap().graph);
        let root = least_period(&d);
        prop_assert_eq!(f.partition.blocks.len(), if root == d.len() { v[v.len() - 1] + 1 } else { v[root] });
    }

    #[test]
    fn iso_recovers_permutation(
        m in prop::collection::vec(prop::collection::vec(0u32..3, 6), 6),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mut h = vec![vec![0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                h[perm[i]][perm[j]] = m[i][j];
            }
        }
        let f = graph_iso(&m, &h).unwrap().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                prop_assert_eq!(m[i][j], h[f[i]][f[j]]);
            }
        }
    }

    #[test]
    fn convergents_alternate(s in sofic_gap()) {
        let x = xs_value(&s, 12);
        let c = &x.convergents;
        for k in 1..c.len() {
            let mut den = Vec::new();
            for r in [&c[k - 1], &c[k]] {
                den.push(r.denom().clone());
            }
            let gap = (&c[k] - &c[k - 1]).abs();
            prop_assert_eq!(gap, BigRational::new(1.into(), &den[0] * &den[1]));
            if k >= 2 {
                let a = &c[k - 1] - &c[k - 2];
                let b = &c[k] - &c[k - 1];
                prop_assert!(a.is_positive() != b.is_positive() || b == BigRational::from_integer(0.into()));
            }
        }
        prop_assert!(!c.is_empty() && c[0].denom().is_one());
    }

    #[test]
    fn witnesses_are_labelled_correctly(s in sofic_gap(), m in 1usize..4) {
        match cantor_witness(&s, m) {
            Ok(w) => {
                prop_assert!(star_condition(&w.inside).unwrap().holds());
                prop_assert!(!star_condition(&w.outside).unwrap().holds());
            }
            Err(Error::StarFails(_)) => prop_assert!(!star_condition(&s).unwrap().holds()),
            Err(Error::NonzeroS0) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn specs_print_and_parse(s in sofic_gap(), b in valid_parry()) {
        for text in [format!("gap:{s}"), format!("beta:{b}")] {
            prop_assert_eq!(parse_spec(&text).unwrap().to_string(), text);
        }
    }
}

#[test]
fn counts_do_not_depend_on_threads() {
    let s: GapSet = "0;1,(2,3)*".parse().unwrap();
    let count = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| periodic_count(System::Gap(&s), 16).unwrap())
    };
    assert_eq!(count(1), count(4));
}

#[test]
fn gap_graphs_round_trip_through_json() {
    for spec in ["{0,2,3}", "0;1,(2)*", "0;(2,1)*"] {
        let g = fischer_gap(&spec.parse().unwrap(), None).unwrap().graph;
        assert_eq!(LabeledGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
