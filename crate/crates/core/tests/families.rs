use std::collections::BTreeSet;

use graftwood::{
    admissible_cuts, count_indexings, cut_split, generate_set, generate_trees, membership, oracle_count_indexings,
    signature_of, Algebra, FamilySelector, OrderedForest, PlaneTree, Signature,
};

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn forest(s: &str) -> OrderedForest {
    s.parse().unwrap()
}

#[test]
fn g_counts_follow_central_binomials() {
    for k in 1..=8u128 {
        let trees = generate_trees(FamilySelector::G, k as usize).unwrap().len() as u128;
        let forests = generate_set(FamilySelector::G, k as usize, None).unwrap().len() as u128;
        assert_eq!(trees, binomial(2 * k - 2, k - 1), "trees at {k}");
        assert_eq!(forests, binomial(2 * k, k) / 2, "forests at {k}");
    }
}

#[test]
fn signature_sets_are_disjoint() {
    for n in 1..=7 {
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for sig in Signature::all(n) {
            let set = generate_set(FamilySelector::G, n, Some(&sig)).unwrap();
            total += set.len();
            seen.extend(set);
        }
        assert_eq!(seen.len(), total, "degree {n}");
    }
}

#[test]
fn signature_recovers_the_generating_word() {
    for n in 1..=7 {
        for sig in Signature::all(n) {
            for f in generate_set(FamilySelector::G, n, Some(&sig)).unwrap() {
                assert_eq!(signature_of(&f).unwrap(), sig, "{f}");
            }
        }
    }
}

#[test]
fn forest_membership_splits_over_trees() {
    for n in 1..=7 {
        for f in Algebra::Binfty.basis(n).iter() {
            let trees = f.factors().unwrap();
            let first = membership(FamilySelector::G, &OrderedForest::from(trees[0].clone()));
            let rest = trees[1..].iter().all(|t| membership(FamilySelector::G0, &OrderedForest::from(t.clone())));
            assert_eq!(membership(FamilySelector::G, f), first && rest, "{f}");
        }
    }
}

#[test]
fn single_vertex_is_in_both_t_halves() {
    let v = forest("1");
    assert!(membership(FamilySelector::Tplus, &v));
    assert!(membership(FamilySelector::Tminus, &v));
}

#[test]
fn forests_that_are_not_blocks_are_rejected() {
    for s in ["2 1", "1[3] 2", "3[1] 2"] {
        assert!(!membership(FamilySelector::G, &forest(s)), "{s}");
    }
}

#[test]
fn plus_trees_form_a_monoid() {
    let trees: Vec<OrderedForest> =
        (1..=6).flat_map(|d| Algebra::B0.generators(d).iter().cloned().map(OrderedForest::from).collect::<Vec<_>>()).collect();
    for a in &trees {
        for b in &trees {
            if a.degree() + b.degree() > 7 {
                continue;
            }
            let f = a.concat(b);
            assert!(signature_of(&f).unwrap().is_all_plus(), "{f}");
            assert!(membership(FamilySelector::G0, &f), "{f}");
        }
    }
    for n in 1..=7 {
        for f in generate_set(FamilySelector::G0, n, None).unwrap() {
            let parts = f.factors().unwrap();
            assert!(parts.iter().all(|t| Algebra::B0.is_generator(t)), "{f}");
            let rebuilt = parts.iter().fold(OrderedForest::empty(), |acc, t| acc.concat(&OrderedForest::from(t.clone())));
            assert_eq!(rebuilt, f);
        }
    }
}

#[test]
fn trunks_of_plus_trees_stay_plus() {
    for n in 1..=7 {
        for t in Algebra::B0.generators(n).iter() {
            let f = OrderedForest::from(t.clone());
            for cut in admissible_cuts(&f) {
                let (_, roo) = cut_split(&f, &cut).unwrap();
                assert!(roo.is_empty() || (roo.is_tree() && membership(FamilySelector::G0, &roo)), "{f}: {roo}");
            }
        }
    }
}

#[test]
fn some_pruned_part_of_a_plus_tree_leaves_the_family() {
    let escapes = Algebra::B0.generators(3).iter().any(|t| {
        let f = OrderedForest::from(t.clone());
        admissible_cuts(&f).iter().any(|c| {
            let (lea, _) = cut_split(&f, c).unwrap();
            !lea.is_empty() && !Algebra::B0.contains(&lea)
        })
    });
    assert!(escapes);
}

#[test]
fn t_halves_have_equal_size() {
    let union = [1, 2, 6, 22, 90, 394, 1806];
    for k in 1..=7 {
        let plus = generate_set(FamilySelector::Tplus, k, None).unwrap();
        let minus = generate_set(FamilySelector::Tminus, k, None).unwrap();
        assert_eq!(plus.len(), minus.len(), "degree {k}");
        let all: BTreeSet<_> = plus.iter().chain(minus.iter()).cloned().collect();
        assert_eq!(all.len(), union[k - 1], "degree {k}");
        assert_eq!(generate_set(FamilySelector::T, k, None).unwrap().len(), union[k - 1]);
    }
}

#[test]
fn right_graft_trees_up_to_degree_four() {
    let want: [&[&str]; 4] = [
        &["1"],
        &["1[2]"],
        &["1[2 3]", "1[3[2]]"],
        &["1[2 3 4]", "1[3[2] 4]", "1[4[2 3]]", "1[2 4[3]]", "1[4[3[2]]]"],
    ];
    for (d, expected) in want.iter().enumerate() {
        let got: BTreeSet<OrderedForest> = generate_set(FamilySelector::Br, d + 1, None).unwrap().into_iter().collect();
        let expected: BTreeSet<OrderedForest> = expected.iter().map(|s| forest(s)).collect();
        assert_eq!(got, expected, "degree {}", d + 1);
        assert!(got.iter().all(|f| f.leftmost_root() == Some(1)));
    }
    for (n, &c) in [1, 1, 2, 5, 14, 42, 132].iter().enumerate() {
        assert_eq!(generate_set(FamilySelector::Br, n + 1, None).unwrap().len(), c);
    }
}

#[test]
fn left_family_trees_use_only_b_minus() {
    // Built only with B⁻: the root carries the largest label all the way down.
    fn root_is_max(t: &graftwood::OrderedTree) -> bool {
        t.labels().iter().all(|&l| l <= t.label()) && t.children().iter().all(root_is_max)
    }
    for n in 1..=6 {
        for f in generate_set(FamilySelector::Bl, n, None).unwrap() {
            assert!(f.is_tree());
        }
        let trees = generate_trees(FamilySelector::Bl, n).unwrap();
        assert_eq!(trees.len(), PlaneTree::all(n).len());
        assert!(trees.iter().all(root_is_max));
    }
}

#[test]
fn indexing_formulas_match_oracle() {
    for n in 1..=7 {
        for shape in PlaneTree::all(n) {
            for family in [FamilySelector::G, FamilySelector::T] {
                let formula = count_indexings(&shape, family).unwrap();
                let oracle = oracle_count_indexings(&shape, family).unwrap();
                assert_eq!(formula, oracle.into(), "{family} {shape}");
            }
        }
    }
}

#[test]
fn indexings_partition_the_families() {
    // Summing the indexing counts over all shapes recovers the tree counts.
    for n in 1..=7 {
        for (family, trees) in [
            (FamilySelector::G, generate_trees(FamilySelector::G, n).unwrap().len()),
            (FamilySelector::T, generate_trees(FamilySelector::T, n).unwrap().len()),
        ] {
            let total: u64 = PlaneTree::all(n).iter().map(|s| oracle_count_indexings(s, family).unwrap()).sum();
            assert_eq!(total as usize, trees, "{family} at {n}");
        }
    }
}
