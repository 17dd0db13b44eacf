use operad_wb_core::json::{MorphismJson, TreeJson};
use operad_wb_core::ordinals::{NOrder, Relation};
use operad_wb_core::trees::{
    enumerate_pruned_trees, surjections_with_fibers, tree_morphisms, MorphismTag, PrunedTree, TreeMorphism,
};
use proptest::prelude::*;

fn tree(n: usize, s: &str) -> PrunedTree {
    PrunedTree::parse(n, s).unwrap()
}

/// Monotone surjection chains `[k] -> [m_{n-1}] -> ... -> [1]`, counted
/// level by level: a monotone surjection `[a] -> [b]` is a composition of
/// `a` into `b` parts.
fn chain_count(n: usize, k: usize) -> u64 {
    fn binom(a: u64, b: u64) -> u64 {
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }
    fn go(levels_left: usize, a: usize) -> u64 {
        if levels_left == 1 {
            return 1;
        }
        (1..=a).map(|b| binom(a as u64 - 1, b as u64 - 1) * go(levels_left - 1, b)).sum()
    }
    if k == 0 {
        1
    } else {
        go(n, k)
    }
}

#[test]
fn enumeration_counts() {
    for n in 1..=3 {
        for k in 0..=6 {
            assert_eq!(enumerate_pruned_trees(n, k).unwrap().len() as u64, chain_count(n, k), "n={} k={}", n, k);
        }
    }
    assert_eq!(enumerate_pruned_trees(2, 3).unwrap().len(), 4);
    assert_eq!(enumerate_pruned_trees(3, 2).unwrap().len(), 3);
    assert_eq!(enumerate_pruned_trees(2, 4).unwrap().len(), 8);
}

#[test]
fn ordinal_examples() {
    assert_eq!(PrunedTree::linear(2).to_ordinal(), NOrder::terminal(2));
    let m0 = tree(2, "[2,2],[1,1]");
    assert_eq!(m0, PrunedTree::m_tree(2, 0, 2).unwrap());
    assert_eq!(m0.to_ordinal(), NOrder::new(2, 2, vec![Relation::lt(0)]).unwrap());
    let t = tree(2, "[3,2],[2,1]");
    let expected = NOrder::new(2, 3, vec![Relation::lt(1), Relation::lt(0), Relation::lt(0)]).unwrap();
    assert_eq!(t.to_ordinal(), expected);
    assert_eq!(PrunedTree::degenerate(2).to_ordinal().size(), 0);
}

#[test]
fn from_total_order_examples() {
    let m0 = PrunedTree::m_tree(2, 0, 2).unwrap();
    assert_eq!(PrunedTree::from_total_order(&m0.to_ordinal()).unwrap(), (m0.clone(), vec![0, 1]));
    let swapped = NOrder::new(2, 2, vec![Relation::gt(0)]).unwrap();
    assert_eq!(PrunedTree::from_total_order(&swapped).unwrap(), (m0, vec![1, 0]));
    let line = NOrder::new(1, 3, vec![Relation::gt(0), Relation::lt(0), Relation::lt(0)]).unwrap();
    let (t, perm) = PrunedTree::from_total_order(&line).unwrap();
    assert_eq!(t, PrunedTree::m_tree(1, 0, 3).unwrap());
    assert_eq!(line.relabel(&perm), t.to_ordinal());
}

#[test]
fn dimension_examples() {
    for m in 2..=7 {
        assert_eq!(PrunedTree::m_tree(1, 0, m).unwrap().dimension(), m - 2);
    }
    let m0 = tree(2, "[2,2],[1,1]");
    assert_eq!((m0.edge_count(), m0.dimension()), (4, 1));
    let m1 = tree(2, "[2,1],[2]");
    assert_eq!((m1.edge_count(), m1.dimension()), (3, 0));
    assert_eq!(PrunedTree::degenerate(2).dimension(), 0);
}

#[test]
fn lifting_and_tags() {
    let m0 = tree(2, "[2,2],[1,1]");
    let m1 = tree(2, "[2,1],[2]");
    let id = TreeMorphism::identity(&m0);
    assert_eq!(
        id.tags(),
        vec![
            MorphismTag::Injection,
            MorphismTag::Surjection,
            MorphismTag::Quasibijection,
            MorphismTag::FullInjection
        ]
    );
    let q = TreeMorphism::lift(&[0, 1], &m0, &m1).expect("level 0 maps to level 1");
    assert!(q.tags().contains(&MorphismTag::Quasibijection));
    assert!(q.tags().contains(&MorphismTag::Surjection));
    assert_eq!(q.fibers().unwrap(), vec![PrunedTree::linear(2); 2]);
    assert!(TreeMorphism::lift(&[0, 1], &m1, &m0).is_none());
    let to_u = TreeMorphism::to_linear(&m0);
    assert!(to_u.tags().contains(&MorphismTag::Surjection));
    assert_eq!(to_u.fibers().unwrap(), vec![m0.clone()]);
    assert_eq!(id.fibers().unwrap(), vec![PrunedTree::linear(2); 2]);
}

#[test]
fn non_surjection_has_no_fibers() {
    let m0 = tree(2, "[2,2],[1,1]");
    let t = tree(2, "[3,2],[2,1]");
    let inj = TreeMorphism::lift(&[0, 2], &m0, &t).expect("an injection");
    assert!(inj.fibers().is_err());
}

#[test]
fn fiber_search_agrees_with_filtering() {
    for n in 1..=2 {
        for k in 1..=4 {
            for target in enumerate_pruned_trees(n, k).unwrap() {
                for total in k..=5 {
                    for source in enumerate_pruned_trees(n, total).unwrap() {
                        for m in tree_morphisms(&source, &target, true) {
                            let fibers = m.fibers().unwrap();
                            assert!(surjections_with_fibers(&target, &fibers).contains(&m));
                        }
                    }
                }
            }
        }
    }
}

fn arb_tree() -> impl Strategy<Value = PrunedTree> {
    (1usize..=3, 0usize..=6).prop_flat_map(|(n, k)| {
        let trees = enumerate_pruned_trees(n, k).unwrap();
        proptest::sample::select(trees)
    })
}

proptest! {
    #[test]
    fn round_trip_through_ordinals(t in arb_tree()) {
        let (back, perm) = PrunedTree::from_total_order(&t.to_ordinal()).unwrap();
        prop_assert_eq!(back, t.clone());
        prop_assert_eq!(perm, (0..t.tips()).collect::<Vec<_>>());
    }

    #[test]
    fn display_and_json_round_trip(t in arb_tree()) {
        prop_assert_eq!(PrunedTree::parse(t.degree(), &t.to_string()).unwrap(), t.clone());
        let text = serde_json::to_string(&TreeJson::from(&t)).unwrap();
        let back: TreeJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(PrunedTree::try_from(back).unwrap(), t);
    }

    #[test]
    fn suspension_inverts(t in arb_tree()) {
        prop_assert_eq!(t.suspend().desuspend(), Some(t.clone()));
        prop_assert_eq!(t.suspend().dimension(), t.dimension());
    }

    #[test]
    fn surjections_compose(n in 1usize..=2, a in 1usize..=4, b in 1usize..=4, c in 1usize..=4, pick in any::<u64>()) {
        let ts = enumerate_pruned_trees(n, a.max(b).max(c)).unwrap();
        let ss = enumerate_pruned_trees(n, b.min(a.max(b).max(c))).unwrap();
        let rs = enumerate_pruned_trees(n, c.min(b)).unwrap();
        let t = &ts[(pick as usize) % ts.len()];
        let s = &ss[(pick as usize / 7) % ss.len()];
        let r = &rs[(pick as usize / 49) % rs.len()];
        for f in tree_morphisms(t, s, true) {
            for g in tree_morphisms(s, r, true) {
                let h = f.compose(&g).unwrap();
                prop_assert!(h.is_surjection());
                prop_assert_eq!(h.tip_map().len(), t.tips());
            }
        }
    }

    #[test]
    fn morphism_json_round_trip(n in 1usize..=2, a in 1usize..=4, b in 1usize..=4, pick in any::<u64>()) {
        let ts = enumerate_pruned_trees(n, a).unwrap();
        let ss = enumerate_pruned_trees(n, b).unwrap();
        let t = &ts[(pick as usize) % ts.len()];
        let s = &ss[(pick as usize / 11) % ss.len()];
        for m in tree_morphisms(t, s, false) {
            let text = serde_json::to_string(&MorphismJson::from(&m)).unwrap();
            let back: MorphismJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(TreeMorphism::try_from(back).unwrap(), m);
        }
    }
}
