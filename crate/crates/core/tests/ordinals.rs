use itertools::Itertools;
use operad_wb_core::ordinals::{enumerate_total_orders, Direction, NOrder, OrderedMap, Relation};
use operad_wb_core::trees::{enumerate_pruned_trees, PrunedTree};
use proptest::prelude::*;

fn order(n: usize, k: usize, pairs: &[(usize, usize, usize, bool)]) -> NOrder {
    NOrder::from_fn(n, k, |i, j| {
        let &(_, _, level, lt) = pairs
            .iter()
            .find(|p| p.0 == i + 1 && p.1 == j + 1)
            .expect("pair listed");
        if lt {
            Relation::lt(level)
        } else {
            Relation::gt(level)
        }
    })
    .unwrap()
}

/// Every pair table whose relations satisfy the min rule, found by brute force.
fn brute_total_orders(n: usize, k: usize) -> Vec<NOrder> {
    let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
    let choices: Vec<Relation> = (0..n).flat_map(|l| [Relation::lt(l), Relation::gt(l)]).collect();
    let mut out = Vec::new();
    for table in std::iter::repeat(choices.iter().copied()).take(pairs.len()).multi_cartesian_product() {
        let rel = |i: usize, j: usize| -> Option<usize> {
            if i == j {
                return None;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            let r = table[pairs.iter().position(|&p| p == (a, b)).unwrap()];
            let forward = (r.dir == Direction::Lt) == (i < j);
            forward.then_some(r.level as usize)
        };
        let ok = (0..k).all(|i| {
            (0..k).all(|j| {
                (0..k).all(|l| match (rel(i, j), rel(j, l)) {
                    (Some(p), Some(r)) if i != l => rel(i, l) == Some(p.min(r)),
                    _ => true,
                })
            })
        });
        if ok {
            out.push(NOrder::new(n, k, table).unwrap());
        }
    }
    out.sort();
    out
}

#[test]
fn totality_examples() {
    assert!(order(1, 3, &[(1, 2, 0, true), (1, 3, 0, true), (2, 3, 0, true)]).is_total());
    assert!(order(2, 2, &[(1, 2, 1, true)]).is_total());
    let bad = NOrder::new(2, 3, vec![Relation::lt(0), Relation::lt(1), Relation::lt(0)]);
    assert!(bad.map_or(true, |x| !x.is_total()));
}

#[test]
fn domination_examples() {
    let a = order(2, 2, &[(1, 2, 0, true)]);
    let b = order(2, 2, &[(1, 2, 1, false)]);
    let c = order(2, 2, &[(1, 2, 0, false)]);
    assert!(a.dominates(&a).unwrap());
    assert!(a.dominates(&b).unwrap());
    assert!(!a.dominates(&c).unwrap());
    assert!(a.dominates(&order(2, 3, &[(1, 2, 0, true), (1, 3, 0, true), (2, 3, 0, true)])).is_err());
}

#[test]
fn ordered_map_examples() {
    let x = order(2, 2, &[(1, 2, 0, true)]);
    let y = order(2, 2, &[(1, 2, 1, true)]);
    assert!(OrderedMap::identity(&x).is_ordered_map());
    assert!(OrderedMap::new(x.clone(), NOrder::terminal(2), vec![0, 0]).unwrap().is_ordered_map());
    assert!(OrderedMap::new(x.clone(), y.clone(), vec![0, 1]).unwrap().is_ordered_map());
    assert!(!OrderedMap::new(y, x, vec![0, 1]).unwrap().is_ordered_map());
}

#[test]
fn fiber_examples() {
    let x = order(2, 3, &[(1, 2, 0, true), (1, 3, 0, true), (2, 3, 1, true)]);
    let id = OrderedMap::identity(&x).fibers().unwrap();
    assert_eq!(id, vec![NOrder::terminal(2); 3]);
    let all = OrderedMap::new(x.clone(), NOrder::terminal(2), vec![0, 0, 0]).unwrap();
    assert_eq!(all.fibers().unwrap(), vec![x.clone()]);
    let target = order(2, 2, &[(1, 2, 0, true)]);
    let f = OrderedMap::new(x, target, vec![0, 1, 1]).unwrap();
    assert_eq!(
        f.fibers().unwrap(),
        vec![NOrder::terminal(2), order(2, 2, &[(1, 2, 1, true)])]
    );
}

#[test]
fn enumeration_matches_brute_force() {
    for (n, k) in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 3)] {
        assert_eq!(enumerate_total_orders(n, k).unwrap(), brute_total_orders(n, k), "n={} k={}", n, k);
    }
    assert_eq!(enumerate_total_orders(1, 3).unwrap().len(), 6);
    assert_eq!(enumerate_total_orders(2, 3).unwrap().len(), 24);
}

#[test]
fn orders_are_trees_times_permutations() {
    for n in 1..=3 {
        for k in 0..=5 {
            let orders = enumerate_total_orders(n, k).unwrap().len();
            let trees = enumerate_pruned_trees(n, k).unwrap().len();
            let fact: usize = (1..=k).product();
            assert_eq!(orders, fact * trees, "n={} k={}", n, k);
        }
    }
}

#[test]
fn too_many_labels_is_a_resource_error() {
    let err = enumerate_total_orders(2, 40).unwrap_err();
    assert!(matches!(err, operad_wb_core::Error::ResourceLimit { .. }));
}

fn arb_order() -> impl Strategy<Value = NOrder> {
    (1usize..=3, 1usize..=5)
        .prop_flat_map(|(n, k)| {
            let trees = enumerate_pruned_trees(n, k).unwrap();
            (0..trees.len(), Just(trees), Just(k)).prop_flat_map(|(t, trees, k)| {
                (Just(trees[t].clone()), Just((0..k).collect::<Vec<_>>()).prop_shuffle())
            })
        })
        .prop_map(|(t, perm)| t.to_ordinal().relabel(&perm))
}

proptest! {
    #[test]
    fn relabelled_orders_stay_total(x in arb_order()) {
        prop_assert!(x.is_total());
        prop_assert!(x.is_transitive());
    }

    #[test]
    fn shape_recovers_the_order(x in arb_order()) {
        let (tree, perm) = PrunedTree::from_total_order(&x).unwrap();
        prop_assert_eq!(x.relabel(&perm), tree.to_ordinal());
    }

    #[test]
    fn domination_is_reflexive_and_composes_with_relabelling(x in arb_order(), seed in any::<u64>()) {
        prop_assert!(x.dominates(&x).unwrap());
        let k = x.size();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.rotate_left((seed as usize) % k.max(1));
        let y = x.relabel(&perm);
        let back: Vec<usize> = (0..k).map(|i| perm.iter().position(|&p| p == i).unwrap()).collect();
        prop_assert_eq!(y.relabel(&back), x);
    }

    #[test]
    fn restriction_of_a_total_order_is_total(x in arb_order(), mask in any::<u8>()) {
        let subset: Vec<usize> = (0..x.size()).filter(|i| mask & (1 << i) != 0).collect();
        prop_assert!(x.restrict(&subset).is_total());
    }
}
