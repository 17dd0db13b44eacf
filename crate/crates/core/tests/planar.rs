use operad_wb_core::ordinals::{NOrder, Relation};
use operad_wb_core::planar::{
    composable_structure, contraction_targets, count_reduced, enumerate_dominated, enumerate_reduced, Composable,
    DecoratedTree, Node, Vertex,
};
use operad_wb_core::trees::{enumerate_pruned_trees, PrunedTree, TreeMorphism};
use proptest::prelude::*;

fn tree(n: usize, s: &str) -> PrunedTree {
    PrunedTree::parse(n, s).unwrap()
}

fn v(decoration: PrunedTree, children: Vec<Node>) -> Node {
    Node::Vertex(Vertex {
        decoration,
        token: (),
        children,
    })
}

fn leaf(l: usize) -> Node {
    Node::Leaf(l)
}

/// Ordinary series coefficients of the root of `2n R^2 - (1 + nx) R + x = 0`,
/// so labelled counts are `k! * a[k]`.
fn schroeder_like(n: i128, k: usize) -> Vec<i128> {
    let mut a = vec![0i128; k + 1];
    if k >= 1 {
        a[1] = 1;
    }
    for m in 2..=k {
        let conv: i128 = (1..m).map(|i| a[i] * a[m - i]).sum();
        a[m] = -n * a[m - 1] + 2 * n * conv;
    }
    a
}

#[test]
fn counts_match_the_generating_function() {
    for n in 1..=3usize {
        let a = schroeder_like(n as i128, 7);
        for (k, &ak) in a.iter().enumerate().skip(1) {
            let fact: i128 = (1..=k as i128).product();
            assert_eq!(count_reduced(n, k) as i128, fact * ak, "n={} k={}", n, k);
        }
    }
    for (n, k) in [(1, 4), (1, 5), (2, 4), (3, 3)] {
        assert_eq!(enumerate_reduced(n, k).unwrap().len() as u128, count_reduced(n, k));
    }
}

#[test]
fn schroeder_numbers_in_the_line() {
    let got: Vec<usize> = (2..=5)
        .map(|k| enumerate_reduced(1, k).unwrap().len() / (1..=k).product::<usize>())
        .collect();
    assert_eq!(got, vec![1, 3, 11, 45]);
}

fn example() -> DecoratedTree {
    let m0 = tree(2, "[2,2],[1,1]");
    let m1 = tree(2, "[2,1],[2]");
    DecoratedTree::new(2, v(m0, vec![v(m1, vec![leaf(0), leaf(1)]), leaf(2)])).unwrap()
}

#[test]
fn induced_order_example() {
    let expected = NOrder::new(2, 3, vec![Relation::lt(1), Relation::lt(0), Relation::lt(0)]).unwrap();
    assert_eq!(example().induced_order(), expected);
    assert_eq!(example().dimension(), 1);
    assert_eq!(example().vertex_count(), 2);
}

#[test]
fn domination_examples() {
    let tau = example();
    assert!(tau.dominated_by(&PrunedTree::m_tree(2, 0, 3).unwrap()).unwrap());
    assert!(!tau.dominated_by(&tree(2, "[3,2],[1,2]")).unwrap());
    assert!(tau.dominated_by(&tree(2, "[3,2],[2,1]")).unwrap());
    assert!(tau.dominated_by(&PrunedTree::m_tree(2, 0, 2).unwrap()).is_err());
}

#[test]
fn bad_trees_are_rejected() {
    let m0 = tree(2, "[2,2],[1,1]");
    assert!(DecoratedTree::new(2, v(m0.clone(), vec![leaf(0), leaf(0)])).is_err());
    assert!(DecoratedTree::new(2, v(m0.clone(), vec![leaf(0)])).is_err());
    assert!(DecoratedTree::new(1, v(m0, vec![leaf(0), leaf(1)])).is_err());
    let unreduced = PrunedTree::linear(2);
    assert!(DecoratedTree::new(2, v(unreduced, vec![leaf(0)])).is_err());
}

#[test]
fn dominated_sets_match_filtering() {
    for n in 1..=2 {
        for k in 2..=4 {
            let all = enumerate_reduced(n, k).unwrap();
            for t in enumerate_pruned_trees(n, k).unwrap() {
                let mut expected: Vec<DecoratedTree> =
                    all.iter().filter(|tau| tau.dominated_by(&t).unwrap()).cloned().collect();
                expected.sort();
                assert_eq!(enumerate_dominated(&t).unwrap(), expected, "{}", t);
            }
        }
    }
}

#[test]
fn contraction_into_the_root() {
    let targets = contraction_targets(&example(), &[]).unwrap();
    assert_eq!(targets.len(), 1);
    let (source, morphism, image) = &targets[0];
    assert_eq!(*source, tree(2, "[3,2],[2,1]"));
    assert_eq!(morphism.tip_map(), &[0, 0, 1]);
    assert_eq!(*image, DecoratedTree::corolla(source, (), &[0, 1, 2]).unwrap());
    assert!(contraction_targets(&example(), &[5]).is_err());
}

#[test]
fn left_comb_structure() {
    let m = PrunedTree::m_tree(1, 0, 2).unwrap();
    let tau = DecoratedTree::new(1, v(m.clone(), vec![v(m.clone(), vec![leaf(0), leaf(1)]), leaf(2)])).unwrap();
    let big = PrunedTree::m_tree(1, 0, 3).unwrap();
    let cs = composable_structure(&tau, &big).unwrap();
    let outer = TreeMorphism::lift(&[0, 0, 1], &big, &m).unwrap();
    let inner = TreeMorphism::identity(&m);
    let unit = Composable::Unit { degree: 1 };
    let expected = Composable::Node {
        morphism: outer,
        branches: vec![
            Composable::Node {
                morphism: inner,
                branches: vec![unit.clone(), unit.clone()],
            },
            unit,
        ],
    };
    assert_eq!(cs, expected);
    assert_eq!(cs.vertex_count(), 2);
    assert_eq!(cs.tree(), tau);
    assert_eq!(cs.arity(), big);
}

fn arb_dominated() -> impl Strategy<Value = (PrunedTree, DecoratedTree)> {
    (1usize..=2, 2usize..=4)
        .prop_flat_map(|(n, k)| proptest::sample::select(enumerate_pruned_trees(n, k).unwrap()))
        .prop_flat_map(|t| {
            let taus = enumerate_dominated(&t).unwrap();
            (Just(t), proptest::sample::select(taus))
        })
}

fn arb_reduced() -> impl Strategy<Value = DecoratedTree> {
    (1usize..=2, 1usize..=4).prop_flat_map(|(n, k)| {
        let all = if k == 1 {
            vec![DecoratedTree::leaf(n)]
        } else {
            enumerate_reduced(n, k).unwrap()
        };
        proptest::sample::select(all)
    })
}

proptest! {
    #[test]
    fn structure_rebuilds_the_tree((t, tau) in arb_dominated()) {
        let cs = composable_structure(&tau, &t).unwrap();
        prop_assert_eq!(cs.tree(), tau.clone());
        prop_assert_eq!(cs.arity(), t);
        prop_assert_eq!(cs.vertex_count(), tau.vertex_count());
    }

    #[test]
    fn relabelling_commutes_with_the_induced_order(tau in arb_reduced(), seed in any::<u64>()) {
        let k = tau.arity();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.rotate_left((seed as usize) % k);
        if seed % 2 == 0 && k >= 2 {
            perm.swap(0, k - 1);
        }
        prop_assert_eq!(tau.relabel(&perm).induced_order(), tau.induced_order().relabel(&perm));
    }

    #[test]
    fn grafting_adds_arity_and_dimension(a in arb_reduced(), b in arb_reduced(), pick in any::<usize>()) {
        prop_assume!(a.degree() == b.degree());
        let label = pick % a.arity();
        let g = a.graft(label, &b).unwrap();
        prop_assert_eq!(g.arity(), a.arity() + b.arity() - 1);
        prop_assert_eq!(g.dimension(), a.dimension() + b.dimension());
        prop_assert_eq!(g.vertex_count(), a.vertex_count() + b.vertex_count());
    }
}
