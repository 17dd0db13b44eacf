use std::collections::BTreeSet;

use operad_wb_core::cells::{cell_complex, fm_stratum_census, open_cells, stratum_label, Sign};
use operad_wb_core::freeops::{c_n, free_symmetric, s, SetCollection};
use operad_wb_core::planar::{count_reduced, enumerate_reduced, DecoratedTree, Node, Vertex};
use operad_wb_core::trees::{enumerate_pruned_trees, tree_morphisms, PrunedTree};

fn binom(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

/// Faces of the associahedron for `m` leaves: dissections of an
/// `(m + 1)`-gon by `d` diagonals, filed under dimension `m - 2 - d`.
fn associahedron(m: usize) -> Vec<usize> {
    let top = m - 2;
    (0..=top)
        .map(|dim| {
            let d = (top - dim) as u64;
            let m = m as u64;
            (binom(m - 2, d) * binom(m + d, d) / (d + 1)) as usize
        })
        .collect()
}

#[test]
fn associahedra_in_the_line() {
    assert_eq!(associahedron(4), vec![5, 5, 1]);
    for m in 2..=7 {
        let t = PrunedTree::m_tree(1, 0, m).unwrap();
        let c = cell_complex(&t).unwrap();
        assert_eq!(c.f_vector, associahedron(m), "m={}", m);
        assert_eq!(c.euler_c, 1);
        assert_eq!(c.dimension(), m - 2);
    }
}

#[test]
fn unreduced_trees_are_rejected() {
    assert!(cell_complex(&PrunedTree::linear(2)).is_err());
    assert!(cell_complex(&PrunedTree::degenerate(2)).is_err());
}

#[test]
fn top_cells_are_quasibijection_corollas() {
    for n in 1..=2 {
        for k in 2..=4 {
            for t in enumerate_pruned_trees(n, k).unwrap() {
                let c = cell_complex(&t).unwrap();
                let mut expected = BTreeSet::new();
                for target in enumerate_pruned_trees(n, k).unwrap() {
                    if target.dimension() != t.dimension() {
                        continue;
                    }
                    for q in tree_morphisms(&t, &target, true) {
                        let mut labels = vec![0; k];
                        for (l, &tip) in q.tip_map().iter().enumerate() {
                            labels[tip] = l;
                        }
                        expected.insert(DecoratedTree::corolla(&target, (), &labels).unwrap());
                    }
                }
                let got: BTreeSet<DecoratedTree> = c.top_cells.iter().cloned().collect();
                assert!(!got.is_empty());
                assert_eq!(got, expected, "{}", t);
                assert_eq!(c.dimension(), t.dimension());
            }
        }
    }
}

#[test]
fn stratum_labels() {
    let m0 = PrunedTree::m_tree(2, 0, 2).unwrap();
    let c = DecoratedTree::corolla(&m0, (), &[0, 1]).unwrap();
    assert_eq!(stratum_label(&c, 0, 1).unwrap(), (0, Sign::Plus));
    assert_eq!(stratum_label(&c, 1, 0).unwrap(), (0, Sign::Minus));
    let m1 = PrunedTree::m_tree(2, 1, 2).unwrap();
    let tau = DecoratedTree::new(
        2,
        Node::Vertex(Vertex {
            decoration: m0,
            token: (),
            children: vec![
                Node::Vertex(Vertex {
                    decoration: m1,
                    token: (),
                    children: vec![Node::Leaf(0), Node::Leaf(1)],
                }),
                Node::Leaf(2),
            ],
        }),
    )
    .unwrap();
    assert_eq!(stratum_label(&tau, 0, 1).unwrap(), (1, Sign::Plus));
    assert_eq!(stratum_label(&tau, 2, 0).unwrap(), (0, Sign::Minus));
    assert!(stratum_label(&tau, 1, 1).is_err());
    assert!(stratum_label(&tau, 0, 3).is_err());
}

#[test]
fn census_examples() {
    let c = fm_stratum_census(1, 3).unwrap();
    assert_eq!(c.total, 18);
    assert_eq!(c.by_dimension, vec![12, 6]);
    let c = fm_stratum_census(2, 2).unwrap();
    assert_eq!(c.total, 4);
    assert_eq!(c.by_dimension, vec![2, 2]);
    for n in 1..=3 {
        let c = fm_stratum_census(n, 1).unwrap();
        assert_eq!((c.total, c.rows.len()), (1, 1));
    }
    let csv = fm_stratum_census(2, 2).unwrap().to_csv();
    assert_eq!(csv.lines().next(), Some("n,k,tree,dim,count"));
    assert!(csv.contains("2,2,\"[2,2],[1,1]\",1,2"));
}

#[test]
fn census_agrees_with_the_free_symmetric_operad() {
    for n in 1..=3 {
        for k in 1..=4 {
            if n == 3 && k == 4 {
                continue;
            }
            let c = fm_stratum_census(n, k).unwrap();
            let z = s(&c_n(&SetCollection::one_point(n, k).unwrap()));
            assert_eq!(c.total, free_symmetric(&z, k).unwrap().len(), "n={} k={}", n, k);
            assert_eq!(c.total as u128, count_reduced(n, k));
            assert_eq!(c.rows.iter().map(|r| r.count).sum::<usize>(), c.total);
            assert_eq!(c.by_dimension.iter().sum::<usize>(), c.total);
        }
    }
}

#[test]
fn census_rows_are_whole_orbits() {
    for (n, k) in [(1, 4), (2, 3), (2, 4), (3, 3)] {
        let fact: usize = (1..=k).product();
        let c = fm_stratum_census(n, k).unwrap();
        assert!(c.rows.iter().all(|r| r.count % fact == 0));
        let planar = enumerate_reduced(n, k)
            .unwrap()
            .into_iter()
            .filter(|tau| {
                let mut labels = Vec::new();
                tau.root().collect_labels(&mut labels);
                labels.windows(2).all(|w| w[0] < w[1])
            })
            .count();
        assert_eq!(c.total, fact * planar);
    }
}

#[test]
fn open_cells_are_disjoint() {
    for n in 1..=2 {
        for k in 2..=4 {
            let mut seen = BTreeSet::new();
            for t in enumerate_pruned_trees(n, k).unwrap() {
                let cells = open_cells(&t).unwrap();
                assert!(cells.contains(&DecoratedTree::corolla(&t, (), &(0..k).collect::<Vec<_>>()).unwrap()));
                for c in cells {
                    assert_eq!(c.induced_order(), t.to_ordinal());
                    assert!(seen.insert(c));
                }
            }
        }
    }
}
