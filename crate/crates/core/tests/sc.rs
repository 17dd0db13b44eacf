use operad_wb_core::catops::symmetrise;
use operad_wb_core::freeops::{FreeOperad, SetCollection};
use operad_wb_core::json::TreeJson;
use operad_wb_core::sc::{
    build_scrh, coloured_fibers, coloured_morphisms, compare_restrictions, enumerate_coloured_objects,
    enumerate_coloured_trees, sc_symmetrise, ColouredCollection, ColouredTree, FreeScOperad,
};
use operad_wb_core::trees::{enumerate_pruned_trees, PrunedTree};

fn all_coloured(n: usize, tips: usize) -> Vec<ColouredTree> {
    (0..=tips)
        .flat_map(|k1| enumerate_coloured_trees(n, k1, tips - k1).unwrap())
        .collect()
}

#[test]
fn validation_examples() {
    for t in enumerate_pruned_trees(2, 3).unwrap() {
        let c = ColouredTree::from_colouring(t.clone(), &[false; 3]).unwrap();
        assert_eq!(c, ColouredTree::plain(t));
    }
    let m0 = PrunedTree::m_tree(2, 0, 2).unwrap();
    let c = ColouredTree::new(m0.clone(), true).unwrap();
    assert_eq!(c.arity(), (1, 1));
    assert_eq!(ColouredTree::from_colouring(m0.clone(), &[true, false]).unwrap(), c);
    assert!(ColouredTree::from_colouring(m0.clone(), &[false, true]).is_err());
    assert!(ColouredTree::from_colouring(m0, &[true]).is_err());
    assert!(ColouredTree::new(PrunedTree::degenerate(2), true).is_err());
    let m1 = PrunedTree::m_tree(2, 1, 2).unwrap();
    assert_eq!(ColouredTree::new(m1, true).unwrap().arity(), (2, 0));
}

#[test]
fn coloured_tree_counts() {
    // Colour 1 tips form the first level-1 branch, so each uncoloured tree
    // has exactly one colouring with a nonempty colour 1 part.
    for n in 1..=3 {
        for k in 1..=5 {
            let plain = enumerate_pruned_trees(n, k).unwrap().len();
            let open: usize = (1..=k).map(|k1| enumerate_coloured_trees(n, k1, k - k1).unwrap().len()).sum();
            assert_eq!(open, plain);
            assert_eq!(enumerate_coloured_trees(n, 0, k).unwrap().len(), plain);
        }
    }
}

#[test]
fn identity_fibers_are_coloured_units() {
    for c in all_coloured(2, 4) {
        let id = coloured_morphisms(&c, &c)
            .into_iter()
            .find(|m| m.tip_map().iter().enumerate().all(|(i, &s)| i == s))
            .expect("identity is coloured");
        let fibers = coloured_fibers(&id, &c, &c).unwrap();
        for (t, f) in fibers.iter().enumerate() {
            assert!(f.base.is_linear());
            assert_eq!(f.distinguished, c.tip_colour(t) == 1);
        }
    }
}

#[test]
fn maps_to_a_closed_unit() {
    let unit = ColouredTree::plain(PrunedTree::linear(2));
    for tips in 1..=4 {
        for c in all_coloured(2, tips) {
            assert_eq!(coloured_morphisms(&c, &unit).len(), usize::from(c.arity().0 == 0), "{:?}", c);
        }
    }
}

#[test]
fn coloured_morphisms_compose() {
    let trees: Vec<ColouredTree> = (1..=3).flat_map(|k| all_coloured(2, k)).collect();
    let mut checked = 0;
    for a in &trees {
        for b in &trees {
            let ab = coloured_morphisms(a, b);
            if ab.is_empty() {
                continue;
            }
            for c in &trees {
                let ac = coloured_morphisms(a, c);
                for f in &ab {
                    for g in coloured_morphisms(b, c) {
                        assert!(ac.contains(&f.compose(&g).unwrap()));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn arities_add_up_over_fibers() {
    let mut checked = 0;
    for total in 1..=5 {
        for source in all_coloured(2, total) {
            for tips in 1..=total {
                for target in all_coloured(2, tips) {
                    for m in coloured_morphisms(&source, &target) {
                        if !m.is_surjection() {
                            continue;
                        }
                        let fibers = coloured_fibers(&m, &source, &target).unwrap();
                        let colour_one = fibers.iter().filter(|f| f.distinguished).count();
                        assert_eq!(colour_one, target.arity().0);
                        let a: usize = fibers.iter().map(|f| f.arity().0).sum();
                        let b: usize = fibers.iter().map(|f| f.arity().1).sum();
                        assert_eq!((a, b), source.arity());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn direct_enumeration_matches_the_category() {
    for n in 2..=3 {
        for k in 0..=3 {
            for l in 0..=3 {
                if k + l < 2 || k + l > 4 || (n == 3 && k + l > 3) {
                    continue;
                }
                let direct = enumerate_coloured_objects(n, k, l).unwrap();
                assert_eq!(direct, build_scrh(n, k, l).unwrap().objects(), "n={} ({},{})", n, k, l);
            }
        }
    }
}

#[test]
fn one_point_census_in_arity_one_one() {
    let x = ColouredCollection::one_point(2, 2).unwrap();
    let s = sc_symmetrise(&FreeScOperad { collection: x }, 1, 1).unwrap();
    assert_eq!(s.poset().objects().len(), 1);
    assert_eq!(s.class_count(), 1);
    assert!(s.comparison_bijective());
}

#[test]
fn restrictions_recover_plain_categories() {
    for m in 2..=4 {
        assert!(compare_restrictions(2, m).unwrap().all_hold(), "m={}", m);
    }
    assert!(compare_restrictions(3, 3).unwrap().all_hold());
    assert!(compare_restrictions(1, 2).is_err());
}

#[test]
fn closed_restriction_of_the_free_operad() {
    for m in 2..=3 {
        let closed = SetCollection::one_point(2, m).unwrap();
        let mut coloured = ColouredCollection::new(2);
        for (t, tokens) in closed.entries() {
            coloured.insert(ColouredTree::plain(t.clone()), tokens.clone()).unwrap();
        }
        assert_eq!(coloured.closed_part(), closed);
        let sc = sc_symmetrise(&FreeScOperad { collection: coloured }, 0, m).unwrap();
        let plain = symmetrise(&FreeOperad { collection: closed }, m).unwrap();
        assert_eq!(sc.colimit(), plain.colimit());
    }
}

#[test]
fn open_restriction_desuspends() {
    for m in 2..=3 {
        let lower = SetCollection::one_point(1, m).unwrap();
        let open = sc_symmetrise(&FreeScOperad { collection: ColouredCollection::suspension_of(&lower) }, m, 0).unwrap();
        let plain = symmetrise(&FreeOperad { collection: lower }, m).unwrap();
        assert_eq!(open.class_count(), plain.class_count());
    }
}

#[test]
fn coloured_tree_json_keeps_the_flag() {
    let c = ColouredTree::new(PrunedTree::m_tree(2, 0, 2).unwrap(), true).unwrap();
    let text = serde_json::to_string(&TreeJson::from(&c)).unwrap();
    assert!(text.contains("\"distinguished\":true"));
    let back = ColouredTree::try_from(serde_json::from_str::<TreeJson>(&text).unwrap()).unwrap();
    assert_eq!(back, c);
}
