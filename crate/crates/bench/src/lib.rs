//! Inputs shared by the benchmarks.

use operad_wb_core::freeops::SetCollection;
use operad_wb_core::trees::PrunedTree;

/// Two tokens on binary trees and one elsewhere, up to `max_tips` tips.
pub fn mixed_collection(n: usize, max_tips: usize) -> SetCollection {
    let mut x = SetCollection::new(n);
    for m in 2..=max_tips {
        for t in operad_wb_core::trees::enumerate_pruned_trees(n, m).expect("small sizes") {
            let tokens = if m == 2 { vec!["a".into(), "b".into()] } else { vec!["c".into()] };
            x.insert(t, tokens).expect("reduced tree");
        }
    }
    x
}

/// The `k`-tip tree whose tips all meet at level 0.
pub fn flat_tree(n: usize, k: usize) -> PrunedTree {
    PrunedTree::m_tree(n, 0, k).expect("small sizes")
}
