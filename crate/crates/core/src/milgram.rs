//! The poset of total n-orders on `k` labels ordered by domination.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::limits::Limits;
use crate::ordinals::{enumerate_total_orders, NOrder};
use crate::trees::PrunedTree;

/// `x <= y` iff `y` dominates `x`.
pub struct MilgramPoset {
    degree: usize,
    size: usize,
    elements: Vec<NOrder>,
    index: HashMap<NOrder, usize>,
    /// `up[a]` holds every `b` with `a <= b`.
    up: Vec<FixedBitSet>,
}

impl MilgramPoset {
    pub fn build(n: usize, k: usize) -> Result<MilgramPoset> {
        let elements = enumerate_total_orders(n, k)?;
        let m = elements.len();
        Limits::global().check_objects("order relation", m.saturating_mul(m) / 64)?;
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                if y.dominates(x)? {
                    up[a].insert(b);
                }
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(MilgramPoset {
            degree: n,
            size: k,
            elements,
            index,
            up,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> &[NOrder] {
        &self.elements
    }

    pub fn index_of(&self, x: &NOrder) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.elements.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in self.up[a].ones() {
                if a == b {
                    continue;
                }
                let between = self.up[a]
                    .ones()
                    .any(|c| c != a && c != b && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_partial_order(&self) -> bool {
        let m = self.elements.len();
        (0..m).all(|a| self.leq(a, a))
            && (0..m).all(|a| self.up[a].ones().all(|b| a == b || !self.leq(b, a)))
            && (0..m).all(|a| self.up[a].ones().all(|b| self.up[b].is_subset(&self.up[a])))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.elements)
            .into_iter()
            .map(|orbit| orbit.iter().map(|x| self.index[x]).collect())
            .collect()
    }

    /// Number of `d`-simplices of the order complex for `d = 0, 1, ...`.
    pub fn order_complex_f_vector(&self) -> Vec<u128> {
        let m = self.elements.len();
        // chains[a]: strict chains starting at a, by length.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.up[a].count_ones(..)));
        let mut chains: Vec<Vec<u128>> = vec![Vec::new(); m];
        for &a in order.iter().rev() {
            let mut c = vec![1u128];
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                for (len, &v) in chains[b].iter().enumerate() {
                    if c.len() <= len + 1 {
                        c.resize(len + 2, 0);
                    }
                    c[len + 1] += v;
                }
            }
            chains[a] = c;
        }
        let mut f = Vec::new();
        for c in &chains {
            for (d, &v) in c.iter().enumerate() {
                if f.len() <= d {
                    f.resize(d + 1, 0);
                }
                f[d] += v;
            }
        }
        f
    }

    pub fn order_complex_euler(&self) -> i128 {
        self.order_complex_f_vector()
            .iter()
            .enumerate()
            .map(|(d, &v)| if d % 2 == 0 { v as i128 } else { -(v as i128) })
            .sum()
    }

    /// Hasse diagram in DOT format, nodes labelled by order and dimension.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph milgram {\n  rankdir=BT;\n");
        for (i, x) in self.elements.iter().enumerate() {
            let dim = PrunedTree::from_total_order(x).map_or(0, |(t, _)| t.dimension());
            let _ = writeln!(s, "  n{} [label=\"{} (dim {})\"];", i, x, dim);
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{} -> n{};", a, b);
        }
        s.push_str("}\n");
        s
    }
}

/// Orbits of the relabelling action, each sorted, ordered by least element.
pub fn orbits(elements: &[NOrder]) -> Vec<Vec<NOrder>> {
    let mut by_shape: HashMap<PrunedTree, BTreeSet<NOrder>> = HashMap::new();
    for x in elements {
        let shape = PrunedTree::from_total_order(x).expect("total").0;
        by_shape.entry(shape).or_default().insert(x.clone());
    }
    let mut out: Vec<Vec<NOrder>> = by_shape.into_values().map(|s| s.into_iter().collect()).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_level_is_an_antichain_of_permutations() {
        let p = MilgramPoset::build(1, 3).unwrap();
        assert_eq!(p.elements().len(), 6);
        assert!(p.covers().is_empty());
        assert_eq!(p.order_complex_euler(), 6);
    }

    #[test]
    fn two_levels_two_labels() {
        let p = MilgramPoset::build(2, 2).unwrap();
        assert_eq!(p.elements().len(), 4);
        assert_eq!(p.covers().len(), 4);
        assert!(p.is_partial_order());
        assert_eq!(p.order_complex_euler(), 0);
    }
}
