//! n-orders: n-tuples of complementary partial orders on a finite label set.
//!
//! Labels are `0..size` internally. Each unordered pair `{i, j}` is compared
//! in exactly one of the orders `<_0, ..., <_{n-1}`, so an n-order is stored
//! as one [`Relation`] per pair `i < j`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::trees::{enumerate_pruned_trees, PrunedTree};

/// Orientation of a pair `i < j` (as numbers) in its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `i <_p j`
    Lt,
    /// `j <_p i`
    Gt,
}

/// The level and orientation of one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub level: u8,
    pub dir: Direction,
}

impl Relation {
    pub fn lt(level: usize) -> Relation {
        Relation {
            level: level as u8,
            dir: Direction::Lt,
        }
    }

    pub fn gt(level: usize) -> Relation {
        Relation {
            level: level as u8,
            dir: Direction::Gt,
        }
    }
}

pub(crate) fn pair_count(size: usize) -> usize {
    size * size.saturating_sub(1) / 2
}

pub(crate) fn pair_index(size: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < size);
    i * (2 * size - i - 1) / 2 + (j - i - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NOrder {
    degree: usize,
    size: usize,
    table: Vec<Relation>,
}

impl NOrder {
    /// Builds an n-order from its pair table (pairs in lexicographic order),
    /// rejecting tables where some `<_p` fails to be transitive.
    pub fn new(degree: usize, size: usize, table: Vec<Relation>) -> Result<NOrder> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if table.len() != pair_count(size) {
            return Err(Error::DimensionMismatch(format!(
                "{} labels need {} pairs, got {}",
                size,
                pair_count(size),
                table.len()
            )));
        }
        if let Some(r) = table.iter().find(|r| r.level as usize >= degree) {
            return Err(Error::InvalidOrder(format!(
                "level {} outside 0..{}",
                r.level, degree
            )));
        }
        let order = NOrder {
            degree,
            size,
            table,
        };
        if !order.is_transitive() {
            return Err(Error::InvalidOrder("some order is not transitive".into()));
        }
        Ok(order)
    }

    pub(crate) fn from_table_unchecked(degree: usize, size: usize, table: Vec<Relation>) -> NOrder {
        NOrder {
            degree,
            size,
            table,
        }
    }

    /// Builds an n-order from a function on pairs `i < j`.
    pub fn from_fn(
        degree: usize,
        size: usize,
        mut f: impl FnMut(usize, usize) -> Relation,
    ) -> Result<NOrder> {
        let mut table = Vec::with_capacity(pair_count(size));
        for i in 0..size {
            for j in i + 1..size {
                table.push(f(i, j));
            }
        }
        NOrder::new(degree, size, table)
    }

    /// The one-point n-order.
    pub fn terminal(degree: usize) -> NOrder {
        NOrder::from_table_unchecked(degree, 1, Vec::new())
    }

    /// The empty n-order.
    pub fn initial(degree: usize) -> NOrder {
        NOrder::from_table_unchecked(degree, 0, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Relation] {
        &self.table
    }

    /// Relation stored for the pair `{i, j}` with `i < j`.
    pub fn pair(&self, i: usize, j: usize) -> Relation {
        self.table[pair_index(self.size, i, j)]
    }

    /// `Some(p)` exactly when `i <_p j`.
    pub fn precedes(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return None;
        }
        let (lo, hi, want) = if i < j {
            (i, j, Direction::Lt)
        } else {
            (j, i, Direction::Gt)
        };
        let r = self.pair(lo, hi);
        (r.dir == want).then_some(r.level as usize)
    }

    /// Level of the pair `{i, j}` and whether `i` is the smaller element.
    pub fn compare(&self, i: usize, j: usize) -> (usize, bool) {
        debug_assert_ne!(i, j);
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let r = self.pair(lo, hi);
        (r.level as usize, (r.dir == Direction::Lt) == (i < j))
    }

    fn triples_hold(&self, total: bool) -> bool {
        let k = self.size;
        for i in 0..k {
            for j in 0..k {
                let Some(p) = self.precedes(i, j) else { continue };
                for l in 0..k {
                    if l == i || l == j {
                        continue;
                    }
                    let Some(r) = self.precedes(j, l) else { continue };
                    if total {
                        if self.precedes(i, l) != Some(p.min(r)) {
                            return false;
                        }
                    } else if p == r && self.precedes(i, l) != Some(p) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Each `<_p` is transitive.
    pub fn is_transitive(&self) -> bool {
        self.triples_hold(false)
    }

    /// `i <_p j` and `j <_r l` imply `i <_min(p,r) l`.
    pub fn is_total(&self) -> bool {
        self.triples_hold(true)
    }

    /// Whether the identity of labels is an ordered map `self -> small`.
    pub fn dominates(&self, small: &NOrder) -> Result<bool> {
        if self.degree != small.degree || self.size != small.size {
            return Err(Error::DimensionMismatch(format!(
                "{}-order on {} labels against {}-order on {} labels",
                self.degree, self.size, small.degree, small.size
            )));
        }
        Ok(preserves(self, small, |i| i))
    }

    /// The action of a permutation: `perm[i] <_p perm[j]` iff `i <_p j`.
    pub fn relabel(&self, perm: &[usize]) -> NOrder {
        debug_assert_eq!(perm.len(), self.size);
        let mut inv = vec![0; self.size];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut table = Vec::with_capacity(self.table.len());
        for a in 0..self.size {
            for b in a + 1..self.size {
                let (level, first) = self.compare(inv[a], inv[b]);
                table.push(Relation {
                    level: level as u8,
                    dir: if first { Direction::Lt } else { Direction::Gt },
                });
            }
        }
        NOrder::from_table_unchecked(self.degree, self.size, table)
    }

    /// Restriction to `subset` (ascending), relabelled by rank.
    pub fn restrict(&self, subset: &[usize]) -> NOrder {
        let mut table = Vec::with_capacity(pair_count(subset.len()));
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                table.push(self.pair(i, j));
            }
        }
        NOrder::from_table_unchecked(self.degree, subset.len(), table)
    }

    /// Labels listed in the linear order underlying a total n-order.
    pub fn linear_order(&self) -> Result<Vec<usize>> {
        if !self.is_total() {
            return Err(Error::NotTotal);
        }
        let mut labels: Vec<usize> = (0..self.size).collect();
        labels.sort_by_key(|&i| (0..self.size).filter(|&j| self.precedes(j, i).is_some()).count());
        Ok(labels)
    }
}

impl fmt::Display for NOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for i in 0..self.size {
            for j in i + 1..self.size {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                let r = self.pair(i, j);
                match r.dir {
                    Direction::Lt => write!(f, "{}<_{} {}", i + 1, r.level, j + 1)?,
                    Direction::Gt => write!(f, "{}<_{} {}", j + 1, r.level, i + 1)?,
                }
            }
        }
        write!(f, "]")
    }
}

/// Whether `f` sends `source` to `target` as an ordered map: `i <_p j` forces
/// `f(i) = f(j)`, or `f(i) <_r f(j)` with `r >= p`, or `f(j) <_r f(i)` with `r > p`.
pub(crate) fn preserves(source: &NOrder, target: &NOrder, f: impl Fn(usize) -> usize) -> bool {
    for i in 0..source.size {
        for j in i + 1..source.size {
            let r = source.pair(i, j);
            let (a, b) = match r.dir {
                Direction::Lt => (f(i), f(j)),
                Direction::Gt => (f(j), f(i)),
            };
            if !pair_ok(target, r.level as usize, a, b) {
                return false;
            }
        }
    }
    true
}

/// Condition on the images `a = f(x)`, `b = f(y)` of a pair `x <_p y`.
#[inline]
pub(crate) fn pair_ok(target: &NOrder, p: usize, a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    let (level, a_first) = target.compare(a, b);
    if a_first {
        level >= p
    } else {
        level > p
    }
}

/// A map of underlying label sets between two n-orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMap {
    source: NOrder,
    target: NOrder,
    assignment: Vec<usize>,
}

impl OrderedMap {
    /// Checks shapes only; use [`OrderedMap::is_ordered_map`] for the order condition.
    pub fn new(source: NOrder, target: NOrder, assignment: Vec<usize>) -> Result<OrderedMap> {
        if source.degree != target.degree {
            return Err(Error::DimensionMismatch(format!(
                "degrees {} and {}",
                source.degree, target.degree
            )));
        }
        if assignment.len() != source.size {
            return Err(Error::DimensionMismatch(format!(
                "assignment has {} entries for {} labels",
                assignment.len(),
                source.size
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&a| a >= target.size) {
            return Err(Error::LabelOutOfRange {
                label: bad + 1,
                size: target.size,
            });
        }
        Ok(OrderedMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(x: &NOrder) -> OrderedMap {
        OrderedMap {
            source: x.clone(),
            target: x.clone(),
            assignment: (0..x.size).collect(),
        }
    }

    pub fn source(&self) -> &NOrder {
        &self.source
    }

    pub fn target(&self) -> &NOrder {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn is_ordered_map(&self) -> bool {
        preserves(&self.source, &self.target, |i| self.assignment[i])
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &OrderedMap) -> Result<OrderedMap> {
        if self.target != then.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(OrderedMap {
            source: self.source.clone(),
            target: then.target.clone(),
            assignment: self.assignment.iter().map(|&a| then.assignment[a]).collect(),
        })
    }

    /// Preimages of target labels, in the target's linear order, as n-orders.
    pub fn fibers(&self) -> Result<Vec<NOrder>> {
        if !self.is_ordered_map() {
            return Err(Error::InvalidMap("order condition fails".into()));
        }
        if !self.source.is_total() {
            return Err(Error::NotTotal);
        }
        let order = self.target.linear_order()?;
        Ok(order
            .into_iter()
            .map(|s| {
                let pre: Vec<usize> = (0..self.source.size)
                    .filter(|&i| self.assignment[i] == s)
                    .collect();
                self.source.restrict(&pre)
            })
            .collect())
    }
}

/// All total n-orders on `k` labels, sorted.
pub fn enumerate_total_orders(n: usize, k: usize) -> Result<Vec<NOrder>> {
    let limits = Limits::global();
    limits.check_degree(n)?;
    limits.check_tips(k)?;
    let expected = factorial(k).saturating_mul(n.saturating_pow(k.saturating_sub(1) as u32));
    limits.check_objects("total n-orders", expected)?;
    let mut out = Vec::with_capacity(expected);
    for tree in enumerate_pruned_trees(n, k)? {
        let base = tree.to_ordinal();
        for perm in (0..k).permutations(k) {
            out.push(base.relabel(&perm));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Drops the tree part of [`PrunedTree::from_total_order`].
pub fn shape_of(x: &NOrder) -> Result<PrunedTree> {
    Ok(PrunedTree::from_total_order(x)?.0)
}

pub(crate) fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize, levels: &[usize]) -> NOrder {
        let gaps: Vec<u8> = levels.iter().map(|&l| l as u8).collect();
        PrunedTree::from_gaps(n, gaps).unwrap().to_ordinal()
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let mut idx = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(pair_index(5, i, j), idx);
                idx += 1;
            }
        }
    }

    #[test]
    fn transitivity_is_enforced() {
        let bad = NOrder::new(2, 3, vec![Relation::lt(0), Relation::lt(1), Relation::lt(1)]);
        assert!(bad.is_ok(), "levels differ, so nothing to compose");
        let bad = NOrder::new(1, 3, vec![Relation::lt(0), Relation::gt(0), Relation::lt(0)]);
        assert!(matches!(bad, Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn total_needs_min_rule() {
        // 1 <_1 2, 2 <_0 3 forces 1 <_0 3.
        let ok = NOrder::new(2, 3, vec![Relation::lt(1), Relation::lt(0), Relation::lt(0)]).unwrap();
        assert!(ok.is_total());
        let bad = NOrder::new(2, 3, vec![Relation::lt(1), Relation::lt(1), Relation::lt(0)]).unwrap();
        assert!(!bad.is_total());
    }

    #[test]
    fn domination_examples() {
        let x = chain(2, &[0]);
        let y = chain(2, &[1]);
        assert!(x.dominates(&y).unwrap());
        assert!(!y.dominates(&x).unwrap());
        assert!(x.dominates(&x).unwrap());
    }

    #[test]
    fn relabel_then_restrict() {
        let x = chain(2, &[0, 1]);
        let y = x.relabel(&[2, 0, 1]);
        assert_eq!(y.precedes(2, 0), Some(0));
        assert_eq!(y.precedes(0, 1), Some(1));
        assert_eq!(y.restrict(&[0, 1]), chain(2, &[1]));
    }

    #[test]
    fn fibers_follow_target_order() {
        let src = chain(2, &[1, 0]);
        let tgt = chain(2, &[0]).relabel(&[1, 0]);
        let m = OrderedMap::new(src, tgt, vec![1, 1, 0]).unwrap();
        assert!(m.is_ordered_map());
        let fib = m.fibers().unwrap();
        assert_eq!(fib.len(), 2);
        assert_eq!(fib[0].size(), 2);
        assert_eq!(fib[1].size(), 1);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(chain(2, &[0, 1]).to_string(), "[1<_0 2, 1<_0 3, 2<_1 3]");
    }
}
