//! Pruned n-level trees and their morphisms.
//!
//! A pruned n-tree with `k >= 1` tips is determined by its `k - 1` gap
//! levels: the gap between consecutive tips `a` and `a + 1` is the highest
//! level at which their ancestors coincide. Level sizes and fiber lists are
//! derived from that sequence.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ordinals::{pair_ok, preserves, Direction, NOrder, Relation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrunedTree {
    degree: usize,
    tips: usize,
    gaps: Vec<u8>,
}

impl PrunedTree {
    pub fn from_gaps(degree: usize, gaps: Vec<u8>) -> Result<PrunedTree> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if let Some(g) = gaps.iter().find(|&&g| g as usize >= degree) {
            return Err(Error::InvalidTree(format!("gap level {} outside 0..{}", g, degree)));
        }
        Ok(PrunedTree {
            degree,
            tips: gaps.len() + 1,
            gaps,
        })
    }

    /// The linear tree `U_n` with one tip.
    pub fn linear(degree: usize) -> PrunedTree {
        PrunedTree {
            degree,
            tips: 1,
            gaps: Vec::new(),
        }
    }

    /// The degenerate tree `z^n U_0` with no tips.
    pub fn degenerate(degree: usize) -> PrunedTree {
        PrunedTree {
            degree,
            tips: 0,
            gaps: Vec::new(),
        }
    }

    /// The tree `M_l^k`: `k` tips whose only nonempty order is `<_l`.
    pub fn m_tree(degree: usize, level: usize, k: usize) -> Result<PrunedTree> {
        if k == 0 {
            return Ok(PrunedTree::degenerate(degree));
        }
        PrunedTree::from_gaps(degree, vec![level as u8; k - 1])
    }

    /// Builds a tree from level sizes `[k_n, ..., k_1]` and the fiber sizes of
    /// the maps `[k_n] -> [k_{n-1}]`, ..., `[k_2] -> [k_1]`.
    pub fn from_levels(degree: usize, levels: &[usize], fibers: &[Vec<usize>]) -> Result<PrunedTree> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if levels.len() != degree || fibers.len() != degree - 1 {
            return Err(Error::DimensionMismatch(format!(
                "degree {} needs {} levels and {} fiber lists",
                degree,
                degree,
                degree - 1
            )));
        }
        if levels[0] == 0 {
            if levels.iter().any(|&l| l != 0) || fibers.iter().any(|f| !f.is_empty()) {
                return Err(Error::InvalidTree("a tree without tips has empty levels".into()));
            }
            return Ok(PrunedTree::degenerate(degree));
        }
        if degree >= 2 && levels[degree - 1] == 0 {
            return Err(Error::InvalidTree("level 1 is empty".into()));
        }
        // parent[i][a]: node below node `a` of level index i (levels[i]).
        let mut parents: Vec<Vec<usize>> = Vec::with_capacity(degree);
        for (i, fib) in fibers.iter().enumerate() {
            if fib.len() != levels[i + 1] {
                return Err(Error::InvalidTree(format!(
                    "map into a level of size {} has {} fibers",
                    levels[i + 1],
                    fib.len()
                )));
            }
            if fib.contains(&0) {
                return Err(Error::InvalidTree("a fiber is empty; the tree is not pruned".into()));
            }
            if fib.iter().sum::<usize>() != levels[i] {
                return Err(Error::InvalidTree(format!(
                    "fiber sizes sum to {} over a level of size {}",
                    fib.iter().sum::<usize>(),
                    levels[i]
                )));
            }
            let mut p = Vec::with_capacity(levels[i]);
            for (b, &s) in fib.iter().enumerate() {
                p.extend(std::iter::repeat(b).take(s));
            }
            parents.push(p);
        }
        parents.push(vec![0; levels[degree - 1]]);
        let k = levels[0];
        // nodes[q][tip] for q = n, n-1, ..., 1 (index 0 is level n).
        let mut nodes: Vec<Vec<usize>> = vec![(0..k).collect()];
        for up in parents.iter().take(degree - 1) {
            let prev = nodes.last().unwrap();
            nodes.push(prev.iter().map(|&a| up[a]).collect());
        }
        let mut gaps = Vec::with_capacity(k.saturating_sub(1));
        for a in 0..k.saturating_sub(1) {
            // highest level q with equal ancestors; level q sits at index n - q.
            let g = (1..degree)
                .rev()
                .find(|&q| nodes[degree - q][a] == nodes[degree - q][a + 1])
                .unwrap_or(0);
            gaps.push(g as u8);
        }
        let tree = PrunedTree::from_gaps(degree, gaps)?;
        debug_assert_eq!(tree.level_sizes(), levels);
        Ok(tree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tips(&self) -> usize {
        self.tips
    }

    pub fn gaps(&self) -> &[u8] {
        &self.gaps
    }

    pub fn is_degenerate(&self) -> bool {
        self.tips == 0
    }

    pub fn is_linear(&self) -> bool {
        self.tips == 1
    }

    /// Pruned, nondegenerate and not `U_n`.
    pub fn is_reduced(&self) -> bool {
        self.tips >= 2
    }

    /// Index of the level-`level` ancestor of `tip` (levels `0..=n`).
    pub fn node_of(&self, tip: usize, level: usize) -> usize {
        if level >= self.degree {
            return tip;
        }
        self.gaps[..tip].iter().filter(|&&g| (g as usize) < level).count()
    }

    /// Number of nodes at `level` (levels `0..=n`).
    pub fn level_size(&self, level: usize) -> usize {
        if self.tips == 0 {
            return usize::from(level == 0);
        }
        if level >= self.degree {
            return self.tips;
        }
        1 + self.gaps.iter().filter(|&&g| (g as usize) < level).count()
    }

    /// `[k_n, ..., k_1]`.
    pub fn level_sizes(&self) -> Vec<usize> {
        (1..=self.degree).rev().map(|q| self.level_size(q)).collect()
    }

    /// Fiber sizes of `[k_n] -> [k_{n-1}]`, ..., `[k_2] -> [k_1]`.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.degree.saturating_sub(1));
        for q in (2..=self.degree).rev() {
            let mut sizes = Vec::new();
            if self.tips > 0 {
                let mut count = 1;
                for &g in &self.gaps {
                    let g = g as usize;
                    if g < q - 1 {
                        sizes.push(count);
                        count = 1;
                    } else if g < q {
                        count += 1;
                    }
                }
                sizes.push(count);
            }
            out.push(sizes);
        }
        out
    }

    /// The total n-order on tips: `i <_p j` iff `i < j` and `p` is the
    /// highest level at which their ancestors agree.
    pub fn to_ordinal(&self) -> NOrder {
        let k = self.tips;
        let mut table = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for i in 0..k {
            let mut level = u8::MAX;
            for j in i + 1..k {
                level = level.min(self.gaps[j - 1]);
                table.push(Relation {
                    level,
                    dir: Direction::Lt,
                });
            }
        }
        NOrder::from_table_unchecked(self.degree, k, table)
    }

    /// Level of the pair of tips `i < j`.
    pub fn pair_level(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        *self.gaps[i..j].iter().min().unwrap() as usize
    }

    /// The tree of a total n-order together with the permutation `perm`
    /// (label to tip) for which `x.relabel(perm) == tree.to_ordinal()`.
    pub fn from_total_order(x: &NOrder) -> Result<(PrunedTree, Vec<usize>)> {
        let order = x.linear_order()?;
        let mut perm = vec![0; x.size()];
        for (pos, &label) in order.iter().enumerate() {
            perm[label] = pos;
        }
        let gaps = order
            .windows(2)
            .map(|w| x.compare(w[0], w[1]).0 as u8)
            .collect();
        let tree = if x.size() == 0 {
            PrunedTree::degenerate(x.degree())
        } else {
            PrunedTree::from_gaps(x.degree(), gaps)?
        };
        debug_assert_eq!(tree.to_ordinal(), x.relabel(&perm));
        Ok((tree, perm))
    }

    /// `sum_{i=1..n} k_i`.
    pub fn edge_count(&self) -> usize {
        self.level_sizes().iter().sum()
    }

    /// `E - n - 1` for reduced trees and 0 otherwise.
    pub fn dimension(&self) -> usize {
        if self.tips <= 1 {
            0
        } else {
            self.edge_count() - self.degree - 1
        }
    }

    /// Number of tips in the first level-1 branch.
    pub fn first_branch_len(&self) -> usize {
        if self.tips == 0 {
            return 0;
        }
        1 + self.gaps.iter().take_while(|&&g| g >= 1).count()
    }

    /// Adds a new bottom level below the root.
    pub fn suspend(&self) -> PrunedTree {
        PrunedTree {
            degree: self.degree + 1,
            tips: self.tips,
            gaps: self.gaps.iter().map(|g| g + 1).collect(),
        }
    }

    /// Inverse of [`PrunedTree::suspend`] where it exists.
    pub fn desuspend(&self) -> Option<PrunedTree> {
        if self.degree < 2 || self.gaps.contains(&0) {
            return None;
        }
        Some(PrunedTree {
            degree: self.degree - 1,
            tips: self.tips,
            gaps: self.gaps.iter().map(|g| g - 1).collect(),
        })
    }

    /// Parses the compact form produced by `Display`, e.g. `[3,2],[2,1]`.
    pub fn parse(degree: usize, s: &str) -> Result<PrunedTree> {
        let groups = parse_groups(s)?;
        if groups.is_empty() {
            return Err(Error::Parse(format!("no levels in {:?}", s)));
        }
        PrunedTree::from_levels(degree, &groups[0], &groups[1..])
    }
}

fn parse_groups(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut groups = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('[') {
            return Err(Error::Parse(format!("expected '[' in {:?}", s)));
        }
        let end = rest
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unclosed '[' in {:?}", s)))?;
        let body = &rest[1..end];
        let group = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad number {:?}", t)))
            })
            .collect::<Result<Vec<_>>>()?;
        groups.push(group);
        rest = &rest[end + 1..];
    }
    Ok(groups)
}

impl fmt::Display for PrunedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.level_sizes().iter().join(","))?;
        for fib in self.fibers() {
            write!(f, ",[{}]", fib.iter().join(","))?;
        }
        Ok(())
    }
}

/// All pruned n-trees with `k` tips in canonical order.
pub fn enumerate_pruned_trees(n: usize, k: usize) -> Result<Vec<PrunedTree>> {
    let limits = Limits::global();
    limits.check_degree(n)?;
    limits.check_tips(k)?;
    if k == 0 {
        return Ok(vec![PrunedTree::degenerate(n)]);
    }
    Ok(std::iter::repeat(0..n as u8)
        .take(k - 1)
        .multi_cartesian_product()
        .map(|gaps| PrunedTree {
            degree: n,
            tips: k,
            gaps,
        })
        .chain((k == 1).then(|| PrunedTree::linear(n)))
        .collect())
}

/// All reduced trees with between 2 and `max_tips` tips.
pub fn enumerate_reduced_trees(n: usize, max_tips: usize) -> Result<Vec<PrunedTree>> {
    let mut out = Vec::new();
    for k in 2..=max_tips {
        out.extend(enumerate_pruned_trees(n, k)?);
    }
    Ok(out)
}

/// Properties a tree morphism may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorphismTag {
    Injection,
    Surjection,
    Quasibijection,
    FullInjection,
}

impl MorphismTag {
    pub fn name(self) -> &'static str {
        match self {
            MorphismTag::Injection => "injection",
            MorphismTag::Surjection => "surjection",
            MorphismTag::Quasibijection => "quasibijection",
            MorphismTag::FullInjection => "full_injection",
        }
    }
}

/// A map of n-level trees, stored as one map per level `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeMorphism {
    source: PrunedTree,
    target: PrunedTree,
    levels: Vec<Vec<usize>>,
}

impl TreeMorphism {
    /// The unique morphism with tip map `f`, if `f` is an ordered map.
    pub fn lift(f: &[usize], source: &PrunedTree, target: &PrunedTree) -> Option<TreeMorphism> {
        if source.degree != target.degree || f.len() != source.tips {
            return None;
        }
        if f.iter().any(|&s| s >= target.tips) {
            return None;
        }
        if !ordered_tip_map(source, target, f) {
            return None;
        }
        let n = source.degree;
        let mut levels = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let mut map = vec![usize::MAX; source.level_size(q)];
            if q == 0 && source.tips == 0 {
                map[0] = 0;
            }
            for (i, &s) in f.iter().enumerate() {
                let a = source.node_of(i, q);
                let b = target.node_of(s, q);
                if map[a] != usize::MAX && map[a] != b {
                    return None;
                }
                map[a] = b;
            }
            levels.push(map);
        }
        Some(TreeMorphism {
            source: source.clone(),
            target: target.clone(),
            levels,
        })
    }

    /// Builds a morphism from its level maps `[sigma_n, ..., sigma_1]`.
    pub fn from_level_maps(
        source: &PrunedTree,
        target: &PrunedTree,
        maps: &[Vec<usize>],
    ) -> Result<TreeMorphism> {
        let n = source.degree;
        if maps.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "degree {} needs {} level maps, got {}",
                n,
                n,
                maps.len()
            )));
        }
        let tip_map = &maps[0];
        let m = TreeMorphism::lift(tip_map, source, target)
            .ok_or_else(|| Error::InvalidMap("tip map is not ordered".into()))?;
        for (idx, map) in maps.iter().enumerate() {
            if &m.levels[n - idx] != map {
                return Err(Error::InvalidMap(format!(
                    "level {} map does not commute with the tree maps",
                    n - idx
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(tree: &PrunedTree) -> TreeMorphism {
        let f: Vec<usize> = (0..tree.tips).collect();
        TreeMorphism::lift(&f, tree, tree).expect("identity is ordered")
    }

    /// The morphism `T -> U_n`.
    pub fn to_linear(tree: &PrunedTree) -> TreeMorphism {
        TreeMorphism::lift(&vec![0; tree.tips], tree, &PrunedTree::linear(tree.degree))
            .expect("every tree maps to U_n")
    }

    pub fn source(&self) -> &PrunedTree {
        &self.source
    }

    pub fn target(&self) -> &PrunedTree {
        &self.target
    }

    pub fn tip_map(&self) -> &[usize] {
        &self.levels[self.source.degree]
    }

    /// Map at level `q` in `0..=n`.
    pub fn level_map(&self, q: usize) -> &[usize] {
        &self.levels[q]
    }

    /// Level maps `[sigma_n, ..., sigma_1]`.
    pub fn level_maps_top_down(&self) -> Vec<Vec<usize>> {
        (1..=self.source.degree).rev().map(|q| self.levels[q].clone()).collect()
    }

    pub fn is_surjection(&self) -> bool {
        let mut hit = vec![false; self.target.tips];
        for &s in self.tip_map() {
            hit[s] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injection(&self) -> bool {
        self.levels.iter().all(|m| m.iter().all_unique())
    }

    pub fn is_quasibijection(&self) -> bool {
        self.source.tips == self.target.tips && self.is_surjection()
    }

    pub fn tags(&self) -> Vec<MorphismTag> {
        let mut out = Vec::new();
        let inj = self.is_injection();
        let quasi = self.is_quasibijection();
        if inj {
            out.push(MorphismTag::Injection);
        }
        if self.is_surjection() {
            out.push(MorphismTag::Surjection);
        }
        if quasi {
            out.push(MorphismTag::Quasibijection);
        }
        if inj && quasi {
            out.push(MorphismTag::FullInjection);
        }
        out
    }

    /// Preimage of each target tip, ascending.
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.tips];
        for (i, &s) in self.tip_map().iter().enumerate() {
            out[s].push(i);
        }
        out
    }

    /// Fiber trees over the tips of the target, for a surjection.
    pub fn fibers(&self) -> Result<Vec<PrunedTree>> {
        if !self.is_surjection() {
            return Err(Error::NotSurjection);
        }
        Ok(self
            .preimages()
            .iter()
            .map(|pre| induced_subtree(&self.source, pre))
            .collect())
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &TreeMorphism) -> Result<TreeMorphism> {
        if self.target != then.source {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        let f: Vec<usize> = self.tip_map().iter().map(|&s| then.tip_map()[s]).collect();
        TreeMorphism::lift(&f, &self.source, &then.target)
            .ok_or_else(|| Error::InvalidMap("composite is not ordered".into()))
    }
}

/// The tree spanned by the tips `subset` (ascending) of `tree`.
pub fn induced_subtree(tree: &PrunedTree, subset: &[usize]) -> PrunedTree {
    if subset.is_empty() {
        return PrunedTree::degenerate(tree.degree);
    }
    let gaps = subset
        .windows(2)
        .map(|w| tree.pair_level(w[0], w[1]) as u8)
        .collect();
    PrunedTree {
        degree: tree.degree,
        tips: subset.len(),
        gaps,
    }
}

/// Whether `f` on tips is an ordered map of the underlying ordinals.
pub fn ordered_tip_map(source: &PrunedTree, target: &PrunedTree, f: &[usize]) -> bool {
    let t = target.to_ordinal();
    preserves(&source.to_ordinal(), &t, |i| f[i])
}

/// All morphisms `source -> target`, optionally only the surjections.
pub fn tree_morphisms(source: &PrunedTree, target: &PrunedTree, surjective: bool) -> Vec<TreeMorphism> {
    let t = target.to_ordinal();
    let mut out = Vec::new();
    let mut f = Vec::with_capacity(source.tips);
    let mut hits = vec![0usize; target.tips];
    search_maps(source, &t, surjective, &mut f, &mut hits, &mut |f| {
        if let Some(m) = TreeMorphism::lift(f, source, target) {
            out.push(m);
        }
    });
    out
}

fn search_maps(
    source: &PrunedTree,
    target: &NOrder,
    surjective: bool,
    f: &mut Vec<usize>,
    hits: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let b = f.len();
    if b == source.tips {
        if !surjective || hits.iter().all(|&h| h > 0) {
            emit(f);
        }
        return;
    }
    if surjective {
        let missing = hits.iter().filter(|&&h| h == 0).count();
        if missing > source.tips - b {
            return;
        }
    }
    for s in 0..target.size() {
        if (0..b).all(|a| pair_ok(target, source.pair_level(a, b), f[a], s)) {
            f.push(s);
            hits[s] += 1;
            search_maps(source, target, surjective, f, hits, emit);
            hits[s] -= 1;
            f.pop();
        }
    }
}

/// All surjections `T' -> target` whose fiber over tip `s` is `fibers[s]`.
pub fn surjections_with_fibers(target: &PrunedTree, fibers: &[PrunedTree]) -> Vec<TreeMorphism> {
    assert_eq!(fibers.len(), target.tips);
    let n = target.degree;
    let total: usize = fibers.iter().map(|t| t.tips).sum();
    let t = target.to_ordinal();
    let mut out = Vec::new();
    let candidates = enumerate_pruned_trees_unbounded(n, total);
    for source in candidates {
        let mut f = Vec::with_capacity(total);
        let mut counts = vec![0usize; target.tips];
        let mut ranks = Vec::with_capacity(total);
        fiber_search(&source, &t, fibers, &mut f, &mut counts, &mut ranks, &mut out, target);
    }
    out
}

fn enumerate_pruned_trees_unbounded(n: usize, k: usize) -> Vec<PrunedTree> {
    if k == 0 {
        return vec![PrunedTree::degenerate(n)];
    }
    std::iter::repeat(0..n as u8)
        .take(k - 1)
        .multi_cartesian_product()
        .map(|gaps| PrunedTree {
            degree: n,
            tips: k,
            gaps,
        })
        .chain((k == 1).then(|| PrunedTree::linear(n)))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn fiber_search(
    source: &PrunedTree,
    t: &NOrder,
    fibers: &[PrunedTree],
    f: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    ranks: &mut Vec<usize>,
    out: &mut Vec<TreeMorphism>,
    target: &PrunedTree,
) {
    let b = f.len();
    if b == source.tips {
        if let Some(m) = TreeMorphism::lift(f, source, target) {
            out.push(m);
        }
        return;
    }
    for s in 0..t.size() {
        if counts[s] == fibers[s].tips {
            continue;
        }
        let rank = counts[s];
        let ok = (0..b).all(|a| {
            let p = source.pair_level(a, b);
            if f[a] == s {
                fibers[s].pair_level(ranks[a], rank) == p
            } else {
                pair_ok(t, p, f[a], s)
            }
        });
        if ok {
            f.push(s);
            ranks.push(rank);
            counts[s] += 1;
            fiber_search(source, t, fibers, f, counts, ranks, out, target);
            counts[s] -= 1;
            ranks.pop();
            f.pop();
        }
    }
}

/// Memoised [`surjections_with_fibers`].
#[derive(Default)]
pub struct SurjectionCache {
    map: HashMap<(PrunedTree, Vec<PrunedTree>), Arc<Vec<TreeMorphism>>>,
}

impl SurjectionCache {
    pub fn new() -> SurjectionCache {
        SurjectionCache::default()
    }

    pub fn get(&mut self, target: &PrunedTree, fibers: &[PrunedTree]) -> Arc<Vec<TreeMorphism>> {
        self.map
            .entry((target.clone(), fibers.to_vec()))
            .or_insert_with(|| Arc::new(surjections_with_fibers(target, fibers)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
