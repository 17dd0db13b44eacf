//! Planar trees whose vertices are decorated by reduced pruned n-trees.
//!
//! A vertex decorated by `T` has one child per tip of `T`, in tip order.
//! Leaves carry labels `0..arity`. Every vertex may also carry a token,
//! which is `()` for bare shapes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ordinals::{Direction, NOrder, Relation};
use crate::trees::{
    enumerate_pruned_trees, induced_subtree, tree_morphisms, PrunedTree, SurjectionCache,
    TreeMorphism,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node<X = ()> {
    Leaf(usize),
    Vertex(Vertex<X>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex<X = ()> {
    pub decoration: PrunedTree,
    pub token: X,
    pub children: Vec<Node<X>>,
}

impl<X> Node<X> {
    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Vertex(v) => v.children.iter().map(Node::leaf_count).sum(),
        }
    }

    pub fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            Node::Leaf(l) => out.push(*l),
            Node::Vertex(v) => v.children.iter().for_each(|c| c.collect_labels(out)),
        }
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vertex(v) => 1 + v.children.iter().map(Node::vertex_count).sum::<usize>(),
        }
    }

    /// Number of vertices on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vertex(v) => 1 + v.children.iter().map(Node::height).max().unwrap_or(0),
        }
    }

    pub fn as_vertex(&self) -> Option<&Vertex<X>> {
        match self {
            Node::Vertex(v) => Some(v),
            Node::Leaf(_) => None,
        }
    }

    fn relabel_in_place(&mut self, map: &dyn Fn(usize) -> usize) {
        match self {
            Node::Leaf(l) => *l = map(*l),
            Node::Vertex(v) => v.children.iter_mut().for_each(|c| c.relabel_in_place(map)),
        }
    }

    /// Copy with every leaf label replaced through `map`.
    pub fn relabelled(&self, map: &dyn Fn(usize) -> usize) -> Node<X>
    where
        X: Clone,
    {
        let mut out = self.clone();
        out.relabel_in_place(map);
        out
    }

    pub fn map_tokens<Y>(&self, f: &mut dyn FnMut(&X) -> Y) -> Node<Y> {
        match self {
            Node::Leaf(l) => Node::Leaf(*l),
            Node::Vertex(v) => {
                let token = f(&v.token);
                Node::Vertex(Vertex {
                    decoration: v.decoration.clone(),
                    token,
                    children: v.children.iter().map(|c| c.map_tokens(f)).collect(),
                })
            }
        }
    }

    fn preorder<'a>(&'a self, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a Vertex<X>)>) {
        if let Node::Vertex(v) = self {
            out.push((path.clone(), v));
            for (c, child) in v.children.iter().enumerate() {
                path.push(c);
                child.preorder(path, out);
                path.pop();
            }
        }
    }
}

/// A reduced planar n-tree with labelled leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedTree<X = ()> {
    degree: usize,
    arity: usize,
    root: Node<X>,
}

impl<X: Clone> DecoratedTree<X> {
    /// Validates labels, decorations and tip counts.
    pub fn new(degree: usize, root: Node<X>) -> Result<DecoratedTree<X>> {
        let mut labels = root.labels();
        let arity = labels.len();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| i != l) {
            return Err(Error::InvalidTree("leaf labels must be a permutation of 1..=k".into()));
        }
        fn check<X>(node: &Node<X>, degree: usize) -> Result<()> {
            if let Node::Vertex(v) = node {
                if v.decoration.degree() != degree {
                    return Err(Error::DimensionMismatch(format!(
                        "decoration {} has degree {}, expected {}",
                        v.decoration,
                        v.decoration.degree(),
                        degree
                    )));
                }
                if !v.decoration.is_reduced() {
                    return Err(Error::InvalidTree(format!(
                        "decoration {} is not reduced",
                        v.decoration
                    )));
                }
                if v.decoration.tips() != v.children.len() {
                    return Err(Error::InvalidTree(format!(
                        "decoration {} has {} tips but the vertex has {} children",
                        v.decoration,
                        v.decoration.tips(),
                        v.children.len()
                    )));
                }
                for c in &v.children {
                    check(c, degree)?;
                }
            }
            Ok(())
        }
        check(&root, degree)?;
        Ok(DecoratedTree {
            degree,
            arity,
            root,
        })
    }

    pub(crate) fn from_root_unchecked(degree: usize, root: Node<X>) -> DecoratedTree<X> {
        let arity = root.leaf_count();
        DecoratedTree {
            degree,
            arity,
            root,
        }
    }

    /// The tree with a single leaf and no vertices.
    pub fn leaf(degree: usize) -> DecoratedTree<X> {
        DecoratedTree {
            degree,
            arity: 1,
            root: Node::Leaf(0),
        }
    }

    /// One vertex decorated by `decoration` whose tip `t` carries `labels[t]`.
    pub fn corolla(decoration: &PrunedTree, token: X, labels: &[usize]) -> Result<DecoratedTree<X>> {
        let root = Node::Vertex(Vertex {
            decoration: decoration.clone(),
            token,
            children: labels.iter().map(|&l| Node::Leaf(l)).collect(),
        });
        DecoratedTree::new(decoration.degree(), root)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Node<X> {
        &self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.root.vertex_count()
    }

    pub fn is_corolla(&self) -> bool {
        self.vertex_count() == 1
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    /// Vertices in pre-order with their child-index paths from the root.
    pub fn vertices(&self) -> Vec<(Vec<usize>, &Vertex<X>)> {
        let mut out = Vec::new();
        self.root.preorder(&mut Vec::new(), &mut out);
        out
    }

    pub fn vertex_at(&self, path: &[usize]) -> Option<&Vertex<X>> {
        let mut node = &self.root;
        for &c in path {
            node = node.as_vertex()?.children.get(c)?;
        }
        node.as_vertex()
    }

    /// Tokens in vertex pre-order.
    pub fn tokens(&self) -> Vec<&X> {
        self.vertices().into_iter().map(|(_, v)| &v.token).collect()
    }

    /// Same shape with the tokens replaced in pre-order.
    pub fn with_tokens<Y: Clone>(&self, tokens: &[Y]) -> DecoratedTree<Y> {
        let mut it = tokens.iter();
        let root = self.root.map_tokens(&mut |_| it.next().expect("enough tokens").clone());
        DecoratedTree {
            degree: self.degree,
            arity: self.arity,
            root,
        }
    }

    pub fn map_tokens<Y>(&self, mut f: impl FnMut(&X) -> Y) -> DecoratedTree<Y> {
        DecoratedTree {
            degree: self.degree,
            arity: self.arity,
            root: self.root.map_tokens(&mut f),
        }
    }

    pub fn shape(&self) -> DecoratedTree<()> {
        self.map_tokens(|_| ())
    }

    /// The n-order on leaves read off at the vertex where two leaves meet.
    pub fn induced_order(&self) -> NOrder {
        let k = self.arity;
        let mut paths: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
        let mut decorations: Vec<&PrunedTree> = Vec::new();
        fn walk<'a, X>(
            node: &'a Node<X>,
            stack: &mut Vec<(usize, usize)>,
            paths: &mut Vec<Vec<(usize, usize)>>,
            decorations: &mut Vec<&'a PrunedTree>,
        ) {
            match node {
                Node::Leaf(l) => paths[*l] = stack.clone(),
                Node::Vertex(v) => {
                    let id = decorations.len();
                    decorations.push(&v.decoration);
                    for (c, child) in v.children.iter().enumerate() {
                        stack.push((id, c));
                        walk(child, stack, paths, decorations);
                        stack.pop();
                    }
                }
            }
        }
        walk(&self.root, &mut Vec::new(), &mut paths, &mut decorations);
        let mut table = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for i in 0..k {
            for j in i + 1..k {
                let (pi, pj) = (&paths[i], &paths[j]);
                let at = pi.iter().zip(pj).position(|(a, b)| a != b).expect("distinct leaves");
                let (id, ci) = pi[at];
                let cj = pj[at].1;
                let level = decorations[id].pair_level(ci.min(cj), ci.max(cj));
                table.push(Relation {
                    level: level as u8,
                    dir: if ci < cj { Direction::Lt } else { Direction::Gt },
                });
            }
        }
        NOrder::from_table_unchecked(self.degree, k, table)
    }

    /// Whether the tree is dominated by the ordinal of `tree`.
    pub fn dominated_by(&self, tree: &PrunedTree) -> Result<bool> {
        if tree.tips() != self.arity {
            return Err(Error::ArityMismatch {
                expected: tree.tips().to_string(),
                found: self.arity.to_string(),
            });
        }
        tree.to_ordinal().dominates(&self.induced_order())
    }

    /// Sum of the dimensions of the decorations.
    pub fn dimension(&self) -> usize {
        self.vertices().iter().map(|(_, v)| v.decoration.dimension()).sum()
    }

    /// Leaf `l` becomes leaf `perm[l]`.
    pub fn relabel(&self, perm: &[usize]) -> DecoratedTree<X> {
        DecoratedTree {
            degree: self.degree,
            arity: self.arity,
            root: self.root.relabelled(&|l| perm[l]),
        }
    }

    /// Grafts `other` onto leaf `label`, renumbering leaves left to right in
    /// label order: `other`'s leaves take labels `label..label + other.arity`.
    pub fn graft(&self, label: usize, other: &DecoratedTree<X>) -> Result<DecoratedTree<X>> {
        if other.degree != self.degree {
            return Err(Error::DimensionMismatch("grafting trees of different degree".into()));
        }
        if label >= self.arity {
            return Err(Error::LabelOutOfRange {
                label: label + 1,
                size: self.arity,
            });
        }
        let shift = other.arity - 1;
        let inner = other.root.relabelled(&|l| l + label);
        fn go<X: Clone>(node: &Node<X>, label: usize, shift: usize, inner: &Node<X>) -> Node<X> {
            match node {
                Node::Leaf(l) if *l == label => inner.clone(),
                Node::Leaf(l) => Node::Leaf(if *l > label { l + shift } else { *l }),
                Node::Vertex(v) => Node::Vertex(Vertex {
                    decoration: v.decoration.clone(),
                    token: v.token.clone(),
                    children: v.children.iter().map(|c| go(c, label, shift, inner)).collect(),
                }),
            }
        }
        Ok(DecoratedTree {
            degree: self.degree,
            arity: self.arity + shift,
            root: go(&self.root, label, shift, &inner),
        })
    }

    /// Compact text form with a formatter for tokens.
    pub fn render(&self, token: &dyn Fn(&X) -> Option<String>) -> String {
        fn go<X>(node: &Node<X>, token: &dyn Fn(&X) -> Option<String>, out: &mut String) {
            match node {
                Node::Leaf(l) => out.push_str(&(l + 1).to_string()),
                Node::Vertex(v) => {
                    out.push('<');
                    out.push_str(&v.decoration.to_string());
                    if let Some(t) = token(&v.token) {
                        out.push(':');
                        out.push_str(&t);
                    }
                    out.push_str(">(");
                    for (i, c) in v.children.iter().enumerate() {
                        if i > 0 {
                            out.push(' ');
                        }
                        go(c, token, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(&self.root, token, &mut out);
        out
    }
}

impl fmt::Display for DecoratedTree<()> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|_| None))
    }
}

/// Ordered partitions of `0..len` into `m` nonempty blocks, blocks ascending.
pub fn ordered_partitions(len: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    if m == 0 || m > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; len];
    loop {
        let mut blocks = vec![Vec::new(); m];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            assign[i] += 1;
            if assign[i] < m {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Number of reduced planar n-trees with `k` labelled leaves.
pub fn count_reduced(n: usize, k: usize) -> u128 {
    // r[j]: labelled trees on j leaves. tuples[m][s]: ordered m-tuples of
    // trees on disjoint label sets covering a fixed s-element set.
    if k == 0 {
        return 0;
    }
    let mut r = vec![0u128; k + 1];
    r[1] = 1;
    for j in 2..=k {
        let mut tuples = vec![vec![0u128; j + 1]; j + 1];
        tuples[0][0] = 1;
        for m in 1..=j {
            for s in m..=j {
                tuples[m][s] = (1..=s - (m - 1))
                    .map(|b| tuples[m - 1][s - b] * r[b] * binomial(s, b))
                    .sum();
            }
        }
        r[j] = (2..=j)
            .map(|m| (n as u128).pow(m as u32 - 1) * tuples[m][j])
            .sum();
    }
    r[k]
}

/// All reduced planar n-trees with leaves `0..k`, sorted.
pub fn enumerate_reduced(n: usize, k: usize) -> Result<Vec<DecoratedTree>> {
    let limits = Limits::global();
    limits.check_degree(n)?;
    limits.check_tips(k)?;
    if k == 0 {
        return Err(Error::Precondition("reduced trees need at least one leaf".into()));
    }
    let predicted = count_reduced(n, k);
    limits.check_objects("reduced trees", usize::try_from(predicted).unwrap_or(usize::MAX))?;
    let trees: Vec<Vec<PrunedTree>> = (0..=k)
        .map(|m| if m >= 2 { enumerate_pruned_trees(n, m) } else { Ok(Vec::new()) })
        .collect::<Result<_>>()?;
    let mut memo: HashMap<Vec<usize>, Arc<Vec<Node>>> = HashMap::new();
    let labels: Vec<usize> = (0..k).collect();
    let nodes = reduced_nodes(&labels, &trees, &mut memo);
    let mut out: Vec<DecoratedTree> = nodes
        .iter()
        .map(|r| DecoratedTree::from_root_unchecked(n, r.clone()))
        .collect();
    out.sort();
    debug_assert_eq!(out.len() as u128, predicted);
    Ok(out)
}

fn reduced_nodes(
    labels: &[usize],
    trees: &[Vec<PrunedTree>],
    memo: &mut HashMap<Vec<usize>, Arc<Vec<Node>>>,
) -> Arc<Vec<Node>> {
    if let Some(hit) = memo.get(labels) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if labels.len() == 1 {
        out.push(Node::Leaf(labels[0]));
    } else {
        for m in 2..=labels.len() {
            for blocks in ordered_partitions(labels.len(), m) {
                let options: Vec<Arc<Vec<Node>>> = blocks
                    .iter()
                    .map(|b| {
                        let sub: Vec<usize> = b.iter().map(|&i| labels[i]).collect();
                        reduced_nodes(&sub, trees, memo)
                    })
                    .collect();
                let combos: Vec<Vec<Node>> = options
                    .iter()
                    .map(|o| o.iter().cloned())
                    .multi_cartesian_product()
                    .collect();
                for s in &trees[m] {
                    for children in &combos {
                        out.push(Node::Vertex(Vertex {
                            decoration: s.clone(),
                            token: (),
                            children: children.clone(),
                        }));
                    }
                }
            }
        }
    }
    let out = Arc::new(out);
    memo.insert(labels.to_vec(), out.clone());
    out
}

/// Memoised dominated sets, keyed by the dominating tree.
#[derive(Default)]
pub struct DominatedCache {
    map: HashMap<PrunedTree, Arc<Vec<Node>>>,
}

impl DominatedCache {
    pub fn new() -> DominatedCache {
        DominatedCache::default()
    }

    /// Trees dominated by `tree`, with leaf `i` at tip `i` of `tree`.
    pub fn nodes(&mut self, tree: &PrunedTree) -> Arc<Vec<Node>> {
        if let Some(hit) = self.map.get(tree) {
            return hit.clone();
        }
        let k = tree.tips();
        let mut out = Vec::new();
        if k == 1 {
            out.push(Node::Leaf(0));
        } else if k >= 2 {
            for m in 2..=k {
                let heads = enumerate_pruned_trees_unchecked(tree.degree(), m);
                for s in &heads {
                    for sigma in tree_morphisms(tree, s, true) {
                        let pre = sigma.preimages();
                        let options: Vec<Vec<Node>> = pre
                            .iter()
                            .map(|p| {
                                let fiber = induced_subtree(tree, p);
                                self.nodes(&fiber)
                                    .iter()
                                    .map(|nd| nd.relabelled(&|l| p[l]))
                                    .collect()
                            })
                            .collect();
                        for children in options.iter().map(|o| o.iter().cloned()).multi_cartesian_product() {
                            out.push(Node::Vertex(Vertex {
                                decoration: s.clone(),
                                token: (),
                                children,
                            }));
                        }
                    }
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.map.insert(tree.clone(), out.clone());
        out
    }

    pub fn trees(&mut self, tree: &PrunedTree) -> Vec<DecoratedTree> {
        self.nodes(tree)
            .iter()
            .map(|r| DecoratedTree::from_root_unchecked(tree.degree(), r.clone()))
            .collect()
    }
}

fn enumerate_pruned_trees_unchecked(n: usize, m: usize) -> Vec<PrunedTree> {
    std::iter::repeat(0..n as u8)
        .take(m - 1)
        .multi_cartesian_product()
        .map(|g| PrunedTree::from_gaps(n, g).expect("gaps in range"))
        .collect()
}

/// All reduced planar trees dominated by `tree`, sorted.
pub fn enumerate_dominated(tree: &PrunedTree) -> Result<Vec<DecoratedTree>> {
    let limits = Limits::global();
    limits.check_degree(tree.degree())?;
    limits.check_tips(tree.tips())?;
    if tree.tips() == 0 {
        return Err(Error::Precondition("the degenerate tree dominates nothing reduced".into()));
    }
    Ok(DominatedCache::new().trees(tree))
}

/// The unique way of reading a dominated tree as an iterated composite:
/// a surjection onto the root decoration and, over each tip, a structure
/// for the corresponding fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Composable {
    /// Over a single tip: the unit.
    Unit { degree: usize },
    Node {
        morphism: TreeMorphism,
        branches: Vec<Composable>,
    },
}

impl Composable {
    pub fn arity(&self) -> PrunedTree {
        match self {
            Composable::Unit { degree } => PrunedTree::linear(*degree),
            Composable::Node { morphism, .. } => morphism.source().clone(),
        }
    }

    fn node(&self) -> Node {
        match self {
            Composable::Unit { .. } => Node::Leaf(0),
            Composable::Node { morphism, branches } => {
                let pre = morphism.preimages();
                Node::Vertex(Vertex {
                    decoration: morphism.target().clone(),
                    token: (),
                    children: branches
                        .iter()
                        .zip(&pre)
                        .map(|(b, p)| b.node().relabelled(&|l| p[l]))
                        .collect(),
                })
            }
        }
    }

    /// The decorated tree this structure describes.
    pub fn tree(&self) -> DecoratedTree {
        let arity = self.arity();
        DecoratedTree::from_root_unchecked(arity.degree(), self.node())
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Composable::Unit { .. } => 0,
            Composable::Node { branches, .. } => 1 + branches.iter().map(Composable::vertex_count).sum::<usize>(),
        }
    }
}

/// Splits a tree dominated by `tree` into its composable structure, lifting
/// the leaf partition at each vertex to a morphism of trees.
pub fn composable_structure<X: Clone>(tau: &DecoratedTree<X>, tree: &PrunedTree) -> Result<Composable> {
    if tau.arity() != tree.tips() || tau.degree() != tree.degree() {
        return Err(Error::NotDominated(tree.to_string()));
    }
    let local: Vec<usize> = (0..tau.arity()).collect();
    split(&tau.root, tree, &local)
}

fn split<X>(node: &Node<X>, tree: &PrunedTree, local: &[usize]) -> Result<Composable> {
    match node {
        Node::Leaf(_) => {
            if tree.tips() == 1 {
                Ok(Composable::Unit {
                    degree: tree.degree(),
                })
            } else {
                Err(Error::NotDominated(tree.to_string()))
            }
        }
        Node::Vertex(v) => {
            let mut f = vec![0usize; tree.tips()];
            for (c, child) in v.children.iter().enumerate() {
                for l in child.labels() {
                    f[local[l]] = c;
                }
            }
            let morphism = TreeMorphism::lift(&f, tree, &v.decoration)
                .ok_or_else(|| Error::NotDominated(tree.to_string()))?;
            let pre = morphism.preimages();
            let mut branches = Vec::with_capacity(v.children.len());
            for (child, p) in v.children.iter().zip(&pre) {
                let fiber = induced_subtree(tree, p);
                let mut sub = vec![usize::MAX; local.len()];
                for l in child.labels() {
                    sub[l] = p.binary_search(&local[l]).expect("label in fiber");
                }
                branches.push(split(child, &fiber, &sub)?);
            }
            Ok(Composable::Node { morphism, branches })
        }
    }
}

/// A generating arrow of the category of trees: at the vertex reached by
/// `vertex`, the children listed in `merged` are absorbed into it and the
/// decoration becomes the source of `morphism`, whose fibers are the merged
/// decorations and single tips elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Contraction {
    pub vertex: Vec<usize>,
    pub merged: Vec<usize>,
    pub morphism: TreeMorphism,
}

/// Combines a vertex token with the tokens of its children.
pub type MergeFn<'a, X> = dyn FnMut(&X, &[Option<&X>], &TreeMorphism) -> Result<X> + 'a;

impl Contraction {
    /// Applies the contraction; `merge` combines the vertex token with the
    /// tokens of the children (`None` for children that stay).
    pub fn apply<X: Clone>(
        &self,
        tree: &DecoratedTree<X>,
        merge: &mut MergeFn<'_, X>,
    ) -> Result<DecoratedTree<X>> {
        let root = self.apply_at(&tree.root, &self.vertex, merge)?;
        Ok(DecoratedTree {
            degree: tree.degree,
            arity: tree.arity,
            root,
        })
    }

    fn apply_at<X: Clone>(
        &self,
        node: &Node<X>,
        path: &[usize],
        merge: &mut MergeFn<'_, X>,
    ) -> Result<Node<X>> {
        let v = node
            .as_vertex()
            .ok_or_else(|| Error::Precondition("contraction path ends at a leaf".into()))?;
        if let Some((&c, rest)) = path.split_first() {
            let mut children = v.children.clone();
            let child = children
                .get(c)
                .ok_or_else(|| Error::Precondition("contraction path leaves the tree".into()))?;
            children[c] = self.apply_at(child, rest, merge)?;
            return Ok(Node::Vertex(Vertex {
                decoration: v.decoration.clone(),
                token: v.token.clone(),
                children,
            }));
        }
        let sigma = &self.morphism;
        if sigma.target() != &v.decoration {
            return Err(Error::Precondition("contraction does not match the vertex".into()));
        }
        let mut merged = vec![false; v.children.len()];
        for &m in &self.merged {
            merged[m] = true;
        }
        let mut args: Vec<Option<&X>> = Vec::with_capacity(v.children.len());
        for (s, child) in v.children.iter().enumerate() {
            if merged[s] {
                let cv = child
                    .as_vertex()
                    .ok_or_else(|| Error::Precondition("cannot merge a leaf".into()))?;
                args.push(Some(&cv.token));
            } else {
                args.push(None);
            }
        }
        let token = merge(&v.token, &args, sigma)?;
        let mut seen = vec![0usize; v.children.len()];
        let mut children = Vec::with_capacity(sigma.source().tips());
        for &s in sigma.tip_map() {
            let r = seen[s];
            seen[s] += 1;
            if merged[s] {
                children.push(v.children[s].as_vertex().expect("checked").children[r].clone());
            } else {
                children.push(v.children[s].clone());
            }
        }
        Ok(Node::Vertex(Vertex {
            decoration: sigma.source().clone(),
            token,
            children,
        }))
    }

    pub fn apply_shape<X: Clone>(&self, tree: &DecoratedTree<X>) -> Result<DecoratedTree<X>> {
        self.apply(tree, &mut |t, _, _| Ok(t.clone()))
    }
}

/// Every generating contraction at the vertex `path`, one for each set of
/// merged vertex-children and each admissible new decoration. The identity
/// re-decoration is left out.
pub fn contractions_at<X: Clone>(
    tree: &DecoratedTree<X>,
    path: &[usize],
    cache: &mut SurjectionCache,
) -> Result<Vec<Contraction>> {
    let v = tree
        .vertex_at(path)
        .ok_or_else(|| Error::Precondition("no vertex at the given path".into()))?;
    let degree = tree.degree;
    let inner: Vec<usize> = (0..v.children.len())
        .filter(|&c| v.children[c].as_vertex().is_some())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << inner.len()) {
        let merged: Vec<usize> = inner
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &c)| c)
            .collect();
        let fibers: Vec<PrunedTree> = v
            .children
            .iter()
            .enumerate()
            .map(|(c, child)| match child {
                Node::Vertex(cv) if merged.contains(&c) => cv.decoration.clone(),
                _ => PrunedTree::linear(degree),
            })
            .collect();
        for sigma in cache.get(&v.decoration, &fibers).iter() {
            if merged.is_empty() && sigma.source() == sigma.target() && sigma.tip_map().iter().enumerate().all(|(i, &s)| i == s) {
                continue;
            }
            out.push(Contraction {
                vertex: path.to_vec(),
                merged: merged.clone(),
                morphism: sigma.clone(),
            });
        }
    }
    Ok(out)
}

/// All ways of absorbing every vertex-child of the vertex at `path`.
pub fn contraction_targets(
    tree: &DecoratedTree,
    path: &[usize],
) -> Result<Vec<(PrunedTree, TreeMorphism, DecoratedTree)>> {
    let v = tree
        .vertex_at(path)
        .ok_or_else(|| Error::Precondition("no vertex at the given path".into()))?;
    let merged: Vec<usize> = (0..v.children.len())
        .filter(|&c| v.children[c].as_vertex().is_some())
        .collect();
    let fibers: Vec<PrunedTree> = v
        .children
        .iter()
        .map(|child| match child {
            Node::Vertex(cv) => cv.decoration.clone(),
            Node::Leaf(_) => PrunedTree::linear(tree.degree),
        })
        .collect();
    let mut out = Vec::new();
    for sigma in crate::trees::surjections_with_fibers(&v.decoration, &fibers) {
        if merged.is_empty() && sigma.source() == sigma.target() && sigma.tip_map().iter().enumerate().all(|(i, &s)| i == s) {
            continue;
        }
        let c = Contraction {
            vertex: path.to_vec(),
            merged: merged.clone(),
            morphism: sigma.clone(),
        };
        let image = c.apply_shape(tree)?;
        out.push((sigma.source().clone(), sigma, image));
    }
    Ok(out)
}

/// Whether `tau`, dominated by `tree`, can be evaluated to a corolla by
/// repeatedly absorbing all vertex-children into the root while staying
/// dominated by `tree`.
pub fn root_first_realizable(
    tau: &DecoratedTree,
    tree: &PrunedTree,
    cache: &mut SurjectionCache,
    memo: &mut HashMap<DecoratedTree, bool>,
) -> Result<bool> {
    if let Some(&hit) = memo.get(tau) {
        return Ok(hit);
    }
    let root = tau
        .root
        .as_vertex()
        .ok_or_else(|| Error::Precondition("a bare leaf has no root vertex".into()))?;
    let merged: Vec<usize> = (0..root.children.len())
        .filter(|&c| root.children[c].as_vertex().is_some())
        .collect();
    let answer = if merged.is_empty() {
        tau.dominated_by(tree)?
    } else {
        let fibers: Vec<PrunedTree> = root
            .children
            .iter()
            .map(|child| match child {
                Node::Vertex(cv) => cv.decoration.clone(),
                Node::Leaf(_) => PrunedTree::linear(tau.degree),
            })
            .collect();
        let mut found = false;
        for sigma in cache.get(&root.decoration, &fibers).iter() {
            let c = Contraction {
                vertex: Vec::new(),
                merged: merged.clone(),
                morphism: sigma.clone(),
            };
            let next = c.apply_shape(tau)?;
            if next.dominated_by(tree)? && root_first_realizable(&next, tree, cache, memo)? {
                found = true;
                break;
            }
        }
        found
    };
    memo.insert(tau.clone(), answer);
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, gaps: &[u8]) -> PrunedTree {
        PrunedTree::from_gaps(n, gaps.to_vec()).unwrap()
    }

    #[test]
    fn induced_order_of_corolla_is_the_tree() {
        let tree = t(2, &[1, 0]);
        let c = DecoratedTree::corolla(&tree, (), &[0, 1, 2]).unwrap();
        assert_eq!(c.induced_order(), tree.to_ordinal());
        let c = DecoratedTree::corolla(&tree, (), &[2, 0, 1]).unwrap();
        assert_eq!(c.induced_order(), tree.to_ordinal().relabel(&[2, 0, 1]));
    }

    #[test]
    fn reduced_counts_match_closed_values() {
        assert_eq!(count_reduced(1, 2), 2);
        assert_eq!(count_reduced(1, 3), 18);
        assert_eq!(count_reduced(2, 3), 72);
        assert_eq!(count_reduced(2, 4), 2112);
        for (n, k) in [(1, 3), (2, 3), (1, 4)] {
            assert_eq!(enumerate_reduced(n, k).unwrap().len() as u128, count_reduced(n, k));
        }
    }

    #[test]
    fn dominated_by_linear_order_is_planar() {
        // n = 1: dominated trees of [k] are planar trees with k leaves.
        let counts: Vec<usize> = (2..=5)
            .map(|k| enumerate_dominated(&t(1, &vec![0; k - 1])).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 11, 45]);
    }

    #[test]
    fn composable_round_trip() {
        let tree = t(2, &[1, 0, 1]);
        for tau in enumerate_dominated(&tree).unwrap() {
            let cs = composable_structure(&tau, &tree).unwrap();
            assert_eq!(cs.tree(), tau);
        }
    }

    #[test]
    fn graft_shifts_labels() {
        let a = DecoratedTree::corolla(&t(1, &[0]), (), &[0, 1]).unwrap();
        let g = a.graft(0, &a).unwrap();
        assert_eq!(g.arity(), 3);
        assert_eq!(g.to_string(), "<[2]>(<[2]>(1 2) 3)");
    }

    #[test]
    fn contraction_targets_of_two_level_tree() {
        let inner = Node::Vertex(Vertex {
            decoration: t(2, &[1]),
            token: (),
            children: vec![Node::Leaf(0), Node::Leaf(1)],
        });
        let root = Node::Vertex(Vertex {
            decoration: t(2, &[0]),
            token: (),
            children: vec![inner, Node::Leaf(2)],
        });
        let tau = DecoratedTree::new(2, root).unwrap();
        let targets = contraction_targets(&tau, &[]).unwrap();
        assert!(!targets.is_empty());
        for (tree, _, image) in &targets {
            assert!(image.is_corolla());
            assert_eq!(tree.tips(), 3);
        }
    }
}
