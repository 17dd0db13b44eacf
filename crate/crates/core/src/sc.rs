//! Two-coloured pruned trees and the Swiss-cheese variant of the category
//! of trees.
//!
//! Colour 1 tips of a coloured tree are exactly the tips of its first
//! level-1 branch, or there are none. Leaves `0..k` of a coloured planar
//! tree have colour 1 and the remaining ones colour 2; an edge has colour 1
//! when some colour 1 leaf lies above it.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::catops::{build_rh, symmetrise_over, GeneratedPoset, SetOperad, Symmetrisation};
use crate::error::{Error, Result};
use crate::freeops::{free_elements, substitute, FreeElement, SetCollection, Token};
use crate::limits::Limits;
use crate::planar::{enumerate_reduced, ordered_partitions, DecoratedTree, DominatedCache, Node, Vertex};
use crate::trees::{enumerate_pruned_trees, induced_subtree, tree_morphisms, PrunedTree, TreeMorphism};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColouredTree {
    pub base: PrunedTree,
    /// Whether the first level-1 branch has colour 1.
    pub distinguished: bool,
}

impl ColouredTree {
    pub fn plain(base: PrunedTree) -> ColouredTree {
        ColouredTree {
            base,
            distinguished: false,
        }
    }

    pub fn new(base: PrunedTree, distinguished: bool) -> Result<ColouredTree> {
        if distinguished && base.is_degenerate() {
            return Err(Error::InvalidTree("a tree without tips has no colour 1 branch".into()));
        }
        Ok(ColouredTree { base, distinguished })
    }

    /// Reads the flag off a colouring of the tips (`true` for colour 1).
    pub fn from_colouring(base: PrunedTree, colour_one: &[bool]) -> Result<ColouredTree> {
        if colour_one.len() != base.tips() {
            return Err(Error::DimensionMismatch(format!(
                "{} colours for {} tips",
                colour_one.len(),
                base.tips()
            )));
        }
        let branch = base.first_branch_len();
        let any = colour_one.iter().any(|&c| c);
        if any && !colour_one.iter().enumerate().all(|(t, &c)| c == (t < branch)) {
            return Err(Error::InvalidTree(format!(
                "colour 1 tips of {} are not its first level-1 branch",
                base
            )));
        }
        Ok(ColouredTree {
            base,
            distinguished: any,
        })
    }

    /// `(colour 1 tips, colour 2 tips)`.
    pub fn arity(&self) -> (usize, usize) {
        let k1 = self.colour_one_tips();
        (k1, self.base.tips() - k1)
    }

    pub fn colour_one_tips(&self) -> usize {
        if self.distinguished {
            self.base.first_branch_len()
        } else {
            0
        }
    }

    pub fn tip_colour(&self, t: usize) -> u8 {
        if t < self.colour_one_tips() {
            1
        } else {
            2
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.base.is_reduced()
    }
}

/// Coloured trees of degree `n` with `k1` colour 1 and `k2` colour 2 tips.
pub fn enumerate_coloured_trees(n: usize, k1: usize, k2: usize) -> Result<Vec<ColouredTree>> {
    let trees = enumerate_pruned_trees(n, k1 + k2)?;
    Ok(trees
        .into_iter()
        .filter(|t| k1 == 0 || t.first_branch_len() == k1)
        .map(|t| ColouredTree {
            base: t,
            distinguished: k1 > 0,
        })
        .collect())
}

/// Morphisms whose fibers are valid coloured trees of the colour of the tip
/// they sit over; empty fibers only over colour 2 tips.
pub fn coloured_morphisms(source: &ColouredTree, target: &ColouredTree) -> Vec<TreeMorphism> {
    tree_morphisms(&source.base, &target.base, false)
        .into_iter()
        .filter(|m| coloured_fibers(m, source, target).is_ok())
        .collect()
}

/// Fibers of a coloured morphism with their inherited colouring.
pub fn coloured_fibers(m: &TreeMorphism, source: &ColouredTree, target: &ColouredTree) -> Result<Vec<ColouredTree>> {
    let mut out = Vec::with_capacity(target.base.tips());
    for (s, pre) in m.preimages().into_iter().enumerate() {
        let base = induced_subtree(&source.base, &pre);
        let colours: Vec<bool> = pre.iter().map(|&t| source.tip_colour(t) == 1).collect();
        let fiber = ColouredTree::from_colouring(base, &colours)?;
        if fiber.distinguished != (target.tip_colour(s) == 1) {
            return Err(Error::InvalidMap(format!(
                "fiber over tip {} has the wrong colour",
                s + 1
            )));
        }
        out.push(fiber);
    }
    Ok(out)
}

/// Coloured arity of every vertex in pre-order, leaves below `colour_one`
/// having colour 1.
pub fn vertex_arities<X: Clone>(tree: &DecoratedTree<X>, colour_one: usize) -> Vec<ColouredTree> {
    tree.vertices()
        .into_iter()
        .map(|(_, v)| {
            let distinguished = colour_one > 0
                && v
                    .children
                    .iter()
                    .any(|c| c.labels().iter().any(|&l| l < colour_one));
            ColouredTree {
                base: v.decoration.clone(),
                distinguished,
            }
        })
        .collect()
}

/// Whether every vertex sees its colour 1 children exactly on the first
/// level-1 branch of its decoration, or has none.
pub fn colour_valid<X: Clone>(tree: &DecoratedTree<X>, colour_one: usize) -> bool {
    tree.vertices().into_iter().all(|(_, v)| {
        let colours: Vec<bool> = v
            .children
            .iter()
            .map(|c| c.labels().iter().any(|&l| l < colour_one))
            .collect();
        ColouredTree::from_colouring(v.decoration.clone(), &colours).is_ok()
    })
}

/// Finite sets of tokens indexed by reduced coloured trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredCollection {
    degree: usize,
    entries: BTreeMap<ColouredTree, Vec<Token>>,
}

impl ColouredCollection {
    pub fn new(degree: usize) -> ColouredCollection {
        ColouredCollection {
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, tree: ColouredTree, mut tokens: Vec<Token>) -> Result<()> {
        if tree.base.degree() != self.degree || !tree.is_reduced() {
            return Err(Error::InvalidTree(format!(
                "{} is not a reduced tree of degree {}",
                tree.base, self.degree
            )));
        }
        tokens.sort();
        tokens.dedup();
        self.entries.insert(tree, tokens);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tokens(&self, tree: &ColouredTree) -> &[Token] {
        self.entries.get(tree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ColouredTree, &Vec<Token>)> {
        self.entries.iter()
    }

    /// One token on every reduced coloured tree with at most `max_tips` tips.
    pub fn one_point(degree: usize, max_tips: usize) -> Result<ColouredCollection> {
        let mut c = ColouredCollection::new(degree);
        for k in 2..=max_tips {
            for k1 in 0..=k {
                for t in enumerate_coloured_trees(degree, k1, k - k1)? {
                    c.insert(t, vec!["x".into()])?;
                }
            }
        }
        Ok(c)
    }

    /// The collection living on suspended, entirely colour 1 trees.
    pub fn suspension_of(x: &SetCollection) -> ColouredCollection {
        let mut c = ColouredCollection::new(x.degree() + 1);
        for (t, tokens) in x.entries() {
            c.entries.insert(
                ColouredTree {
                    base: t.suspend(),
                    distinguished: true,
                },
                tokens.clone(),
            );
        }
        c
    }

    /// The restriction to trees without colour 1 tips.
    pub fn closed_part(&self) -> SetCollection {
        let mut x = SetCollection::new(self.degree);
        for (t, tokens) in &self.entries {
            if !t.distinguished {
                x.insert(t.base.clone(), tokens.clone()).expect("reduced");
            }
        }
        x
    }
}

/// The free Swiss-cheese operad on a coloured collection.
#[derive(Clone, Debug)]
pub struct FreeScOperad {
    pub collection: ColouredCollection,
}

/// Operations of the free Swiss-cheese operad in a coloured arity, sorted.
pub fn free_sc_operad(x: &ColouredCollection, arity: &ColouredTree) -> Result<Vec<FreeElement>> {
    let k1 = arity.colour_one_tips();
    let all = free_elements(&arity.base, &mut DominatedCache::new(), &|shape| {
        if !colour_valid(shape, k1) {
            return vec![Vec::new(); shape.vertex_count()];
        }
        vertex_arities(shape, k1)
            .iter()
            .map(|a| x.tokens(a).to_vec())
            .collect()
    })?;
    Ok(all)
}

impl SetOperad for FreeScOperad {
    type Elem = FreeElement;

    fn degree(&self) -> usize {
        self.collection.degree
    }

    fn elements(&self, arity: &ColouredTree) -> Result<Vec<FreeElement>> {
        free_sc_operad(&self.collection, arity)
    }

    fn compose(&self, sigma: &TreeMorphism, head: &FreeElement, args: &[Option<&FreeElement>]) -> Result<FreeElement> {
        substitute(sigma, head, args)
    }

    fn render(&self, e: &FreeElement) -> Option<String> {
        Some(e.render())
    }
}

/// Colour-valid reduced trees with `k` colour 1 and `l` colour 2 leaves, as
/// a full subposet of the category of trees.
pub fn build_scrh(n: usize, k: usize, l: usize) -> Result<GeneratedPoset> {
    let objects: Vec<DecoratedTree> = enumerate_reduced(n, k + l)?
        .into_iter()
        .filter(|t| colour_valid(t, k))
        .collect();
    GeneratedPoset::from_objects(n, k + l, k, objects, false)
}

/// Symmetrisation of a Swiss-cheese operad in arity `(k, l)`.
pub fn sc_symmetrise<A: SetOperad>(operad: &A, k: usize, l: usize) -> Result<Symmetrisation<A::Elem>> {
    let poset = build_scrh(operad.degree(), k, l)?;
    symmetrise_over(operad, poset)
}

/// Permutations of `0..k+l` preserving both colour blocks.
pub fn coloured_permutations(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in (0..k).permutations(k) {
        for q in (k..k + l).permutations(l) {
            out.push(p.iter().chain(q.iter()).copied().collect());
        }
    }
    out
}

/// Colour-valid trees built directly, colour by colour, sorted.
pub fn enumerate_coloured_objects(n: usize, k: usize, l: usize) -> Result<Vec<DecoratedTree>> {
    let limits = Limits::global();
    limits.check_degree(n)?;
    limits.check_tips(k + l)?;
    let labels: Vec<usize> = (0..k + l).collect();
    let mut memo = HashMap::new();
    let mut out: Vec<DecoratedTree> = coloured_nodes(n, k, &labels, &mut memo)?
        .into_iter()
        .map(|r| DecoratedTree::new(n, r))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

fn coloured_nodes(n: usize, k: usize, labels: &[usize], memo: &mut HashMap<Vec<usize>, Vec<Node>>) -> Result<Vec<Node>> {
    if let Some(hit) = memo.get(labels) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    if labels.len() == 1 {
        out.push(Node::Leaf(labels[0]));
    } else {
        for m in 2..=labels.len() {
            for head in enumerate_pruned_trees(n, m)? {
                let branch = head.first_branch_len();
                for blocks in ordered_partitions(labels.len(), m) {
                    let open: Vec<bool> = blocks.iter().map(|b| b.iter().any(|&i| labels[i] < k)).collect();
                    let any = open.iter().any(|&o| o);
                    if any && !open.iter().enumerate().all(|(t, &o)| o == (t < branch)) {
                        continue;
                    }
                    let options: Vec<Vec<Node>> = blocks
                        .iter()
                        .map(|b| {
                            let sub: Vec<usize> = b.iter().map(|&i| labels[i]).collect();
                            coloured_nodes(n, k, &sub, memo)
                        })
                        .collect::<Result<_>>()?;
                    for children in options.iter().map(|o| o.iter().cloned()).multi_cartesian_product() {
                        out.push(Node::Vertex(Vertex {
                            decoration: head.clone(),
                            token: (),
                            children,
                        }));
                    }
                }
            }
        }
    }
    memo.insert(labels.to_vec(), out.clone());
    Ok(out)
}

/// Removes the bottom level of every decoration, if all are suspensions.
pub fn desuspend_tree<X: Clone>(tree: &DecoratedTree<X>) -> Option<DecoratedTree<X>> {
    fn go<X: Clone>(node: &Node<X>) -> Option<Node<X>> {
        Some(match node {
            Node::Leaf(l) => Node::Leaf(*l),
            Node::Vertex(v) => Node::Vertex(Vertex {
                decoration: v.decoration.desuspend()?,
                token: v.token.clone(),
                children: v.children.iter().map(go).collect::<Option<_>>()?,
            }),
        })
    }
    let root = go(tree.root())?;
    DecoratedTree::new(tree.degree().checked_sub(1)?, root).ok()
}

/// Outcome of comparing the one-coloured restrictions with the plain category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub closed_objects_equal: bool,
    pub closed_arrows_equal: bool,
    pub open_objects_match: bool,
    pub open_arrows_match: bool,
}

impl RestrictionReport {
    pub fn all_hold(&self) -> bool {
        self.closed_objects_equal && self.closed_arrows_equal && self.open_objects_match && self.open_arrows_match
    }
}

/// Compares `(0, m)` with degree `n` trees and `(m, 0)` with degree `n - 1`
/// trees through desuspension.
pub fn compare_restrictions(n: usize, m: usize) -> Result<RestrictionReport> {
    if n < 2 {
        return Err(Error::Precondition("the open restriction needs degree at least 2".into()));
    }
    let plain = build_rh(n, m)?;
    let closed = build_scrh(n, 0, m)?;
    let closed_objects_equal = plain.objects() == closed.objects();
    let arrows = |p: &GeneratedPoset| -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = p.generators().iter().map(|g| (g.source, g.target)).collect();
        v.sort();
        v
    };
    let closed_arrows_equal = closed_objects_equal && arrows(&plain) == arrows(&closed);

    let lower = build_rh(n - 1, m)?;
    let open = build_scrh(n, m, 0)?;
    let mapped: Vec<Option<usize>> = open
        .objects()
        .iter()
        .map(|o| desuspend_tree(o).and_then(|d| lower.index_of(&d)))
        .collect();
    let open_objects_match = mapped.iter().all(Option::is_some)
        && mapped.iter().flatten().all_unique()
        && mapped.len() == lower.objects().len();
    let open_arrows_match = open_objects_match && {
        let mut v: Vec<(usize, usize)> = open
            .generators()
            .iter()
            .map(|g| (mapped[g.source].unwrap(), mapped[g.target].unwrap()))
            .collect();
        v.sort();
        v == arrows(&lower)
    };
    Ok(RestrictionReport {
        closed_objects_equal,
        closed_arrows_equal,
        open_objects_match,
        open_arrows_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, gaps: &[u8]) -> PrunedTree {
        PrunedTree::from_gaps(n, gaps.to_vec()).unwrap()
    }

    #[test]
    fn colour_one_is_the_first_branch() {
        let tree = t(2, &[1, 0]);
        let c = ColouredTree::from_colouring(tree.clone(), &[true, true, false]).unwrap();
        assert_eq!(c.arity(), (2, 1));
        assert!(ColouredTree::from_colouring(tree.clone(), &[true, false, false]).is_err());
        assert_eq!(ColouredTree::from_colouring(tree, &[false; 3]).unwrap().arity(), (0, 3));
    }

    #[test]
    fn identity_fibers_carry_tip_colours() {
        let c = ColouredTree::new(t(2, &[1, 0]), true).unwrap();
        let id = TreeMorphism::identity(&c.base);
        let fib = coloured_fibers(&id, &c, &c).unwrap();
        assert_eq!(fib.iter().map(|f| f.distinguished).collect::<Vec<_>>(), vec![true, true, false]);
    }

    #[test]
    fn maps_to_a_closed_point() {
        let closed_unit = ColouredTree::plain(PrunedTree::linear(2));
        for gaps in [[0u8, 0], [1, 0], [1, 1]] {
            let base = t(2, &gaps);
            let open = ColouredTree::new(base.clone(), true).unwrap();
            let closed = ColouredTree::plain(base);
            assert_eq!(coloured_morphisms(&closed, &closed_unit).len(), 1);
            assert!(coloured_morphisms(&open, &closed_unit).is_empty());
        }
    }

    #[test]
    fn mixed_pair_has_one_object() {
        assert_eq!(build_scrh(2, 1, 1).unwrap().objects().len(), 1);
        assert_eq!(enumerate_coloured_objects(2, 1, 1).unwrap().len(), 1);
    }
}
