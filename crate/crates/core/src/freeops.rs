//! Free reduced n-operads on finite collections, the passage to symmetric
//! collections, and the free symmetric operad.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catops::{build_rh, SetOperad};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::planar::{DecoratedTree, DominatedCache, Node, Vertex};
use crate::sc::ColouredTree;
use crate::trees::{enumerate_pruned_trees, PrunedTree, TreeMorphism};

pub type Token = String;

/// Finite sets of tokens indexed by reduced pruned n-trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCollection {
    degree: usize,
    entries: BTreeMap<PrunedTree, Vec<Token>>,
}

impl SetCollection {
    pub fn new(degree: usize) -> SetCollection {
        SetCollection {
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, tree: PrunedTree, mut tokens: Vec<Token>) -> Result<()> {
        if tree.degree() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "tree of degree {} in a collection of degree {}",
                tree.degree(),
                self.degree
            )));
        }
        if !tree.is_reduced() {
            return Err(Error::InvalidTree(format!("{} is not reduced", tree)));
        }
        tokens.sort();
        tokens.dedup();
        self.entries.insert(tree, tokens);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tokens(&self, tree: &PrunedTree) -> &[Token] {
        self.entries.get(tree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PrunedTree, &Vec<Token>)> {
        self.entries.iter()
    }

    /// One token `x` on every reduced tree with at most `max_tips` tips.
    pub fn one_point(degree: usize, max_tips: usize) -> Result<SetCollection> {
        let mut c = SetCollection::new(degree);
        for k in 2..=max_tips {
            for t in enumerate_pruned_trees(degree, k)? {
                c.insert(t, vec!["x".into()])?;
            }
        }
        Ok(c)
    }

    /// Up to `max_tokens` tokens per reduced tree, drawn from a seeded stream.
    pub fn random(degree: usize, max_tips: usize, max_tokens: usize, seed: u64) -> Result<SetCollection> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = SetCollection::new(degree);
        for k in 2..=max_tips {
            for t in enumerate_pruned_trees(degree, k)? {
                let m = rng.gen_range(0..=max_tokens);
                c.insert(t, (0..m).map(|i| format!("x{}", i)).collect())?;
            }
        }
        Ok(c)
    }
}

/// An operation of the free operad: a dominated tree with tokens.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeElement {
    arity: PrunedTree,
    body: DecoratedTree<Token>,
}

impl FreeElement {
    /// Checks domination and the arity.
    pub fn new(arity: PrunedTree, body: DecoratedTree<Token>) -> Result<FreeElement> {
        if !body.dominated_by(&arity)? {
            return Err(Error::NotDominated(arity.to_string()));
        }
        Ok(FreeElement { arity, body })
    }

    /// The unit over `U_n`.
    pub fn unit(degree: usize) -> FreeElement {
        FreeElement {
            arity: PrunedTree::linear(degree),
            body: DecoratedTree::leaf(degree),
        }
    }

    pub fn arity(&self) -> &PrunedTree {
        &self.arity
    }

    pub fn body(&self) -> &DecoratedTree<Token> {
        &self.body
    }

    pub fn is_unit(&self) -> bool {
        self.arity.is_linear()
    }

    pub fn render(&self) -> String {
        self.body.render(&|t| Some(t.clone()))
    }
}

/// Elements of the free operad on `x` in arity `tree`, sorted.
pub fn free_n_operad(x: &SetCollection, tree: &PrunedTree) -> Result<Vec<FreeElement>> {
    free_elements(tree, &mut DominatedCache::new(), &|shape| {
        shape
            .vertices()
            .iter()
            .map(|(_, v)| x.tokens(&v.decoration).to_vec())
            .collect()
    })
}

pub(crate) fn free_elements(
    tree: &PrunedTree,
    cache: &mut DominatedCache,
    tokens: &dyn Fn(&DecoratedTree) -> Vec<Vec<Token>>,
) -> Result<Vec<FreeElement>> {
    let limits = Limits::global();
    limits.check_tips(tree.tips())?;
    if tree.is_linear() {
        return Ok(vec![FreeElement::unit(tree.degree())]);
    }
    if tree.is_degenerate() {
        return Err(Error::Precondition("the degenerate arity has no reduced operations".into()));
    }
    let mut out = Vec::new();
    for shape in cache.trees(tree) {
        let options = tokens(&shape);
        for choice in options.iter().map(|o| o.iter().cloned()).multi_cartesian_product() {
            out.push(FreeElement {
                arity: tree.clone(),
                body: shape.with_tokens(&choice),
            });
        }
        limits.check_objects("free operations", out.len())?;
    }
    out.sort();
    Ok(out)
}

/// Grafts the argument bodies onto the leaves of the head body. Argument
/// `s` sits over tip `s` of the target of `sigma`; `None` is the unit.
pub fn substitute(sigma: &TreeMorphism, head: &FreeElement, args: &[Option<&FreeElement>]) -> Result<FreeElement> {
    if head.arity != *sigma.target() {
        return Err(Error::ArityMismatch {
            expected: sigma.target().to_string(),
            found: head.arity.to_string(),
        });
    }
    if args.len() != sigma.target().tips() {
        return Err(Error::DimensionMismatch(format!(
            "{} arguments for {} tips",
            args.len(),
            sigma.target().tips()
        )));
    }
    let fibers = sigma.fibers()?;
    let pre = sigma.preimages();
    let mut grafts: Vec<Node<Token>> = Vec::with_capacity(args.len());
    for (s, arg) in args.iter().enumerate() {
        match arg {
            None if fibers[s].is_linear() => grafts.push(Node::Leaf(pre[s][0])),
            None => {
                return Err(Error::ArityMismatch {
                    expected: fibers[s].to_string(),
                    found: PrunedTree::linear(sigma.source().degree()).to_string(),
                })
            }
            Some(a) if a.arity != fibers[s] => {
                return Err(Error::ArityMismatch {
                    expected: fibers[s].to_string(),
                    found: a.arity.to_string(),
                })
            }
            Some(a) => {
                let p = &pre[s];
                grafts.push(a.body.root().relabelled(&|l| p[l]));
            }
        }
    }
    fn go(node: &Node<Token>, grafts: &[Node<Token>]) -> Node<Token> {
        match node {
            Node::Leaf(s) => grafts[*s].clone(),
            Node::Vertex(v) => Node::Vertex(Vertex {
                decoration: v.decoration.clone(),
                token: v.token.clone(),
                children: v.children.iter().map(|c| go(c, grafts)).collect(),
            }),
        }
    }
    let body = DecoratedTree::from_root_unchecked(sigma.source().degree(), go(head.body.root(), &grafts));
    debug_assert!(body.dominated_by(sigma.source()).unwrap_or(false));
    Ok(FreeElement {
        arity: sigma.source().clone(),
        body,
    })
}

/// The free operad on a collection as a [`SetOperad`].
#[derive(Clone, Debug)]
pub struct FreeOperad {
    pub collection: SetCollection,
}

impl SetOperad for FreeOperad {
    type Elem = FreeElement;

    fn degree(&self) -> usize {
        self.collection.degree
    }

    fn elements(&self, arity: &ColouredTree) -> Result<Vec<FreeElement>> {
        free_n_operad(&self.collection, &arity.base)
    }

    fn compose(&self, sigma: &TreeMorphism, head: &FreeElement, args: &[Option<&FreeElement>]) -> Result<FreeElement> {
        substitute(sigma, head, args)
    }

    fn render(&self, e: &FreeElement) -> Option<String> {
        Some(e.render())
    }
}

/// A non-symmetric collection: for each arity, tokens tagged by the tree
/// they come from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NonSymCollection {
    pub entries: BTreeMap<usize, Vec<(PrunedTree, Token)>>,
}

impl NonSymCollection {
    pub fn arity(&self, k: usize) -> &[(PrunedTree, Token)] {
        self.entries.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Forgets the tree structure of arities, keeping only the number of tips.
pub fn c_n(x: &SetCollection) -> NonSymCollection {
    let mut out = NonSymCollection::default();
    for (tree, tokens) in x.entries() {
        let slot = out.entries.entry(tree.tips()).or_default();
        slot.extend(tokens.iter().map(|t| (tree.clone(), t.clone())));
    }
    for v in out.entries.values_mut() {
        v.sort();
    }
    out
}

/// The free symmetric collection `Y_k x Sigma_k` on a non-symmetric one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCollection {
    pub base: NonSymCollection,
}

/// A point of a free symmetric collection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPoint {
    pub tree: PrunedTree,
    pub token: Token,
    pub perm: Vec<usize>,
}

impl SymCollection {
    pub fn arity(&self, k: usize) -> Vec<SymPoint> {
        let mut out = Vec::new();
        for (tree, token) in self.base.arity(k) {
            for perm in (0..k).permutations(k) {
                out.push(SymPoint {
                    tree: tree.clone(),
                    token: token.clone(),
                    perm,
                });
            }
        }
        out
    }

    /// Right action: `(y, pi) . rho = (y, pi o rho)`.
    pub fn act(&self, point: &SymPoint, rho: &[usize]) -> SymPoint {
        SymPoint {
            tree: point.tree.clone(),
            token: point.token.clone(),
            perm: rho.iter().map(|&r| point.perm[r]).collect(),
        }
    }
}

pub fn s(y: &NonSymCollection) -> SymCollection {
    SymCollection { base: y.clone() }
}

/// An operation of the free symmetric operad: a tree whose vertices carry
/// a decoration and a token and whose leaves carry labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymElement(pub DecoratedTree<Token>);

/// The free symmetric operad on `z` in arity `k`, sorted.
pub fn free_symmetric(z: &SymCollection, k: usize) -> Result<Vec<SymElement>> {
    if k == 0 {
        return Err(Error::Precondition("arity must be positive".into()));
    }
    Limits::global().check_tips(k)?;
    let degree = z
        .base
        .entries
        .values()
        .flatten()
        .map(|(t, _)| t.degree())
        .next()
        .unwrap_or(1);
    let labels: Vec<usize> = (0..k).collect();
    let mut memo = HashMap::new();
    let mut out: Vec<SymElement> = sym_nodes(z, &labels, &mut memo)?
        .into_iter()
        .map(|root| SymElement(DecoratedTree::from_root_unchecked(degree, root)))
        .collect();
    out.sort();
    Ok(out)
}

fn sym_nodes(
    z: &SymCollection,
    labels: &[usize],
    memo: &mut HashMap<Vec<usize>, Vec<Node<Token>>>,
) -> Result<Vec<Node<Token>>> {
    if let Some(hit) = memo.get(labels) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    if labels.len() == 1 {
        out.push(Node::Leaf(labels[0]));
    } else {
        for m in 2..=labels.len() {
            let points = z.arity(m);
            if points.is_empty() {
                continue;
            }
            for blocks in set_partitions(labels, m) {
                let options: Vec<Vec<Node<Token>>> = blocks
                    .iter()
                    .map(|b| sym_nodes(z, b, memo))
                    .collect::<Result<_>>()?;
                for choice in options.iter().map(|o| o.iter().cloned()).multi_cartesian_product() {
                    for p in &points {
                        out.push(Node::Vertex(Vertex {
                            decoration: p.tree.clone(),
                            token: p.token.clone(),
                            children: p.perm.iter().map(|&b| choice[b].clone()).collect(),
                        }));
                    }
                }
                Limits::global().check_objects("free symmetric operations", out.len())?;
            }
        }
    }
    memo.insert(labels.to_vec(), out.clone());
    Ok(out)
}

/// Unordered partitions of `labels` into `m` blocks, blocks by least element.
fn set_partitions(labels: &[usize], m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(labels: &[usize], i: usize, m: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == labels.len() {
            if blocks.len() == m {
                out.push(blocks.clone());
            }
            return;
        }
        if blocks.len() + (labels.len() - i) < m {
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(labels[i]);
            go(labels, i + 1, m, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < m {
            blocks.push(vec![labels[i]]);
            go(labels, i + 1, m, blocks, out);
            blocks.pop();
        }
    }
    go(labels, 0, m, &mut blocks, &mut out);
    out
}

/// The comparison from the free n-operad to the free symmetric operad.
pub fn gamma(e: &FreeElement) -> SymElement {
    SymElement(e.body.clone())
}

/// Sizes of the `depth`-fold free operad in one arity, computed by
/// substitution and by counting chains below the corolla.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterateCounts {
    pub depth: usize,
    pub by_substitution: u128,
    pub by_chains: u128,
}

pub fn iterate_free(x: &SetCollection, depth: usize, tree: &PrunedTree) -> Result<IterateCounts> {
    if !tree.is_reduced() {
        return Err(Error::Precondition("arity must be reduced".into()));
    }
    if depth == 0 {
        let c = x.tokens(tree).len() as u128;
        return Ok(IterateCounts {
            depth,
            by_substitution: c,
            by_chains: c,
        });
    }
    let mut cache = DominatedCache::new();
    let mut memo: HashMap<(PrunedTree, usize), u128> = HashMap::new();
    let by_substitution = count_iterate(x, depth, tree, &mut cache, &mut memo);

    let poset = build_rh(tree.degree(), tree.tips())?;
    let labels: Vec<usize> = (0..tree.tips()).collect();
    let top = poset
        .index_of(&DecoratedTree::corolla(tree, (), &labels)?)
        .expect("corolla is an object");
    let below: Vec<usize> = (0..poset.objects().len())
        .filter(|&a| poset.leq(a, top))
        .collect();
    let weight: Vec<u128> = below
        .iter()
        .map(|&a| {
            poset.objects()[a]
                .vertices()
                .iter()
                .map(|(_, v)| x.tokens(&v.decoration).len() as u128)
                .product()
        })
        .collect();
    let ups: Vec<fixedbitset::FixedBitSet> = below.iter().map(|&a| poset.reachable_from(a)).collect();
    let mut h = weight.clone();
    for _ in 1..depth {
        h = below
            .iter()
            .map(|&w| {
                below
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| ups[*i].contains(w))
                    .map(|(i, _)| h[i])
                    .sum()
            })
            .collect();
    }
    Ok(IterateCounts {
        depth,
        by_substitution,
        by_chains: h.iter().sum(),
    })
}

fn count_iterate(
    x: &SetCollection,
    depth: usize,
    tree: &PrunedTree,
    cache: &mut DominatedCache,
    memo: &mut HashMap<(PrunedTree, usize), u128>,
) -> u128 {
    if depth == 0 {
        return x.tokens(tree).len() as u128;
    }
    if let Some(&c) = memo.get(&(tree.clone(), depth)) {
        return c;
    }
    let shapes = cache.trees(tree);
    let mut total = 0u128;
    for shape in shapes {
        let mut prod = 1u128;
        for (_, v) in shape.vertices() {
            prod *= count_iterate(x, depth - 1, &v.decoration, cache, memo);
            if prod == 0 {
                break;
            }
        }
        total += prod;
    }
    memo.insert((tree.clone(), depth), total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, gaps: &[u8]) -> PrunedTree {
        PrunedTree::from_gaps(n, gaps.to_vec()).unwrap()
    }

    #[test]
    fn free_on_one_binary_point() {
        let mut x = SetCollection::new(1);
        x.insert(t(1, &[0]), vec!["m".into()]).unwrap();
        assert_eq!(free_n_operad(&x, &t(1, &[0, 0])).unwrap().len(), 2);
        assert_eq!(free_n_operad(&x, &t(1, &[0, 0, 0])).unwrap().len(), 5);
        let c = iterate_free(&x, 2, &t(1, &[0, 0])).unwrap();
        assert_eq!((c.by_substitution, c.by_chains), (4, 4));
    }

    #[test]
    fn free_symmetric_small_arities() {
        let x = SetCollection::one_point(1, 3).unwrap();
        let z = s(&c_n(&x));
        assert_eq!(free_symmetric(&z, 1).unwrap().len(), 1);
        assert_eq!(free_symmetric(&z, 2).unwrap().len(), 2);
        assert_eq!(free_symmetric(&z, 3).unwrap().len(), 18);
    }

    #[test]
    fn substitution_into_unit_head() {
        let x = SetCollection::one_point(2, 3).unwrap();
        let tree = t(2, &[1, 0]);
        for e in free_n_operad(&x, &tree).unwrap() {
            let sigma = TreeMorphism::to_linear(&tree);
            let r = substitute(&sigma, &FreeElement::unit(2), &[Some(&e)]).unwrap();
            assert_eq!(r, e);
        }
    }

    #[test]
    fn set_partition_counts() {
        let l: Vec<usize> = (0..5).collect();
        let counts: Vec<usize> = (1..=5).map(|m| set_partitions(&l, m).len()).collect();
        assert_eq!(counts, vec![1, 15, 25, 10, 1]);
    }
}
