//! The thin category of reduced planar n-trees, finite set-valued diagrams
//! over it and their colimits.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::milgram::MilgramPoset;
use crate::planar::{contractions_at, enumerate_reduced, Contraction, DecoratedTree};
use crate::sc::{vertex_arities, ColouredTree};
use crate::trees::{PrunedTree, SurjectionCache, TreeMorphism};

/// A generating arrow `source -> target` with the contraction producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub source: usize,
    pub target: usize,
    pub contraction: Contraction,
}

/// A finite poset presented by generating arrows between decorated trees.
#[derive(Clone, Debug)]
pub struct GeneratedPoset {
    degree: usize,
    arity: usize,
    colour_one: usize,
    objects: Vec<DecoratedTree>,
    index: HashMap<DecoratedTree, usize>,
    generators: Vec<Generator>,
    out: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

/// The category of reduced planar n-trees with `k` leaves.
pub fn build_rh(n: usize, k: usize) -> Result<GeneratedPoset> {
    let objects = enumerate_reduced(n, k)?;
    GeneratedPoset::from_objects(n, k, 0, objects, true)
}

impl GeneratedPoset {
    /// Generates arrows among `objects`. Leaves with label below `colour_one`
    /// are colour 1. With `closed` every contraction must land among the
    /// objects; otherwise contractions leaving the set are dropped.
    pub fn from_objects(
        degree: usize,
        arity: usize,
        colour_one: usize,
        mut objects: Vec<DecoratedTree>,
        closed: bool,
    ) -> Result<GeneratedPoset> {
        objects.sort();
        objects.dedup();
        let limits = Limits::global();
        limits.check_objects("poset objects", objects.len())?;
        let index: HashMap<DecoratedTree, usize> =
            objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut cache = SurjectionCache::new();
        let mut generators = Vec::new();
        let mut out = vec![Vec::new(); objects.len()];
        for (i, obj) in objects.iter().enumerate() {
            for (path, _) in obj.vertices() {
                for c in contractions_at(obj, &path, &mut cache)? {
                    let image = c.apply_shape(obj)?;
                    let Some(&j) = index.get(&image) else {
                        if closed {
                            return Err(Error::Precondition(format!(
                                "contraction of {} leaves the object set",
                                obj
                            )));
                        }
                        continue;
                    };
                    if j == i {
                        return Err(Error::CycleDetected(obj.to_string()));
                    }
                    out[i].push(generators.len());
                    generators.push(Generator {
                        source: i,
                        target: j,
                        contraction: c,
                    });
                }
            }
            limits.check_objects("generating arrows", generators.len())?;
        }
        let topo = topological_order(objects.len(), &generators, &out)
            .map_err(|at| Error::CycleDetected(objects[at].to_string()))?;
        Ok(GeneratedPoset {
            degree,
            arity,
            colour_one,
            objects,
            index,
            generators,
            out,
            topo,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Leaves with label below this are colour 1.
    pub fn colour_one(&self) -> usize {
        self.colour_one
    }

    pub fn objects(&self) -> &[DecoratedTree] {
        &self.objects
    }

    pub fn index_of(&self, tree: &DecoratedTree) -> Option<usize> {
        self.index.get(tree).copied()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn out_generators(&self, object: usize) -> &[usize] {
        &self.out[object]
    }

    /// Objects listed so that every arrow points forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Every object reachable from `a`, including `a`.
    pub fn reachable_from(&self, a: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.objects.len());
        let mut queue = VecDeque::from([a]);
        seen.insert(a);
        while let Some(x) = queue.pop_front() {
            for &g in &self.out[x] {
                let y = self.generators[g].target;
                if !seen.put(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.reachable_from(a).contains(b)
    }

    /// Up-sets of all objects.
    pub fn closure(&self) -> Result<Vec<FixedBitSet>> {
        let m = self.objects.len();
        Limits::global().check_objects("closure matrix", m.saturating_mul(m) / 64)?;
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for &a in self.topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(m);
            set.insert(a);
            for &g in &self.out[a] {
                set.union_with(&up[self.generators[g].target]);
            }
            up[a] = set;
        }
        Ok(up)
    }

    pub fn corollas(&self) -> Vec<usize> {
        (0..self.objects.len()).filter(|&i| self.objects[i].is_corolla()).collect()
    }

    /// Generators whose endpoints are both corollas.
    pub fn corolla_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| {
                let gen = &self.generators[g];
                self.objects[gen.source].is_corolla() && self.objects[gen.target].is_corolla()
            })
            .collect()
    }

    /// Compares the corolla part with the domination order on total n-orders.
    pub fn compare_with_milgram(&self, milgram: &MilgramPoset) -> CorollaReport {
        let corollas = self.corollas();
        let mut image = Vec::with_capacity(corollas.len());
        for &c in &corollas {
            image.push(milgram.index_of(&self.objects[c].induced_order()));
        }
        let bijective = image.iter().all(Option::is_some)
            && image.iter().flatten().all_unique()
            && corollas.len() == milgram.elements().len();
        let mut order_agrees = bijective;
        if bijective {
            'outer: for (a, &ca) in corollas.iter().enumerate() {
                let up = self.reachable_from(ca);
                for (b, &cb) in corollas.iter().enumerate() {
                    if up.contains(cb) != milgram.leq(image[a].unwrap(), image[b].unwrap()) {
                        order_agrees = false;
                        break 'outer;
                    }
                }
            }
        }
        CorollaReport {
            corollas: corollas.len(),
            milgram: milgram.elements().len(),
            bijective,
            order_agrees,
        }
    }

    /// Corollas `c` with `tau <= c`, and whether they form a connected category.
    pub fn comma_over_corollas(&self, tau: usize) -> CommaReport {
        let up = self.reachable_from(tau);
        let objects: Vec<usize> = up.ones().filter(|&c| self.objects[c].is_corolla()).collect();
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut uf = UnionFind::<usize>::new(objects.len());
        for &c in &objects {
            for &g in &self.out[c] {
                if let Some(&j) = pos.get(&self.generators[g].target) {
                    uf.union(pos[&c], j);
                }
            }
        }
        let components = (0..objects.len()).map(|i| uf.find(i)).unique().count();
        CommaReport {
            object: tau,
            nonempty: !objects.is_empty(),
            connected: components == 1,
            corollas: objects,
        }
    }

    /// Objects dominated by `tree`.
    pub fn dominated_objects(&self, tree: &PrunedTree) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, o) in self.objects.iter().enumerate() {
            if o.dominated_by(tree)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Chain counts of the order complex of the full subposet on `members`.
    pub fn order_complex_f_vector(&self, members: &[usize]) -> Vec<u128> {
        let m = self.objects.len();
        let mut inside = FixedBitSet::with_capacity(m);
        members.iter().for_each(|&a| inside.insert(a));
        let mut chains: Vec<Vec<u128>> = vec![Vec::new(); m];
        let mut f: Vec<u128> = Vec::new();
        for &a in self.topo.iter().rev() {
            if !inside.contains(a) {
                continue;
            }
            let mut c = vec![1u128];
            for b in self.reachable_from(a).ones() {
                if b == a || !inside.contains(b) {
                    continue;
                }
                if c.len() < chains[b].len() + 1 {
                    c.resize(chains[b].len() + 1, 0);
                }
                for (len, &v) in chains[b].iter().enumerate() {
                    c[len + 1] += v;
                }
            }
            if f.len() < c.len() {
                f.resize(c.len(), 0);
            }
            for (d, &v) in c.iter().enumerate() {
                f[d] += v;
            }
            chains[a] = c;
        }
        f
    }

    pub fn order_complex_euler(&self, members: &[usize]) -> i128 {
        self.order_complex_f_vector(members)
            .iter()
            .enumerate()
            .map(|(d, &v)| if d % 2 == 0 { v as i128 } else { -(v as i128) })
            .sum()
    }

    /// Whether the generators among `members` connect them.
    pub fn is_connected(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut uf = UnionFind::<usize>::new(members.len());
        for &a in members {
            for &g in &self.out[a] {
                if let Some(&j) = pos.get(&self.generators[g].target) {
                    uf.union(pos[&a], j);
                }
            }
        }
        (0..members.len()).map(|i| uf.find(i)).unique().count() == 1
    }

    /// The element of `members` lying above all of them, if any.
    pub fn maximum(&self, members: &[usize]) -> Option<usize> {
        let mut common: Option<FixedBitSet> = None;
        for &a in members {
            let up = self.reachable_from(a);
            common = Some(match common {
                None => up,
                Some(mut c) => {
                    c.intersect_with(&up);
                    c
                }
            });
        }
        common?.ones().find(|b| members.contains(b))
    }

    /// DOT rendering of the generating arrows.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph rh {\n");
        for (i, o) in self.objects.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, o);
        }
        for g in &self.generators {
            let _ = writeln!(s, "  n{} -> n{};", g.source, g.target);
        }
        s.push_str("}\n");
        s
    }
}

fn topological_order(m: usize, generators: &[Generator], out: &[Vec<usize>]) -> Result<Vec<usize>, usize> {
    let mut indegree = vec![0usize; m];
    for g in generators {
        indegree[g.target] += 1;
    }
    let mut queue: VecDeque<usize> = (0..m).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &g in &out[x] {
            let y = generators[g].target;
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == m {
        Ok(order)
    } else {
        Err((0..m).find(|&i| indegree[i] > 0).unwrap_or(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaReport {
    pub corollas: usize,
    pub milgram: usize,
    pub bijective: bool,
    pub order_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaReport {
    pub object: usize,
    pub corollas: Vec<usize>,
    pub nonempty: bool,
    pub connected: bool,
}

/// A functor from a generated poset to finite sets, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    pub sizes: Vec<usize>,
    /// `(source, target, map)` with `map[x]` the image of element `x`.
    pub arrows: Vec<(usize, usize, Vec<usize>)>,
}

/// Classes of the colimit with their least members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub class_of: Vec<Vec<usize>>,
    pub representatives: Vec<(usize, usize)>,
}

impl Colimit {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Colimit of a diagram of finite sets over a thin category.
pub fn colimit(d: &SetDiagram) -> Result<Colimit> {
    let mut offsets = Vec::with_capacity(d.sizes.len() + 1);
    let mut total = 0usize;
    for &s in &d.sizes {
        offsets.push(total);
        total += s;
    }
    Limits::global().check_objects("diagram elements", total)?;
    let mut uf = UnionFind::<usize>::new(total);
    for (src, tgt, map) in &d.arrows {
        if map.len() != d.sizes[*src] {
            return Err(Error::DimensionMismatch(format!(
                "arrow from object {} maps {} elements, the set has {}",
                src,
                map.len(),
                d.sizes[*src]
            )));
        }
        for (x, &y) in map.iter().enumerate() {
            if y >= d.sizes[*tgt] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow into object {} hits element {} of {}",
                    tgt, y, d.sizes[*tgt]
                )));
            }
            uf.union(offsets[*src] + x, offsets[*tgt] + y);
        }
    }
    let mut class_id: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = Vec::with_capacity(d.sizes.len());
    for (o, &s) in d.sizes.iter().enumerate() {
        let mut row = Vec::with_capacity(s);
        for x in 0..s {
            let root = uf.find(offsets[o] + x);
            let next = representatives.len();
            let id = *class_id.entry(root).or_insert(next);
            if id == next {
                representatives.push((o, x));
            }
            row.push(id);
        }
        class_of.push(row);
    }
    Ok(Colimit {
        class_of,
        representatives,
    })
}

/// A reduced n-operad in finite sets, given by its sets of operations and
/// the composition along surjections of trees.
pub trait SetOperad {
    type Elem: Clone + Ord + Hash + fmt::Debug;

    fn degree(&self) -> usize;

    /// Operations of a reduced arity, sorted and without repeats.
    fn elements(&self, arity: &ColouredTree) -> Result<Vec<Self::Elem>>;

    /// `mu_sigma(head; args)` with `args[s]` over tip `s` of the target of
    /// `sigma`, `None` standing for the unit over a single tip.
    fn compose(
        &self,
        sigma: &TreeMorphism,
        head: &Self::Elem,
        args: &[Option<&Self::Elem>],
    ) -> Result<Self::Elem>;

    fn render(&self, _e: &Self::Elem) -> Option<String> {
        None
    }
}

/// One operation in every arity.
#[derive(Clone, Copy, Debug)]
pub struct TerminalOperad {
    pub degree: usize,
}

impl SetOperad for TerminalOperad {
    type Elem = ();

    fn degree(&self) -> usize {
        self.degree
    }

    fn elements(&self, _arity: &ColouredTree) -> Result<Vec<()>> {
        Ok(vec![()])
    }

    fn compose(&self, _sigma: &TreeMorphism, _head: &(), _args: &[Option<&()>]) -> Result<()> {
        Ok(())
    }
}

/// An operad given by explicit finite tables.
#[derive(Clone, Debug, Default)]
pub struct TableOperad {
    pub degree: usize,
    pub entries: HashMap<PrunedTree, Vec<String>>,
    pub table: HashMap<(TreeMorphism, String, Vec<Option<String>>), String>,
}

impl SetOperad for TableOperad {
    type Elem = String;

    fn degree(&self) -> usize {
        self.degree
    }

    fn elements(&self, arity: &ColouredTree) -> Result<Vec<String>> {
        let mut v = self.entries.get(&arity.base).cloned().unwrap_or_default();
        v.sort();
        v.dedup();
        Ok(v)
    }

    fn compose(&self, sigma: &TreeMorphism, head: &String, args: &[Option<&String>]) -> Result<String> {
        let key = (
            sigma.clone(),
            head.clone(),
            args.iter().map(|a| a.cloned()).collect::<Vec<_>>(),
        );
        self.table.get(&key).cloned().ok_or_else(|| {
            Error::Table(format!(
                "no entry for {} along tip map {:?} with arguments {:?}",
                head,
                sigma.tip_map(),
                key.2
            ))
        })
    }

    fn render(&self, e: &String) -> Option<String> {
        Some(e.clone())
    }
}

/// The colimit of an operad's diagram over the category of trees, with the
/// corolla-restricted colimit compared against it.
pub struct Symmetrisation<E> {
    poset: GeneratedPoset,
    arities: Vec<Vec<ColouredTree>>,
    elements: HashMap<ColouredTree, Vec<E>>,
    sizes: Vec<usize>,
    colimit: Colimit,
    corolla_classes: usize,
    comparison_bijective: bool,
    members: Vec<Vec<(usize, usize)>>,
}

/// Symmetrisation of `operad` in arity `k` over all reduced trees.
pub fn symmetrise<A: SetOperad>(operad: &A, k: usize) -> Result<Symmetrisation<A::Elem>> {
    let poset = build_rh(operad.degree(), k)?;
    symmetrise_over(operad, poset)
}

/// Symmetrisation over a prebuilt poset.
pub fn symmetrise_over<A: SetOperad>(operad: &A, poset: GeneratedPoset) -> Result<Symmetrisation<A::Elem>> {
    let limits = Limits::global();
    let mut elements: HashMap<ColouredTree, Vec<A::Elem>> = HashMap::new();
    let mut arities = Vec::with_capacity(poset.objects.len());
    let mut sizes = Vec::with_capacity(poset.objects.len());
    let mut total = 0usize;
    for obj in &poset.objects {
        let ar = vertex_arities(obj, poset.colour_one);
        let mut size = 1usize;
        for a in &ar {
            if !elements.contains_key(a) {
                elements.insert(a.clone(), operad.elements(a)?);
            }
            size = size.saturating_mul(elements[a].len());
        }
        total = total.saturating_add(size);
        limits.check_objects("diagram elements", total)?;
        arities.push(ar);
        sizes.push(size);
    }
    let mut arrows = Vec::with_capacity(poset.generators.len());
    for g in &poset.generators {
        let src = &poset.objects[g.source];
        let mut map = Vec::with_capacity(sizes[g.source]);
        for x in 0..sizes[g.source] {
            let tokens = decode(x, &arities[g.source], &elements);
            let tree = src.with_tokens(&tokens);
            let image = g
                .contraction
                .apply(&tree, &mut |head, args, sigma| operad.compose(sigma, head, args))?;
            map.push(encode(&image, &arities[g.target], &elements)?);
        }
        arrows.push((g.source, g.target, map));
    }
    let diagram = SetDiagram {
        sizes: sizes.clone(),
        arrows,
    };
    let colimit = colimit(&diagram)?;

    // Colimit over corollas only, mapped into the full one.
    let corollas = poset.corollas();
    let pos: HashMap<usize, usize> = corollas.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let sub = SetDiagram {
        sizes: corollas.iter().map(|&c| sizes[c]).collect(),
        arrows: diagram
            .arrows
            .iter()
            .filter_map(|(s, t, m)| Some((*pos.get(s)?, *pos.get(t)?, m.clone())))
            .collect(),
    };
    let restricted = self::colimit(&sub)?;
    let image: Vec<usize> = restricted
        .representatives
        .iter()
        .map(|&(o, x)| colimit.class_of[corollas[o]][x])
        .collect();
    let comparison_bijective = image.iter().all_unique() && image.len() == colimit.len();

    let mut members = vec![Vec::new(); colimit.len()];
    for (o, row) in colimit.class_of.iter().enumerate() {
        for (x, &c) in row.iter().enumerate() {
            members[c].push((o, x));
        }
    }
    Ok(Symmetrisation {
        poset,
        arities,
        elements,
        sizes,
        corolla_classes: restricted.len(),
        comparison_bijective,
        colimit,
        members,
    })
}

fn decode<E: Clone>(mut x: usize, arities: &[ColouredTree], elements: &HashMap<ColouredTree, Vec<E>>) -> Vec<E> {
    let mut out = Vec::with_capacity(arities.len());
    for a in arities.iter().rev() {
        let list = &elements[a];
        out.push(list[x % list.len()].clone());
        x /= list.len();
    }
    out.reverse();
    out
}

fn encode<E: Ord + Clone>(
    tree: &DecoratedTree<E>,
    arities: &[ColouredTree],
    elements: &HashMap<ColouredTree, Vec<E>>,
) -> Result<usize> {
    let mut x = 0usize;
    for (token, a) in tree.tokens().into_iter().zip(arities) {
        let list = &elements[a];
        let i = list
            .binary_search(token)
            .map_err(|_| Error::Table(format!("composite is not an operation of arity {}", a.base)))?;
        x = x * list.len() + i;
    }
    Ok(x)
}

impl<E: Clone + Ord + Hash + fmt::Debug> Symmetrisation<E> {
    pub fn poset(&self) -> &GeneratedPoset {
        &self.poset
    }

    pub fn arity(&self) -> usize {
        self.poset.arity
    }

    pub fn class_count(&self) -> usize {
        self.colimit.len()
    }

    pub fn corolla_class_count(&self) -> usize {
        self.corolla_classes
    }

    /// Whether the corolla-restricted colimit maps bijectively onto the full one.
    pub fn comparison_bijective(&self) -> bool {
        self.comparison_bijective
    }

    pub fn total_elements(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn colimit(&self) -> &Colimit {
        &self.colimit
    }

    pub fn members(&self, class: usize) -> &[(usize, usize)] {
        &self.members[class]
    }

    pub fn element_tree(&self, object: usize, x: usize) -> DecoratedTree<E> {
        let tokens = decode(x, &self.arities[object], &self.elements);
        self.poset.objects[object].with_tokens(&tokens)
    }

    pub fn representative(&self, class: usize) -> DecoratedTree<E> {
        let (o, x) = self.colimit.representatives[class];
        self.element_tree(o, x)
    }

    /// Class of a tree whose tokens are operations.
    pub fn class_of_tree(&self, tree: &DecoratedTree<E>) -> Result<usize> {
        let o = self
            .poset
            .index_of(&tree.shape())
            .ok_or_else(|| Error::Precondition("tree is not an object of the poset".into()))?;
        let x = encode(tree, &self.arities[o], &self.elements)?;
        Ok(self.colimit.class_of[o][x])
    }

    /// Relabels leaves by `perm` (leaf `l` becomes `perm[l]`).
    pub fn act(&self, perm: &[usize], class: usize) -> Result<usize> {
        self.act_on(perm, self.colimit.representatives[class])
    }

    fn act_on(&self, perm: &[usize], (o, x): (usize, usize)) -> Result<usize> {
        let moved = self.poset.objects[o].relabel(perm);
        let j = self
            .poset
            .index_of(&moved)
            .ok_or_else(|| Error::Precondition("permutation does not preserve the object set".into()))?;
        Ok(self.colimit.class_of[j][x])
    }

    /// Whether relabelling is well defined on classes for every permutation
    /// in `perms`, checked on every member of every class.
    pub fn action_well_defined(&self, perms: &[Vec<usize>]) -> Result<bool> {
        for perm in perms {
            for class in 0..self.class_count() {
                let want = self.act(perm, class)?;
                for &m in &self.members[class] {
                    if self.act_on(perm, m)? != want {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `a o_i b`, computed on representatives, as a class of `target`.
    pub fn compose_classes(
        &self,
        a: usize,
        label: usize,
        other: &Symmetrisation<E>,
        b: usize,
        target: &Symmetrisation<E>,
    ) -> Result<usize> {
        let g = self.representative(a).graft(label, &other.representative(b))?;
        target.class_of_tree(&g)
    }

    /// Whether `o_i` gives the same class for every pair of members.
    pub fn composition_well_defined(
        &self,
        a: usize,
        label: usize,
        other: &Symmetrisation<E>,
        b: usize,
        target: &Symmetrisation<E>,
    ) -> Result<bool> {
        let want = self.compose_classes(a, label, other, b, target)?;
        for &(o1, x1) in &self.members[a] {
            let t1 = self.element_tree(o1, x1);
            for &(o2, x2) in &other.members[b] {
                let t2 = other.element_tree(o2, x2);
                if target.class_of_tree(&t1.graft(label, &t2)?)? != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_leaves_two_levels() {
        let p = build_rh(2, 2).unwrap();
        assert_eq!(p.objects().len(), 4);
        assert_eq!(p.generators().len(), 4);
        for g in p.generators() {
            let s = p.objects()[g.source].root().as_vertex().unwrap();
            let t = p.objects()[g.target].root().as_vertex().unwrap();
            assert_eq!(s.decoration.gaps(), &[1]);
            assert_eq!(t.decoration.gaps(), &[0]);
        }
    }

    #[test]
    fn colimit_of_a_span() {
        let d = SetDiagram {
            sizes: vec![2, 2, 3],
            arrows: vec![(0, 1, vec![0, 0]), (0, 2, vec![0, 1])],
        };
        let c = colimit(&d).unwrap();
        // {a0,b0,c0,a1,c1} glued by a0~b0~a1 and a0~c0, a1~c1.
        assert_eq!(c.len(), 3);
        assert_eq!(c.representatives, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn terminal_symmetrisation_is_a_point() {
        let s = symmetrise(&TerminalOperad { degree: 2 }, 3).unwrap();
        assert_eq!(s.class_count(), 1);
        assert!(s.comparison_bijective());
    }
}
