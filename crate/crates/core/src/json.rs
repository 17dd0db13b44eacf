//! JSON forms of the main types. Labels, tips and level positions are
//! 1-based in JSON.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::catops::TableOperad;
use crate::error::{Error, Result};
use crate::freeops::SetCollection;
use crate::ordinals::{Direction, NOrder, Relation};
use crate::planar::{DecoratedTree, Node, Vertex};
use crate::sc::{ColouredCollection, ColouredTree};
use crate::trees::{PrunedTree, TreeMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub i: usize,
    pub j: usize,
    pub level: usize,
    pub dir: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NOrderJson {
    pub n: usize,
    pub size: usize,
    pub pairs: Vec<PairJson>,
}

impl From<&NOrder> for NOrderJson {
    fn from(x: &NOrder) -> Self {
        let mut pairs = Vec::new();
        for i in 0..x.size() {
            for j in i + 1..x.size() {
                let r = x.pair(i, j);
                pairs.push(PairJson {
                    i: i + 1,
                    j: j + 1,
                    level: r.level as usize,
                    dir: match r.dir {
                        Direction::Lt => "lt".into(),
                        Direction::Gt => "gt".into(),
                    },
                });
            }
        }
        NOrderJson {
            n: x.degree(),
            size: x.size(),
            pairs,
        }
    }
}

impl TryFrom<NOrderJson> for NOrder {
    type Error = Error;

    fn try_from(v: NOrderJson) -> Result<NOrder> {
        let k = v.size;
        let mut table: Vec<Option<Relation>> = vec![None; k * k.saturating_sub(1) / 2];
        for p in &v.pairs {
            if p.i == 0 || p.j > k || p.i >= p.j {
                return Err(Error::Parse(format!("pair ({}, {}) needs 1 <= i < j <= {}", p.i, p.j, k)));
            }
            let rel = match p.dir.as_str() {
                "lt" => Relation::lt(p.level),
                "gt" => Relation::gt(p.level),
                other => return Err(Error::Parse(format!("unknown direction {:?}", other))),
            };
            let idx = crate::ordinals::pair_index(k, p.i - 1, p.j - 1);
            if table[idx].replace(rel).is_some() {
                return Err(Error::Parse(format!("pair ({}, {}) listed twice", p.i, p.j)));
            }
        }
        let table = table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("every pair must be listed".into()))?;
        NOrder::new(v.n, k, table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub levels: Vec<usize>,
    pub fibers: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished: Option<bool>,
}

impl From<&PrunedTree> for TreeJson {
    fn from(t: &PrunedTree) -> Self {
        TreeJson {
            n: t.degree(),
            levels: t.level_sizes(),
            fibers: t.fibers(),
            distinguished: None,
        }
    }
}

impl TryFrom<TreeJson> for PrunedTree {
    type Error = Error;

    fn try_from(v: TreeJson) -> Result<PrunedTree> {
        PrunedTree::from_levels(v.n, &v.levels, &v.fibers)
    }
}

impl From<&ColouredTree> for TreeJson {
    fn from(c: &ColouredTree) -> Self {
        TreeJson {
            distinguished: Some(c.distinguished),
            ..TreeJson::from(&c.base)
        }
    }
}

impl TryFrom<TreeJson> for ColouredTree {
    type Error = Error;

    fn try_from(v: TreeJson) -> Result<ColouredTree> {
        let distinguished = v.distinguished.unwrap_or(false);
        ColouredTree::new(PrunedTree::try_from(v)?, distinguished)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: TreeJson,
    pub target: TreeJson,
    /// Level maps from the tips down to level 1.
    pub levels: Vec<Vec<usize>>,
}

impl From<&TreeMorphism> for MorphismJson {
    fn from(m: &TreeMorphism) -> Self {
        MorphismJson {
            source: m.source().into(),
            target: m.target().into(),
            levels: m
                .level_maps_top_down()
                .into_iter()
                .map(|l| l.into_iter().map(|x| x + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<MorphismJson> for TreeMorphism {
    type Error = Error;

    fn try_from(v: MorphismJson) -> Result<TreeMorphism> {
        let source = PrunedTree::try_from(v.source)?;
        let target = PrunedTree::try_from(v.target)?;
        let maps = v
            .levels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Parse("level maps are 1-based".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TreeMorphism::from_level_maps(&source, &target, &maps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeJson {
    Leaf {
        leaf: usize,
    },
    Vertex {
        decoration: TreeJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        token: Option<String>,
        children: Vec<NodeJson>,
    },
}

fn node_to_json<X>(node: &Node<X>, token: &dyn Fn(&X) -> Option<String>) -> NodeJson {
    match node {
        Node::Leaf(l) => NodeJson::Leaf { leaf: l + 1 },
        Node::Vertex(v) => NodeJson::Vertex {
            decoration: (&v.decoration).into(),
            token: token(&v.token),
            children: v.children.iter().map(|c| node_to_json(c, token)).collect(),
        },
    }
}

fn node_from_json(v: NodeJson) -> Result<Node<Option<String>>> {
    match v {
        NodeJson::Leaf { leaf } => Ok(Node::Leaf(
            leaf.checked_sub(1).ok_or_else(|| Error::Parse("leaf labels are 1-based".into()))?,
        )),
        NodeJson::Vertex {
            decoration,
            token,
            children,
        } => Ok(Node::Vertex(Vertex {
            decoration: PrunedTree::try_from(decoration)?,
            token,
            children: children.into_iter().map(node_from_json).collect::<Result<_>>()?,
        })),
    }
}

impl From<&DecoratedTree> for NodeJson {
    fn from(t: &DecoratedTree) -> Self {
        node_to_json(t.root(), &|_| None)
    }
}

impl From<&DecoratedTree<String>> for NodeJson {
    fn from(t: &DecoratedTree<String>) -> Self {
        node_to_json(t.root(), &|s| Some(s.clone()))
    }
}

/// Reads a decorated tree, with the token of each vertex if present.
pub fn decorated_tree_from_json(v: NodeJson) -> Result<DecoratedTree<Option<String>>> {
    let degree = match &v {
        NodeJson::Vertex { decoration, .. } => decoration.n,
        NodeJson::Leaf { .. } => {
            return Err(Error::Parse("a bare leaf does not determine the degree".into()))
        }
    };
    DecoratedTree::new(degree, node_from_json(v)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub tree: TreeJson,
    pub tokens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionJson {
    pub n: usize,
    pub entries: Vec<EntryJson>,
}

impl From<&SetCollection> for CollectionJson {
    fn from(x: &SetCollection) -> Self {
        CollectionJson {
            n: x.degree(),
            entries: x
                .entries()
                .map(|(t, toks)| EntryJson {
                    tree: t.into(),
                    tokens: toks.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CollectionJson> for SetCollection {
    type Error = Error;

    fn try_from(v: CollectionJson) -> Result<SetCollection> {
        let mut x = SetCollection::new(v.n);
        for e in v.entries {
            x.insert(PrunedTree::try_from(e.tree)?, e.tokens)?;
        }
        Ok(x)
    }
}

impl From<&ColouredCollection> for CollectionJson {
    fn from(x: &ColouredCollection) -> Self {
        CollectionJson {
            n: x.degree(),
            entries: x
                .entries()
                .map(|(t, toks)| EntryJson {
                    tree: t.into(),
                    tokens: toks.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CollectionJson> for ColouredCollection {
    type Error = Error;

    fn try_from(v: CollectionJson) -> Result<ColouredCollection> {
        let mut x = ColouredCollection::new(v.n);
        for e in v.entries {
            x.insert(ColouredTree::try_from(e.tree)?, e.tokens)?;
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionJson {
    pub morphism: MorphismJson,
    pub head: String,
    pub args: Vec<Option<String>>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOperadJson {
    pub n: usize,
    pub entries: Vec<EntryJson>,
    pub compositions: Vec<CompositionJson>,
}

impl TryFrom<TableOperadJson> for TableOperad {
    type Error = Error;

    fn try_from(v: TableOperadJson) -> Result<TableOperad> {
        let mut entries = HashMap::new();
        for e in v.entries {
            let tree = PrunedTree::try_from(e.tree)?;
            if tree.degree() != v.n {
                return Err(Error::DimensionMismatch(format!("entry {} in degree {}", tree, v.n)));
            }
            entries.insert(tree, e.tokens);
        }
        let mut table = HashMap::new();
        for c in v.compositions {
            let m = TreeMorphism::try_from(c.morphism)?;
            if table.insert((m, c.head, c.args), c.result).is_some() {
                return Err(Error::Table("a composition is listed twice".into()));
            }
        }
        Ok(TableOperad {
            degree: v.n,
            entries,
            table,
        })
    }
}

impl From<&TableOperad> for TableOperadJson {
    fn from(a: &TableOperad) -> Self {
        let mut entries: Vec<EntryJson> = a
            .entries
            .iter()
            .map(|(t, toks)| EntryJson {
                tree: t.into(),
                tokens: toks.clone(),
            })
            .collect();
        entries.sort_by(|x, y| (&x.tree.levels, &x.tree.fibers).cmp(&(&y.tree.levels, &y.tree.fibers)));
        let mut keys: Vec<_> = a.table.iter().collect();
        keys.sort_by(|x, y| x.0.cmp(y.0));
        TableOperadJson {
            n: a.degree,
            entries,
            compositions: keys
                .into_iter()
                .map(|((m, head, args), result)| CompositionJson {
                    morphism: m.into(),
                    head: head.clone(),
                    args: args.clone(),
                    result: result.clone(),
                })
                .collect(),
        }
    }
}
