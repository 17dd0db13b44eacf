//! Cell counts for the stratification of configuration spaces by
//! decorated trees.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::planar::{enumerate_dominated, enumerate_reduced, DecoratedTree};
use crate::trees::PrunedTree;

/// The cells of the stratum closure indexed by a tree `T`: all decorated
/// trees dominated by `T`.
#[derive(Clone, Debug)]
pub struct CellComplexSummary {
    pub tree: PrunedTree,
    pub cells: Vec<(DecoratedTree, usize)>,
    /// `f_vector[d]` counts cells of dimension `d`.
    pub f_vector: Vec<usize>,
    /// Alternating sum over open cells.
    pub euler_c: i64,
    pub top_cells: Vec<DecoratedTree>,
}

impl CellComplexSummary {
    pub fn dimension(&self) -> usize {
        self.f_vector.len().saturating_sub(1)
    }
}

pub fn cell_complex(tree: &PrunedTree) -> Result<CellComplexSummary> {
    if !tree.is_reduced() {
        return Err(Error::Precondition(format!("{} is not reduced", tree)));
    }
    let cells: Vec<(DecoratedTree, usize)> = enumerate_dominated(tree)?
        .into_iter()
        .map(|tau| {
            let d = tau.dimension();
            (tau, d)
        })
        .collect();
    let top = cells.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let mut f_vector = vec![0usize; top + 1];
    for (_, d) in &cells {
        f_vector[*d] += 1;
    }
    let euler_c = f_vector
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    let top_cells = cells
        .iter()
        .filter(|(_, d)| *d == top)
        .map(|(t, _)| t.clone())
        .collect();
    Ok(CellComplexSummary {
        tree: tree.clone(),
        cells,
        f_vector,
        euler_c,
        top_cells,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Level and hemisphere of the direction from leaf `i` to leaf `j` on the
/// stratum of `tau`.
pub fn stratum_label<X: Clone>(tau: &DecoratedTree<X>, i: usize, j: usize) -> Result<(usize, Sign)> {
    let k = tau.arity();
    for l in [i, j] {
        if l >= k {
            return Err(Error::LabelOutOfRange { label: l + 1, size: k });
        }
    }
    if i == j {
        return Err(Error::Precondition("a label has no direction to itself".into()));
    }
    let (level, forward) = tau.induced_order().compare(i, j);
    Ok((level, if forward { Sign::Plus } else { Sign::Minus }))
}

/// One row of the stratum census: strata whose root vertex carries the
/// given decoration, by dimension. A single leaf is filed under the linear
/// tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub tree: PrunedTree,
    pub dim: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCensus {
    pub n: usize,
    pub k: usize,
    pub total: usize,
    pub by_dimension: Vec<usize>,
    pub rows: Vec<CensusRow>,
}

impl StratumCensus {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,k,tree,dim,count\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},\"{}\",{},{}", self.n, self.k, r.tree, r.dim, r.count);
        }
        s
    }
}

/// All labelled reduced planar trees with `k` leaves, grouped by root
/// decoration and by dimension.
pub fn fm_stratum_census(n: usize, k: usize) -> Result<StratumCensus> {
    let strata = if k == 1 {
        vec![DecoratedTree::leaf(n)]
    } else {
        enumerate_reduced(n, k)?
    };
    let mut groups: BTreeMap<(PrunedTree, usize), usize> = BTreeMap::new();
    let mut by_dimension = Vec::new();
    for tau in &strata {
        let d = tau.dimension();
        let shape = match tau.root().as_vertex() {
            Some(v) => v.decoration.clone(),
            None => PrunedTree::linear(n),
        };
        *groups.entry((shape, d)).or_default() += 1;
        if by_dimension.len() <= d {
            by_dimension.resize(d + 1, 0);
        }
        by_dimension[d] += 1;
    }
    Ok(StratumCensus {
        n,
        k,
        total: strata.len(),
        by_dimension,
        rows: groups
            .into_iter()
            .map(|((tree, dim), count)| CensusRow { tree, dim, count })
            .collect(),
    })
}

/// Cells of `cell_complex(tree)` whose induced order is exactly the order
/// of `tree`.
pub fn open_cells(tree: &PrunedTree) -> Result<Vec<DecoratedTree>> {
    let x = tree.to_ordinal();
    Ok(enumerate_dominated(tree)?
        .into_iter()
        .filter(|tau| tau.induced_order() == x)
        .collect())
}
