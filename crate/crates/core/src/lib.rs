//! Combinatorics of n-ordinals, pruned n-trees, decorated planar trees and
//! the set-level operads built from them.
//!
//! Labels and tips are 0-based in the API and 1-based in rendered strings
//! and JSON.

pub mod catops;
pub mod cells;
pub mod checks;
pub mod error;
pub mod freeops;
pub mod json;
pub mod limits;
pub mod milgram;
pub mod ordinals;
pub mod planar;
pub mod sc;
pub mod trees;

pub use catops::{build_rh, colimit, symmetrise, GeneratedPoset, SetDiagram, SetOperad, Symmetrisation};
pub use cells::{cell_complex, fm_stratum_census, open_cells, stratum_label, CellComplexSummary};
pub use error::{Error, Result};
pub use freeops::{free_n_operad, free_symmetric, substitute, FreeElement, SetCollection};
pub use limits::Limits;
pub use milgram::MilgramPoset;
pub use ordinals::NOrder;
pub use planar::{composable_structure, enumerate_dominated, enumerate_reduced, DecoratedTree};
pub use sc::{build_scrh, sc_symmetrise, ColouredTree};
pub use trees::{enumerate_pruned_trees, PrunedTree, TreeMorphism};
