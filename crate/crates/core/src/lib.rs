//! Workbench for tree-shaped computation: machine acceptance semantics,
//! tree-chained problem families, the reductions between them and
//! brute-force oracles that cross-check every construction on small
//! instances.

pub mod decomposition;
pub mod error;
pub mod format;
pub mod graph;
pub mod instances;
pub mod machine;
pub mod oracles;
pub mod reductions;
pub mod verify;
pub mod tree;

pub use decomposition::{validate_decomposition, TreeDecomposition, Violation};
pub use error::{FormatError, InstanceError, MachineError, OracleError, ReductionError};
pub use format::{
    check_solution, parse_any, parse_instance, parse_shape, parse_solution, serialize_instance, serialize_shape,
    serialize_solution, FormatTag, LiftMap, Solution,
};
pub use graph::Graph;
pub use instances::Instance;
pub use tree::{RootedTree, StructureTree};
