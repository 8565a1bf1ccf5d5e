//! Problem-instance types of the four families.

mod cnf;
mod listcol;
mod logtw;
mod tcmc;

pub use cnf::{CnfVariant, Literal, TreeChainedCnf, Variable};
pub use listcol::{ListColoringInstance, ListColoringKind};
pub use logtw::{ceil_log2, logtw_parameter, GraphProblem, LogTwGraphInstance};
pub use tcmc::{TcmcInstance, TcmcMode};

use crate::decomposition::TreeDecomposition;
use crate::graph::Graph;

/// Any instance that travels through reductions and the text formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Tcmc(TcmcInstance),
    Cnf(TreeChainedCnf),
    ListColoring(ListColoringInstance),
    LogTw(LogTwGraphInstance),
    Decomposition(TreeDecomposition),
    Atm(crate::machine::AtmInstance),
}

impl Instance {
    /// Short family name used in error messages and reports.
    pub fn family(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::Tcmc(t) => match t.mode() {
                TcmcMode::Clique => "tcmc",
                TcmcMode::IndependentSet => "tcmis",
            },
            Instance::Cnf(c) => match c.variant() {
                CnfVariant::General => "gencnf",
                CnfVariant::PositivePartitioned => "poscnf",
                CnfVariant::NegativePartitioned => "negcnf",
            },
            Instance::ListColoring(l) => match l.kind() {
                ListColoringKind::Lists => "listcol",
                ListColoringKind::Precoloring => "precol",
            },
            Instance::LogTw(g) => g.problem().as_str(),
            Instance::Decomposition(_) => "td",
            Instance::Atm(_) => "atm",
        }
    }
}
