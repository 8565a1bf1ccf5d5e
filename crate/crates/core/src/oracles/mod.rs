//! Exhaustive deciders for every problem family, plus the tree-traversal
//! and tree-decomposition solvers they are cross-checked against.
//!
//! Every solver checks its cap before enumerating anything.

mod cnf;
mod graph;
mod listcol;
mod tcmc;
mod treedp;

pub use cnf::solve_cnf_bruteforce;
pub use graph::{graph_optimum_bruteforce, solve_graph_bruteforce, solve_is_ds_vc};
pub use listcol::solve_listcoloring;
pub use tcmc::{solve_tcmc_bruteforce, solve_tcmc_traversal};
pub use treedp::{solve_is_treedp, treedp_optimum, treedp_witness};

use crate::error::OracleError;
use crate::format::Solution;
use crate::instances::Instance;
use crate::machine::find_run_with_tree_shape;

/// Default number of candidates an oracle may enumerate.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// `XALPWB_CAP` if set to an integer, otherwise [`DEFAULT_CAP`].
pub fn default_cap() -> u128 {
    std::env::var("XALPWB_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

pub(crate) fn check_cap(needed: u128, cap: u128) -> Result<(), OracleError> {
    if needed > cap {
        return Err(OracleError::CapExceeded { needed, cap });
    }
    Ok(())
}

/// Decides any instance with its brute-force oracle, returning a witness.
pub fn solve_bruteforce(inst: &Instance, cap: u128) -> Result<Option<Solution>, OracleError> {
    match inst {
        Instance::Tcmc(t) => Ok(solve_tcmc_bruteforce(t, t.mode(), cap)?.map(Solution::Set)),
        Instance::Cnf(c) => Ok(solve_cnf_bruteforce(c, cap)?.map(Solution::Set)),
        Instance::ListColoring(l) => Ok(solve_listcoloring(l, cap)?.map(Solution::Coloring)),
        Instance::LogTw(g) => Ok(solve_graph_bruteforce(
            g.graph(),
            g.problem(),
            g.threshold(),
            g.blue(),
            cap,
        )?
        .map(Solution::Set)),
        Instance::Atm(a) => find_run_with_tree_shape(&a.machine, &a.input, &a.shape)
            .map(|r| r.map(Solution::Run))
            .map_err(|e| OracleError::Unsupported(e.to_string())),
        Instance::Graph(_) | Instance::Decomposition(_) => {
            Err(OracleError::Unsupported(inst.family().into()))
        }
    }
}

/// Decides any instance with the cheapest applicable exact solver: tree
/// dynamic programming for graph problems with a decomposition, brute force
/// otherwise. Witnesses are only guaranteed for the brute-force families.
pub fn decide(inst: &Instance, cap: u128) -> Result<bool, OracleError> {
    match inst {
        Instance::LogTw(g) => solve_is_treedp(g, cap),
        _ => Ok(solve_bruteforce(inst, cap)?.is_some()),
    }
}
