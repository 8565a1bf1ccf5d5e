use std::collections::BTreeSet;

use crate::decomposition::{validate_decomposition, TreeDecomposition};
use crate::error::InstanceError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphProblem {
    /// Independent set of size at least the threshold.
    IndependentSet,
    /// Vertex cover of size at most the threshold.
    VertexCover,
    /// Dominating set of size at most the threshold.
    DominatingSet,
    /// At most threshold blue vertices dominating every red vertex.
    RedBlueDominatingSet,
}

impl GraphProblem {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphProblem::IndependentSet => "is",
            GraphProblem::VertexCover => "vc",
            GraphProblem::DominatingSet => "ds",
            GraphProblem::RedBlueDominatingSet => "rbds",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "is" => Some(GraphProblem::IndependentSet),
            "vc" => Some(GraphProblem::VertexCover),
            "ds" => Some(GraphProblem::DominatingSet),
            "rbds" => Some(GraphProblem::RedBlueDominatingSet),
            _ => None,
        }
    }

    /// Whether the threshold is a lower bound on the solution size.
    pub fn maximizes(self) -> bool {
        self == GraphProblem::IndependentSet
    }
}

/// `⌈log₂ n⌉`, with `log₂ n` taken as 1 for `n ≤ 2`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Smallest `k ≥ 1` with `width ≤ k·⌈log₂ n⌉`.
pub fn logtw_parameter(width: usize, n: usize) -> usize {
    width.div_ceil(ceil_log2(n)).max(1)
}

/// Graph problem with a supplied decomposition of width at most `k·⌈log₂ n⌉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTwGraphInstance {
    problem: GraphProblem,
    graph: Graph,
    decomposition: TreeDecomposition,
    threshold: usize,
    k: usize,
    blue: BTreeSet<usize>,
}

impl LogTwGraphInstance {
    pub fn new(
        problem: GraphProblem,
        graph: Graph,
        decomposition: TreeDecomposition,
        threshold: usize,
        k: usize,
        blue: BTreeSet<usize>,
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        let width = validate_decomposition(&graph, &decomposition)
            .map_err(|e| InstanceError::Decomposition(e.to_string()))?;
        let bound = k.saturating_mul(ceil_log2(n));
        if width > bound {
            return Err(InstanceError::WidthTooLarge { width, bound });
        }
        if problem == GraphProblem::RedBlueDominatingSet {
            if let Some(&v) = blue.iter().find(|&&v| v >= n) {
                return Err(InstanceError::VertexOutOfRange(v + 1));
            }
            for (u, v) in graph.edges() {
                if !blue.contains(&u) && !blue.contains(&v) {
                    return Err(InstanceError::RedRedEdge(u + 1, v + 1));
                }
            }
            for v in (0..n).filter(|v| !blue.contains(v)) {
                if graph.degree(v) == 0 {
                    return Err(InstanceError::UndominatableRed(v + 1));
                }
            }
        } else if !blue.is_empty() {
            return Err(InstanceError::Other(
                "blue vertices are only meaningful for rbds".into(),
            ));
        }
        Ok(LogTwGraphInstance {
            problem,
            graph,
            decomposition,
            threshold,
            k,
            blue,
        })
    }

    pub fn problem(&self) -> GraphProblem {
        self.problem
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.decomposition
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blue(&self) -> &BTreeSet<usize> {
        &self.blue
    }

    pub fn is_blue(&self, v: usize) -> bool {
        self.blue.contains(&v)
    }

    /// Whether `set` is feasible for the problem, ignoring the threshold.
    pub fn is_feasible(&self, set: &BTreeSet<usize>) -> bool {
        if set.iter().any(|&v| v >= self.graph.n()) {
            return false;
        }
        let g = &self.graph;
        match self.problem {
            GraphProblem::IndependentSet => g.is_independent(set),
            GraphProblem::VertexCover => g.is_vertex_cover(set),
            GraphProblem::DominatingSet => g.is_dominating(set),
            GraphProblem::RedBlueDominatingSet => {
                set.is_subset(&self.blue)
                    && (0..g.n())
                        .filter(|v| !self.blue.contains(v))
                        .all(|v| g.neighbors(v).any(|u| set.contains(&u)))
            }
        }
    }

    /// Feasible and meeting the threshold.
    pub fn is_solution(&self, set: &BTreeSet<usize>) -> bool {
        let size_ok = if self.problem.maximizes() {
            set.len() >= self.threshold
        } else {
            set.len() <= self.threshold
        };
        size_ok && self.is_feasible(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<usize> = [0, 1, 2, 3, 4, 5, 8, 9].iter().map(|&n| ceil_log2(n)).collect();
        assert_eq!(got, vec![1, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn width_bound_is_enforced() {
        // K4 has width 3; n = 4 gives log 2, so k = 1 is too small.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let td = TreeDecomposition::trivial(4);
        let r = LogTwGraphInstance::new(GraphProblem::IndependentSet, g.clone(), td.clone(), 1, 1, BTreeSet::new());
        assert_eq!(r, Err(InstanceError::WidthTooLarge { width: 3, bound: 2 }));
        assert!(LogTwGraphInstance::new(GraphProblem::IndependentSet, g, td, 1, 2, BTreeSet::new()).is_ok());
        assert_eq!(logtw_parameter(3, 4), 2);
    }

    #[test]
    fn rbds_feasibility_uses_blue_only() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = LogTwGraphInstance::new(
            GraphProblem::RedBlueDominatingSet,
            g,
            TreeDecomposition::trivial(3),
            1,
            2,
            [0, 2].into(),
        )
        .unwrap();
        assert!(inst.is_solution(&[0].into()));
        assert!(!inst.is_solution(&[1].into()));
    }
}
