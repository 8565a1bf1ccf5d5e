use std::collections::BTreeSet;

use super::check_cap;
use crate::error::OracleError;
use crate::graph::Graph;
use crate::instances::{GraphProblem, LogTwGraphInstance};

struct Masks {
    closed: Vec<u64>,
    open: Vec<u64>,
    blue: u64,
    all: u64,
}

impl Masks {
    fn new(g: &Graph, blue: &BTreeSet<usize>) -> Self {
        let n = g.n();
        let open: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).fold(0u64, |m, u| m | (1 << u)))
            .collect();
        let closed = open.iter().enumerate().map(|(v, m)| m | (1 << v)).collect();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let blue = blue.iter().fold(0u64, |m, &v| m | (1 << v));
        Masks {
            closed,
            open,
            blue,
            all,
        }
    }

    fn independent(&self, s: u64) -> bool {
        bits(s).all(|v| self.open[v] & s == 0)
    }

    fn feasible(&self, problem: GraphProblem, s: u64) -> bool {
        match problem {
            GraphProblem::IndependentSet => self.independent(s),
            GraphProblem::VertexCover => self.independent(self.all & !s),
            GraphProblem::DominatingSet => self.closed.iter().all(|&m| m & s != 0),
            GraphProblem::RedBlueDominatingSet => {
                s & !self.blue == 0
                    && bits(self.all & !self.blue).all(|v| self.open[v] & s != 0)
            }
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// Best feasible subset by exhaustive enumeration, or `None` when no
/// subset is feasible (red-blue instances with an undominatable red).
fn best_subset(
    g: &Graph,
    problem: GraphProblem,
    blue: &BTreeSet<usize>,
    cap: u128,
) -> Result<Option<u64>, OracleError> {
    let n = g.n();
    let space = 1u128.checked_shl(n as u32).filter(|_| n < 64).unwrap_or(u128::MAX);
    check_cap(space, cap)?;
    let masks = Masks::new(g, blue);
    let mut best: Option<u64> = None;
    let better = |s: u64, b: Option<u64>| match b {
        None => true,
        Some(b) if problem.maximizes() => s.count_ones() > b.count_ones(),
        Some(b) => s.count_ones() < b.count_ones(),
    };
    for s in 0..=masks.all {
        if better(s, best) && masks.feasible(problem, s) {
            best = Some(s);
        }
    }
    Ok(best)
}

fn to_set(s: u64) -> BTreeSet<usize> {
    bits(s).collect()
}

/// Exact threshold decision by subset enumeration: a feasible set of size
/// at least `threshold` (independent set) or at most `threshold` (the
/// minimization problems). `blue` is only read for red-blue domination.
pub fn solve_graph_bruteforce(
    g: &Graph,
    problem: GraphProblem,
    threshold: usize,
    blue: &BTreeSet<usize>,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, OracleError> {
    let Some(best) = best_subset(g, problem, blue, cap)? else {
        return Ok(None);
    };
    let size = best.count_ones() as usize;
    let meets = if problem.maximizes() {
        size >= threshold
    } else {
        size <= threshold
    };
    Ok(meets.then(|| to_set(best)))
}

/// Optimum value by subset enumeration; `None` if nothing is feasible.
pub fn graph_optimum_bruteforce(
    g: &Graph,
    problem: GraphProblem,
    blue: &BTreeSet<usize>,
    cap: u128,
) -> Result<Option<usize>, OracleError> {
    Ok(best_subset(g, problem, blue, cap)?.map(|s| s.count_ones() as usize))
}

/// [`solve_graph_bruteforce`] on a log-treewidth instance, ignoring its
/// decomposition.
pub fn solve_is_ds_vc(
    inst: &LogTwGraphInstance,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, OracleError> {
    solve_graph_bruteforce(inst.graph(), inst.problem(), inst.threshold(), inst.blue(), cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u128 = 1 << 20;

    #[test]
    fn path_independent_set() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let none = BTreeSet::new();
        let sol = solve_graph_bruteforce(&p3, GraphProblem::IndependentSet, 2, &none, CAP).unwrap();
        assert_eq!(sol, Some(BTreeSet::from([0, 2])));
        assert_eq!(
            solve_graph_bruteforce(&p3, GraphProblem::IndependentSet, 3, &none, CAP).unwrap(),
            None
        );
    }

    #[test]
    fn triangle_cover_needs_two() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let none = BTreeSet::new();
        assert_eq!(
            solve_graph_bruteforce(&k3, GraphProblem::VertexCover, 1, &none, CAP).unwrap(),
            None
        );
        assert_eq!(
            graph_optimum_bruteforce(&k3, GraphProblem::VertexCover, &none, CAP).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn star_dominated_by_center() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let sol = solve_graph_bruteforce(&star, GraphProblem::DominatingSet, 1, &BTreeSet::new(), CAP)
            .unwrap();
        assert_eq!(sol, Some(BTreeSet::from([0])));
    }

    #[test]
    fn red_blue_uses_only_blue() {
        // blue 0,1; red 2 adjacent to 0, red 3 adjacent to 1
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let blue = BTreeSet::from([0, 1]);
        assert_eq!(
            graph_optimum_bruteforce(&g, GraphProblem::RedBlueDominatingSet, &blue, CAP).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn cap_checked_first() {
        let g = Graph::new(21);
        assert!(matches!(
            graph_optimum_bruteforce(&g, GraphProblem::IndependentSet, &BTreeSet::new(), CAP),
            Err(OracleError::CapExceeded { .. })
        ));
    }
}
