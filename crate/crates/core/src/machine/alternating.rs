use std::collections::HashMap;

use super::config::{Configuration, ResourceBudget, Run, RunStats};
use super::spec::{MachineSpec, Mode};
use super::{check_work_budget, require_stack_free, tape_for};
use crate::error::MachineError;

/// Smallest accepting tree found below a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Found {
    size: usize,
    depth: usize,
    co: usize,
}

struct Search<'r, 'm> {
    run: &'r Run<'m>,
    memo: HashMap<(Configuration, usize, usize, usize), Option<Found>>,
    cut: bool,
}

impl Search<'_, '_> {
    /// Smallest accepting tree rooted at `c` with at most `b` nodes, depth
    /// at most `d` and at most `u` universal steps per path.
    fn best(&mut self, c: &Configuration, b: usize, d: usize, u: usize) -> Option<Found> {
        if self.run.accepting(c) {
            return Some(Found {
                size: 1,
                depth: 0,
                co: 0,
            });
        }
        let d = d.min(b.saturating_sub(1));
        let u = u.min(b.saturating_sub(1) / 2);
        let key = (c.clone(), b, d, u);
        if let Some(r) = self.memo.get(&key) {
            return *r;
        }
        let r = self.compute(c, b, d, u);
        self.memo.insert(key, r);
        r
    }

    fn compute(&mut self, c: &Configuration, b: usize, d: usize, u: usize) -> Option<Found> {
        match self.run.mode(c) {
            Mode::Deterministic | Mode::Existential => {
                let succs = self.run.successors(c);
                if succs.is_empty() {
                    return None;
                }
                if b < 2 || d == 0 {
                    self.cut = true;
                    return None;
                }
                let mut best: Option<Found> = None;
                for (_, s) in succs {
                    if let Some(f) = self.best(&s, b - 1, d - 1, u) {
                        if best.is_none_or(|x| f.size < x.size) {
                            best = Some(f);
                        }
                    }
                }
                best.map(|f| Found {
                    size: f.size + 1,
                    depth: f.depth + 1,
                    co: f.co,
                })
            }
            Mode::Universal => {
                let (c1, c2) = self.run.universal_children(c)?;
                if b < 3 || d == 0 || u == 0 {
                    self.cut = true;
                    return None;
                }
                let f1 = self.best(&c1, b - 2, d - 1, u - 1)?;
                let f2 = self.best(&c2, b - 1 - f1.size, d - 1, u - 1)?;
                Some(Found {
                    size: 1 + f1.size + f2.size,
                    depth: 1 + f1.depth.max(f2.depth),
                    co: 1 + f1.co.max(f2.co),
                })
            }
        }
    }
}

/// Alternating acceptance: an accepting computation tree with at most
/// `budget.tree_size` nodes. Reports the smallest such tree.
///
/// `time_steps` bounds the depth of the tree and `co_nondet_per_path` the
/// number of universal steps on any root-leaf path, when set.
pub fn eval_alternating(
    machine: &MachineSpec,
    input: &str,
    budget: &ResourceBudget,
) -> Result<RunStats, MachineError> {
    require_stack_free(machine)?;
    let b = budget
        .tree_size
        .ok_or_else(|| MachineError::Budget("alternating semantics needs a finite tree size".into()))?;
    let tape = tape_for(machine, input)?;
    if !check_work_budget(machine, budget) || b == 0 {
        return Ok(RunStats::rejected(true));
    }
    let run = Run::new(machine, tape);
    let mut search = Search {
        run: &run,
        memo: HashMap::new(),
        cut: false,
    };
    let d = budget.time_steps.unwrap_or(usize::MAX);
    let u = budget.co_nondet_per_path.unwrap_or(usize::MAX);
    Ok(match search.best(&run.initial(), b, d, u) {
        Some(f) => RunStats {
            accepted: true,
            exhausted: false,
            tree_nodes: f.size,
            max_co_nondet_on_path: f.co,
            peak_stack_height: 0,
            steps_used: f.depth,
        },
        None => RunStats::rejected(search.cut),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    const UNIV: &str = "m states s a\ninit s\naccept a\nmode s univ\nwork 1 _\n\
                        tr s < _ -> a _ 0 0 none\ntr s < _ -> a _ 0 1 none\n";

    #[test]
    fn immediate_accept_has_one_node() {
        let m = parse_machine("m states a\ninit a\naccept a\nwork 1 _\n").unwrap();
        let s = eval_alternating(&m, "", &ResourceBudget::steps_and_tree(5)).unwrap();
        assert!(s.accepted);
        assert_eq!(s.tree_nodes, 1);
    }

    #[test]
    fn universal_split_needs_three_nodes() {
        let m = parse_machine(UNIV).unwrap();
        let s = eval_alternating(&m, "", &ResourceBudget::steps_and_tree(5)).unwrap();
        assert!(s.accepted);
        assert_eq!(s.tree_nodes, 3);
        assert_eq!(s.max_co_nondet_on_path, 1);
        let tight = ResourceBudget {
            tree_size: Some(2),
            ..ResourceBudget::default()
        };
        let s = eval_alternating(&m, "", &tight).unwrap();
        assert!(!s.accepted);
        assert!(s.exhausted);
    }

    #[test]
    fn rejects_stack_machines() {
        let m = parse_machine("m states a\ninit a\naccept a\nwork 1 _\nstack on\n").unwrap();
        assert!(eval_alternating(&m, "", &ResourceBudget::steps_and_tree(5)).is_err());
    }
}
