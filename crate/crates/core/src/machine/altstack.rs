use std::collections::HashSet;

use super::config::{Configuration, ResourceBudget, Run, RunStats};
use super::spec::{MachineSpec, Mode};
use super::{check_work_budget, require_stack_free, tape_for};
use crate::error::MachineError;

struct Node {
    current: Configuration,
    pending: Vec<Configuration>,
    parent: Option<usize>,
}

/// Alternating acceptance replayed depth-first with an explicit stack of
/// pending second branches of universal steps.
///
/// Every visited configuration is one node of the computation tree, so
/// the breadth-first search over replay states finds the smallest tree.
pub fn eval_alternating_as_stack(
    machine: &MachineSpec,
    input: &str,
    budget: &ResourceBudget,
) -> Result<RunStats, MachineError> {
    require_stack_free(machine)?;
    let limit = budget.tree_size.ok_or_else(|| {
        MachineError::Budget("stack replay needs a finite tree size".into())
    })?;
    let tape = tape_for(machine, input)?;
    if !check_work_budget(machine, budget) || limit == 0 {
        return Ok(RunStats::rejected(true));
    }
    let run = Run::new(machine, tape);
    let mut arena = vec![Node {
        current: run.initial(),
        pending: Vec::new(),
        parent: None,
    }];
    let mut seen: HashSet<(Configuration, Vec<Configuration>)> = HashSet::new();
    seen.insert((run.initial(), Vec::new()));
    let mut layer = vec![0usize];
    let mut exhausted = false;
    // Layer `v` holds replay states after visiting `v` tree nodes.
    for visits in 1..=limit {
        let mut next: Vec<(Configuration, Vec<Configuration>, usize)> = Vec::new();
        for &i in &layer {
            let node = &arena[i];
            let c = &node.current;
            if run.accepting(c) {
                if node.pending.is_empty() {
                    let mut peak = 0;
                    let mut cur = Some(i);
                    while let Some(j) = cur {
                        peak = peak.max(arena[j].pending.len());
                        cur = arena[j].parent;
                    }
                    return Ok(RunStats {
                        accepted: true,
                        exhausted: false,
                        tree_nodes: visits,
                        max_co_nondet_on_path: 0,
                        peak_stack_height: peak,
                        steps_used: visits - 1,
                    });
                }
                let mut pending = node.pending.clone();
                let resume = pending.pop().unwrap();
                next.push((resume, pending, i));
                continue;
            }
            match run.mode(c) {
                Mode::Universal => {
                    if let Some((c1, c2)) = run.universal_children(c) {
                        if budget
                            .stack_height_cap
                            .is_some_and(|cap| node.pending.len() >= cap)
                        {
                            exhausted = true;
                            continue;
                        }
                        let mut pending = node.pending.clone();
                        pending.push(c2);
                        next.push((c1, pending, i));
                    }
                }
                _ => {
                    for (_, s) in run.successors(c) {
                        next.push((s, node.pending.clone(), i));
                    }
                }
            }
        }
        if visits == limit {
            exhausted |= !next.is_empty();
            break;
        }
        layer.clear();
        for (current, pending, parent) in next {
            if seen.insert((current.clone(), pending.clone())) {
                arena.push(Node {
                    current,
                    pending,
                    parent: Some(parent),
                });
                layer.push(arena.len() - 1);
            }
        }
        if layer.is_empty() {
            break;
        }
    }
    Ok(RunStats::rejected(exhausted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    #[test]
    fn immediate_accept_has_empty_stack() {
        let m = parse_machine("m states a\ninit a\naccept a\nwork 1 _\n").unwrap();
        let s = eval_alternating_as_stack(&m, "", &ResourceBudget::steps_and_tree(5)).unwrap();
        assert!(s.accepted);
        assert_eq!(s.peak_stack_height, 0);
        assert_eq!(s.tree_nodes, 1);
    }

    #[test]
    fn one_universal_split_pends_one_branch() {
        let m = parse_machine(
            "m states s a\ninit s\naccept a\nmode s univ\nwork 1 _\n\
             tr s < _ -> a _ 0 0 none\ntr s < _ -> a _ 0 1 none\n",
        )
        .unwrap();
        let s = eval_alternating_as_stack(&m, "", &ResourceBudget::steps_and_tree(5)).unwrap();
        assert!(s.accepted);
        assert_eq!(s.peak_stack_height, 1);
        assert_eq!(s.tree_nodes, 3);
    }
}
