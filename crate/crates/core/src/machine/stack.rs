use std::collections::HashSet;

use super::config::{Configuration, ResourceBudget, Run, RunStats};
use super::spec::{MachineSpec, StackOp};
use super::{check_work_budget, tape_for};
use crate::error::MachineError;

struct Node {
    config: Configuration,
    stack: Vec<char>,
    parent: Option<usize>,
}

/// Nondeterministic run with an auxiliary stack, searched breadth-first so
/// the reported run uses the fewest steps.
///
/// Accepts iff an accepting state is reached with an empty stack within
/// `budget.time_steps` steps.
pub fn eval_stack(
    machine: &MachineSpec,
    input: &str,
    budget: &ResourceBudget,
) -> Result<RunStats, MachineError> {
    if machine.has_universal() {
        return Err(MachineError::NotApplicable(
            "stack semantics needs a machine without universal states".into(),
        ));
    }
    let limit = budget
        .time_steps
        .ok_or_else(|| MachineError::Budget("stack semantics needs a finite time budget".into()))?;
    let tape = tape_for(machine, input)?;
    if !check_work_budget(machine, budget) {
        return Ok(RunStats::rejected(true));
    }
    let run = Run::new(machine, tape);
    let mut arena = vec![Node {
        config: run.initial(),
        stack: Vec::new(),
        parent: None,
    }];
    let mut seen: HashSet<(Configuration, Vec<char>)> = HashSet::new();
    seen.insert((arena[0].config.clone(), Vec::new()));
    let mut layer = vec![0usize];
    let mut exhausted = false;
    let mut peak_seen = 0;
    for depth in 0..=limit {
        if let Some(&hit) = layer
            .iter()
            .find(|&&i| run.accepting(&arena[i].config) && arena[i].stack.is_empty())
        {
            let mut peak = 0;
            let mut cur = Some(hit);
            while let Some(i) = cur {
                peak = peak.max(arena[i].stack.len());
                cur = arena[i].parent;
            }
            return Ok(RunStats {
                accepted: true,
                exhausted: false,
                tree_nodes: depth + 1,
                max_co_nondet_on_path: 0,
                peak_stack_height: peak,
                steps_used: depth,
            });
        }
        let mut next = Vec::new();
        for &i in &layer {
            let succs = run.successors(&arena[i].config);
            if depth == limit {
                if !succs.is_empty() {
                    exhausted = true;
                }
                continue;
            }
            for (action, config) in succs {
                let mut stack = arena[i].stack.clone();
                match action.stack {
                    StackOp::None => {}
                    StackOp::Push(s) => {
                        if budget.stack_height_cap.is_some_and(|cap| stack.len() >= cap) {
                            exhausted = true;
                            continue;
                        }
                        stack.push(s);
                    }
                    StackOp::Pop(s) => {
                        if stack.last() != Some(&s) {
                            continue;
                        }
                        stack.pop();
                    }
                }
                if seen.insert((config.clone(), stack.clone())) {
                    peak_seen = peak_seen.max(stack.len());
                    arena.push(Node {
                        config,
                        stack,
                        parent: Some(i),
                    });
                    next.push(arena.len() - 1);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(RunStats {
        peak_stack_height: peak_seen,
        ..RunStats::rejected(exhausted)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    fn budget() -> ResourceBudget {
        ResourceBudget::steps_and_tree(20)
    }

    #[test]
    fn immediate_accept() {
        let m = parse_machine("m states a\ninit a\naccept a\nwork 1 _\nstack on\n").unwrap();
        let s = eval_stack(&m, "", &budget()).unwrap();
        assert!(s.accepted);
        assert_eq!(s.steps_used, 0);
    }

    #[test]
    fn push_then_pop() {
        let m = parse_machine(
            "m states s p a\ninit s\naccept a\nwork 1 _\nstack on\n\
             tr s < _ -> p _ 0 0 push:x\ntr p < _ -> a _ 0 0 pop:x\n",
        )
        .unwrap();
        let s = eval_stack(&m, "", &budget()).unwrap();
        assert!(s.accepted);
        assert_eq!(s.peak_stack_height, 1);
        assert_eq!(s.steps_used, 2);
    }

    #[test]
    fn mismatched_pop_rejects() {
        let m = parse_machine(
            "m states s p a\ninit s\naccept a\nwork 1 _\nstack on\n\
             tr s < _ -> p _ 0 0 push:a\ntr p < _ -> a _ 0 0 pop:b\n",
        )
        .unwrap();
        let s = eval_stack(&m, "", &budget()).unwrap();
        assert!(!s.accepted);
        assert!(!s.exhausted);
    }

    #[test]
    fn accepting_with_nonempty_stack_rejects() {
        let m = parse_machine(
            "m states s a\ninit s\naccept a\nwork 1 _\nstack on\ntr s < _ -> a _ 0 0 push:x\n",
        )
        .unwrap();
        assert!(!eval_stack(&m, "", &budget()).unwrap().accepted);
    }
}
