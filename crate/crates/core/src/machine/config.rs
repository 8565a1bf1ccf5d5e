use std::collections::{BTreeSet, VecDeque};

use super::spec::{Action, MachineSpec, Mode};

/// One machine snapshot. Stack contents are not part of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    pub input_head: usize,
    pub work: Vec<u8>,
    pub work_head: usize,
    pub steps_remaining: usize,
    pub stack_height: usize,
}

/// Resource limits; `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResourceBudget {
    pub time_steps: Option<usize>,
    pub tree_size: Option<usize>,
    pub work_cells: Option<usize>,
    pub co_nondet_per_path: Option<usize>,
    pub stack_height_cap: Option<usize>,
}

impl ResourceBudget {
    pub fn unbounded() -> Self {
        Self::default()
    }

    /// Time and tree size both set to `n`.
    pub fn steps_and_tree(n: usize) -> Self {
        ResourceBudget {
            time_steps: Some(n),
            tree_size: Some(n),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub accepted: bool,
    /// Rejection may be due to a budget rather than the machine.
    pub exhausted: bool,
    pub tree_nodes: usize,
    pub max_co_nondet_on_path: usize,
    pub peak_stack_height: usize,
    pub steps_used: usize,
}

impl RunStats {
    pub fn rejected(exhausted: bool) -> Self {
        RunStats {
            exhausted,
            ..Self::default()
        }
    }
}

/// A machine bound to one input tape.
#[derive(Clone, Debug)]
pub struct Run<'m> {
    pub machine: &'m MachineSpec,
    pub tape: Vec<u8>,
}

impl<'m> Run<'m> {
    pub fn new(machine: &'m MachineSpec, tape: Vec<u8>) -> Self {
        Run { machine, tape }
    }

    pub fn initial(&self) -> Configuration {
        Configuration {
            state: self.machine.initial,
            input_head: 0,
            work: vec![0; self.machine.work_cells],
            work_head: 0,
            steps_remaining: 0,
            stack_height: 0,
        }
    }

    pub fn accepting(&self, c: &Configuration) -> bool {
        self.machine.is_accepting(c.state)
    }

    pub fn mode(&self, c: &Configuration) -> Mode {
        self.machine.mode(c.state)
    }

    pub fn actions(&self, c: &Configuration) -> &'m [Action] {
        self.machine
            .actions(c.state, self.tape[c.input_head], c.work[c.work_head])
    }

    /// Applies an action's tape effects. `None` if a head would leave its
    /// tape. Counters are copied unchanged.
    pub fn apply(&self, c: &Configuration, a: &Action) -> Option<Configuration> {
        let ih = c.input_head as isize + a.input_move as isize;
        let wh = c.work_head as isize + a.work_move as isize;
        if ih < 0 || ih as usize >= self.tape.len() || wh < 0 || wh as usize >= c.work.len() {
            return None;
        }
        let mut work = c.work.clone();
        work[c.work_head] = a.write;
        Some(Configuration {
            state: a.next,
            input_head: ih as usize,
            work,
            work_head: wh as usize,
            steps_remaining: c.steps_remaining,
            stack_height: c.stack_height,
        })
    }

    /// Applicable `(action, successor)` pairs in table order.
    pub fn successors(&self, c: &Configuration) -> Vec<(Action, Configuration)> {
        self.actions(c)
            .iter()
            .filter_map(|a| self.apply(c, a).map(|n| (*a, n)))
            .collect()
    }

    /// Children of a universal configuration, if both actions apply.
    pub fn universal_children(&self, c: &Configuration) -> Option<(Configuration, Configuration)> {
        let acts = self.actions(c);
        if acts.len() != 2 {
            return None;
        }
        Some((self.apply(c, &acts[0])?, self.apply(c, &acts[1])?))
    }

    /// All configurations reachable from the initial one, ignoring the
    /// stack and all counters, in lexicographic order.
    pub fn reachable(&self) -> Vec<Configuration> {
        let start = self.initial();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for (_, n) in self.successors(&c) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn display(&self, c: &Configuration) -> String {
        self.machine.display_config(c)
    }
}

impl MachineSpec {
    /// `state@input_head:work@work_head`, e.g. `q1@2:_x_@0`.
    pub fn display_config(&self, c: &Configuration) -> String {
        let work: String = c
            .work
            .iter()
            .map(|&s| self.work_alphabet[s as usize])
            .collect();
        format!("{}@{}:{}@{}", self.states[c.state], c.input_head, work, c.work_head)
    }
}
