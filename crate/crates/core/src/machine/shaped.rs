use std::collections::HashMap;

use super::config::{Configuration, Run};
use super::spec::{MachineSpec, Mode};
use super::{require_stack_free, tape_for};
use crate::error::MachineError;
use crate::tree::StructureTree;

struct Shaped<'r, 'm> {
    run: &'r Run<'m>,
    shape: &'r StructureTree,
    memo: HashMap<(usize, Configuration), bool>,
}

impl Shaped<'_, '_> {
    /// Candidate child configurations of `c` placed at `node`, in table
    /// order; empty when the node's role and `c` disagree.
    fn options(&self, node: usize, c: &Configuration) -> Vec<Vec<Configuration>> {
        let kids = self.shape.children(node);
        let acc = self.run.accepting(c);
        match kids.len() {
            0 => {
                if acc {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            }
            1 if !acc && self.run.mode(c) != Mode::Universal => self
                .run
                .successors(c)
                .into_iter()
                .map(|(_, s)| vec![s])
                .collect(),
            2 if !acc && self.run.mode(c) == Mode::Universal => {
                match self.run.universal_children(c) {
                    Some((a, b)) => vec![vec![a, b]],
                    None => Vec::new(),
                }
            }
            _ => Vec::new(),
        }
    }

    fn fits(&mut self, node: usize, c: &Configuration) -> bool {
        let key = (node, c.clone());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let kids = self.shape.children(node).to_vec();
        let r = self
            .options(node, c)
            .into_iter()
            .any(|cs| kids.iter().zip(&cs).all(|(&k, s)| self.fits(k, s)));
        self.memo.insert(key, r);
        r
    }

    fn assign(&mut self, node: usize, c: Configuration, out: &mut [Option<Configuration>]) {
        let kids = self.shape.children(node).to_vec();
        let chosen = self
            .options(node, &c)
            .into_iter()
            .find(|cs| kids.iter().zip(cs).all(|(&k, s)| self.fits(k, s)))
            .expect("assign is only called on fitting pairs");
        for (k, s) in kids.into_iter().zip(chosen) {
            self.assign(k, s, out);
        }
        out[node] = Some(c);
    }
}

/// Whether some accepting run has exactly `shape` as computation tree:
/// universal steps at two-child nodes (first action to the first child),
/// accepting configurations exactly at leaves.
pub fn run_with_tree_shape(
    machine: &MachineSpec,
    input: &str,
    shape: &StructureTree,
) -> Result<bool, MachineError> {
    Ok(find_run_with_tree_shape(machine, input, shape)?.is_some())
}

/// Like [`run_with_tree_shape`], returning the configuration at every node.
pub fn find_run_with_tree_shape(
    machine: &MachineSpec,
    input: &str,
    shape: &StructureTree,
) -> Result<Option<Vec<Configuration>>, MachineError> {
    require_stack_free(machine)?;
    let run = Run::new(machine, tape_for(machine, input)?);
    let mut s = Shaped {
        run: &run,
        shape,
        memo: HashMap::new(),
    };
    let root = shape.root();
    let c0 = run.initial();
    if !s.fits(root, &c0) {
        return Ok(None);
    }
    let mut out = vec![None; shape.len()];
    s.assign(root, c0, &mut out);
    Ok(Some(out.into_iter().map(Option::unwrap).collect()))
}

/// Checks per-node configurations against the shape and the machine.
pub fn check_shaped_run(
    machine: &MachineSpec,
    input: &str,
    shape: &StructureTree,
    configs: &[Configuration],
) -> bool {
    let Ok(tape) = tape_for(machine, input) else {
        return false;
    };
    if configs.len() != shape.len() || machine.stack {
        return false;
    }
    let run = Run::new(machine, tape);
    if configs[shape.root()] != run.initial() {
        return false;
    }
    let s = Shaped {
        run: &run,
        shape,
        memo: HashMap::new(),
    };
    (0..shape.len()).all(|node| {
        let kids: Vec<&Configuration> = shape.children(node).iter().map(|&k| &configs[k]).collect();
        s.options(node, &configs[node])
            .iter()
            .any(|cs| cs.iter().zip(&kids).all(|(a, b)| a == *b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    #[test]
    fn single_node_shape() {
        let acc = parse_machine("m states a\ninit a\naccept a\nwork 1 _\n").unwrap();
        assert!(run_with_tree_shape(&acc, "", &StructureTree::singleton()).unwrap());
        let step = parse_machine("m states s a\ninit s\naccept a\nwork 1 _\ntr s < _ -> a _ 0 0 none\n")
            .unwrap();
        assert!(!run_with_tree_shape(&step, "", &StructureTree::singleton()).unwrap());
        assert!(run_with_tree_shape(&step, "", &StructureTree::path(2)).unwrap());
    }

    #[test]
    fn universal_toy_on_cherry() {
        let m = parse_machine(
            "m states s a\ninit s\naccept a\nmode s univ\nwork 1 _\n\
             tr s < _ -> a _ 0 0 none\ntr s < _ -> a _ 0 1 none\n",
        )
        .unwrap();
        let cherry = StructureTree::from_links(3, &[(0, 1, 1), (0, 2, 2)]).unwrap();
        let run = find_run_with_tree_shape(&m, "", &cherry).unwrap().unwrap();
        assert_eq!(run[2].input_head, 1);
        assert!(check_shaped_run(&m, "", &cherry, &run));
        assert!(!run_with_tree_shape(&m, "", &StructureTree::path(2)).unwrap());
    }
}
