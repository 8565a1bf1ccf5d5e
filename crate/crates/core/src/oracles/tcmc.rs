use std::collections::{BTreeSet, HashMap};

use super::check_cap;
use crate::error::OracleError;
use crate::instances::{TcmcInstance, TcmcMode};

fn compatible(inst: &TcmcInstance, mode: TcmcMode, u: usize, v: usize) -> bool {
    let adj = inst.graph().has_edge(u, v);
    match mode {
        TcmcMode::Clique => adj,
        TcmcMode::IndependentSet => !adj,
    }
}

/// Arc-consistency filtering of the class domains. Removes only vertices
/// that no solution can use, so the decision is unchanged.
fn filtered_domains(inst: &TcmcInstance, mode: TcmcMode) -> Vec<Vec<usize>> {
    let mut dom: Vec<Vec<usize>> = inst.classes().to_vec();
    let pairs = inst.incident_pairs();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); dom.len()];
    for &(a, b) in &pairs {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut queue: Vec<usize> = (0..dom.len()).collect();
    let mut queued = vec![true; dom.len()];
    while let Some(a) = queue.pop() {
        queued[a] = false;
        for &b in &nbrs[a] {
            // revise b against a
            let before = dom[b].len();
            let da = dom[a].clone();
            dom[b].retain(|&v| da.iter().any(|&u| compatible(inst, mode, u, v)));
            if dom[b].len() != before && !queued[b] {
                queued[b] = true;
                queue.push(b);
            }
        }
    }
    dom
}

/// Exact decision by choosing one vertex per class and checking every
/// same-node and tree-edge class pair.
///
/// Domains are first reduced by arc consistency; the cap applies to the
/// product of the reduced domain sizes.
pub fn solve_tcmc_bruteforce(
    inst: &TcmcInstance,
    mode: TcmcMode,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, OracleError> {
    let dom = filtered_domains(inst, mode);
    if dom.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let product = dom
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
        .unwrap_or(u128::MAX);
    check_cap(product, cap)?;
    let c = dom.len();
    let earlier: Vec<Vec<usize>> = (0..c)
        .map(|b| (0..b).filter(|&a| inst.incident(a, b)).collect())
        .collect();
    let mut chosen = vec![0usize; c];
    fn go(
        i: usize,
        inst: &TcmcInstance,
        mode: TcmcMode,
        dom: &[Vec<usize>],
        earlier: &[Vec<usize>],
        chosen: &mut [usize],
    ) -> bool {
        if i == dom.len() {
            return true;
        }
        for &v in &dom[i] {
            if earlier[i]
                .iter()
                .all(|&a| compatible(inst, mode, chosen[a], v))
            {
                chosen[i] = v;
                if go(i + 1, inst, mode, dom, earlier, chosen) {
                    return true;
                }
            }
        }
        false
    }
    if go(0, inst, mode, &dom, &earlier, &mut chosen) {
        Ok(Some(chosen.into_iter().collect()))
    } else {
        Ok(None)
    }
}

struct Traversal<'a> {
    inst: &'a TcmcInstance,
    mode: TcmcMode,
    memo: HashMap<(usize, Vec<usize>), bool>,
}

impl Traversal<'_> {
    /// Selections for `node` compatible with each other and with the
    /// parent's selection, in odometer order.
    fn selections(&self, node: usize, parent: &[usize]) -> Vec<Vec<usize>> {
        let k = self.inst.k();
        let classes: Vec<&[usize]> = (0..k)
            .map(|j| self.inst.class(self.inst.class_index(node, j)))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend(&classes, parent, &mut cur, &mut out);
        out
    }

    fn extend(
        &self,
        classes: &[&[usize]],
        parent: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == classes.len() {
            out.push(cur.clone());
            return;
        }
        for &v in classes[cur.len()] {
            let ok = cur
                .iter()
                .chain(parent)
                .all(|&u| compatible(self.inst, self.mode, u, v));
            if ok {
                cur.push(v);
                self.extend(classes, parent, cur, out);
                cur.pop();
            }
        }
    }

    /// Whether the subtree at `node` admits selections given the parent's.
    /// Only the parent's selection is remembered, never the ancestors'.
    fn solvable(&mut self, node: usize, parent: Vec<usize>) -> bool {
        let key = (node, parent);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let children = self.inst.tree().children(node).to_vec();
        let r = self
            .selections(node, &key.1)
            .into_iter()
            .any(|sel| children.iter().all(|&c| self.solvable(c, sel.clone())));
        self.memo.insert(key, r);
        r
    }
}

/// Exact decision by depth-first search over per-node selections.
///
/// The cap bounds `Π_j |V_{i,j}|` at every node.
pub fn solve_tcmc_traversal(
    inst: &TcmcInstance,
    mode: TcmcMode,
    cap: u128,
) -> Result<bool, OracleError> {
    for node in 0..inst.tree().len() {
        let per_node = (0..inst.k())
            .map(|j| inst.class(inst.class_index(node, j)).len() as u128)
            .try_fold(1u128, |acc, s| acc.checked_mul(s))
            .unwrap_or(u128::MAX);
        check_cap(per_node, cap)?;
    }
    let mut t = Traversal {
        inst,
        mode,
        memo: HashMap::new(),
    };
    Ok(t.solvable(inst.tree().root(), Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::tree::StructureTree;

    fn inst(tree: StructureTree, k: usize, classes: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> TcmcInstance {
        let n = classes.iter().map(Vec::len).sum();
        TcmcInstance::new(tree, k, TcmcMode::Clique, classes, Graph::from_edges(n, edges).unwrap()).unwrap()
    }

    #[test]
    fn singleton_class_is_solvable() {
        let t = inst(StructureTree::singleton(), 1, vec![vec![0]], &[]);
        assert!(solve_tcmc_bruteforce(&t, TcmcMode::Clique, 10).unwrap().is_some());
        assert!(solve_tcmc_traversal(&t, TcmcMode::Clique, 10).unwrap());
    }

    #[test]
    fn missing_edge_blocks_clique() {
        let t = inst(StructureTree::path(2), 1, vec![vec![0], vec![1]], &[]);
        assert!(solve_tcmc_bruteforce(&t, TcmcMode::Clique, 10).unwrap().is_none());
        assert!(!solve_tcmc_traversal(&t, TcmcMode::Clique, 10).unwrap());
        assert!(solve_tcmc_bruteforce(&t, TcmcMode::IndependentSet, 10).unwrap().is_some());
    }

    #[test]
    fn forced_chain_on_path() {
        // path 0-1-2, classes {0,1}, {2,3}, {4,5}; only 1-2-5 is a chain
        let t = inst(
            StructureTree::path(3),
            1,
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            &[(1, 2), (0, 3), (2, 5), (3, 4)],
        );
        let sol = solve_tcmc_bruteforce(&t, TcmcMode::Clique, 100).unwrap().unwrap();
        assert!(t.is_solution(&sol));
        assert!(solve_tcmc_traversal(&t, TcmcMode::Clique, 100).unwrap());
    }

    #[test]
    fn cap_is_checked_up_front() {
        let t = inst(StructureTree::singleton(), 2, vec![vec![0, 1, 2], vec![3, 4, 5]], &[]);
        let err = solve_tcmc_traversal(&t, TcmcMode::IndependentSet, 8).unwrap_err();
        assert_eq!(err, OracleError::CapExceeded { needed: 9, cap: 8 });
    }
}
