use std::collections::{BTreeMap, BTreeSet};

use crate::error::InstanceError;
use crate::tree::StructureTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CnfVariant {
    /// At most `k` true variables per node.
    General,
    /// Positive literals only; exactly one true variable per cell.
    PositivePartitioned,
    /// Negative literals only; exactly one true variable per cell.
    NegativePartitioned,
}

impl CnfVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            CnfVariant::General => "general",
            CnfVariant::PositivePartitioned => "positive",
            CnfVariant::NegativePartitioned => "negative",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "general" => Some(CnfVariant::General),
            "positive" => Some(CnfVariant::PositivePartitioned),
            "negative" => Some(CnfVariant::NegativePartitioned),
            _ => None,
        }
    }

    pub fn is_partitioned(self) -> bool {
        self != CnfVariant::General
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub node: usize,
    /// Partition cell within the node, 0-based.
    pub slot: Option<usize>,
}

/// Tree-chained weighted CNF in one of its three variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeChainedCnf {
    tree: StructureTree,
    variant: CnfVariant,
    k: usize,
    vars: Vec<Variable>,
    clauses: Vec<Vec<Literal>>,
}

impl TreeChainedCnf {
    pub fn new(
        tree: StructureTree,
        variant: CnfVariant,
        k: usize,
        vars: Vec<Variable>,
        clauses: Vec<Vec<Literal>>,
    ) -> Result<Self, InstanceError> {
        let mut names = BTreeSet::new();
        for v in &vars {
            if !names.insert(v.name.as_str()) {
                return Err(InstanceError::DuplicateVariable(v.name.clone()));
            }
            if v.node >= tree.len() {
                return Err(InstanceError::Other(format!(
                    "variable {} at unknown node {}",
                    v.name,
                    v.node + 1
                )));
            }
            if variant.is_partitioned() {
                match v.slot {
                    None => return Err(InstanceError::MissingSlot(v.name.clone())),
                    Some(s) if s >= k => {
                        return Err(InstanceError::Other(format!(
                            "variable {} has slot {} > k = {}",
                            v.name,
                            s + 1,
                            k
                        )))
                    }
                    _ => {}
                }
            }
        }
        let inst = TreeChainedCnf {
            tree,
            variant,
            k,
            vars,
            clauses,
        };
        if variant.is_partitioned() {
            let cells = inst.cells();
            for node in 0..inst.tree.len() {
                for slot in 0..k {
                    if cells.get(&(node, slot)).is_none_or(Vec::is_empty) {
                        return Err(InstanceError::EmptyCell {
                            node: node + 1,
                            slot: slot + 1,
                        });
                    }
                }
            }
        }
        for (ci, clause) in inst.clauses.iter().enumerate() {
            let mut nodes = BTreeSet::new();
            for lit in clause {
                let var = inst.vars.get(lit.var).ok_or_else(|| {
                    InstanceError::UnknownVariable(format!("#{}", lit.var + 1))
                })?;
                nodes.insert(var.node);
                let ok = match variant {
                    CnfVariant::General => true,
                    CnfVariant::PositivePartitioned => lit.positive,
                    CnfVariant::NegativePartitioned => !lit.positive,
                };
                if !ok {
                    return Err(InstanceError::WrongPolarity(ci + 1));
                }
            }
            let nodes: Vec<usize> = nodes.into_iter().collect();
            let fine = match nodes.as_slice() {
                [] | [_] => true,
                [a, b] => inst.tree.adjacent(*a, *b),
                _ => false,
            };
            if !fine {
                return Err(InstanceError::ClauseSpansNonIncidentNodes(ci + 1));
            }
        }
        Ok(inst)
    }

    pub fn tree(&self) -> &StructureTree {
        &self.tree
    }

    pub fn variant(&self) -> CnfVariant {
        self.variant
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn var_by_name(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Variables of each node, in id order.
    pub fn node_vars(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.tree.len()];
        for (i, v) in self.vars.iter().enumerate() {
            out[v.node].push(i);
        }
        out
    }

    /// Partition cells `(node, slot) -> variables` in id order.
    pub fn cells(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vars.iter().enumerate() {
            if let Some(s) = v.slot {
                out.entry((v.node, s)).or_default().push(i);
            }
        }
        out
    }

    pub fn satisfies_clauses(&self, truth: &BTreeSet<usize>) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| truth.contains(&l.var) == l.positive))
    }

    /// Checks the variant's cardinality constraint and every clause.
    pub fn is_solution(&self, truth: &BTreeSet<usize>) -> bool {
        if truth.iter().any(|&v| v >= self.vars.len()) {
            return false;
        }
        let card_ok = match self.variant {
            CnfVariant::General => self
                .node_vars()
                .iter()
                .all(|vs| vs.iter().filter(|v| truth.contains(v)).count() <= self.k),
            _ => self
                .cells()
                .values()
                .all(|vs| vs.iter().filter(|v| truth.contains(v)).count() == 1),
        };
        card_ok && self.satisfies_clauses(truth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(name: &str, node: usize, slot: Option<usize>) -> Variable {
        Variable {
            name: name.into(),
            node,
            slot,
        }
    }

    #[test]
    fn rejects_clause_across_non_adjacent_nodes() {
        let tree = StructureTree::path(3);
        let vars = vec![var("a", 0, None), var("b", 1, None), var("c", 2, None)];
        let r = TreeChainedCnf::new(
            tree,
            CnfVariant::General,
            1,
            vars,
            vec![vec![Literal::pos(0), Literal::pos(2)]],
        );
        assert_eq!(r, Err(InstanceError::ClauseSpansNonIncidentNodes(1)));
    }

    #[test]
    fn partitioned_variants_check_polarity_and_cells() {
        let tree = StructureTree::singleton();
        let vars = vec![var("a", 0, Some(0)), var("b", 0, Some(0))];
        assert_eq!(
            TreeChainedCnf::new(
                tree.clone(),
                CnfVariant::NegativePartitioned,
                1,
                vars.clone(),
                vec![vec![Literal::pos(0)]],
            ),
            Err(InstanceError::WrongPolarity(1))
        );
        assert!(matches!(
            TreeChainedCnf::new(tree, CnfVariant::PositivePartitioned, 2, vars, vec![]),
            Err(InstanceError::EmptyCell { node: 1, slot: 2 })
        ));
    }
}
