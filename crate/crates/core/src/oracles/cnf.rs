use std::collections::BTreeSet;

use super::check_cap;
use crate::error::OracleError;
use crate::instances::{CnfVariant, TreeChainedCnf};

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Choices available to one unit: a cell (partitioned variants) or a node
/// (general variant).
fn unit_choices(vars: &[usize], variant: CnfVariant, k: usize) -> Vec<Vec<usize>> {
    if variant.is_partitioned() {
        return vars.iter().map(|&v| vec![v]).collect();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn subsets(vars: &[usize], from: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for i in from..vars.len() {
            cur.push(vars[i]);
            subsets(vars, i + 1, k, cur, out);
            cur.pop();
        }
    }
    subsets(vars, 0, k, &mut cur, &mut out);
    out
}

/// Exact satisfiability under the variant's cardinality constraint.
///
/// The assignment space is one variable per cell for partitioned variants
/// and at most `k` variables per node for the general variant; its size is
/// checked against the cap before the search starts.
pub fn solve_cnf_bruteforce(
    inst: &TreeChainedCnf,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, OracleError> {
    let variant = inst.variant();
    let units: Vec<Vec<usize>> = if variant.is_partitioned() {
        inst.cells().into_values().collect()
    } else {
        inst.node_vars()
    };
    let space = units
        .iter()
        .map(|vs| {
            if variant.is_partitioned() {
                vs.len() as u128
            } else {
                (0..=inst.k().min(vs.len())).map(|r| binomial(vs.len(), r)).sum()
            }
        })
        .try_fold(1u128, |acc, s| acc.checked_mul(s))
        .unwrap_or(u128::MAX);
    check_cap(space, cap)?;

    // Each clause is checked once all units holding its variables are fixed.
    let mut unit_of = vec![usize::MAX; inst.vars().len()];
    for (u, vs) in units.iter().enumerate() {
        for &v in vs {
            unit_of[v] = u;
        }
    }
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); units.len()];
    for (ci, clause) in inst.clauses().iter().enumerate() {
        match clause.iter().map(|l| unit_of[l.var]).max() {
            Some(u) => due[u].push(ci),
            None => return Ok(None),
        }
    }
    let choices: Vec<Vec<Vec<usize>>> = units
        .iter()
        .map(|vs| unit_choices(vs, variant, inst.k()))
        .collect();
    let mut truth = BTreeSet::new();
    fn go(
        u: usize,
        inst: &TreeChainedCnf,
        choices: &[Vec<Vec<usize>>],
        due: &[Vec<usize>],
        truth: &mut BTreeSet<usize>,
    ) -> bool {
        if u == choices.len() {
            return true;
        }
        for pick in &choices[u] {
            truth.extend(pick.iter().copied());
            let ok = due[u].iter().all(|&ci| {
                inst.clauses()[ci]
                    .iter()
                    .any(|l| truth.contains(&l.var) == l.positive)
            });
            if ok && go(u + 1, inst, choices, due, truth) {
                return true;
            }
            for v in pick {
                truth.remove(v);
            }
        }
        false
    }
    if go(0, inst, &choices, &due, &mut truth) {
        debug_assert!(inst.is_solution(&truth));
        Ok(Some(truth))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Literal, Variable};
    use crate::tree::StructureTree;

    fn var(name: &str, node: usize, slot: usize) -> Variable {
        Variable {
            name: name.into(),
            node,
            slot: Some(slot),
        }
    }

    #[test]
    fn empty_clause_set_is_satisfiable() {
        let c = TreeChainedCnf::new(
            StructureTree::singleton(),
            CnfVariant::NegativePartitioned,
            1,
            vec![var("a", 0, 0)],
            vec![],
        )
        .unwrap();
        assert_eq!(solve_cnf_bruteforce(&c, 10).unwrap(), Some(BTreeSet::from([0])));
    }

    #[test]
    fn forced_picks_conflict() {
        let c = TreeChainedCnf::new(
            StructureTree::singleton(),
            CnfVariant::NegativePartitioned,
            2,
            vec![var("a", 0, 0), var("b", 0, 1)],
            vec![vec![Literal::neg(0), Literal::neg(1)]],
        )
        .unwrap();
        assert_eq!(solve_cnf_bruteforce(&c, 10).unwrap(), None);
    }

    #[test]
    fn general_variant_with_partition_clauses() {
        // cells {a,b} and {c,d}; clauses force at least one per cell
        let vars = vec![var("a", 0, 0), var("b", 0, 0), var("c", 0, 1), var("d", 0, 1)];
        let clauses = vec![
            vec![Literal::pos(0), Literal::pos(1)],
            vec![Literal::pos(2), Literal::pos(3)],
        ];
        let c = TreeChainedCnf::new(StructureTree::singleton(), CnfVariant::General, 2, vars, clauses)
            .unwrap();
        let sol = solve_cnf_bruteforce(&c, 100).unwrap().unwrap();
        assert!(c.is_solution(&sol));
        assert_eq!(sol.len(), 2);
    }

    #[test]
    fn cap_counts_bounded_subsets() {
        let vars = (0..5).map(|i| var(&format!("x{i}"), 0, 0)).collect();
        let c = TreeChainedCnf::new(StructureTree::singleton(), CnfVariant::General, 2, vars, vec![])
            .unwrap();
        // 1 + 5 + 10 subsets of size at most 2
        assert_eq!(
            solve_cnf_bruteforce(&c, 15).unwrap_err(),
            OracleError::CapExceeded { needed: 16, cap: 15 }
        );
        assert!(solve_cnf_bruteforce(&c, 16).is_ok());
    }
}
