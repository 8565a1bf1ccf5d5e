use super::{check_source, Reduction, ReductionArtifact};
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::instances::{CnfVariant, Instance, Literal, TreeChainedCnf};

fn cnf_source(source: &Instance) -> &TreeChainedCnf {
    match source {
        Instance::Cnf(c) => c,
        _ => unreachable!("family checked"),
    }
}

fn identity_lift(c: &TreeChainedCnf) -> LiftMap {
    let mut lift = LiftMap::default();
    for v in c.vars() {
        lift.push(v.name.clone(), vec![v.name.clone()]);
    }
    lift
}

/// Replaces every `¬x` by the disjunction of the other variables of its
/// cell. A clause made only of negated singleton cells becomes empty.
pub fn reduce_negcnf_to_poscnf(c: &TreeChainedCnf) -> Result<ReductionArtifact, ReductionError> {
    if c.variant() != CnfVariant::NegativePartitioned {
        return Err(ReductionError::WrongFamily {
            expected: "negcnf",
            found: "cnf",
        });
    }
    let cells = c.cells();
    let cell_of = |v: usize| {
        let var = &c.vars()[v];
        &cells[&(var.node, var.slot.expect("partitioned"))]
    };
    let mut notes = Vec::new();
    let clauses: Vec<Vec<Literal>> = c
        .clauses()
        .iter()
        .enumerate()
        .map(|(ci, clause)| {
            let out: Vec<Literal> = clause
                .iter()
                .flat_map(|l| {
                    cell_of(l.var)
                        .iter()
                        .filter(move |&&y| y != l.var)
                        .map(|&y| Literal::pos(y))
                })
                .collect();
            if out.is_empty() {
                notes.push(format!("clause {} unsatisfiable under partition", ci + 1));
            }
            out
        })
        .collect();
    let target = TreeChainedCnf::new(
        c.tree().clone(),
        CnfVariant::PositivePartitioned,
        c.k(),
        c.vars().to_vec(),
        clauses,
    )?;
    Ok(ReductionArtifact {
        name: "negcnf-poscnf",
        target: Instance::Cnf(target),
        k_in: c.k(),
        k_out: c.k(),
        growth: "k'=k",
        k_bound: c.k(),
        lift: identity_lift(c),
        witness: None,
        notes,
    })
}

pub struct NegToPos;

impl Reduction for NegToPos {
    fn name(&self) -> &'static str {
        "negcnf-poscnf"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["negcnf"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_negcnf_to_poscnf(cnf_source(source))
    }

    fn lift_back(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }
}

/// General weighted CNF with the partition written out as clauses: one
/// at-least-one clause and all pairwise at-most-one clauses per cell.
pub fn reduce_partitioned_to_general_cnf(
    c: &TreeChainedCnf,
) -> Result<ReductionArtifact, ReductionError> {
    if !c.variant().is_partitioned() {
        return Err(ReductionError::WrongFamily {
            expected: "poscnf",
            found: "gencnf",
        });
    }
    let mut clauses = c.clauses().to_vec();
    for cell in c.cells().values() {
        clauses.push(cell.iter().map(|&y| Literal::pos(y)).collect());
        for (i, &x) in cell.iter().enumerate() {
            for &y in &cell[i + 1..] {
                clauses.push(vec![Literal::neg(x), Literal::neg(y)]);
            }
        }
    }
    let target = TreeChainedCnf::new(c.tree().clone(), CnfVariant::General, c.k(), c.vars().to_vec(), clauses)?;
    Ok(ReductionArtifact {
        name: "part-gencnf",
        target: Instance::Cnf(target),
        k_in: c.k(),
        k_out: c.k(),
        growth: "k'=k",
        k_bound: c.k(),
        lift: identity_lift(c),
        witness: None,
        notes: Vec::new(),
    })
}

pub struct PartToGeneral;

impl Reduction for PartToGeneral {
    fn name(&self) -> &'static str {
        "part-gencnf"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["poscnf", "negcnf"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_partitioned_to_general_cnf(cnf_source(source))
    }

    fn lift_back(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Variable;
    use crate::oracles::solve_cnf_bruteforce;
    use crate::tree::StructureTree;

    fn var(name: &str, slot: usize) -> Variable {
        Variable {
            name: name.into(),
            node: 0,
            slot: Some(slot),
        }
    }

    #[test]
    fn negative_literal_becomes_cell_rest() {
        let c = TreeChainedCnf::new(
            StructureTree::singleton(),
            CnfVariant::NegativePartitioned,
            1,
            vec![var("a", 0), var("b", 0)],
            vec![vec![Literal::neg(0)]],
        )
        .unwrap();
        let art = reduce_negcnf_to_poscnf(&c).unwrap();
        let Instance::Cnf(t) = &art.target else { panic!() };
        assert_eq!(t.clauses(), &[vec![Literal::pos(1)]]);
        assert!(art.notes.is_empty());
    }

    #[test]
    fn singleton_cells_give_empty_clause() {
        let c = TreeChainedCnf::new(
            StructureTree::singleton(),
            CnfVariant::NegativePartitioned,
            2,
            vec![var("a", 0), var("b", 1)],
            vec![vec![Literal::neg(0), Literal::neg(1)]],
        )
        .unwrap();
        let art = reduce_negcnf_to_poscnf(&c).unwrap();
        let Instance::Cnf(t) = &art.target else { panic!() };
        assert!(t.clauses()[0].is_empty());
        assert_eq!(art.notes.len(), 1);
        assert_eq!(solve_cnf_bruteforce(t, 10).unwrap(), None);
    }

    #[test]
    fn partition_clauses_per_cell() {
        let c = TreeChainedCnf::new(
            StructureTree::singleton(),
            CnfVariant::PositivePartitioned,
            1,
            vec![var("a", 0), var("b", 0), var("c", 0)],
            vec![],
        )
        .unwrap();
        let art = reduce_partitioned_to_general_cnf(&c).unwrap();
        let Instance::Cnf(t) = &art.target else { panic!() };
        // 1 + 3*2/2
        assert_eq!(t.clauses().len(), 4);
        let sol = solve_cnf_bruteforce(t, 100).unwrap().unwrap();
        assert_eq!(sol.len(), 1);
    }
}
