use std::collections::{BTreeMap, BTreeSet};

use super::{check_source, item, Reduction, ReductionArtifact};
use crate::decomposition::TreeDecomposition;
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::graph::Graph;
use crate::instances::{
    CnfVariant, Instance, ListColoringInstance, ListColoringKind, Literal, TcmcInstance, TcmcMode,
    TreeChainedCnf, Variable,
};

fn tcmc_source(source: &Instance) -> &TcmcInstance {
    match source {
        Instance::Tcmc(t) => t,
        _ => unreachable!("family checked"),
    }
}

fn require_nonempty_classes(t: &TcmcInstance) -> Result<(), ReductionError> {
    if let Some(c) = t.classes().iter().position(Vec::is_empty) {
        let (i, j) = t.class_coords(c);
        return Err(ReductionError::Precondition(format!(
            "class ({},{}) is empty",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// Flips the mode and complements the edges between incident classes.
pub fn complement_tcmc_to_tcmis(t: &TcmcInstance) -> ReductionArtifact {
    let src = t.graph();
    let mut g = Graph::new(src.n());
    for v in 0..src.n() {
        if let Some(l) = src.label(v) {
            g.set_label(v, l);
        }
    }
    for (a, b) in t.incident_pairs() {
        for &u in t.class(a) {
            for &v in t.class(b) {
                if !src.has_edge(u, v) {
                    g.add_edge(u, v).expect("fresh edge");
                }
            }
        }
    }
    let target = TcmcInstance::new(t.tree().clone(), t.k(), t.mode().flipped(), t.classes().to_vec(), g)
        .expect("same classes and incidence");
    let mut lift = LiftMap::default();
    for v in 0..src.n() {
        lift.push(item('v', v), vec![item('v', v)]);
    }
    ReductionArtifact {
        name: "tcmc-tcmis",
        target: Instance::Tcmc(target),
        k_in: t.k(),
        k_out: t.k(),
        growth: "k'=k",
        k_bound: t.k(),
        lift,
        witness: None,
        notes: Vec::new(),
    }
}

pub struct Complement;

impl Reduction for Complement {
    fn name(&self) -> &'static str {
        "tcmc-tcmis"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["tcmc", "tcmis"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        Ok(complement_tcmc_to_tcmis(tcmc_source(source)))
    }

    fn lift_back(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }
}

/// List-coloring instance on one vertex per class (colors = its members)
/// and one vertex per edge (colors = the edge's endpoints) adjacent to the
/// two class vertices. Class `c` becomes vertex `c`; edge number `e` in
/// [`Graph::edges`] order becomes vertex `classes + e`.
pub fn reduce_tcmis_to_listcoloring(t: &TcmcInstance) -> Result<ReductionArtifact, ReductionError> {
    if t.mode() != TcmcMode::IndependentSet {
        return Err(ReductionError::WrongFamily {
            expected: "tcmis",
            found: "tcmc",
        });
    }
    require_nonempty_classes(t)?;
    let src = t.graph();
    let nc = t.num_classes();
    let edges: Vec<(usize, usize)> = src.edges().collect();
    let mut h = Graph::new(nc + edges.len());
    let mut lists: Vec<BTreeSet<usize>> = t.classes().iter().map(|c| c.iter().copied().collect()).collect();
    let tree = t.tree();
    let k = t.k();
    let mut td = TreeDecomposition {
        tree: (**tree).clone(),
        bags: (0..tree.len())
            .map(|i| {
                let mut bag: BTreeSet<usize> = (0..k).map(|j| t.class_index(i, j)).collect();
                if let Some(p) = tree.parent(i) {
                    bag.extend((0..k).map(|j| t.class_index(p, j)));
                }
                bag
            })
            .collect(),
    };
    let mut lift = LiftMap::default();
    for c in 0..nc {
        let (i, j) = t.class_coords(c);
        h.set_label(c, format!("c{}.{}", i + 1, j + 1));
        lift.push(format!("c{}.{}", i + 1, j + 1), vec![item('v', c)]);
    }
    for (e, &(u, w)) in edges.iter().enumerate() {
        let x = nc + e;
        let (a, b) = (t.class_of(u), t.class_of(w));
        h.add_edge(x, a)?;
        h.add_edge(x, b)?;
        lists.push(BTreeSet::from([u, w]));
        h.set_label(x, format!("e{}-{}", u + 1, w + 1));
        lift.push(format!("e{}-{}", u + 1, w + 1), vec![item('v', x)]);
        // the deeper of the two tree nodes holds both class vertices
        let (ia, _) = t.class_coords(a);
        let (ib, _) = t.class_coords(b);
        let host = if tree.parent(ia) == Some(ib) { ia } else { ib };
        td.attach(host, BTreeSet::from([x, a, b]));
    }
    let width = td.width();
    let target = ListColoringInstance::new(
        ListColoringKind::Lists,
        h,
        (0..src.n()).collect(),
        lists,
        BTreeMap::new(),
        Some(td.clone()),
    )?;
    Ok(ReductionArtifact {
        name: "tcmis-listcol",
        target: Instance::ListColoring(target),
        k_in: k,
        k_out: width,
        growth: "tw<=2k-1",
        // with k = 1 two conflict vertices on one class pair already form a cycle
        k_bound: (2 * k - 1).max(2),
        lift,
        witness: Some(td),
        notes: Vec::new(),
    })
}

pub struct TcmisToList;

impl Reduction for TcmisToList {
    fn name(&self) -> &'static str {
        "tcmis-listcol"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["tcmis"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_tcmis_to_listcoloring(tcmc_source(source))
    }

    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let t = tcmc_source(source);
        let Solution::Coloring(col) = sol else {
            return None;
        };
        Some(Solution::Set(col.get(..t.num_classes())?.iter().copied().collect()))
    }

    fn lift_forward(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let t = tcmc_source(source);
        let chosen = sol.as_set()?;
        let mut col = vec![usize::MAX; t.num_classes()];
        for &v in chosen {
            if v >= t.graph().n() {
                return None;
            }
            col[t.class_of(v)] = v;
        }
        if col.contains(&usize::MAX) {
            return None;
        }
        for (u, w) in t.graph().edges() {
            // u is only blocked when its own class chose it
            col.push(if col[t.class_of(u)] != u { u } else { w });
        }
        Some(Solution::Coloring(col))
    }
}

/// Negative-partitioned CNF: variable `x_v` per vertex in the cell of its
/// class, clause `¬x_u ∨ ¬x_v` per edge. Variable `v` is vertex `v`.
pub fn reduce_tcmis_to_negcnf(t: &TcmcInstance) -> Result<ReductionArtifact, ReductionError> {
    if t.mode() != TcmcMode::IndependentSet {
        return Err(ReductionError::WrongFamily {
            expected: "tcmis",
            found: "tcmc",
        });
    }
    require_nonempty_classes(t)?;
    let g = t.graph();
    let mut lift = LiftMap::default();
    let vars: Vec<Variable> = (0..g.n())
        .map(|v| {
            let (node, slot) = t.class_coords(t.class_of(v));
            lift.push(item('v', v), vec![format!("x{}", v + 1)]);
            Variable {
                name: format!("x{}", v + 1),
                node,
                slot: Some(slot),
            }
        })
        .collect();
    let clauses = g
        .edges()
        .map(|(u, v)| vec![Literal::neg(u), Literal::neg(v)])
        .collect();
    let target = TreeChainedCnf::new(t.tree().clone(), CnfVariant::NegativePartitioned, t.k(), vars, clauses)?;
    Ok(ReductionArtifact {
        name: "tcmis-negcnf",
        target: Instance::Cnf(target),
        k_in: t.k(),
        k_out: t.k(),
        growth: "k'=k",
        k_bound: t.k(),
        lift,
        witness: None,
        notes: Vec::new(),
    })
}

pub struct TcmisToNeg;

impl Reduction for TcmisToNeg {
    fn name(&self) -> &'static str {
        "tcmis-negcnf"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["tcmis"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_tcmis_to_negcnf(tcmc_source(source))
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
    use crate::decomposition::validate_decomposition;
    use crate::oracles::{solve_listcoloring, solve_tcmc_bruteforce};
    use crate::tree::StructureTree;

    fn two_node(mode: TcmcMode, edges: &[(usize, usize)]) -> TcmcInstance {
        let g = Graph::from_edges(2, edges).unwrap();
        TcmcInstance::new(StructureTree::path(2), 1, mode, vec![vec![0], vec![1]], g).unwrap()
    }

    #[test]
    fn complement_is_an_involution() {
        let t = two_node(TcmcMode::Clique, &[(0, 1)]);
        let once = complement_tcmc_to_tcmis(&t);
        let Instance::Tcmc(c) = &once.target else { panic!() };
        assert_eq!(c.graph().m(), 0);
        assert_eq!(c.mode(), TcmcMode::IndependentSet);
        assert!(solve_tcmc_bruteforce(c, c.mode(), 10).unwrap().is_some());
        let Instance::Tcmc(back) = complement_tcmc_to_tcmis(c).target else { panic!() };
        assert_eq!(back, t);
    }

    #[test]
    fn single_node_single_vertex_unchanged() {
        let t = TcmcInstance::new(StructureTree::singleton(), 1, TcmcMode::Clique, vec![vec![0]], Graph::new(1))
            .unwrap();
        let Instance::Tcmc(c) = complement_tcmc_to_tcmis(&t).target else { panic!() };
        assert_eq!(c.graph(), t.graph());
    }

    #[test]
    fn forced_edge_gives_uncolorable_conflict() {
        let t = two_node(TcmcMode::IndependentSet, &[(0, 1)]);
        let art = reduce_tcmis_to_listcoloring(&t).unwrap();
        let Instance::ListColoring(l) = &art.target else { panic!() };
        assert_eq!(l.graph().n(), 3);
        assert_eq!(solve_listcoloring(l, 100).unwrap(), None);
        assert!(solve_tcmc_bruteforce(&t, t.mode(), 10).unwrap().is_none());
    }

    #[test]
    fn listcol_witness_width_for_k2() {
        // two nodes, two classes each of size 2, edges across all incident pairs
        let classes = vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
        let edges = [(0, 2), (1, 4), (3, 6), (5, 7), (0, 7)];
        let t = TcmcInstance::new(
            StructureTree::path(2),
            2,
            TcmcMode::IndependentSet,
            classes,
            Graph::from_edges(8, &edges).unwrap(),
        )
        .unwrap();
        let art = reduce_tcmis_to_listcoloring(&t).unwrap();
        let Instance::ListColoring(l) = &art.target else { panic!() };
        let td = art.witness.as_ref().unwrap();
        assert_eq!(validate_decomposition(l.graph(), td), Ok(3));
        assert!(art.growth_ok());
        let src = solve_tcmc_bruteforce(&t, t.mode(), 100).unwrap();
        let tgt = solve_listcoloring(l, 10_000).unwrap();
        assert_eq!(src.is_some(), tgt.is_some());
        let fwd = TcmisToList
            .lift_forward(&Instance::Tcmc(t.clone()), &art, &Solution::Set(src.unwrap()))
            .unwrap();
        let Solution::Coloring(c) = &fwd else { panic!() };
        assert!(l.is_solution(c));
    }

    #[test]
    fn negcnf_clause_per_edge() {
        let t = two_node(TcmcMode::IndependentSet, &[(0, 1)]);
        let art = reduce_tcmis_to_negcnf(&t).unwrap();
        let Instance::Cnf(c) = &art.target else { panic!() };
        assert_eq!(c.clauses().len(), 1);
        assert!(crate::oracles::solve_cnf_bruteforce(c, 10).unwrap().is_none());
    }
}
