use std::collections::BTreeSet;

use super::{check_source, item, Reduction, ReductionArtifact};
use crate::decomposition::TreeDecomposition;
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::graph::Graph;
use crate::instances::{logtw_parameter, CnfVariant, GraphProblem, Instance, LogTwGraphInstance, TreeChainedCnf};
use crate::tree::RootedTree;

/// Vertices of one clause gadget. `p` is the long path `p_0..p_{ℓ+1}`,
/// `q[i-1]` is `p'_i` and `v[i-1]` is `v_i` (only for real literals).
#[derive(Clone, Debug)]
pub struct Gadget {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub v: Vec<usize>,
}

impl Gadget {
    fn ell(&self) -> usize {
        self.q.len()
    }

    /// The independent set of size `ℓ + 2` through `v_i` (1-based `i`).
    fn independent_set(&self, i: usize) -> Vec<usize> {
        let ell = self.ell();
        let mut out = vec![self.v[i - 1], self.p[0], self.p[ell + 1]];
        for j in 1..i {
            out.push(if j % 2 == 1 { self.q[j - 1] } else { self.p[j] });
        }
        for j in i + 1..=ell {
            out.push(if (ell - j) % 2 == 0 { self.q[j - 1] } else { self.p[j] });
        }
        out
    }
}

fn add_gadget(g: &mut Graph, ell: usize, real: usize) -> Gadget {
    let p: Vec<usize> = (0..ell + 2).map(|_| g.add_vertex()).collect();
    let q: Vec<usize> = (0..ell).map(|_| g.add_vertex()).collect();
    let v: Vec<usize> = (0..real).map(|_| g.add_vertex()).collect();
    for w in p.windows(2).chain(q.windows(2)) {
        g.add_edge(w[0], w[1]).expect("fresh vertices");
    }
    for i in 0..ell {
        g.add_edge(p[i + 1], q[i]).expect("fresh vertices");
    }
    for (i, &x) in v.iter().enumerate() {
        g.add_edge(x, p[i + 1]).expect("fresh vertices");
        g.add_edge(x, q[i]).expect("fresh vertices");
    }
    Gadget { p, q, v }
}

/// A standalone clause gadget with `ℓ` literal vertices and no variable
/// connections.
pub fn clause_gadget(ell: usize) -> (Graph, Gadget) {
    let mut g = Graph::new(0);
    let gadget = add_gadget(&mut g, ell, ell);
    (g, gadget)
}

struct Cell {
    vars: Vec<usize>,
    /// Bit count `t`; bit `α` of the chosen index selects vertex
    /// `base + 2α + bit`.
    bits: usize,
    base: usize,
}

struct Layout {
    cells: Vec<Cell>,
    /// `(cell, position in cell)` per source variable.
    place: Vec<(usize, usize)>,
    /// Clause literals as source variables: the source clauses, then one
    /// all-variables clause per cell.
    clauses: Vec<Vec<usize>>,
    gadgets: Vec<Gadget>,
    graph: Graph,
}

fn bits_for(size: usize) -> usize {
    (usize::BITS - (size.max(1) - 1).leading_zeros()) as usize
}

fn layout(c: &TreeChainedCnf) -> Layout {
    let mut g = Graph::new(0);
    let mut cells = Vec::new();
    let mut place = vec![(0, 0); c.vars().len()];
    for vars in c.cells().into_values() {
        let bits = bits_for(vars.len());
        let base = g.n();
        for _ in 0..bits {
            let zero = g.add_vertex();
            let one = g.add_vertex();
            g.add_edge(zero, one).expect("fresh vertices");
        }
        for (pos, &x) in vars.iter().enumerate() {
            place[x] = (cells.len(), pos);
        }
        cells.push(Cell { vars, bits, base });
    }
    let mut clauses: Vec<Vec<usize>> = c.clauses().iter().map(|cl| cl.iter().map(|l| l.var).collect()).collect();
    clauses.extend(cells.iter().map(|cell| cell.vars.clone()));
    let mut gadgets = Vec::new();
    for cl in &clauses {
        let ell = cl.len() + cl.len() % 2;
        let gadget = add_gadget(&mut g, ell, cl.len());
        for (&x, &v) in cl.iter().zip(&gadget.v) {
            let (ci, pos) = place[x];
            let cell = &cells[ci];
            for a in 0..cell.bits {
                let bit = (pos >> a) & 1;
                g.add_edge(v, cell.base + 2 * a + (1 - bit)).expect("fresh vertices");
            }
        }
        gadgets.push(gadget);
    }
    Layout {
        cells,
        place,
        clauses,
        gadgets,
        graph: g,
    }
}

impl Layout {
    fn cell_vertices(&self, ci: usize) -> impl Iterator<Item = usize> + '_ {
        let cell = &self.cells[ci];
        cell.base..cell.base + 2 * cell.bits
    }

    fn selection(&self, x: usize) -> Vec<usize> {
        let (ci, pos) = self.place[x];
        let cell = &self.cells[ci];
        (0..cell.bits).map(|a| cell.base + 2 * a + ((pos >> a) & 1)).collect()
    }

    fn threshold(&self) -> usize {
        self.cells.iter().map(|c| c.bits).sum::<usize>()
            + self.gadgets.iter().map(|g| g.ell() + 2).sum::<usize>()
    }
}

/// Decomposition mirroring the structure tree. Node `i` holds the variable
/// gadgets of its cells and its parent's cells; each clause hangs a chain
/// of bags below the deeper of its nodes.
fn witness(c: &TreeChainedCnf, lay: &Layout) -> TreeDecomposition {
    let tree: &RootedTree = c.tree();
    let cells_of = |node: usize| -> Vec<usize> {
        c.cells()
            .keys()
            .enumerate()
            .filter(|(_, &(n, _))| n == node)
            .map(|(i, _)| i)
            .collect()
    };
    let bags: Vec<BTreeSet<usize>> = (0..tree.len())
        .map(|i| {
            let mut nodes = vec![i];
            nodes.extend(tree.parent(i));
            nodes
                .into_iter()
                .flat_map(&cells_of)
                .flat_map(|ci| lay.cell_vertices(ci))
                .collect()
        })
        .collect();
    let mut td = TreeDecomposition {
        tree: tree.clone(),
        bags,
    };
    let depth = |mut v: usize| {
        let mut d = 0;
        while let Some(p) = tree.parent(v) {
            v = p;
            d += 1;
        }
        d
    };
    for (cl, gadget) in lay.clauses.iter().zip(&lay.gadgets) {
        let host = cl
            .iter()
            .map(|&x| c.vars()[x].node)
            .max_by_key(|&n| depth(n))
            .unwrap_or(tree.root());
        let base = td.bags[host].clone();
        let mut at = host;
        for j in 1..=gadget.ell() {
            let mut bag = base.clone();
            bag.extend([gadget.p[j - 1], gadget.p[j], gadget.q[j - 1]]);
            if j >= 2 {
                bag.insert(gadget.q[j - 2]);
            }
            if let Some(&v) = gadget.v.get(j - 1) {
                bag.insert(v);
            }
            at = td.attach(at, bag);
        }
        let ell = gadget.ell();
        td.attach(at, BTreeSet::from([gadget.p[ell], gadget.p[ell + 1]]));
    }
    td
}

/// Independent set instance on variable and clause gadgets. Each cell of
/// size `s` contributes `⌈log₂ s⌉` edges whose chosen endpoints spell the
/// index of its true variable; each clause (padded to even length) a ladder
/// whose independence number rises by one exactly when a literal vertex
/// compatible with the chosen bits is present.
pub fn reduce_poscnf_to_logtw_is(c: &TreeChainedCnf) -> Result<ReductionArtifact, ReductionError> {
    if c.variant() != CnfVariant::PositivePartitioned {
        return Err(ReductionError::WrongFamily {
            expected: "poscnf",
            found: "cnf",
        });
    }
    let lay = layout(c);
    let td = witness(c, &lay);
    let n = lay.graph.n();
    let k_out = logtw_parameter(td.width(), n);
    let mut lift = LiftMap::default();
    for (x, var) in c.vars().iter().enumerate() {
        lift.push(var.name.clone(), lay.selection(x).into_iter().map(|v| item('v', v)).collect());
    }
    for (ci, gadget) in lay.gadgets.iter().enumerate() {
        lift.push(format!("c{}", ci + 1), gadget.v.iter().map(|&v| item('v', v)).collect());
    }
    let mut notes = Vec::new();
    if let Some(ci) = c.clauses().iter().position(Vec::is_empty) {
        notes.push(format!("clause {} is empty", ci + 1));
    }
    let target = LogTwGraphInstance::new(
        GraphProblem::IndependentSet,
        lay.graph.clone(),
        td.clone(),
        lay.threshold(),
        k_out,
        BTreeSet::new(),
    )?;
    Ok(ReductionArtifact {
        name: "poscnf-logtwis",
        target: Instance::LogTw(target),
        k_in: c.k(),
        k_out,
        growth: "k'<=4k+5",
        k_bound: 4 * c.k() + 5,
        lift,
        witness: Some(td),
        notes,
    })
}

pub struct PosToLogTw;

impl Reduction for PosToLogTw {
    fn name(&self) -> &'static str {
        "poscnf-logtwis"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["poscnf"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        let Instance::Cnf(c) = source else {
            unreachable!()
        };
        reduce_poscnf_to_logtw_is(c)
    }

    /// Reads each cell's index off the chosen `1̂` vertices.
    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let Instance::Cnf(c) = source else {
            return None;
        };
        let set = sol.as_set()?;
        let lay = layout(c);
        let mut out = BTreeSet::new();
        for cell in &lay.cells {
            let idx: usize = (0..cell.bits)
                .filter(|a| set.contains(&(cell.base + 2 * a + 1)))
                .map(|a| 1 << a)
                .sum();
            out.insert(*cell.vars.get(idx)?);
        }
        Some(Solution::Set(out))
    }

    fn lift_forward(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let Instance::Cnf(c) = source else {
            return None;
        };
        let truth = sol.as_set()?;
        let lay = layout(c);
        let mut out = BTreeSet::new();
        for &x in truth {
            out.extend(lay.selection(x));
        }
        for (cl, gadget) in lay.clauses.iter().zip(&lay.gadgets) {
            let i = cl.iter().position(|x| truth.contains(x))?;
            out.extend(gadget.independent_set(i + 1));
        }
        Some(Solution::Set(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Literal, Variable};
    use crate::oracles::{graph_optimum_bruteforce, solve_cnf_bruteforce, treedp_witness};
    use crate::tree::StructureTree;

    fn best_through(g: &Graph, required: &[usize]) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let set: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if required.iter().any(|v| set.contains(v)) && g.is_independent(&set) {
                best = best.max(set.len());
            }
        }
        best
    }

    #[test]
    fn gadget_independence_numbers() {
        for ell in [2, 4] {
            let (g, gadget) = clause_gadget(ell);
            let none = BTreeSet::new();
            let alpha = graph_optimum_bruteforce(&g, GraphProblem::IndependentSet, &none, 1 << 20)
                .unwrap()
                .unwrap();
            assert_eq!(alpha, ell + 2);
            assert_eq!(best_through(&g, &gadget.v), ell + 2);
            for i in 1..=ell {
                let s: BTreeSet<usize> = gadget.independent_set(i).into_iter().collect();
                assert_eq!(s.len(), ell + 2);
                assert!(g.is_independent(&s));
            }
            // without literal vertices one less
            let core: Vec<usize> = (0..g.n()).filter(|v| !gadget.v.contains(v)).collect();
            let mut best = 0;
            for mask in 0u32..(1 << core.len()) {
                let s: BTreeSet<usize> =
                    core.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                if g.is_independent(&s) {
                    best = best.max(s.len());
                }
            }
            assert_eq!(best, ell + 1);
        }
    }

    fn var(name: &str, node: usize, slot: usize) -> Variable {
        Variable {
            name: name.into(),
            node,
            slot: Some(slot),
        }
    }

    fn poscnf(clauses: Vec<Vec<usize>>) -> TreeChainedCnf {
        TreeChainedCnf::new(
            StructureTree::path(2),
            CnfVariant::PositivePartitioned,
            1,
            vec![var("a", 0, 0), var("b", 0, 0), var("c", 0, 0), var("d", 1, 0), var("e", 1, 0)],
            clauses
                .into_iter()
                .map(|c| c.into_iter().map(Literal::pos).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn satisfiability_is_preserved() {
        for clauses in [vec![vec![0, 3]], vec![vec![2], vec![4]], vec![vec![0], vec![1]], vec![vec![]]] {
            let c = poscnf(clauses);
            let sat = solve_cnf_bruteforce(&c, 1 << 16).unwrap();
            let art = reduce_poscnf_to_logtw_is(&c).unwrap();
            let Instance::LogTw(t) = &art.target else { panic!() };
            let found = treedp_witness(t, 1 << 20).unwrap().filter(|s| t.is_solution(s));
            assert_eq!(sat.is_some(), found.is_some());
            if let Some(s) = sat {
                let fwd = PosToLogTw
                    .lift_forward(&Instance::Cnf(c.clone()), &art, &Solution::Set(s))
                    .unwrap();
                assert!(t.is_solution(fwd.as_set().unwrap()));
                let back = PosToLogTw.lift_back(&Instance::Cnf(c.clone()), &art, &fwd).unwrap();
                assert!(c.is_solution(back.as_set().unwrap()));
            }
            assert!(art.growth_ok());
        }
    }

    #[test]
    fn witness_is_valid() {
        let c = poscnf(vec![vec![0, 1, 4], vec![2, 3]]);
        let art = reduce_poscnf_to_logtw_is(&c).unwrap();
        let Instance::LogTw(t) = &art.target else { panic!() };
        assert_eq!(
            crate::decomposition::validate_decomposition(t.graph(), art.witness.as_ref().unwrap()),
            Ok(art.witness.as_ref().unwrap().width())
        );
    }
}
