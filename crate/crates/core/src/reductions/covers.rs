use std::collections::BTreeSet;

use super::{check_source, item, Reduction, ReductionArtifact};
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::graph::Graph;
use crate::instances::{logtw_parameter, GraphProblem, Instance, LogTwGraphInstance};

fn logtw_source(source: &Instance) -> &LogTwGraphInstance {
    match source {
        Instance::LogTw(g) => g,
        _ => unreachable!("family checked"),
    }
}

fn require(g: &LogTwGraphInstance, problem: GraphProblem) -> Result<(), ReductionError> {
    if g.problem() != problem {
        return Err(ReductionError::WrongFamily {
            expected: problem.as_str(),
            found: g.problem().as_str(),
        });
    }
    Ok(())
}

fn identity_lift(n: usize) -> LiftMap {
    let mut lift = LiftMap::default();
    for v in 0..n {
        lift.push(item('v', v), vec![item('v', v)]);
    }
    lift
}

/// Builds a target instance with `k'` recomputed from its witness.
fn artifact(
    name: &'static str,
    src: &LogTwGraphInstance,
    target: LogTwGraphInstance,
    growth: &'static str,
    k_bound: usize,
    lift: LiftMap,
) -> ReductionArtifact {
    ReductionArtifact {
        name,
        k_in: src.k(),
        k_out: target.k(),
        growth,
        k_bound,
        lift,
        witness: Some(target.decomposition().clone()),
        target: Instance::LogTw(target),
        notes: Vec::new(),
    }
}

/// Vertex cover with threshold `n - W` on the same graph and decomposition.
pub fn reduce_is_to_vc(g: &LogTwGraphInstance) -> Result<ReductionArtifact, ReductionError> {
    require(g, GraphProblem::IndependentSet)?;
    let n = g.graph().n();
    if g.threshold() > n {
        return Err(ReductionError::Precondition(format!(
            "independent set threshold {} exceeds the {n} vertices",
            g.threshold()
        )));
    }
    let td = g.decomposition().clone();
    let k = logtw_parameter(td.width(), n);
    let target = LogTwGraphInstance::new(
        GraphProblem::VertexCover,
        g.graph().clone(),
        td,
        n - g.threshold(),
        k,
        BTreeSet::new(),
    )?;
    Ok(artifact("is-vc", g, target, "k'<=k", g.k().max(1), identity_lift(n)))
}

pub struct IsToVc;

fn complement(n: usize, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..n).filter(|v| !s.contains(v)).collect()
}

impl Reduction for IsToVc {
    fn name(&self) -> &'static str {
        "is-vc"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["is"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_is_to_vc(logtw_source(source))
    }

    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let n = logtw_source(source).graph().n();
        Some(Solution::Set(complement(n, sol.as_set()?)))
    }

    fn lift_forward(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let n = logtw_source(source).graph().n();
        Some(Solution::Set(complement(n, sol.as_set()?)))
    }
}

/// Red-blue domination on the subdivided graph: original vertices are
/// blue, edge number `e` becomes red vertex `n + e`. Each red vertex gets a
/// bag with both endpoints, attached to a bag holding them.
pub fn reduce_vc_to_rbds(g: &LogTwGraphInstance) -> Result<ReductionArtifact, ReductionError> {
    require(g, GraphProblem::VertexCover)?;
    let src = g.graph();
    let n = src.n();
    let mut h = Graph::new(n);
    let mut td = g.decomposition().clone();
    let mut lift = identity_lift(n);
    for (e, (u, v)) in src.edges().enumerate() {
        let r = h.add_vertex();
        h.add_edge(u, r)?;
        h.add_edge(v, r)?;
        let host = td.node_containing(&[u, v]).expect("edge is covered");
        td.attach(host, BTreeSet::from([u, v, r]));
        lift.push(format!("e{}-{}", u + 1, v + 1), vec![item('v', n + e)]);
    }
    let k = logtw_parameter(td.width(), h.n());
    let target = LogTwGraphInstance::new(
        GraphProblem::RedBlueDominatingSet,
        h,
        td,
        g.threshold(),
        k,
        (0..n).collect(),
    )?;
    Ok(artifact("vc-rbds", g, target, "k'<=k+1", g.k() + 1, lift))
}

pub struct VcToRbds;

impl Reduction for VcToRbds {
    fn name(&self) -> &'static str {
        "vc-rbds"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["vc"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_vc_to_rbds(logtw_source(source))
    }

    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let n = logtw_source(source).graph().n();
        let s = sol.as_set()?;
        s.iter().all(|&v| v < n).then(|| Solution::Set(s.clone()))
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(Solution::Set(sol.as_set()?.clone()))
    }
}

/// Dominating set with threshold `K + 1`: new vertices `x0 = n` and
/// `x1 = n + 1`, with `x1` adjacent to `x0` and to every blue vertex. `x1`
/// joins every bag and one extra bag holds `{x0, x1}`.
pub fn reduce_rbds_to_ds(g: &LogTwGraphInstance) -> Result<ReductionArtifact, ReductionError> {
    require(g, GraphProblem::RedBlueDominatingSet)?;
    let n = g.graph().n();
    let mut h = g.graph().clone();
    let x0 = h.add_vertex();
    let x1 = h.add_vertex();
    h.set_label(x0, "x0");
    h.set_label(x1, "x1");
    h.add_edge(x1, x0)?;
    for &b in g.blue() {
        h.add_edge(x1, b)?;
    }
    let mut td = g.decomposition().clone();
    for bag in td.bags.iter_mut() {
        bag.insert(x1);
    }
    let root = td.tree.root();
    td.attach(root, BTreeSet::from([x0, x1]));
    let k = logtw_parameter(td.width(), h.n());
    let target = LogTwGraphInstance::new(GraphProblem::DominatingSet, h, td, g.threshold() + 1, k, BTreeSet::new())?;
    let mut lift = identity_lift(n);
    lift.push("x1", vec![item('v', x1)]);
    Ok(artifact("rbds-ds", g, target, "k'<=k+1", g.k() + 1, lift))
}

pub struct RbdsToDs;

impl Reduction for RbdsToDs {
    fn name(&self) -> &'static str {
        "rbds-ds"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["rbds"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_rbds_to_ds(logtw_source(source))
    }

    /// Normalizes a dominating set first: red members are swapped for a
    /// blue neighbour and `x0` for `x1`; then `x1` is dropped.
    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let g = logtw_source(source);
        let n = g.graph().n();
        let mut out = BTreeSet::new();
        for &v in sol.as_set()? {
            if v >= n {
                continue;
            }
            if g.is_blue(v) {
                out.insert(v);
            } else {
                out.insert(g.graph().neighbors(v).next()?);
            }
        }
        Some(Solution::Set(out))
    }

    fn lift_forward(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let n = logtw_source(source).graph().n();
        let mut s = sol.as_set()?.clone();
        s.insert(n + 1);
        Some(Solution::Set(s))
    }
}
