use std::collections::BTreeSet;

use super::{check_source, item, Reduction, ReductionArtifact};
use crate::decomposition::min_degree_decomposition;
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::instances::{Instance, ListColoringInstance, ListColoringKind};

/// Pre-coloring extension instance: every vertex gets the full palette and
/// one precolored pendant neighbour per color missing from its list.
/// Pendants are numbered after the source vertices.
pub fn reduce_listcoloring_to_precoloring(
    l: &ListColoringInstance,
) -> Result<ReductionArtifact, ReductionError> {
    let src = l.graph();
    let n = src.n();
    let palette = l.palette().clone();
    let mut g = src.clone();
    let mut pre = l.precolored().clone();
    let mut td = match l.decomposition() {
        Some(td) => td.clone(),
        None => min_degree_decomposition(src),
    };
    let width_in = td.width();
    let mut lift = LiftMap::default();
    for v in 0..n {
        let mut targets = vec![item('v', v)];
        let host = td.node_containing(&[v]).expect("every vertex is covered");
        for &c in palette.difference(l.list(v)) {
            let p = g.add_vertex();
            g.add_edge(v, p)?;
            pre.insert(p, c);
            td.attach(host, BTreeSet::from([v, p]));
            targets.push(item('v', p));
        }
        lift.push(item('v', v), targets);
    }
    let width = td.width();
    let lists = vec![palette.clone(); g.n()];
    let target = ListColoringInstance::new(ListColoringKind::Precoloring, g, palette, lists, pre, Some(td.clone()))?;
    Ok(ReductionArtifact {
        name: "listcol-precol",
        target: Instance::ListColoring(target),
        k_in: width_in,
        k_out: width,
        growth: "tw'<=max(tw,1)",
        k_bound: width_in.max(1),
        lift,
        witness: Some(td),
        notes: Vec::new(),
    })
}

pub struct ListToPre;

impl Reduction for ListToPre {
    fn name(&self) -> &'static str {
        "listcol-precol"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["listcol", "precol"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        let Instance::ListColoring(l) = source else {
            unreachable!()
        };
        reduce_listcoloring_to_precoloring(l)
    }

    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let Instance::ListColoring(l) = source else {
            return None;
        };
        let Solution::Coloring(c) = sol else {
            return None;
        };
        Some(Solution::Coloring(c.get(..l.graph().n())?.to_vec()))
    }

    fn lift_forward(&self, source: &Instance, art: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let (Instance::ListColoring(l), Instance::ListColoring(t)) = (source, &art.target) else {
            return None;
        };
        let Solution::Coloring(c) = sol else {
            return None;
        };
        let mut out = c.clone();
        for p in l.graph().n()..t.graph().n() {
            out.push(*t.precolored().get(&p)?);
        }
        Some(Solution::Coloring(out))
    }
}
