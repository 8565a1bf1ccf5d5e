use std::collections::BTreeSet;

use crate::error::InstanceError;
use crate::graph::Graph;
use crate::tree::StructureTree;

/// Whether chosen vertices of incident classes must be adjacent or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TcmcMode {
    Clique,
    IndependentSet,
}

impl TcmcMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TcmcMode::Clique => "clique",
            TcmcMode::IndependentSet => "is",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            TcmcMode::Clique => TcmcMode::IndependentSet,
            TcmcMode::IndependentSet => TcmcMode::Clique,
        }
    }
}

/// Tree-chained multicolor clique (or independent set) instance.
///
/// Class `(i, j)` lives at index `i * k + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcmcInstance {
    tree: StructureTree,
    k: usize,
    mode: TcmcMode,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    graph: Graph,
}

impl TcmcInstance {
    pub fn new(
        tree: StructureTree,
        k: usize,
        mode: TcmcMode,
        classes: Vec<Vec<usize>>,
        graph: Graph,
    ) -> Result<Self, InstanceError> {
        if k == 0 {
            return Err(InstanceError::Other("k must be positive".into()));
        }
        if classes.len() != tree.len() * k {
            return Err(InstanceError::Other(format!(
                "expected {} classes, found {}",
                tree.len() * k,
                classes.len()
            )));
        }
        let n = graph.n();
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                if v >= n {
                    return Err(InstanceError::VertexOutOfRange(v + 1));
                }
                if class_of[v] != usize::MAX {
                    return Err(InstanceError::OverlappingClasses(v + 1));
                }
                class_of[v] = c;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(InstanceError::UnclassifiedVertex(v + 1));
        }
        let inst = TcmcInstance {
            tree,
            k,
            mode,
            classes: classes
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect(),
            class_of,
            graph,
        };
        for (u, v) in inst.graph.edges() {
            if !inst.incident(inst.class_of[u], inst.class_of[v]) {
                return Err(InstanceError::NonIncidentEdge(u + 1, v + 1));
            }
        }
        Ok(inst)
    }

    pub fn tree(&self) -> &StructureTree {
        &self.tree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> TcmcMode {
        self.mode
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, node: usize, color: usize) -> usize {
        node * self.k + color
    }

    /// `(node, color)` of a class index.
    pub fn class_coords(&self, class: usize) -> (usize, usize) {
        (class / self.k, class % self.k)
    }

    pub fn class(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Distinct classes at the same node or at adjacent tree nodes.
    pub fn incident(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let (ia, _) = self.class_coords(a);
        let (ib, _) = self.class_coords(b);
        ia == ib || self.tree.adjacent(ia, ib)
    }

    /// All incident class pairs `(a, b)` with `a < b`.
    pub fn incident_pairs(&self) -> Vec<(usize, usize)> {
        let c = self.num_classes();
        let mut out = Vec::new();
        for a in 0..c {
            for b in a + 1..c {
                if self.incident(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether two chosen vertices of incident classes are compatible.
    pub fn compatible(&self, u: usize, v: usize) -> bool {
        match self.mode {
            TcmcMode::Clique => self.graph.has_edge(u, v),
            TcmcMode::IndependentSet => !self.graph.has_edge(u, v),
        }
    }

    /// Checks a candidate solution given as a vertex set.
    pub fn is_solution(&self, chosen: &BTreeSet<usize>) -> bool {
        let mut per_class = vec![usize::MAX; self.num_classes()];
        for &v in chosen {
            if v >= self.graph.n() {
                return false;
            }
            let c = self.class_of[v];
            if per_class[c] != usize::MAX {
                return false;
            }
            per_class[c] = v;
        }
        if per_class.contains(&usize::MAX) {
            return false;
        }
        self.incident_pairs()
            .into_iter()
            .all(|(a, b)| self.compatible(per_class[a], per_class[b]))
    }

    /// Pads every class to the largest class size with isolated vertices.
    pub fn equalize_class_sizes(&self) -> TcmcInstance {
        let target = self.classes.iter().map(Vec::len).max().unwrap_or(0);
        let mut graph = self.graph.clone();
        let mut classes = self.classes.clone();
        for class in classes.iter_mut() {
            while class.len() < target {
                class.push(graph.add_vertex());
            }
        }
        TcmcInstance::new(self.tree.clone(), self.k, self.mode, classes, graph)
            .expect("padding keeps the instance valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_edges_between_non_adjacent_nodes() {
        // path 0 - 1 - 2, k = 1; edge between classes at nodes 0 and 2
        let tree = StructureTree::path(3);
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let err = TcmcInstance::new(tree, 1, TcmcMode::Clique, vec![vec![0], vec![1], vec![2]], g);
        assert_eq!(err, Err(InstanceError::NonIncidentEdge(1, 3)));
    }

    #[test]
    fn solution_check_clique_and_is() {
        let tree = StructureTree::path(2);
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let inst =
            TcmcInstance::new(tree.clone(), 1, TcmcMode::Clique, vec![vec![0], vec![1]], g.clone())
                .unwrap();
        assert!(inst.is_solution(&[0, 1].into()));
        let inst = TcmcInstance::new(tree, 1, TcmcMode::IndependentSet, vec![vec![0], vec![1]], g)
            .unwrap();
        assert!(!inst.is_solution(&[0, 1].into()));
    }

    #[test]
    fn equalize_adds_isolated_vertices() {
        let tree = StructureTree::singleton();
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let inst =
            TcmcInstance::new(tree, 2, TcmcMode::Clique, vec![vec![0, 1], vec![2]], g).unwrap();
        let eq = inst.equalize_class_sizes();
        assert_eq!(eq.class(1).len(), 2);
        assert_eq!(eq.graph().n(), 4);
        assert_eq!(eq.graph().degree(3), 0);
    }
}
