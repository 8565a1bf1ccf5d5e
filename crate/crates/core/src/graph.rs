use std::collections::BTreeSet;

use crate::error::InstanceError;

/// Simple undirected graph on vertices `0..n`.
///
/// Vertices are dense 0-based indices internally; the text formats use
/// 1-based identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            labels: vec![None; n],
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, InstanceError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.labels.push(None);
        self.adj.len() - 1
    }

    /// Adds `{u,v}`; errors on a loop, a repeat, or a bad endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), InstanceError> {
        if !self.insert_edge(u, v)? {
            return Err(InstanceError::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
        }
        Ok(())
    }

    /// Adds `{u,v}` if absent. Returns whether the edge is new.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool, InstanceError> {
        let n = self.n();
        if u >= n {
            return Err(InstanceError::VertexOutOfRange(u + 1));
        }
        if v >= n {
            return Err(InstanceError::VertexOutOfRange(v + 1));
        }
        if u == v {
            return Err(InstanceError::SelfLoop(u + 1));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&u| self.adj[u].iter().all(|v| !set.contains(v)))
    }

    pub fn is_vertex_cover(&self, set: &BTreeSet<usize>) -> bool {
        self.edges()
            .all(|(u, v)| set.contains(&u) || set.contains(&v))
    }

    pub fn is_dominating(&self, set: &BTreeSet<usize>) -> bool {
        (0..self.n()).all(|v| set.contains(&v) || self.adj[v].iter().any(|u| set.contains(u)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(InstanceError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(InstanceError::DuplicateEdge(1, 2))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(InstanceError::VertexOutOfRange(3))
        );
    }

    #[test]
    fn set_predicates_on_p3() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.is_independent(&[0, 2].into()));
        assert!(!g.is_independent(&[0, 1].into()));
        assert!(g.is_vertex_cover(&[1].into()));
        assert!(g.is_dominating(&[1].into()));
        assert!(!g.is_dominating(&[0].into()));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
