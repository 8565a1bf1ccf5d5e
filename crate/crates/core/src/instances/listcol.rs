use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::TreeDecomposition;
use crate::error::InstanceError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListColoringKind {
    /// Every vertex carries its own list.
    Lists,
    /// Full-palette lists plus a partial precoloring to extend.
    Precoloring,
}

impl ListColoringKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ListColoringKind::Lists => "list",
            ListColoringKind::Precoloring => "precol",
        }
    }
}

/// List coloring instance over a global palette of color identifiers.
///
/// Colors are plain integers; they are 0-based internally like vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListColoringInstance {
    kind: ListColoringKind,
    graph: Graph,
    palette: BTreeSet<usize>,
    lists: Vec<BTreeSet<usize>>,
    precolored: BTreeMap<usize, usize>,
    decomposition: Option<TreeDecomposition>,
}

impl ListColoringInstance {
    pub fn new(
        kind: ListColoringKind,
        graph: Graph,
        palette: BTreeSet<usize>,
        lists: Vec<BTreeSet<usize>>,
        precolored: BTreeMap<usize, usize>,
        decomposition: Option<TreeDecomposition>,
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        if lists.len() != n {
            return Err(InstanceError::Other(format!(
                "expected {} lists, found {}",
                n,
                lists.len()
            )));
        }
        for (v, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(InstanceError::EmptyList(v + 1));
            }
            if let Some(&c) = list.iter().find(|c| !palette.contains(c)) {
                return Err(InstanceError::ColorNotAvailable {
                    vertex: v + 1,
                    color: c + 1,
                });
            }
            if kind == ListColoringKind::Precoloring && list != &palette {
                return Err(InstanceError::Other(format!(
                    "vertex {} has a restricted list in a precoloring instance",
                    v + 1
                )));
            }
        }
        for (&v, &c) in &precolored {
            if v >= n {
                return Err(InstanceError::VertexOutOfRange(v + 1));
            }
            if !lists[v].contains(&c) {
                return Err(InstanceError::ColorNotAvailable {
                    vertex: v + 1,
                    color: c + 1,
                });
            }
        }
        if let Some(td) = &decomposition {
            crate::decomposition::validate_decomposition(&graph, td)
                .map_err(|e| InstanceError::Decomposition(e.to_string()))?;
        }
        Ok(ListColoringInstance {
            kind,
            graph,
            palette,
            lists,
            precolored,
            decomposition,
        })
    }

    pub fn kind(&self) -> ListColoringKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn palette(&self) -> &BTreeSet<usize> {
        &self.palette
    }

    pub fn list(&self, v: usize) -> &BTreeSet<usize> {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[BTreeSet<usize>] {
        &self.lists
    }

    pub fn precolored(&self) -> &BTreeMap<usize, usize> {
        &self.precolored
    }

    pub fn decomposition(&self) -> Option<&TreeDecomposition> {
        self.decomposition.as_ref()
    }

    /// Colors `v` may take: its precolor if any, otherwise its list.
    pub fn effective_list(&self, v: usize) -> BTreeSet<usize> {
        match self.precolored.get(&v) {
            Some(&c) => BTreeSet::from([c]),
            None => self.lists[v].clone(),
        }
    }

    /// A proper coloring respecting lists and precolors.
    pub fn is_solution(&self, coloring: &[usize]) -> bool {
        coloring.len() == self.graph.n()
            && coloring
                .iter()
                .enumerate()
                .all(|(v, c)| self.effective_list(v).contains(c))
            && self.graph.edges().all(|(u, v)| coloring[u] != coloring[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_list_and_foreign_color() {
        let g = Graph::new(2);
        let palette: BTreeSet<usize> = [0, 1].into();
        let r = ListColoringInstance::new(
            ListColoringKind::Lists,
            g.clone(),
            palette.clone(),
            vec![[0].into(), BTreeSet::new()],
            BTreeMap::new(),
            None,
        );
        assert_eq!(r, Err(InstanceError::EmptyList(2)));
        let r = ListColoringInstance::new(
            ListColoringKind::Lists,
            g,
            palette,
            vec![[0].into(), [5].into()],
            BTreeMap::new(),
            None,
        );
        assert!(matches!(r, Err(InstanceError::ColorNotAvailable { vertex: 2, .. })));
    }

    #[test]
    fn precolor_restricts_effective_list() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let palette: BTreeSet<usize> = [0, 1].into();
        let inst = ListColoringInstance::new(
            ListColoringKind::Precoloring,
            g,
            palette.clone(),
            vec![palette.clone(), palette],
            [(0, 1)].into(),
            None,
        )
        .unwrap();
        assert!(inst.is_solution(&[1, 0]));
        assert!(!inst.is_solution(&[0, 1]));
    }
}
