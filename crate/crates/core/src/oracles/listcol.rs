use crate::error::OracleError;
use crate::instances::ListColoringInstance;

/// Exact backtracking decision for list coloring with precolorings.
///
/// The cap bounds the number of search nodes visited (most constrained
/// vertex first), since the product of list sizes is far too coarse for the
/// instances the reductions emit.
pub fn solve_listcoloring(
    inst: &ListColoringInstance,
    cap: u128,
) -> Result<Option<Vec<usize>>, OracleError> {
    let g = inst.graph();
    let n = g.n();
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|v| inst.effective_list(v).into_iter().collect())
        .collect();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut search = Search {
        lists: &lists,
        nbrs: &nbrs,
        color: vec![None; n],
        visited: 0,
        cap,
    };
    if !search.go(n)? {
        return Ok(None);
    }
    let coloring: Vec<usize> = search.color.into_iter().map(|c| c.unwrap()).collect();
    debug_assert!(inst.is_solution(&coloring));
    Ok(Some(coloring))
}

struct Search<'a> {
    lists: &'a [Vec<usize>],
    nbrs: &'a [Vec<usize>],
    color: Vec<Option<usize>>,
    visited: u128,
    cap: u128,
}

impl Search<'_> {
    fn available(&self, v: usize) -> Vec<usize> {
        self.lists[v]
            .iter()
            .copied()
            .filter(|&c| self.nbrs[v].iter().all(|&u| self.color[u] != Some(c)))
            .collect()
    }

    fn go(&mut self, remaining: usize) -> Result<bool, OracleError> {
        if remaining == 0 {
            return Ok(true);
        }
        self.visited += 1;
        if self.visited > self.cap {
            return Err(OracleError::SearchCapExceeded { cap: self.cap });
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in 0..self.color.len() {
            if self.color[v].is_some() {
                continue;
            }
            let avail = self.available(v);
            if best.as_ref().is_none_or(|(_, b)| avail.len() < b.len()) {
                let empty = avail.is_empty();
                best = Some((v, avail));
                if empty {
                    break;
                }
            }
        }
        let (v, avail) = best.expect("an uncolored vertex remains");
        for c in avail {
            self.color[v] = Some(c);
            if self.go(remaining - 1)? {
                return Ok(true);
            }
        }
        self.color[v] = None;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::graph::Graph;
    use crate::instances::ListColoringKind;

    fn lc(n: usize, edges: &[(usize, usize)], lists: Vec<Vec<usize>>) -> ListColoringInstance {
        let lists: Vec<BTreeSet<usize>> = lists.into_iter().map(|l| l.into_iter().collect()).collect();
        let palette = lists.iter().flatten().copied().collect();
        ListColoringInstance::new(
            ListColoringKind::Lists,
            Graph::from_edges(n, edges).unwrap(),
            palette,
            lists,
            BTreeMap::new(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn edgeless_is_colorable() {
        let i = lc(3, &[], vec![vec![0], vec![0], vec![1, 2]]);
        assert!(solve_listcoloring(&i, 100).unwrap().is_some());
    }

    #[test]
    fn identical_singletons_on_edge() {
        let i = lc(2, &[(0, 1)], vec![vec![4], vec![4]]);
        assert_eq!(solve_listcoloring(&i, 100).unwrap(), None);
    }

    #[test]
    fn precolor_is_honored() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let full: BTreeSet<usize> = [0, 1].into();
        let i = ListColoringInstance::new(
            ListColoringKind::Precoloring,
            g,
            full.clone(),
            vec![full.clone(), full],
            BTreeMap::from([(1, 0)]),
            None,
        )
        .unwrap();
        assert_eq!(solve_listcoloring(&i, 100).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn triangle_with_two_colors_hits_search_cap() {
        let two = vec![0, 1];
        let i = lc(3, &[(0, 1), (1, 2), (0, 2)], vec![two.clone(), two.clone(), two]);
        assert_eq!(solve_listcoloring(&i, 100).unwrap(), None);
        assert_eq!(
            solve_listcoloring(&i, 1).unwrap_err(),
            OracleError::SearchCapExceeded { cap: 1 }
        );
    }
}
