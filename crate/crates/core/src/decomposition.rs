//! Tree decompositions: validation, a min-degree heuristic builder for
//! generated instances, and conversion to nice form for dynamic programming.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::Graph;
use crate::tree::RootedTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: RootedTree,
    pub bags: Vec<BTreeSet<usize>>,
}

/// First violated decomposition condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BagCount { nodes: usize, bags: usize },
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    Disconnected { vertex: usize, nodes: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BagCount { nodes, bags } => {
                write!(f, "tree has {nodes} nodes but {bags} bags")
            }
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {} holds unknown vertex {}", node + 1, vertex + 1)
            }
            Violation::VertexUncovered(v) => write!(f, "vertex uncovered: {}", v + 1),
            Violation::EdgeUncovered(u, v) => write!(f, "edge uncovered: {{{},{}}}", u + 1, v + 1),
            Violation::Disconnected { vertex, nodes } => {
                let ns: Vec<String> = nodes.iter().map(|n| (n + 1).to_string()).collect();
                write!(
                    f,
                    "occurrences of vertex {} are disconnected: nodes {}",
                    vertex + 1,
                    ns.join(",")
                )
            }
        }
    }
}

impl TreeDecomposition {
    /// One bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            tree: RootedTree::singleton(),
            bags: vec![(0..n).collect()],
        }
    }

    /// Max bag size minus one (0 when every bag is empty or singleton).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Adds a bag as the last child of `parent`; returns its node.
    pub fn attach(&mut self, parent: usize, bag: BTreeSet<usize>) -> usize {
        let c = self.tree.push_child(parent);
        self.bags.push(bag);
        c
    }

    /// Some node whose bag contains every vertex in `vs`.
    pub fn node_containing(&self, vs: &[usize]) -> Option<usize> {
        (0..self.bags.len()).find(|&i| vs.iter().all(|v| self.bags[i].contains(v)))
    }
}

/// Checks the three decomposition conditions; returns the width on success.
pub fn validate_decomposition(graph: &Graph, td: &TreeDecomposition) -> Result<usize, Violation> {
    let t = &td.tree;
    if td.bags.len() != t.len() {
        return Err(Violation::BagCount {
            nodes: t.len(),
            bags: td.bags.len(),
        });
    }
    let n = graph.n();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::VertexOutOfRange { node: i, vertex: v });
            }
            occurs[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| occurs[v].is_empty()) {
        return Err(Violation::VertexUncovered(v));
    }
    for (u, v) in graph.edges() {
        if !occurs[u].iter().any(|&i| td.bags[i].contains(&v)) {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    // The occurrence set of v is connected iff exactly one of its nodes has
    // a parent outside the set.
    for (v, nodes) in occurs.iter().enumerate() {
        let tops = nodes
            .iter()
            .filter(|&&i| match t.parent(i) {
                Some(p) => !td.bags[p].contains(&v),
                None => true,
            })
            .count();
        if tops != 1 {
            return Err(Violation::Disconnected {
                vertex: v,
                nodes: nodes.clone(),
            });
        }
    }
    Ok(td.width())
}

/// Decomposition from a greedy min-degree elimination order.
///
/// Used to equip generated instances with some valid decomposition; it makes
/// no optimality claim.
pub fn min_degree_decomposition(graph: &Graph) -> TreeDecomposition {
    let n = graph.n();
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbors(v).collect()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    while let Some(&v) = alive.iter().min_by_key(|&&v| (adj[v].len(), v)) {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag: BTreeSet<usize> = nb.into_iter().collect();
        bag.insert(v);
        alive.remove(&v);
        order.push(v);
        bags.push(bag);
    }
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Bag i's parent is the bag of its earliest-eliminated later neighbour;
    // components are chained to the last bag.
    let last = n - 1;
    let mut links = Vec::new();
    let mut child_count = vec![0usize; n];
    for i in 0..n {
        if i == last {
            continue;
        }
        let v = order[i];
        let p = bags[i]
            .iter()
            .filter(|&&u| u != v)
            .map(|u| pos[u])
            .min()
            .unwrap_or(last);
        child_count[p] += 1;
        links.push((p, i, child_count[p]));
    }
    let tree = RootedTree::from_links(n, &links).expect("elimination forest is a tree");
    TreeDecomposition { tree, bags }
}

/// Node of a nice decomposition. Children precede parents in the node list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

/// Nice decomposition: empty leaf and root bags, binary joins with equal
/// bags, single-vertex introduce/forget steps.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

impl NiceDecomposition {
    pub fn from_decomposition(td: &TreeDecomposition) -> Self {
        let mut nice = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
            root: 0,
        };
        let mut built: Vec<usize> = vec![usize::MAX; td.tree.len()];
        for t in td.tree.postorder() {
            let bag: Vec<usize> = td.bags[t].iter().copied().collect();
            let mut subtrees: Vec<usize> = td
                .tree
                .children(t)
                .iter()
                .map(|&c| nice.transition(built[c], &bag))
                .collect();
            let top = if subtrees.is_empty() {
                let leaf = nice.push(NiceNode::Leaf, Vec::new());
                nice.transition(leaf, &bag)
            } else {
                let mut acc = subtrees.remove(0);
                for s in subtrees {
                    acc = nice.push(NiceNode::Join { left: acc, right: s }, bag.clone());
                }
                acc
            };
            built[t] = top;
        }
        nice.root = nice.transition(built[td.tree.root()], &[]);
        nice
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Forget then introduce until the bag at `from` equals `target`.
    fn transition(&mut self, from: usize, target: &[usize]) -> usize {
        let mut cur = from;
        let forget: Vec<usize> = self.bags[from]
            .iter()
            .copied()
            .filter(|v| target.binary_search(v).is_err())
            .collect();
        for v in forget {
            let bag: Vec<usize> = self.bags[cur].iter().copied().filter(|&u| u != v).collect();
            cur = self.push(NiceNode::Forget { vertex: v, child: cur }, bag);
        }
        for &v in target {
            if self.bags[cur].binary_search(&v).is_err() {
                let mut bag = self.bags[cur].clone();
                let at = bag.binary_search(&v).unwrap_err();
                bag.insert(at, v);
                cur = self.push(NiceNode::Introduce { vertex: v, child: cur }, bag);
            }
        }
        cur
    }

    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }
}
