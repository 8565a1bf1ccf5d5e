use crate::error::InstanceError;

/// Rooted tree on nodes `0..n` with explicitly ordered children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTree {
    /// A single node.
    pub fn singleton() -> Self {
        RootedTree {
            parent: vec![None],
            children: vec![Vec::new()],
            root: 0,
        }
    }

    /// Builds a tree from `(parent, child, order)` links, where `order` is
    /// the 1-based position of `child` among its siblings.
    pub fn from_links(n: usize, links: &[(usize, usize, usize)]) -> Result<Self, InstanceError> {
        let err = |m: String| InstanceError::Tree(m);
        if n == 0 {
            return Err(err("tree has no nodes".into()));
        }
        let mut parent = vec![None; n];
        let mut slots: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
        for &(p, c, order) in links {
            if p >= n || c >= n {
                return Err(err(format!("node {} out of range", p.max(c) + 1)));
            }
            if p == c {
                return Err(err(format!("node {} is its own parent", p + 1)));
            }
            if parent[c].is_some() {
                return Err(err(format!("node {} has two parents", c + 1)));
            }
            if order == 0 {
                return Err(err(format!("child order of node {} must be >= 1", c + 1)));
            }
            parent[c] = Some(p);
            let s = &mut slots[p];
            if s.len() < order {
                s.resize(order, None);
            }
            if s[order - 1].is_some() {
                return Err(err(format!(
                    "node {} has two children at position {}",
                    p + 1,
                    order
                )));
            }
            s[order - 1] = Some(c);
        }
        let mut children = Vec::with_capacity(n);
        for (p, s) in slots.into_iter().enumerate() {
            let mut ch = Vec::with_capacity(s.len());
            for (i, c) in s.into_iter().enumerate() {
                match c {
                    Some(c) => ch.push(c),
                    None => {
                        return Err(err(format!(
                            "node {} is missing a child at position {}",
                            p + 1,
                            i + 1
                        )))
                    }
                }
            }
            children.push(ch);
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(err(format!("expected one root, found {}", roots.len())));
        }
        let t = RootedTree {
            parent,
            children,
            root: roots[0],
        };
        if t.preorder().len() != n {
            return Err(err("tree is not connected".into()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Position of `v` among its siblings (0-based), `None` at the root.
    pub fn child_index(&self, v: usize) -> Option<usize> {
        let p = self.parent[v]?;
        self.children[p].iter().position(|&c| c == v)
    }

    /// `(parent, child, order)` links with 1-based order, sorted by child.
    pub fn links(&self) -> Vec<(usize, usize, usize)> {
        (0..self.len())
            .filter_map(|c| {
                let p = self.parent[c]?;
                Some((p, c, self.child_index(c).unwrap() + 1))
            })
            .collect()
    }

    /// Nodes in preorder (children visited in order).
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        let mut seen = vec![false; self.len()];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            out.push(v);
            for &c in self.children[v].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn postorder(&self) -> Vec<usize> {
        let mut pre = self.preorder();
        // reversed preorder visits every child before its parent
        pre.reverse();
        pre
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Appends a new node as the last child of `p`.
    pub fn push_child(&mut self, p: usize) -> usize {
        let c = self.parent.len();
        self.parent.push(Some(p));
        self.children.push(Vec::new());
        self.children[p].push(c);
        c
    }

    /// Undirected tree edges `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).filter_map(|c| self.parent[c].map(|p| (p, c)))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }
}

/// Rooted tree where each node has at most two, ordered, children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTree(RootedTree);

impl StructureTree {
    pub fn new(tree: RootedTree) -> Result<Self, InstanceError> {
        if tree.max_children() > 2 {
            return Err(InstanceError::Tree(
                "structure tree node has more than two children".into(),
            ));
        }
        Ok(StructureTree(tree))
    }

    pub fn from_links(n: usize, links: &[(usize, usize, usize)]) -> Result<Self, InstanceError> {
        Self::new(RootedTree::from_links(n, links)?)
    }

    pub fn singleton() -> Self {
        StructureTree(RootedTree::singleton())
    }

    /// A path `0 - 1 - ... - (n-1)` rooted at 0.
    pub fn path(n: usize) -> Self {
        let links: Vec<_> = (1..n).map(|c| (c - 1, c, 1)).collect();
        Self::from_links(n.max(1), &links).expect("path is a valid tree")
    }
}

impl std::ops::Deref for StructureTree {
    type Target = RootedTree;

    fn deref(&self) -> &RootedTree {
        &self.0
    }
}
