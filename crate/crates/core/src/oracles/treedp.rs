use std::collections::BTreeSet;

use super::check_cap;
use crate::decomposition::{validate_decomposition, NiceDecomposition, NiceNode};
use crate::error::OracleError;
use crate::graph::Graph;
use crate::instances::{GraphProblem, LogTwGraphInstance};

/// Decides the instance by dynamic programming over its own decomposition.
pub fn solve_is_treedp(inst: &LogTwGraphInstance, cap: u128) -> Result<bool, OracleError> {
    let opt = treedp_optimum(inst, cap)?;
    Ok(match opt {
        None => false,
        Some(v) if inst.problem().maximizes() => v >= inst.threshold(),
        Some(v) => v <= inst.threshold(),
    })
}

/// Optimum value by dynamic programming over the instance's decomposition,
/// converted to a nice decomposition first. `None` if nothing is feasible.
///
/// Independent set and vertex cover keep one membership bit per bag vertex
/// (`2^bag` states); the domination problems keep in / claimed dominated /
/// no claim (`3^bag` states) and their joins cost `4^bag`, which is what the
/// cap is checked against.
pub fn treedp_optimum(inst: &LogTwGraphInstance, cap: u128) -> Result<Option<usize>, OracleError> {
    Ok(treedp_witness(inst, cap)?.map(|s| s.len()))
}

/// An optimal feasible set recovered from the dynamic-programming tables,
/// or `None` if nothing is feasible.
pub fn treedp_witness(
    inst: &LogTwGraphInstance,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, OracleError> {
    let g = inst.graph();
    validate_decomposition(g, inst.decomposition())
        .map_err(|v| OracleError::InvalidDecomposition(v.to_string()))?;
    let nice = NiceDecomposition::from_decomposition(inst.decomposition());
    let b = nice.max_bag() as u32;
    match inst.problem() {
        GraphProblem::IndependentSet | GraphProblem::VertexCover => {
            check_cap(1u128.checked_shl(b).unwrap_or(u128::MAX), cap)?;
            let tables = independent_set_tables(g, &nice);
            let is = independent_set_traceback(&nice, &tables);
            Ok(Some(if inst.problem() == GraphProblem::VertexCover {
                (0..g.n()).filter(|v| !is.contains(v)).collect()
            } else {
                is
            }))
        }
        GraphProblem::DominatingSet | GraphProblem::RedBlueDominatingSet => {
            check_cap(4u128.checked_pow(b).unwrap_or(u128::MAX), cap)?;
            let red_blue = inst.problem() == GraphProblem::RedBlueDominatingSet;
            let dom = Domination {
                g,
                nice: &nice,
                may_pick: &|v| !red_blue || inst.is_blue(v),
                needs: &|v| !red_blue || !inst.is_blue(v),
            };
            let tables = dom.tables();
            Ok(dom.traceback(&tables))
        }
    }
}

fn position(bag: &[usize], v: usize) -> usize {
    bag.binary_search(&v).expect("vertex in bag")
}

/// Inserts bit `bit` at position `p` of `mask`.
fn insert_bit(mask: usize, p: usize, bit: usize) -> usize {
    let low = mask & ((1 << p) - 1);
    let high = mask >> p;
    low | (bit << p) | (high << (p + 1))
}

/// Removes bit `p` of `mask`.
fn remove_bit(mask: usize, p: usize) -> usize {
    let low = mask & ((1 << p) - 1);
    low | ((mask >> (p + 1)) << p)
}

const NEG: i64 = i64::MIN / 4;

/// Largest independent set among processed vertices whose intersection
/// with the bag is the state's mask.
fn independent_set_tables(g: &Graph, nice: &NiceDecomposition) -> Vec<Vec<i64>> {
    let mut tables: Vec<Vec<i64>> = Vec::with_capacity(nice.nodes.len());
    for (t, node) in nice.nodes.iter().enumerate() {
        let bag = &nice.bags[t];
        let table = match *node {
            NiceNode::Leaf => vec![0; 1 << bag.len()],
            NiceNode::Introduce { vertex, child } => {
                let p = position(bag, vertex);
                let nbr: usize = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| g.has_edge(u, vertex))
                    .fold(0, |m, (i, _)| m | (1 << i));
                let ct = &tables[child];
                (0..1usize << bag.len())
                    .map(|s| {
                        let cs = remove_bit(s, p);
                        if s >> p & 1 == 0 {
                            ct[cs]
                        } else if s & nbr != 0 || ct[cs] == NEG {
                            NEG
                        } else {
                            ct[cs] + 1
                        }
                    })
                    .collect()
            }
            NiceNode::Forget { vertex, child } => {
                let p = position(&nice.bags[child], vertex);
                let ct = &tables[child];
                (0..1usize << bag.len())
                    .map(|s| ct[insert_bit(s, p, 0)].max(ct[insert_bit(s, p, 1)]))
                    .collect()
            }
            NiceNode::Join { left, right } => {
                let (lt, rt) = (&tables[left], &tables[right]);
                (0..1usize << bag.len())
                    .map(|s| {
                        if lt[s] == NEG || rt[s] == NEG {
                            NEG
                        } else {
                            lt[s] + rt[s] - s.count_ones() as i64
                        }
                    })
                    .collect()
            }
        };
        tables.push(table);
    }
    tables
}

fn independent_set_traceback(nice: &NiceDecomposition, tables: &[Vec<i64>]) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    let mut stack = vec![(nice.root, 0usize)];
    while let Some((t, s)) = stack.pop() {
        match nice.nodes[t] {
            NiceNode::Leaf => {}
            NiceNode::Introduce { vertex, child } => {
                let p = position(&nice.bags[t], vertex);
                if s >> p & 1 == 1 {
                    set.insert(vertex);
                }
                stack.push((child, remove_bit(s, p)));
            }
            NiceNode::Forget { vertex, child } => {
                let p = position(&nice.bags[child], vertex);
                let ct = &tables[child];
                let bit = usize::from(ct[insert_bit(s, p, 1)] == tables[t][s]);
                stack.push((child, insert_bit(s, p, bit)));
            }
            NiceNode::Join { left, right } => {
                stack.push((left, s));
                stack.push((right, s));
            }
        }
    }
    set
}

const NO_CLAIM: u8 = 0;
const CLAIMED: u8 = 1;
const PICKED: u8 = 2;
const INF: u32 = u32::MAX;

fn decode(mut s: usize, len: usize, out: &mut Vec<u8>) {
    out.clear();
    for _ in 0..len {
        out.push((s % 3) as u8);
        s /= 3;
    }
}

fn encode(digits: &[u8]) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * 3 + d as usize)
}

/// Minimum (red-blue) domination over a nice decomposition. A table entry
/// is the least number of picked vertices among processed ones such that
/// picked bag vertices match the state, every claimed bag vertex is
/// dominated and every forgotten vertex that needs it is dominated. Entries
/// are monotone: dropping a claim never costs more.
struct Domination<'a> {
    g: &'a Graph,
    nice: &'a NiceDecomposition,
    may_pick: &'a dyn Fn(usize) -> bool,
    needs: &'a dyn Fn(usize) -> bool,
}

impl Domination<'_> {
    /// Child state and cost increment for an introduce node, or `None` if
    /// the state is impossible.
    fn introduce(&self, t: usize, vertex: usize, d: &[u8]) -> Option<(Vec<u8>, u32)> {
        let bag = &self.nice.bags[t];
        let p = position(bag, vertex);
        let mut cd = d.to_vec();
        let mine = cd.remove(p);
        let nbr = |i: usize| {
            let u = bag[if i < p { i } else { i + 1 }];
            self.g.has_edge(u, vertex)
        };
        match mine {
            NO_CLAIM => Some((cd, 0)),
            CLAIMED => (0..cd.len())
                .any(|i| nbr(i) && cd[i] == PICKED)
                .then_some((cd, 0)),
            _ => {
                if !(self.may_pick)(vertex) {
                    return None;
                }
                // the new vertex dominates its bag neighbours
                for i in 0..cd.len() {
                    if nbr(i) && cd[i] == CLAIMED {
                        cd[i] = NO_CLAIM;
                    }
                }
                Some((cd, 1))
            }
        }
    }

    /// Each claim is discharged by exactly one side of a join.
    fn splits(d: &[u8]) -> impl Iterator<Item = (Vec<u8>, Vec<u8>)> + '_ {
        let claims: Vec<usize> = (0..d.len()).filter(|&i| d[i] == CLAIMED).collect();
        (0..1usize << claims.len()).map(move |split| {
            let mut ld = d.to_vec();
            let mut rd = d.to_vec();
            for (j, &i) in claims.iter().enumerate() {
                if split >> j & 1 == 1 {
                    rd[i] = NO_CLAIM;
                } else {
                    ld[i] = NO_CLAIM;
                }
            }
            (ld, rd)
        })
    }

    fn tables(&self) -> Vec<Vec<u32>> {
        let nice = self.nice;
        let mut tables: Vec<Vec<u32>> = Vec::with_capacity(nice.nodes.len());
        let mut d = Vec::new();
        for (t, node) in nice.nodes.iter().enumerate() {
            let bag = &nice.bags[t];
            let mut table = vec![INF; 3usize.pow(bag.len() as u32)];
            match *node {
                NiceNode::Leaf => table.fill(0),
                NiceNode::Introduce { vertex, child } => {
                    let ct = &tables[child];
                    for (s, slot) in table.iter_mut().enumerate() {
                        decode(s, bag.len(), &mut d);
                        if let Some((cd, add)) = self.introduce(t, vertex, &d) {
                            *slot = ct[encode(&cd)].saturating_add(add);
                        }
                    }
                }
                NiceNode::Forget { vertex, child } => {
                    let p = position(&nice.bags[child], vertex);
                    let ct = &tables[child];
                    let other = if (self.needs)(vertex) { CLAIMED } else { NO_CLAIM };
                    for (s, slot) in table.iter_mut().enumerate() {
                        decode(s, bag.len(), &mut d);
                        d.insert(p, PICKED);
                        let a = ct[encode(&d)];
                        d[p] = other;
                        *slot = a.min(ct[encode(&d)]);
                    }
                }
                NiceNode::Join { left, right } => {
                    let (lt, rt) = (&tables[left], &tables[right]);
                    for (s, slot) in table.iter_mut().enumerate() {
                        decode(s, bag.len(), &mut d);
                        let picked = d.iter().filter(|&&x| x == PICKED).count() as u32;
                        *slot = Self::splits(&d)
                            .filter_map(|(ld, rd)| {
                                let (a, b) = (lt[encode(&ld)], rt[encode(&rd)]);
                                (a != INF && b != INF).then(|| a + b - picked)
                            })
                            .min()
                            .unwrap_or(INF);
                    }
                }
            }
            tables.push(table);
        }
        tables
    }

    fn traceback(&self, tables: &[Vec<u32>]) -> Option<BTreeSet<usize>> {
        let nice = self.nice;
        if tables[nice.root][0] == INF {
            return None;
        }
        let mut set = BTreeSet::new();
        let mut stack = vec![(nice.root, 0usize)];
        let mut d = Vec::new();
        while let Some((t, s)) = stack.pop() {
            let value = tables[t][s];
            decode(s, nice.bags[t].len(), &mut d);
            match nice.nodes[t] {
                NiceNode::Leaf => {}
                NiceNode::Introduce { vertex, child } => {
                    let (cd, add) = self.introduce(t, vertex, &d).expect("reachable state");
                    if add == 1 {
                        set.insert(vertex);
                    }
                    stack.push((child, encode(&cd)));
                }
                NiceNode::Forget { vertex, child } => {
                    let p = position(&nice.bags[child], vertex);
                    let other = if (self.needs)(vertex) { CLAIMED } else { NO_CLAIM };
                    d.insert(p, PICKED);
                    if tables[child][encode(&d)] != value {
                        d[p] = other;
                    }
                    stack.push((child, encode(&d)));
                }
                NiceNode::Join { left, right } => {
                    let picked = d.iter().filter(|&&x| x == PICKED).count() as u32;
                    let (ld, rd) = Self::splits(&d)
                        .find(|(ld, rd)| {
                            let (a, b) = (tables[left][encode(ld)], tables[right][encode(rd)]);
                            a != INF && b != INF && a + b - picked == value
                        })
                        .expect("optimal split exists");
                    stack.push((left, encode(&ld)));
                    stack.push((right, encode(&rd)));
                }
            }
        }
        Some(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{min_degree_decomposition, TreeDecomposition};
    use crate::oracles::graph_optimum_bruteforce;

    fn inst(problem: GraphProblem, g: Graph, td: TreeDecomposition, blue: BTreeSet<usize>) -> LogTwGraphInstance {
        let k = g.n().max(1);
        LogTwGraphInstance::new(problem, g, td, 0, k, blue).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn single_bag_matches_bruteforce() {
        let g = cycle(5);
        for problem in [
            GraphProblem::IndependentSet,
            GraphProblem::VertexCover,
            GraphProblem::DominatingSet,
        ] {
            let i = inst(problem, g.clone(), TreeDecomposition::trivial(5), BTreeSet::new());
            assert_eq!(
                treedp_optimum(&i, 1 << 20).unwrap(),
                graph_optimum_bruteforce(&g, problem, &BTreeSet::new(), 1 << 20).unwrap(),
                "{problem:?}"
            );
        }
    }

    #[test]
    fn cycle_values() {
        let g = cycle(7);
        let td = min_degree_decomposition(&g);
        let is = inst(GraphProblem::IndependentSet, g.clone(), td.clone(), BTreeSet::new());
        let ds = inst(GraphProblem::DominatingSet, g, td, BTreeSet::new());
        assert_eq!(treedp_optimum(&is, 1 << 20).unwrap(), Some(3));
        assert_eq!(treedp_optimum(&ds, 1 << 20).unwrap(), Some(3));
    }

    #[test]
    fn red_blue_on_path() {
        // red 0 - blue 1 - red 2 - blue 3 - red 4
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let td = min_degree_decomposition(&g);
        let i = inst(GraphProblem::RedBlueDominatingSet, g, td, BTreeSet::from([1, 3]));
        assert_eq!(treedp_optimum(&i, 1 << 20).unwrap(), Some(2));
    }

    #[test]
    fn witnesses_are_feasible_and_optimal() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)]).unwrap();
        let td = min_degree_decomposition(&g);
        for problem in [
            GraphProblem::IndependentSet,
            GraphProblem::VertexCover,
            GraphProblem::DominatingSet,
        ] {
            let i = inst(problem, g.clone(), td.clone(), BTreeSet::new());
            let w = treedp_witness(&i, 1 << 20).unwrap().unwrap();
            assert!(i.is_feasible(&w), "{problem:?}");
            let best = graph_optimum_bruteforce(&g, problem, &BTreeSet::new(), 1 << 20).unwrap();
            assert_eq!(Some(w.len()), best, "{problem:?}");
        }
    }
}
