//! Seeded generators of small random instances.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::decomposition::min_degree_decomposition;
use crate::graph::Graph;
use crate::instances::{
    logtw_parameter, CnfVariant, GraphProblem, Instance, ListColoringInstance, ListColoringKind,
    Literal, LogTwGraphInstance, TcmcInstance, TcmcMode, TreeChainedCnf, Variable,
};
use crate::machine::{Action, AtmInstance, Blocks, Configuration, MachineSpec, Mode, Run, StackOp, Transition};
use crate::oracles::{graph_optimum_bruteforce, DEFAULT_CAP};
use crate::tree::StructureTree;

/// Size limits for generated instances. Each field is an upper bound; the
/// generator samples below it, with a bias toward the extremes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeProfile {
    pub tree_nodes: usize,
    pub k_min: usize,
    pub k_max: usize,
    /// Class size (tcmc) or cell size (cnf).
    pub max_class: usize,
    /// Vertex count of the graph families.
    pub vertices: usize,
    pub palette: usize,
    pub max_clauses: usize,
    pub states: usize,
    pub input_len: usize,
    /// Block length β of machine instances.
    pub block_len: usize,
    pub cap: u128,
}

impl Default for SizeProfile {
    fn default() -> Self {
        SizeProfile {
            tree_nodes: 3,
            k_min: 1,
            k_max: 2,
            max_class: 3,
            vertices: 8,
            palette: 3,
            max_clauses: 5,
            states: 3,
            input_len: 2,
            block_len: 2,
            cap: DEFAULT_CAP,
        }
    }
}

/// Source family and profile each reduction is exercised with.
pub fn default_profile(reduction: &str) -> Option<(&'static str, SizeProfile)> {
    let base = SizeProfile::default();
    Some(match reduction {
        "atm-tcmc" => (
            "atm",
            SizeProfile {
                tree_nodes: 5,
                k_max: 2,
                ..base
            },
        ),
        "tcmc-tcmis" => ("tcmc", base),
        "tcmis-listcol" => (
            "tcmis",
            SizeProfile {
                k_min: 2,
                k_max: 3,
                max_class: 2,
                ..base
            },
        ),
        "listcol-precol" => ("listcol", SizeProfile { vertices: 7, ..base }),
        "tcmis-negcnf" => ("tcmis", base),
        "negcnf-poscnf" => ("negcnf", base),
        "part-gencnf" => ("poscnf", base),
        "poscnf-logtwis" => (
            "poscnf",
            SizeProfile {
                k_max: 2,
                max_class: 4,
                max_clauses: 8,
                ..base
            },
        ),
        "is-vc" => ("is", SizeProfile { vertices: 10, ..base }),
        "vc-rbds" => ("vc", base),
        "rbds-ds" => ("rbds", SizeProfile { vertices: 10, ..base }),
        "id" => ("tcmis", base),
        "fault-drop-clauses" => ("poscnf", base),
        _ => return None,
    })
}

/// Profile for chains: small enough that the last target of the longest
/// chain stays within the oracle caps.
pub fn chain_profile(family: &str) -> SizeProfile {
    let base = SizeProfile::default();
    match family {
        "tcmc" | "tcmis" | "negcnf" | "poscnf" => SizeProfile {
            tree_nodes: 3,
            k_min: 1,
            k_max: 1,
            max_class: 2,
            max_clauses: 3,
            cap: 1 << 22,
            ..base
        },
        _ => SizeProfile { cap: 1 << 22, ..base },
    }
}

fn checked_pow(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

/// Rejects profiles whose largest instance of `family` the brute-force
/// oracles could not decide within `profile.cap`.
pub fn validate_profile(family: &str, p: &SizeProfile) -> Result<(), VerifyError> {
    let too_large = |what: String| Err(VerifyError::ProfileTooLarge(what));
    if p.k_min == 0 || p.k_min > p.k_max || p.tree_nodes == 0 || p.max_class == 0 {
        return Err(VerifyError::ProfileTooLarge("empty parameter ranges".into()));
    }
    match family {
        "tcmc" | "tcmis" | "poscnf" | "negcnf" | "gencnf" => {
            let need = checked_pow(p.max_class, p.tree_nodes * p.k_max);
            if need > p.cap {
                return too_large(format!("{need} candidate selections exceed cap {}", p.cap));
            }
        }
        "listcol" | "precol" | "is" | "vc" | "ds" | "rbds" => {
            let need = checked_pow(2, p.vertices).max(checked_pow(p.palette.max(1), p.vertices));
            if p.vertices > 16 || need > p.cap {
                return too_large(format!("{} vertices exceed cap {}", p.vertices, p.cap));
            }
        }
        "atm" => {
            let per_class = p.states * (p.input_len + 2) * (p.block_len + 2) * (1 << p.block_len);
            if p.block_len > 3 || per_class * p.tree_nodes * p.k_max > 20_000 {
                return too_large(format!("{per_class} vertices per class"));
            }
        }
        f => return Err(VerifyError::UnknownFamily(f.into())),
    }
    Ok(())
}

/// A valid random instance of `family`; the same arguments always give the
/// same instance.
pub fn generate_instance(family: &str, profile: &SizeProfile, seed: u64) -> Result<Instance, VerifyError> {
    validate_profile(family, profile)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = profile;
    let inst = match family {
        "tcmc" => Instance::Tcmc(tcmc(&mut rng, p, TcmcMode::Clique)),
        "tcmis" => Instance::Tcmc(tcmc(&mut rng, p, TcmcMode::IndependentSet)),
        "poscnf" => Instance::Cnf(cnf(&mut rng, p, CnfVariant::PositivePartitioned)),
        "negcnf" => Instance::Cnf(cnf(&mut rng, p, CnfVariant::NegativePartitioned)),
        "gencnf" => Instance::Cnf(cnf(&mut rng, p, CnfVariant::General)),
        "listcol" => Instance::ListColoring(listcol(&mut rng, p, ListColoringKind::Lists)),
        "precol" => Instance::ListColoring(listcol(&mut rng, p, ListColoringKind::Precoloring)),
        "is" => Instance::LogTw(graph_problem(&mut rng, p, GraphProblem::IndependentSet)),
        "vc" => Instance::LogTw(graph_problem(&mut rng, p, GraphProblem::VertexCover)),
        "ds" => Instance::LogTw(graph_problem(&mut rng, p, GraphProblem::DominatingSet)),
        "rbds" => Instance::LogTw(graph_problem(&mut rng, p, GraphProblem::RedBlueDominatingSet)),
        "atm" => Instance::Atm(atm(&mut rng, p)),
        f => return Err(VerifyError::UnknownFamily(f.into())),
    };
    Ok(inst)
}

/// Size in `1..=max`, at one of the ends half of the time.
fn size(rng: &mut ChaCha8Rng, min: usize, max: usize) -> usize {
    match rng.gen_range(0..4) {
        0 => min,
        1 => max,
        _ => rng.gen_range(min..=max),
    }
}

fn structure_tree(rng: &mut ChaCha8Rng, max_nodes: usize) -> StructureTree {
    let n = size(rng, 1, max_nodes);
    let mut kids = vec![0usize; n];
    let mut links = Vec::new();
    for c in 1..n {
        let open: Vec<usize> = (0..c).filter(|&v| kids[v] < 2).collect();
        let p = *open.choose(rng).expect("a node with room");
        kids[p] += 1;
        links.push((p, c, kids[p]));
    }
    StructureTree::from_links(n, &links).expect("generated tree is valid")
}

/// Edge probability: empty, saturated or in between.
fn density(rng: &mut ChaCha8Rng) -> f64 {
    *[0.0, 1.0, 0.3, 0.5, 0.7].choose(rng).expect("nonempty")
}

fn tcmc(rng: &mut ChaCha8Rng, p: &SizeProfile, mode: TcmcMode) -> TcmcInstance {
    let tree = structure_tree(rng, p.tree_nodes);
    let k = rng.gen_range(p.k_min..=p.k_max);
    let singletons = rng.gen_bool(0.2);
    let mut g = Graph::new(0);
    let classes: Vec<Vec<usize>> = (0..tree.len() * k)
        .map(|_| {
            let s = if singletons { 1 } else { size(rng, 1, p.max_class) };
            (0..s).map(|_| g.add_vertex()).collect()
        })
        .collect();
    let d = density(rng);
    let probe = TcmcInstance::new(tree.clone(), k, mode, classes.clone(), g.clone()).expect("no edges yet");
    for (a, b) in probe.incident_pairs() {
        for &u in &classes[a] {
            for &v in &classes[b] {
                if rng.gen_bool(d) {
                    g.add_edge(u, v).expect("fresh pair");
                }
            }
        }
    }
    TcmcInstance::new(tree, k, mode, classes, g).expect("edges join incident classes")
}

fn cnf(rng: &mut ChaCha8Rng, p: &SizeProfile, variant: CnfVariant) -> TreeChainedCnf {
    let tree = structure_tree(rng, p.tree_nodes);
    let k = rng.gen_range(p.k_min..=p.k_max);
    let singletons = rng.gen_bool(0.2);
    let mut vars = Vec::new();
    let mut node_vars = vec![Vec::new(); tree.len()];
    for node in 0..tree.len() {
        for slot in 0..k {
            let s = if singletons { 1 } else { size(rng, 1, p.max_class) };
            for _ in 0..s {
                node_vars[node].push(vars.len());
                vars.push(Variable {
                    name: format!("x{}", vars.len() + 1),
                    node,
                    slot: variant.is_partitioned().then_some(slot),
                });
            }
        }
    }
    let m = size(rng, 0, p.max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let node = rng.gen_range(0..tree.len());
            let mut pool = node_vars[node].clone();
            if let Some(parent) = tree.parent(node) {
                if rng.gen_bool(0.5) {
                    pool.extend(&node_vars[parent]);
                }
            }
            let len = rng.gen_range(1..=3.min(pool.len()));
            let chosen: BTreeSet<usize> = pool.choose_multiple(rng, len).copied().collect();
            chosen
                .into_iter()
                .map(|x| match variant {
                    CnfVariant::PositivePartitioned => Literal::pos(x),
                    CnfVariant::NegativePartitioned => Literal::neg(x),
                    CnfVariant::General => {
                        if rng.gen_bool(0.5) {
                            Literal::pos(x)
                        } else {
                            Literal::neg(x)
                        }
                    }
                })
                .collect()
        })
        .collect();
    TreeChainedCnf::new(tree, variant, k, vars, clauses).expect("generated cnf is valid")
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let d = density(rng);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(d) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

fn listcol(rng: &mut ChaCha8Rng, p: &SizeProfile, kind: ListColoringKind) -> ListColoringInstance {
    let n = size(rng, 1, p.vertices);
    let g = random_graph(rng, n);
    let palette: BTreeSet<usize> = (0..size(rng, 1, p.palette.max(1))).collect();
    let all: Vec<usize> = palette.iter().copied().collect();
    let lists: Vec<BTreeSet<usize>> = (0..n)
        .map(|_| match kind {
            ListColoringKind::Precoloring => palette.clone(),
            ListColoringKind::Lists => {
                let s = size(rng, 1, all.len());
                all.choose_multiple(rng, s).copied().collect()
            }
        })
        .collect();
    let mut pre = BTreeMap::new();
    if kind == ListColoringKind::Precoloring {
        for v in 0..n {
            if rng.gen_bool(0.3) {
                pre.insert(v, *all.choose(rng).expect("nonempty palette"));
            }
        }
    }
    let td = rng.gen_bool(0.5).then(|| min_degree_decomposition(&g));
    ListColoringInstance::new(kind, g, palette, lists, pre, td).expect("generated lists are valid")
}

fn graph_problem(rng: &mut ChaCha8Rng, p: &SizeProfile, problem: GraphProblem) -> LogTwGraphInstance {
    let n = size(rng, 1, p.vertices);
    let (g, blue) = if problem == GraphProblem::RedBlueDominatingSet {
        red_blue_graph(rng, n)
    } else {
        (random_graph(rng, n), BTreeSet::new())
    };
    let td = min_degree_decomposition(&g);
    let k = logtw_parameter(td.width(), n);
    let opt = graph_optimum_bruteforce(&g, problem, &blue, p.cap)
        .expect("profile was validated")
        .expect("every generated instance is feasible");
    let threshold = match rng.gen_range(0..4) {
        0 => opt.saturating_sub(1),
        1 => opt + 1,
        _ => opt,
    };
    // an independent set threshold above n is trivially unsatisfiable
    let threshold = if problem == GraphProblem::IndependentSet { threshold.min(n) } else { threshold };
    LogTwGraphInstance::new(problem, g, td, threshold, k, blue).expect("generated instance is valid")
}

/// Random graph without red-red edges in which every red vertex has a blue
/// neighbour.
fn red_blue_graph(rng: &mut ChaCha8Rng, n: usize) -> (Graph, BTreeSet<usize>) {
    let mut blue: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if blue.is_empty() {
        blue.insert(0);
    }
    let d = density(rng);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if (blue.contains(&u) || blue.contains(&v)) && rng.gen_bool(d) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    let bl: Vec<usize> = blue.iter().copied().collect();
    for r in 0..n {
        if !blue.contains(&r) && g.degree(r) == 0 {
            let b = *bl.choose(rng).expect("nonempty");
            g.add_edge(r, b).expect("red vertex was isolated");
        }
    }
    (g, blue)
}

fn random_action(rng: &mut ChaCha8Rng, nq: usize) -> Action {
    Action {
        next: rng.gen_range(0..nq),
        write: rng.gen_range(0..2),
        work_move: rng.gen_range(-1..=1),
        input_move: *[-1, 0, 1, 1].choose(rng).expect("nonempty"),
        stack: StackOp::None,
    }
}

/// Random stack-free machine over input `{0,1}` and work `{_,x}`.
fn random_machine(rng: &mut ChaCha8Rng, p: &SizeProfile, work_cells: usize) -> MachineSpec {
    let nq = size(rng, 2, p.states.max(2));
    let mut accepting = vec![false; nq];
    accepting[nq - 1] = true;
    if nq > 2 && rng.gen_bool(0.3) {
        accepting[nq - 2] = true;
    }
    let modes: Vec<Mode> = (0..nq)
        .map(|_| match rng.gen_range(0..4) {
            0 => Mode::Universal,
            1 => Mode::Deterministic,
            _ => Mode::Existential,
        })
        .collect();
    let mut transitions = Vec::new();
    for q in (0..nq).filter(|&q| !accepting[q]) {
        for input in 0..4u8 {
            for work in 0..2u8 {
                let count = match modes[q] {
                    Mode::Universal => {
                        if rng.gen_bool(0.8) {
                            2
                        } else {
                            0
                        }
                    }
                    Mode::Deterministic => usize::from(rng.gen_bool(0.7)),
                    Mode::Existential => rng.gen_range(0..=2),
                };
                for _ in 0..count {
                    transitions.push(Transition {
                        state: q,
                        input,
                        work,
                        action: random_action(rng, nq),
                    });
                }
            }
        }
    }
    MachineSpec::new(
        (0..nq).map(|q| format!("q{q}")).collect(),
        0,
        accepting,
        modes,
        vec!['0', '1'],
        vec!['_', 'x'],
        work_cells,
        false,
        transitions,
    )
    .expect("generated machine is valid")
}

/// Shape of a random accepting run of at most `max` nodes, if one is hit.
fn run_shape(rng: &mut ChaCha8Rng, run: &Run, max: usize) -> Option<StructureTree> {
    let mut links = Vec::new();
    let mut count = 1;
    let mut todo = vec![(0usize, run.initial())];
    while let Some((node, c)) = todo.pop() {
        if run.accepting(&c) {
            continue;
        }
        let kids: Vec<Configuration> = match run.mode(&c) {
            Mode::Universal => {
                let (a, b) = run.universal_children(&c)?;
                vec![a, b]
            }
            _ => vec![run.successors(&c).choose(rng)?.1.clone()],
        };
        for (i, k) in kids.into_iter().enumerate() {
            if count == max {
                return None;
            }
            links.push((node, count, i + 1));
            todo.push((count, k));
            count += 1;
        }
    }
    StructureTree::from_links(count, &links).ok()
}

fn atm(rng: &mut ChaCha8Rng, p: &SizeProfile) -> AtmInstance {
    let count = rng.gen_range(p.k_min..=p.k_max);
    let len = size(rng, 1, p.block_len.max(1));
    let machine = random_machine(rng, p, count * len);
    let input: String = (0..size(rng, 0, p.input_len))
        .map(|_| if rng.gen_bool(0.5) { '0' } else { '1' })
        .collect();
    let tape = machine.tape(&input).expect("input over the machine alphabet");
    let run = Run::new(&machine, tape);
    let mut shape = None;
    if rng.gen_bool(0.6) {
        for _ in 0..8 {
            shape = run_shape(rng, &run, p.tree_nodes);
            if shape.is_some() {
                break;
            }
        }
    }
    let shape = shape.unwrap_or_else(|| structure_tree(rng, p.tree_nodes));
    AtmInstance {
        machine,
        input,
        shape,
        blocks: Some(Blocks { count, len }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_deterministic() {
        for family in ["tcmc", "tcmis", "poscnf", "negcnf", "gencnf", "listcol", "precol", "is", "vc", "ds", "rbds", "atm"] {
            let p = SizeProfile::default();
            for seed in 0..20 {
                let a = generate_instance(family, &p, seed).unwrap();
                let b = generate_instance(family, &p, seed).unwrap();
                assert_eq!(a, b, "{family}");
                assert_eq!(a.family(), family);
            }
        }
    }

    #[test]
    fn singleton_profile() {
        let p = SizeProfile {
            max_class: 1,
            ..SizeProfile::default()
        };
        for seed in 0..10 {
            let Instance::Tcmc(t) = generate_instance("tcmis", &p, seed).unwrap() else { panic!() };
            assert!(t.classes().iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn oversized_profiles_are_rejected() {
        let p = SizeProfile {
            max_class: 10,
            tree_nodes: 10,
            ..SizeProfile::default()
        };
        assert!(matches!(generate_instance("tcmc", &p, 0), Err(VerifyError::ProfileTooLarge(_))));
        assert!(matches!(generate_instance("nope", &SizeProfile::default(), 0), Err(VerifyError::UnknownFamily(_))));
    }
}
