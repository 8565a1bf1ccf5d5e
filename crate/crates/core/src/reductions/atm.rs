use std::collections::{BTreeSet, HashMap};

use super::{check_source, Reduction, ReductionArtifact};
use crate::error::{MachineError, ReductionError};
use crate::format::{LiftMap, Solution};
use crate::graph::Graph;
use crate::instances::{Instance, TcmcInstance, TcmcMode};
use crate::machine::{AtmInstance, Blocks, Configuration, MachineSpec, Mode};

/// Largest target the reduction will build.
const MAX_VERTICES: usize = 200_000;

/// Where the work head is relative to one block of the work tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockPos {
    /// The head is somewhere left of the block.
    After,
    /// The head is somewhere right of the block.
    Before,
    /// The head is on cell `h` of the block, 1-based.
    Head(usize),
}

/// One vertex: a configuration as seen from a single work block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub state: usize,
    pub input_head: usize,
    pub pos: BlockPos,
    pub work: Vec<u8>,
}

impl VertexLabel {
    fn display(&self, m: &MachineSpec) -> String {
        let pos = match self.pos {
            BlockPos::After => "<".to_string(),
            BlockPos::Before => ">".to_string(),
            BlockPos::Head(h) => h.to_string(),
        };
        let work: String = self.work.iter().map(|&s| m.work_alphabet[s as usize]).collect();
        format!("{}@{}:{}:{}", m.states[self.state], self.input_head, pos, work)
    }

    /// The block-`j` view of a full configuration.
    pub fn of(c: &Configuration, j: usize, len: usize) -> Self {
        let lo = j * len;
        let pos = if c.work_head < lo {
            BlockPos::After
        } else if c.work_head >= lo + len {
            BlockPos::Before
        } else {
            BlockPos::Head(c.work_head - lo + 1)
        };
        VertexLabel {
            state: c.state,
            input_head: c.input_head,
            pos,
            work: c.work[lo..lo + len].to_vec(),
        }
    }
}

struct Setup<'a> {
    inst: &'a AtmInstance,
    blocks: Blocks,
    tape: Vec<u8>,
}

impl<'a> Setup<'a> {
    fn new(inst: &'a AtmInstance) -> Result<Self, ReductionError> {
        let blocks = inst
            .blocks
            .ok_or_else(|| ReductionError::Precondition("block structure (count, length) is required".into()))?;
        let m = &inst.machine;
        if m.stack {
            return Err(MachineError::StackInStackFreeMachine.into());
        }
        if blocks.count * blocks.len != m.work_cells {
            return Err(ReductionError::Precondition(format!(
                "{} blocks of {} cells do not cover {} work cells",
                blocks.count, blocks.len, m.work_cells
            )));
        }
        let tape = m.tape(&inst.input)?;
        Ok(Setup { inst, blocks, tape })
    }

    fn machine(&self) -> &MachineSpec {
        &self.inst.machine
    }

    /// States allowed at a shape node by its number of children.
    fn role_ok(&self, node: usize, q: usize) -> bool {
        let m = self.machine();
        let acc = m.is_accepting(q);
        match self.inst.shape.children(node).len() {
            0 => acc,
            1 => !acc && m.mode(q) != Mode::Universal,
            _ => !acc && m.mode(q) == Mode::Universal,
        }
    }

    /// Labels of class `(node, j)` in a fixed order.
    fn labels(&self, node: usize, j: usize) -> Vec<VertexLabel> {
        let m = self.machine();
        let Blocks { count, len } = self.blocks;
        if node == self.inst.shape.root() {
            let q = m.initial;
            if !self.role_ok(node, q) {
                return Vec::new();
            }
            let pos = if j == 0 { BlockPos::Head(1) } else { BlockPos::After };
            return vec![VertexLabel {
                state: q,
                input_head: 0,
                pos,
                work: vec![0; len],
            }];
        }
        let mut positions = vec![BlockPos::After, BlockPos::Before];
        positions.extend((1..=len).map(BlockPos::Head));
        positions.retain(|&b| !(j == 0 && b == BlockPos::After) && !(j + 1 == count && b == BlockPos::Before));
        let sigma = m.work_alphabet.len();
        let words = sigma.pow(len as u32);
        let mut out = Vec::new();
        for q in (0..m.num_states()).filter(|&q| self.role_ok(node, q)) {
            for p in 0..self.tape.len() {
                for &pos in &positions {
                    for code in 0..words {
                        let mut work = Vec::with_capacity(len);
                        let mut rest = code;
                        for _ in 0..len {
                            work.push((rest % sigma) as u8);
                            rest /= sigma;
                        }
                        out.push(VertexLabel {
                            state: q,
                            input_head: p,
                            pos,
                            work,
                        });
                    }
                }
            }
        }
        out
    }

    /// Class bound `|Q|·(|x|+2)·(β+2)·|Γ|^β`.
    fn class_bound(&self) -> usize {
        let m = self.machine();
        m.num_states() * self.tape.len() * (self.blocks.len + 2) * m.work_alphabet.len().pow(self.blocks.len as u32)
    }

    /// Labels of blocks `j` and `j + 1` of one configuration.
    fn consecutive(a: &VertexLabel, b: &VertexLabel) -> bool {
        use BlockPos::*;
        a.state == b.state
            && a.input_head == b.input_head
            && matches!((a.pos, b.pos), (After, After) | (Before, Before) | (Head(_), After) | (Before, Head(_)))
    }

    /// Block `j` of a parent configuration and block `j` of its
    /// `child`-th successor.
    fn step(&self, parent_node: usize, child: usize, a: &VertexLabel, b: &VertexLabel) -> bool {
        use BlockPos::*;
        let len = self.blocks.len;
        let h = match a.pos {
            Head(h) => h,
            After => return a.work == b.work && (b.pos == After || b.pos == Head(1)),
            Before => return a.work == b.work && (b.pos == Before || b.pos == Head(len)),
        };
        let m = self.machine();
        let acts = m.actions(a.state, self.tape[a.input_head], a.work[h - 1]);
        let allowed = if self.inst.shape.children(parent_node).len() == 2 {
            if acts.len() != 2 {
                return false;
            }
            &acts[child..=child]
        } else {
            acts
        };
        allowed.iter().any(|act| {
            let p = a.input_head as isize + act.input_move as isize;
            let nh = h as isize + act.work_move as isize;
            let pos = if nh == 0 {
                After
            } else if nh as usize == len + 1 {
                Before
            } else {
                Head(nh as usize)
            };
            b.state == act.next
                && p == b.input_head as isize
                && b.pos == pos
                && b.work.iter().enumerate().all(|(i, &s)| {
                    if i == h - 1 {
                        s == act.write
                    } else {
                        s == a.work[i]
                    }
                })
        })
    }
}

/// Clique instance whose class `(i, j)` holds the possible views of block
/// `j` of the configuration at shape node `i`. Edges connect views that fit
/// together: blocks of one configuration agree on state, input head and
/// head position; block `j` of a child follows block `j` of its parent by
/// one machine step. All other incident pairs are complete.
pub fn reduce_atm_to_tcmc(inst: &AtmInstance) -> Result<ReductionArtifact, ReductionError> {
    let setup = Setup::new(inst)?;
    let shape = &inst.shape;
    let k = setup.blocks.count;
    let nodes = shape.len();
    let bound = setup.class_bound();
    let mut all_labels = Vec::with_capacity(nodes * k);
    let mut total = 0usize;
    for i in 0..nodes {
        for j in 0..k {
            let l = setup.labels(i, j);
            debug_assert!(l.len() <= bound);
            total += l.len();
            if total > MAX_VERTICES {
                return Err(ReductionError::Precondition(format!(
                    "target would exceed {MAX_VERTICES} vertices"
                )));
            }
            all_labels.push(l);
        }
    }
    let mut g = Graph::new(0);
    let mut classes = Vec::with_capacity(all_labels.len());
    for labels in &all_labels {
        let ids: Vec<usize> = labels
            .iter()
            .map(|l| {
                let v = g.add_vertex();
                g.set_label(v, l.display(&inst.machine));
                v
            })
            .collect();
        classes.push(ids);
    }
    let class = |i: usize, j: usize| i * k + j;
    let connect = |g: &mut Graph, a: usize, b: usize, ok: &dyn Fn(&VertexLabel, &VertexLabel) -> bool| {
        for (x, lx) in classes[a].iter().zip(&all_labels[a]) {
            for (y, ly) in classes[b].iter().zip(&all_labels[b]) {
                if ok(lx, ly) {
                    g.add_edge(*x, *y).expect("distinct classes");
                }
            }
        }
    };
    for i in 0..nodes {
        for j in 0..k {
            for j2 in j + 1..k {
                if j2 == j + 1 {
                    connect(&mut g, class(i, j), class(i, j2), &Setup::consecutive);
                } else {
                    connect(&mut g, class(i, j), class(i, j2), &|_, _| true);
                }
            }
        }
        for (ci, &c) in shape.children(i).iter().enumerate() {
            for j in 0..k {
                for j2 in 0..k {
                    if j == j2 {
                        connect(&mut g, class(i, j), class(c, j2), &|a, b| setup.step(i, ci, a, b));
                    } else {
                        connect(&mut g, class(i, j), class(c, j2), &|_, _| true);
                    }
                }
            }
        }
    }
    let mut lift = LiftMap::default();
    for i in 0..nodes {
        for j in 0..k {
            let ids = classes[class(i, j)].iter().map(|v| format!("v{}", v + 1)).collect();
            lift.push(format!("n{}.b{}", i + 1, j + 1), ids);
        }
    }
    let target = TcmcInstance::new(shape.clone(), k, TcmcMode::Clique, classes, g)?;
    Ok(ReductionArtifact {
        name: "atm-tcmc",
        target: Instance::Tcmc(target),
        k_in: k,
        k_out: k,
        growth: "k'=k",
        k_bound: k,
        lift,
        witness: None,
        notes: vec![format!("class size bound {bound}")],
    })
}

pub struct AtmToTcmc;

fn atm_source(source: &Instance) -> Option<&AtmInstance> {
    match source {
        Instance::Atm(a) => Some(a),
        _ => None,
    }
}

impl Reduction for AtmToTcmc {
    fn name(&self) -> &'static str {
        "atm-tcmc"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["atm"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        reduce_atm_to_tcmc(atm_source(source).expect("family checked"))
    }

    /// Glues the chosen block views of each node into a configuration.
    fn lift_back(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let inst = atm_source(source)?;
        let setup = Setup::new(inst).ok()?;
        let k = setup.blocks.count;
        let len = setup.blocks.len;
        let set = sol.as_set()?;
        let mut offset = 0;
        let mut chosen: Vec<Option<VertexLabel>> = vec![None; inst.shape.len() * k];
        for i in 0..inst.shape.len() {
            for j in 0..k {
                let labels = setup.labels(i, j);
                for (x, l) in labels.iter().enumerate() {
                    if set.contains(&(offset + x)) {
                        chosen[i * k + j] = Some(l.clone());
                    }
                }
                offset += labels.len();
            }
        }
        let mut run = Vec::with_capacity(inst.shape.len());
        for i in 0..inst.shape.len() {
            let views: Vec<VertexLabel> = chosen[i * k..(i + 1) * k].iter().cloned().collect::<Option<_>>()?;
            let (j, h) = views.iter().enumerate().find_map(|(j, v)| match v.pos {
                BlockPos::Head(h) => Some((j, h)),
                _ => None,
            })?;
            run.push(Configuration {
                state: views[0].state,
                input_head: views[0].input_head,
                work: views.iter().flat_map(|v| v.work.iter().copied()).collect(),
                work_head: j * len + h - 1,
                steps_remaining: 0,
                stack_height: 0,
            });
        }
        Some(Solution::Run(run))
    }

    fn lift_forward(&self, source: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        let inst = atm_source(source)?;
        let setup = Setup::new(inst).ok()?;
        let Solution::Run(run) = sol else {
            return None;
        };
        let k = setup.blocks.count;
        let mut offset = 0;
        let mut out = BTreeSet::new();
        for (i, c) in run.iter().enumerate().take(inst.shape.len()) {
            for j in 0..k {
                let labels = setup.labels(i, j);
                let index: HashMap<&VertexLabel, usize> = labels.iter().enumerate().map(|(x, l)| (l, x)).collect();
                if c.work.len() != setup.machine().work_cells {
                    return None;
                }
                out.insert(offset + index.get(&VertexLabel::of(c, j, setup.blocks.len))?);
                offset += labels.len();
            }
        }
        Some(Solution::Set(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{find_run_with_tree_shape, parse_machine, run_with_tree_shape};
    use crate::oracles::solve_tcmc_bruteforce;
    use crate::tree::StructureTree;

    fn atm(text: &str, input: &str, shape: StructureTree, count: usize, len: usize) -> AtmInstance {
        AtmInstance {
            machine: parse_machine(text).unwrap(),
            input: input.into(),
            shape,
            blocks: Some(Blocks { count, len }),
        }
    }

    const WALKER: &str = "m states s t a\ninit s\naccept a\nmode s exist\nin 01\nwork 2 _x\n\
        tr s < _ -> t x 1 1 none\ntr t 0 _ -> a _ 0 0 none\ntr t 1 _ -> a x 0 0 none\n";

    fn check(inst: &AtmInstance) {
        let expected = run_with_tree_shape(&inst.machine, &inst.input, &inst.shape).unwrap();
        let art = reduce_atm_to_tcmc(inst).unwrap();
        let Instance::Tcmc(t) = &art.target else { panic!() };
        let found = solve_tcmc_bruteforce(t, TcmcMode::Clique, 1 << 24).unwrap();
        assert_eq!(found.is_some(), expected);
        let src = Instance::Atm(inst.clone());
        if let Some(s) = found {
            let back = AtmToTcmc.lift_back(&src, &art, &Solution::Set(s)).unwrap();
            assert!(crate::format::check_solution(&src, &back));
        }
        if let Some(run) = find_run_with_tree_shape(&inst.machine, &inst.input, &inst.shape).unwrap() {
            let fwd = AtmToTcmc.lift_forward(&src, &art, &Solution::Run(run)).unwrap();
            assert!(t.is_solution(fwd.as_set().unwrap()));
        }
    }

    #[test]
    fn path_shapes_agree() {
        for input in ["0", "1", ""] {
            for len in 1..=3 {
                check(&atm(WALKER, input, StructureTree::path(len), 2, 1));
                check(&atm(WALKER, input, StructureTree::path(len), 1, 2));
            }
        }
    }

    #[test]
    fn universal_cherry() {
        let m = "m states s a\ninit s\naccept a\nmode s univ\nwork 2 _\n\
             tr s < _ -> a _ 0 0 none\ntr s < _ -> a _ 1 1 none\n";
        let cherry = StructureTree::from_links(3, &[(0, 1, 1), (0, 2, 2)]).unwrap();
        check(&atm(m, "", cherry.clone(), 2, 1));
        check(&atm(m, "", StructureTree::path(2), 2, 1));
        // moving right off a one-cell tape has no successor
        let one = m.replace("work 2", "work 1");
        check(&atm(&one, "", cherry, 1, 1));
    }

    #[test]
    fn needs_blocks() {
        let mut inst = atm(WALKER, "0", StructureTree::path(2), 2, 1);
        inst.blocks = None;
        assert!(matches!(reduce_atm_to_tcmc(&inst), Err(ReductionError::Precondition(_))));
        inst.blocks = Some(Blocks { count: 3, len: 1 });
        assert!(matches!(reduce_atm_to_tcmc(&inst), Err(ReductionError::Precondition(_))));
    }

    #[test]
    fn label_views_round_trip() {
        let c = Configuration {
            state: 1,
            input_head: 2,
            work: vec![1, 0, 1, 1],
            work_head: 2,
            steps_remaining: 0,
            stack_height: 0,
        };
        assert_eq!(VertexLabel::of(&c, 0, 2).pos, BlockPos::Before);
        assert_eq!(VertexLabel::of(&c, 1, 2).pos, BlockPos::Head(1));
        assert_eq!(VertexLabel::of(&c, 1, 2).work, vec![1, 1]);
    }
}
