use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xalpwb::error::OracleError;
use xalpwb::format::serialize_decomposition;
use xalpwb::instances::{LogTwGraphInstance, TcmcMode};
use xalpwb::machine::{
    eval_alternating, eval_alternating_as_stack, eval_balanced, eval_stack, eval_stack_via_alternation,
    find_run_with_tree_shape, parse_machine, Blocks, MachineSpec, ResourceBudget, RunStats,
};
use xalpwb::oracles::{default_cap, solve_bruteforce, solve_tcmc_bruteforce, solve_tcmc_traversal, treedp_witness};
use xalpwb::reductions::lookup;
use xalpwb::verify::{
    replay_counterexample, verify_chain, verify_machine_equivalences, verify_reduction, BudgetProfile, Outcome,
    VerificationReport, VerifyError,
};
use xalpwb::{parse_any, parse_shape, serialize_instance, serialize_solution, Instance, Solution, StructureTree};

const DISAGREE: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

/// Failure with its exit status.
struct Fail(u8, String);

impl Fail {
    fn usage(msg: impl Display) -> Self {
        Fail(USAGE, msg.to_string())
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } | OracleError::SearchCapExceeded { .. } => Fail(CAP, format!("oracle cap: {e}")),
            _ => Fail::usage(e),
        }
    }
}

impl From<VerifyError> for Fail {
    fn from(e: VerifyError) -> Self {
        Fail::usage(e)
    }
}

type Res<T> = Result<T, Fail>;

#[derive(Parser)]
#[command(name = "xalpwb", version, about = "Reductions, oracles and machine semantics for tree-chained problems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply one reduction to an instance file.
    Reduce(ReduceArgs),
    /// Decide an instance with one of the oracles.
    Solve(SolveArgs),
    /// Cross-check a reduction, a chain or a machine corpus.
    Verify(VerifyArgs),
    /// Re-run a counterexample file written by `verify`.
    Replay(ReplayArgs),
    /// Evaluate machines.
    #[command(subcommand)]
    Machine(MachineCmd),
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    name: String,
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    /// Write the lift map here.
    #[arg(long)]
    lift: Option<PathBuf>,
    /// Write the decomposition witness here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Cells per work-tape block (atm-tcmc).
    #[arg(long)]
    beta: Option<usize>,
    /// Number of work-tape blocks (atm-tcmc).
    #[arg(long)]
    blocks: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Clique,
    Is,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Brute,
    Treedp,
    Traversal,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long, value_enum, default_value = "brute")]
    solver: SolverArg,
    /// Write the witness here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Candidate cap of the oracle; defaults to XALPWB_CAP or 2^20.
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Args)]
#[group(id = "subject", required = true, multiple = false)]
struct Subject {
    #[arg(long, group = "subject")]
    reduction: Option<String>,
    #[arg(long, group = "subject")]
    chain: Option<String>,
    #[arg(long, group = "subject")]
    machines: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    subject: Subject,
    /// Random trials; not used with --machines, which tries every short word.
    #[arg(long, required_unless_present = "machines")]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Directory for counterexample files.
    #[arg(long, default_value = "counterexamples")]
    cex_dir: PathBuf,
}

#[derive(Args)]
struct ReplayArgs {
    file: PathBuf,
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Subcommand)]
enum MachineCmd {
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Stack,
    ViaAlt,
    Alt,
    Altstack,
    Balanced,
    Shaped,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    semantics: Semantics,
    #[arg(short = 'm', long = "machine")]
    machine: PathBuf,
    #[arg(short = 'x', long = "input", default_value = "", allow_hyphen_values = true)]
    input: String,
    #[arg(long, default_value_t = 32)]
    budget_steps: usize,
    #[arg(long, default_value_t = 33)]
    budget_tree: usize,
    #[arg(long)]
    budget_work: Option<usize>,
    #[arg(long)]
    budget_conondet: Option<usize>,
    #[arg(long)]
    budget_stack: Option<usize>,
    /// Computation-tree shape file, for --semantics shaped.
    #[arg(long)]
    shape: Option<PathBuf>,
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<Instance> {
    parse_any(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn reduce(a: ReduceArgs) -> Res<()> {
    let r = lookup(&a.name).map_err(Fail::usage)?;
    let mut source = load(&a.input)?;
    if let Instance::Atm(atm) = &mut source {
        let count = a.blocks.ok_or_else(|| Fail::usage("atm-tcmc needs --blocks"))?;
        if count == 0 {
            return Err(Fail::usage("--blocks must be positive"));
        }
        let cells = atm.machine.work_cells;
        let len = a.beta.unwrap_or(cells / count);
        atm.blocks = Some(Blocks { count, len });
    } else if a.name == "atm-tcmc" {
        return Err(Fail::usage(format!("atm-tcmc needs an atm instance, found {}", source.family())));
    }
    let art = r.reduce(&source).map_err(Fail::usage)?;
    write(&a.output, &serialize_instance(&art.target))?;
    if let Some(p) = &a.lift {
        write(p, &art.lift.serialize())?;
    }
    if let Some(p) = &a.witness {
        match &art.witness {
            Some(td) => write(p, &serialize_decomposition(td))?,
            None => eprintln!("{} emits no decomposition witness", art.name),
        }
    }
    for n in &art.notes {
        eprintln!("note: {n}");
    }
    println!("{}", art.growth_line());
    Ok(())
}

fn with_threshold(g: &LogTwGraphInstance, w: usize) -> Res<LogTwGraphInstance> {
    LogTwGraphInstance::new(g.problem(), g.graph().clone(), g.decomposition().clone(), w, g.k(), g.blue().clone())
        .map_err(Fail::usage)
}

fn solve(a: SolveArgs) -> Res<()> {
    let cap = a.cap.unwrap_or_else(default_cap);
    let mut inst = load(&a.input)?;
    let family = inst.family();
    let tcmc_family = matches!(family, "tcmc" | "tcmis");
    let cnf_family = family.ends_with("cnf");
    let matches = family == a.problem || (tcmc_family && matches!(a.problem.as_str(), "tcmc" | "tcmis"))
        || (cnf_family && a.problem == "cnf");
    if !matches {
        return Err(Fail::usage(format!("--problem {} but the file holds {family}", a.problem)));
    }
    if let Some(w) = a.threshold {
        match &inst {
            Instance::LogTw(g) => inst = Instance::LogTw(with_threshold(g, w)?),
            _ => return Err(Fail::usage("--threshold applies to is, vc, ds and rbds")),
        }
    }
    if a.mode.is_some() && !tcmc_family {
        return Err(Fail::usage("--mode applies to tcmc and tcmis"));
    }
    let sol: Option<Solution> = match (a.solver, &inst) {
        (SolverArg::Brute, _) => solve_bruteforce_mode(&inst, a.mode, cap)?,
        (SolverArg::Treedp, Instance::LogTw(g)) => {
            treedp_witness(g, cap)?.filter(|s| g.is_solution(s)).map(Solution::Set)
        }
        (SolverArg::Traversal, Instance::Tcmc(t)) => {
            let mode = a.mode.map_or(t.mode(), tcmc_mode);
            if solve_tcmc_traversal(t, mode, cap)? {
                match solve_tcmc_bruteforce(t, mode, cap) {
                    Ok(Some(s)) => Some(Solution::Set(s)),
                    _ => {
                        println!("YES");
                        eprintln!("traversal found a solution; no witness within the cap");
                        return Ok(());
                    }
                }
            } else {
                None
            }
        }
        (SolverArg::Treedp, _) => return Err(Fail::usage("--solver treedp applies to is, vc, ds and rbds")),
        (SolverArg::Traversal, _) => return Err(Fail::usage("--solver traversal applies to tcmc and tcmis")),
    };
    match sol {
        Some(s) => {
            println!("YES");
            let text = serialize_solution(&inst, &s);
            match &a.output {
                Some(p) => write(p, &text)?,
                None => print!("{text}"),
            }
        }
        None => println!("NO"),
    }
    Ok(())
}

fn tcmc_mode(m: ModeArg) -> TcmcMode {
    match m {
        ModeArg::Clique => TcmcMode::Clique,
        ModeArg::Is => TcmcMode::IndependentSet,
    }
}

fn solve_bruteforce_mode(inst: &Instance, mode: Option<ModeArg>, cap: u128) -> Res<Option<Solution>> {
    match (inst, mode) {
        (Instance::Tcmc(t), Some(m)) => Ok(solve_tcmc_bruteforce(t, tcmc_mode(m), cap)?.map(Solution::Set)),
        _ => Ok(solve_bruteforce(inst, cap)?),
    }
}

fn emit_report(report: &mut VerificationReport, a: &VerifyArgs) -> Res<u8> {
    for t in &mut report.trials {
        if let Some(c) = &t.counterexample {
            std::fs::create_dir_all(&a.cex_dir).map_err(|e| Fail::usage(format!("{}: {e}", a.cex_dir.display())))?;
            let stem: String = report
                .name
                .chars()
                .map(|ch| if ch.is_ascii_alphanumeric() || ch == '-' { ch } else { '_' })
                .collect();
            let path = a.cex_dir.join(format!("{stem}-trial{}.cex", t.index));
            write(&path, &c.serialize())?;
            t.file = Some(path.display().to_string());
        }
    }
    let text = report.serialize();
    match &a.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{}: {} agree, {} disagree, {} skip",
        report.name,
        report.agreements(),
        report.disagreements(),
        report.skips()
    );
    Ok(if report.passed() { 0 } else { DISAGREE })
}

fn verify(a: VerifyArgs) -> Res<u8> {
    if a.trials == Some(0) {
        return Err(Fail::usage("--trials must be positive"));
    }
    let trials = a.trials.unwrap_or(0);
    let mut report = if let Some(name) = &a.subject.reduction {
        verify_reduction(name, trials, a.seed)?
    } else if let Some(spec) = &a.subject.chain {
        verify_chain(spec, trials, a.seed)?
    } else if let Some(dir) = &a.subject.machines {
        verify_machine_equivalences(dir, &BudgetProfile::default())?
    } else {
        return Err(Fail::usage("one of --reduction, --chain or --machines is required"));
    };
    emit_report(&mut report, &a)
}

fn replay(a: ReplayArgs) -> Res<u8> {
    let text = read(&a.file)?;
    let (outcome, reason) = replay_counterexample(&text, a.cap.unwrap_or_else(default_cap))?;
    match reason {
        Some(r) => println!("{} {r}", outcome.as_str()),
        None => println!("{}", outcome.as_str()),
    }
    Ok(if outcome == Outcome::Disagree { DISAGREE } else { 0 })
}

fn shaped_stats(m: &MachineSpec, input: &str, shape: &StructureTree) -> Res<RunStats> {
    let found = find_run_with_tree_shape(m, input, shape).map_err(Fail::usage)?;
    let Some(_) = found else {
        return Ok(RunStats::rejected(false));
    };
    // universal nodes on the worst root-to-leaf path
    let mut branching = vec![0usize; shape.len()];
    for v in shape.preorder() {
        let own = usize::from(shape.children(v).len() == 2);
        branching[v] = shape.parent(v).map_or(0, |p| branching[p]) + own;
    }
    Ok(RunStats {
        accepted: true,
        exhausted: false,
        tree_nodes: shape.len(),
        max_co_nondet_on_path: branching.into_iter().max().unwrap_or(0),
        peak_stack_height: 0,
        steps_used: shape.len() - 1,
    })
}

fn machine(cmd: MachineCmd) -> Res<()> {
    let MachineCmd::Eval(a) = cmd;
    let path = &a.machine;
    let m = parse_machine(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    let budget = ResourceBudget {
        time_steps: Some(a.budget_steps),
        tree_size: Some(a.budget_tree),
        work_cells: a.budget_work,
        co_nondet_per_path: a.budget_conondet,
        stack_height_cap: a.budget_stack,
    };
    let x = a.input.as_str();
    let stats = match a.semantics {
        Semantics::Stack => eval_stack(&m, x, &budget),
        Semantics::ViaAlt => eval_stack_via_alternation(&m, x, &budget),
        Semantics::Alt => eval_alternating(&m, x, &budget),
        Semantics::Altstack => eval_alternating_as_stack(&m, x, &budget),
        Semantics::Balanced => eval_balanced(&m, x, &budget),
        Semantics::Shaped => {
            let p = a.shape.as_ref().ok_or_else(|| Fail::usage("--semantics shaped needs --shape"))?;
            let shape = parse_shape(&read(p)?).map_err(|e| Fail::usage(format!("{}: {e}", p.display())))?;
            return print_stats(&shaped_stats(&m, x, &shape)?);
        }
    }
    .map_err(Fail::usage)?;
    print_stats(&stats)
}

fn print_stats(s: &RunStats) -> Res<()> {
    println!(
        "{} treeNodes={} coNondet={} stack={} steps={}",
        if s.accepted { "ACCEPT" } else { "REJECT" },
        s.tree_nodes,
        s.max_co_nondet_on_path,
        s.peak_stack_height,
        s.steps_used
    );
    if s.exhausted {
        eprintln!("budget exhausted");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Reduce(a) => reduce(a).map(|_| 0),
        Cmd::Solve(a) => solve(a).map(|_| 0),
        Cmd::Verify(a) => verify(a),
        Cmd::Replay(a) => replay(a),
        Cmd::Machine(c) => machine(c).map(|_| 0),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
