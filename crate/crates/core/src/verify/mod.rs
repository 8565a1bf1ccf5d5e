//! Cross-checking of reductions and machine semantics on random small
//! instances against the exhaustive oracles.

mod generate;
mod machines;

pub use generate::{chain_profile, default_profile, generate_instance, validate_profile, SizeProfile};
pub use machines::{load_corpus, verify_machine_equivalences, words, BudgetProfile, CorpusEntry};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::decomposition::validate_decomposition;
use crate::error::{OracleError, ReductionError};
use crate::format::{check_solution, parse_any, serialize_instance, Solution};
use crate::instances::{Instance, LogTwGraphInstance};
use crate::oracles::{
    graph_optimum_bruteforce, solve_bruteforce, solve_graph_bruteforce, solve_is_treedp, solve_tcmc_traversal,
    treedp_optimum, treedp_witness,
};
use crate::reductions::{lookup, registry, Reduction, NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown reduction {0}")]
    UnknownReduction(String),
    #[error("unknown instance family {0}")]
    UnknownFamily(String),
    #[error("profile too large: {0}")]
    ProfileTooLarge(String),
    #[error("chain stages do not fit together: {0}")]
    Incompatible(String),
    #[error("trial count must be positive")]
    NoTrials,
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Agree,
    Disagree,
    Skip,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Agree => "agree",
            Outcome::Disagree => "disagree",
            Outcome::Skip => "skip",
        }
    }
}

/// What a counterexample replays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Reduction(String),
    Chain(String),
    /// A machine and one input word.
    Machine(String),
}

/// A disagreeing input in replayable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub subject: Subject,
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
    /// Instance text, or machine text for machine subjects.
    pub payload: String,
    /// Input word for machine subjects.
    pub input: Option<String>,
}

impl Counterexample {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let (kind, name) = match &self.subject {
            Subject::Reduction(n) => ("reduction", n.as_str()),
            Subject::Chain(n) => ("chain", n.as_str()),
            Subject::Machine(n) => ("machine", n.as_str()),
        };
        let _ = writeln!(out, "# counterexample {kind} {name}");
        let _ = writeln!(out, "# trial {} seed {}", self.trial, self.seed);
        if let Some(w) = &self.input {
            let _ = writeln!(out, "# input '{w}'");
        }
        let _ = writeln!(out, "# reason: {}", self.reason.replace('\n', " "));
        out.push_str(&self.payload);
        out
    }

    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let bad = |m: &str| VerifyError::Counterexample(m.into());
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| bad("empty file"))?;
        let mut toks = head.strip_prefix("# counterexample ").ok_or_else(|| bad("missing header"))?.split_whitespace();
        let kind = toks.next().ok_or_else(|| bad("missing subject kind"))?;
        let name = toks.next().unwrap_or("").to_string();
        let subject = match kind {
            "reduction" => Subject::Reduction(name),
            "chain" => Subject::Chain(name),
            "machine" => Subject::Machine(name),
            _ => return Err(bad("unknown subject kind")),
        };
        let meta = lines.next().and_then(|l| l.strip_prefix("# trial ")).ok_or_else(|| bad("missing trial line"))?;
        let nums: Vec<&str> = meta.split_whitespace().collect();
        let (trial, seed) = match nums.as_slice() {
            [t, "seed", s] => (
                t.parse().map_err(|_| bad("bad trial"))?,
                s.parse().map_err(|_| bad("bad seed"))?,
            ),
            _ => return Err(bad("bad trial line")),
        };
        let mut input = None;
        let mut reason = String::new();
        for line in text.lines().skip(2).take(2) {
            if let Some(w) = line.strip_prefix("# input '") {
                input = Some(w.strip_suffix('\'').ok_or_else(|| bad("bad input line"))?.to_string());
            } else if let Some(r) = line.strip_prefix("# reason: ") {
                reason = r.to_string();
            }
        }
        Ok(Counterexample {
            subject,
            trial,
            seed,
            reason,
            payload: text.to_string(),
            input,
        })
    }
}

/// Result of one trial.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub outcome: Outcome,
    pub reason: Option<String>,
    pub counterexample: Option<Counterexample>,
    /// Where the CLI wrote the counterexample, if it did.
    pub file: Option<String>,
    /// Named quantities observed in the trial, e.g. `width`, `k_in`.
    pub metrics: BTreeMap<String, usize>,
    /// Resource assertions that were checked and held.
    pub checks: Vec<String>,
}

impl TrialRecord {
    fn new(index: usize, seed: u64) -> Self {
        TrialRecord {
            index,
            seed,
            outcome: Outcome::Agree,
            reason: None,
            counterexample: None,
            file: None,
            metrics: BTreeMap::new(),
            checks: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
}

impl VerificationReport {
    fn count(&self, o: Outcome) -> usize {
        self.trials.iter().filter(|t| t.outcome == o).count()
    }

    pub fn agreements(&self) -> usize {
        self.count(Outcome::Agree)
    }

    pub fn disagreements(&self) -> usize {
        self.count(Outcome::Disagree)
    }

    pub fn skips(&self) -> usize {
        self.count(Outcome::Skip)
    }

    /// No disagreement and at most 20% skipped trials.
    pub fn passed(&self) -> bool {
        self.disagreements() == 0 && self.skips() * 5 <= self.trials.len()
    }

    /// Number of trials in which each resource assertion was checked.
    pub fn checks(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        for t in &self.trials {
            for c in &t.checks {
                *out.entry(c.as_str()).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# report {} seed {} trials {}", self.name, self.seed, self.trials.len());
        for t in &self.trials {
            let _ = write!(out, "trial {} {}", t.index, t.outcome.as_str());
            if let Some(f) = &t.file {
                let _ = write!(out, " {f}");
            }
            out.push('\n');
        }
        for (c, n) in self.checks() {
            let _ = writeln!(out, "# checked {c} in {n} trials");
        }
        let _ = writeln!(
            out,
            "# agreements {} disagreements {} skips {}",
            self.agreements(),
            self.disagreements(),
            self.skips()
        );
        out
    }
}

/// Seed of trial `i`, mixed from the run seed.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Why an instance could not be decided.
enum Trouble {
    Cap(String),
    /// Two oracles for the same instance disagree.
    Conflict(String),
}

impl From<OracleError> for Trouble {
    fn from(e: OracleError) -> Self {
        Trouble::Cap(e.to_string())
    }
}

fn logtw_solve(g: &LogTwGraphInstance, cap: u128) -> Result<Option<Solution>, Trouble> {
    let brute = if g.graph().n() <= 20 && (1u128 << g.graph().n()) <= cap {
        Some(solve_graph_bruteforce(g.graph(), g.problem(), g.threshold(), g.blue(), cap)?)
    } else {
        None
    };
    let dp = match treedp_witness(g, cap) {
        Ok(w) => Some(w.filter(|s| g.is_solution(s))),
        Err(e) if brute.is_none() => return Err(e.into()),
        Err(_) => None,
    };
    match (brute, dp) {
        (Some(b), Some(d)) if b.is_some() != d.is_some() => Err(Trouble::Conflict(format!(
            "brute force says {} but tree dp says {}",
            yes_no(b.is_some()),
            yes_no(d.is_some())
        ))),
        (Some(b), _) => Ok(b.map(Solution::Set)),
        (None, Some(d)) => Ok(d.map(Solution::Set)),
        (None, None) => unreachable!("one oracle ran"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

/// Decides an instance, cross-checking a second oracle where one applies
/// within its cap.
fn solve(inst: &Instance, cap: u128) -> Result<Option<Solution>, Trouble> {
    match inst {
        Instance::LogTw(g) => logtw_solve(g, cap),
        Instance::Tcmc(t) => {
            let brute = solve_bruteforce(inst, cap)?;
            if let Ok(trav) = solve_tcmc_traversal(t, t.mode(), cap.min(1 << 12)) {
                if trav != brute.is_some() {
                    return Err(Trouble::Conflict(format!(
                        "brute force says {} but traversal says {}",
                        yes_no(brute.is_some()),
                        yes_no(trav)
                    )));
                }
            }
            Ok(brute)
        }
        _ => Ok(solve_bruteforce(inst, cap)?),
    }
}

fn optimum(g: &LogTwGraphInstance, cap: u128) -> Result<Option<usize>, OracleError> {
    if g.graph().n() <= 20 && (1u128 << g.graph().n()) <= cap {
        graph_optimum_bruteforce(g.graph(), g.problem(), g.blue(), cap)
    } else {
        treedp_optimum(g, cap)
    }
}

enum Verdict {
    Agree,
    Disagree(String),
    Skip(String),
}

/// Graph the witness decomposition of a target refers to.
fn target_graph(inst: &Instance) -> Option<&crate::graph::Graph> {
    match inst {
        Instance::LogTw(g) => Some(g.graph()),
        Instance::ListColoring(l) => Some(l.graph()),
        Instance::Tcmc(t) => Some(t.graph()),
        Instance::Graph(g) => Some(g),
        _ => None,
    }
}

/// One trial of one reduction: reduce, decide both sides, carry solutions
/// across in both directions, and check the witness and parameter bounds.
fn check_reduction(r: &dyn Reduction, source: &Instance, cap: u128, rec: &mut TrialRecord) -> Result<Verdict, ReductionError> {
    let art = match r.reduce(source) {
        Ok(a) => a,
        Err(e @ ReductionError::WrongFamily { .. }) => return Err(e),
        Err(e) => return Ok(Verdict::Disagree(format!("reduction failed: {e}"))),
    };
    rec.metrics.insert("k_in".into(), art.k_in);
    rec.metrics.insert("k_out".into(), art.k_out);
    rec.metrics.insert("k_bound".into(), art.k_bound);
    if !art.growth_ok() {
        return Ok(Verdict::Disagree(format!("parameter bound violated: {}", art.growth_line())));
    }
    rec.checks.push(format!("growth {}", art.growth));
    if let Some(td) = &art.witness {
        let Some(g) = target_graph(&art.target) else {
            return Ok(Verdict::Disagree("witness for a target without a graph".into()));
        };
        match validate_decomposition(g, td) {
            Ok(w) => {
                rec.metrics.insert("width".into(), w);
                rec.checks.push("witness valid".into());
            }
            Err(v) => return Ok(Verdict::Disagree(format!("invalid witness: {v}"))),
        }
    }
    let src = match solve(source, cap) {
        Ok(s) => s,
        Err(Trouble::Cap(m)) => return Ok(Verdict::Skip(format!("source: {m}"))),
        Err(Trouble::Conflict(m)) => return Ok(Verdict::Disagree(format!("source oracles: {m}"))),
    };
    let tgt = match solve(&art.target, cap) {
        Ok(s) => s,
        Err(Trouble::Cap(m)) => return Ok(Verdict::Skip(format!("target: {m}"))),
        Err(Trouble::Conflict(m)) => return Ok(Verdict::Disagree(format!("target oracles: {m}"))),
    };
    if src.is_some() != tgt.is_some() {
        return Ok(Verdict::Disagree(format!(
            "source {} but target {}",
            yes_no(src.is_some()),
            yes_no(tgt.is_some())
        )));
    }
    rec.metrics.insert("yes".into(), usize::from(src.is_some()));
    if let Some(t) = &tgt {
        match r.lift_back(source, &art, t) {
            Some(s) if check_solution(source, &s) => rec.checks.push("lift back".into()),
            _ => return Ok(Verdict::Disagree("target solution does not lift back".into())),
        }
    }
    if let Some(s) = &src {
        match r.lift_forward(source, &art, s) {
            Some(t) if check_solution(&art.target, &t) => rec.checks.push("lift forward".into()),
            _ => return Ok(Verdict::Disagree("source solution does not lift forward".into())),
        }
    }
    if let Some(v) = optimum_law(r.name(), source, &art.target, cap, rec) {
        return Ok(v);
    }
    Ok(Verdict::Agree)
}

/// Optimum relations of the cover and domination reductions: `α = n − τ` for is-vc and
/// `γ(target) = γ_rb(source) + 1` for rbds-ds.
fn optimum_law(name: &str, source: &Instance, target: &Instance, cap: u128, rec: &mut TrialRecord) -> Option<Verdict> {
    let (Instance::LogTw(s), Instance::LogTw(t)) = (source, target) else {
        return None;
    };
    let expect = |so: usize| match name {
        "is-vc" => Some(s.graph().n() - so),
        "rbds-ds" => Some(so + 1),
        _ => None,
    };
    let (so, to) = match (optimum(s, cap), optimum(t, cap)) {
        (Ok(Some(a)), Ok(Some(b))) => (a, b),
        (Ok(_), Ok(_)) => return Some(Verdict::Disagree("no feasible set".into())),
        _ => return Some(Verdict::Skip("optimum beyond cap".into())),
    };
    let want = expect(so)?;
    rec.metrics.insert("source_opt".into(), so);
    rec.metrics.insert("target_opt".into(), to);
    if want != to {
        return Some(Verdict::Disagree(format!("optimum {to} where {want} was expected")));
    }
    rec.checks.push("optimum law".into());
    None
}

fn finish(rec: &mut TrialRecord, verdict: Verdict, subject: Subject, payload: impl FnOnce() -> String) {
    match verdict {
        Verdict::Agree => rec.outcome = Outcome::Agree,
        Verdict::Skip(m) => {
            rec.outcome = Outcome::Skip;
            rec.reason = Some(m);
        }
        Verdict::Disagree(m) => {
            rec.outcome = Outcome::Disagree;
            rec.counterexample = Some(Counterexample {
                subject,
                trial: rec.index,
                seed: rec.seed,
                reason: m.clone(),
                payload: payload(),
                input: None,
            });
            rec.reason = Some(m);
        }
    }
}

/// Checks a reduction on `trials` generated instances of its default
/// profile.
pub fn verify_reduction(name: &str, trials: usize, seed: u64) -> Result<VerificationReport, VerifyError> {
    let (family, profile) = default_profile(name).ok_or_else(|| VerifyError::UnknownReduction(name.into()))?;
    verify_reduction_with(name, family, &profile, trials, seed)
}

/// [`verify_reduction`] with an explicit source family and profile.
pub fn verify_reduction_with(
    name: &str,
    family: &str,
    profile: &SizeProfile,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let r = lookup(name).map_err(|_| VerifyError::UnknownReduction(name.into()))?;
    validate_profile(family, profile)?;
    let results: Vec<Result<TrialRecord, VerifyError>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let source = generate_instance(family, profile, s)?;
            let mut rec = TrialRecord::new(i, s);
            let verdict = check_reduction(r, &source, profile.cap, &mut rec)
                .map_err(|e| VerifyError::Incompatible(e.to_string()))?;
            finish(&mut rec, verdict, Subject::Reduction(name.into()), || serialize_instance(&source));
            Ok(rec)
        })
        .collect();
    Ok(VerificationReport {
        name: name.into(),
        seed,
        trials: results.into_iter().collect::<Result<_, _>>()?,
    })
}

/// Parses a comma-separated chain of reduction names.
pub fn parse_chain(spec: &str) -> Result<Vec<&'static dyn Reduction>, VerifyError> {
    let stages: Vec<&'static dyn Reduction> = spec
        .split(',')
        .map(str::trim)
        .map(|n| lookup(n).map_err(|_| VerifyError::UnknownReduction(n.into())))
        .collect::<Result<_, _>>()?;
    if stages.is_empty() {
        return Err(VerifyError::UnknownReduction(spec.into()));
    }
    Ok(stages)
}

fn chain_family(stages: &[&dyn Reduction]) -> &'static str {
    stages
        .iter()
        .find(|r| r.name() != "id")
        .map_or("tcmis", |r| r.sources()[0])
}

fn check_chain(stages: &[&dyn Reduction], source: &Instance, cap: u128, rec: &mut TrialRecord) -> Result<Verdict, ReductionError> {
    let mut cur = source.clone();
    for (i, r) in stages.iter().enumerate() {
        match r.reduce(&cur) {
            Ok(art) => {
                if !art.growth_ok() {
                    return Ok(Verdict::Disagree(format!("stage {} ({}): parameter bound violated", i + 1, r.name())));
                }
                cur = art.target;
            }
            Err(e @ ReductionError::WrongFamily { .. }) => return Err(e),
            Err(e) => return Ok(Verdict::Disagree(format!("stage {} ({}) failed: {e}", i + 1, r.name()))),
        }
    }
    rec.metrics.insert("stages".into(), stages.len());
    let src = match solve(source, cap) {
        Ok(s) => s.is_some(),
        Err(Trouble::Cap(m)) => return Ok(Verdict::Skip(format!("source: {m}"))),
        Err(Trouble::Conflict(m)) => return Ok(Verdict::Disagree(format!("source oracles: {m}"))),
    };
    let end = match &cur {
        Instance::LogTw(g) => match solve_is_treedp(g, cap) {
            Ok(b) => b,
            Err(e) => return Ok(Verdict::Skip(format!("target: {e}"))),
        },
        other => match solve(other, cap) {
            Ok(s) => s.is_some(),
            Err(Trouble::Cap(m)) => return Ok(Verdict::Skip(format!("target: {m}"))),
            Err(Trouble::Conflict(m)) => return Ok(Verdict::Disagree(format!("target oracles: {m}"))),
        },
    };
    if src != end {
        return Ok(Verdict::Disagree(format!("source {} but chain end {}", yes_no(src), yes_no(end))));
    }
    rec.checks.push("endpoints agree".into());
    Ok(Verdict::Agree)
}

/// Checks that a composed chain preserves solvability end to end.
pub fn verify_chain(spec: &str, trials: usize, seed: u64) -> Result<VerificationReport, VerifyError> {
    let stages = parse_chain(spec)?;
    let family = chain_family(&stages);
    verify_chain_with(spec, family, &chain_profile(family), trials, seed)
}

pub fn verify_chain_with(
    spec: &str,
    family: &str,
    profile: &SizeProfile,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let stages = parse_chain(spec)?;
    validate_profile(family, profile)?;
    let results: Vec<Result<TrialRecord, VerifyError>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let source = generate_instance(family, profile, s)?;
            let mut rec = TrialRecord::new(i, s);
            let verdict = check_chain(&stages, &source, profile.cap, &mut rec)
                .map_err(|e| VerifyError::Incompatible(e.to_string()))?;
            finish(&mut rec, verdict, Subject::Chain(spec.into()), || serialize_instance(&source));
            Ok(rec)
        })
        .collect();
    Ok(VerificationReport {
        name: spec.into(),
        seed,
        trials: results.into_iter().collect::<Result<_, _>>()?,
    })
}

/// Re-runs a serialized counterexample. Returns the outcome and the reason
/// of a disagreement or skip.
pub fn replay_counterexample(text: &str, cap: u128) -> Result<(Outcome, Option<String>), VerifyError> {
    let cex = Counterexample::parse(text)?;
    let mut rec = TrialRecord::new(cex.trial, cex.seed);
    let verdict = match &cex.subject {
        Subject::Reduction(name) => {
            let r = lookup(name).map_err(|_| VerifyError::UnknownReduction(name.clone()))?;
            let inst = parse_any(text).map_err(|e| VerifyError::Counterexample(e.to_string()))?;
            check_reduction(r, &inst, cap, &mut rec).map_err(|e| VerifyError::Incompatible(e.to_string()))?
        }
        Subject::Chain(spec) => {
            let stages = parse_chain(spec)?;
            let inst = parse_any(text).map_err(|e| VerifyError::Counterexample(e.to_string()))?;
            check_chain(&stages, &inst, cap, &mut rec).map_err(|e| VerifyError::Incompatible(e.to_string()))?
        }
        Subject::Machine(_) => {
            let m = crate::machine::parse_machine(text).map_err(|e| VerifyError::Counterexample(e.to_string()))?;
            let word = cex.input.clone().unwrap_or_default();
            machines::check_word(&m, &word, &BudgetProfile::default())
        }
    };
    Ok(match verdict {
        Verdict::Agree => (Outcome::Agree, None),
        Verdict::Disagree(m) => (Outcome::Disagree, Some(m)),
        Verdict::Skip(m) => (Outcome::Skip, Some(m)),
    })
}

/// Registered reductions match the reduction module's name list.
pub fn coverage_ok() -> bool {
    registry().iter().map(|r| r.name()).eq(NAMES.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_covered() {
        assert!(coverage_ok());
        for n in NAMES {
            assert!(default_profile(n).is_some(), "{n}");
        }
    }

    #[test]
    fn zero_trials_is_an_error() {
        assert_eq!(verify_reduction("is-vc", 0, 1).unwrap_err(), VerifyError::NoTrials);
        assert!(matches!(verify_reduction("nope", 3, 1), Err(VerifyError::UnknownReduction(_))));
    }

    #[test]
    fn report_lines() {
        let r = verify_reduction("tcmc-tcmis", 5, 3).unwrap();
        let text = r.serialize();
        assert_eq!(text.lines().filter(|l| l.starts_with("trial ")).count(), 5);
        assert!(r.passed());
    }

    #[test]
    fn seeds_reproduce_reports() {
        let a = verify_reduction("is-vc", 6, 11).unwrap();
        let b = verify_reduction("is-vc", 6, 11).unwrap();
        assert_eq!(a.serialize(), b.serialize());
        let seeds: Vec<u64> = a.trials.iter().map(|t| t.seed).collect();
        assert_eq!(seeds, b.trials.iter().map(|t| t.seed).collect::<Vec<_>>());
    }

    #[test]
    fn fault_is_caught_and_replays() {
        let r = verify_chain("negcnf-poscnf,fault-drop-clauses,poscnf-logtwis", 20, 5).unwrap();
        assert!(r.disagreements() > 0);
        let bad = r.trials.iter().find(|t| t.outcome == Outcome::Disagree).unwrap();
        let cex = bad.counterexample.as_ref().unwrap();
        let text = cex.serialize();
        let (o, reason) = replay_counterexample(&text, 1 << 22).unwrap();
        assert_eq!(o, Outcome::Disagree);
        assert_eq!(reason.as_deref(), Some(cex.reason.as_str()));
    }

    #[test]
    fn identity_chain_agrees() {
        let r = verify_chain("id", 10, 2).unwrap();
        assert_eq!(r.agreements(), 10);
    }

    #[test]
    fn mismatched_chain_is_rejected() {
        assert!(matches!(verify_chain("is-vc,is-vc", 3, 1), Err(VerifyError::Incompatible(_))));
    }
}
