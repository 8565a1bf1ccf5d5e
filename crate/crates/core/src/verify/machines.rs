//! Agreement of the acceptance evaluators on a machine corpus.

use std::path::Path;

use rayon::prelude::*;

use super::{finish, Subject, TrialRecord, Verdict, VerificationReport, VerifyError};
use crate::error::MachineError;
use crate::machine::{
    eval_alternating, eval_alternating_as_stack, eval_balanced, eval_stack, eval_stack_via_alternation,
    parse_machine, serialize_machine, MachineSpec, ResourceBudget, RunStats,
};

/// Budgets and the constants of the resource assertions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BudgetProfile {
    /// Step budget of the stack evaluators.
    pub time_steps: usize,
    /// Tree size budget of the alternating evaluators.
    pub tree_size: usize,
    /// Every word up to this length is tried.
    pub max_input_len: usize,
    /// Via-alternation tree size must be at most `C·steps + C`.
    pub tree_ratio: usize,
    /// Balanced co-nondeterminism must be at most `a·log₂(treeSize) + b`.
    pub co_nondet_factor: f64,
    pub co_nondet_offset: f64,
}

impl Default for BudgetProfile {
    fn default() -> Self {
        BudgetProfile {
            time_steps: 32,
            tree_size: 33,
            max_input_len: 6,
            tree_ratio: 2,
            co_nondet_factor: 2.0,
            co_nondet_offset: 4.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub machine: MachineSpec,
}

/// Reads every `*.m` file of a directory, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, VerifyError> {
    let err = |e: std::io::Error| VerifyError::Corpus(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(err)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "m"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(err)?;
            let machine = parse_machine(&text).map_err(|e| VerifyError::Corpus(format!("{}: {e}", p.display())))?;
            let name = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            Ok(CorpusEntry { name, machine })
        })
        .collect()
}

/// All words over the machine's input alphabet of length at most `max`,
/// shortest first.
pub fn words(m: &MachineSpec, max: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| m.input_alphabet.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

type Eval = fn(&MachineSpec, &str, &ResourceBudget) -> Result<RunStats, MachineError>;

/// Evaluators that apply to the machine, with the budget each one gets.
fn evaluators(m: &MachineSpec, b: &BudgetProfile) -> Vec<(&'static str, Eval, ResourceBudget)> {
    let steps = ResourceBudget {
        time_steps: Some(b.time_steps),
        ..ResourceBudget::default()
    };
    let tree = ResourceBudget {
        tree_size: Some(b.tree_size),
        ..ResourceBudget::default()
    };
    let mut out: Vec<(&'static str, Eval, ResourceBudget)> = Vec::new();
    if !m.has_universal() {
        out.push(("stack", eval_stack, steps));
        out.push(("via-alternation", eval_stack_via_alternation, steps));
    }
    if !m.stack {
        out.push(("alternating", eval_alternating, tree));
        out.push(("alternating-as-stack", eval_alternating_as_stack, tree));
        out.push(("balanced", eval_balanced, tree));
    }
    out
}

pub(super) fn check_word(m: &MachineSpec, word: &str, b: &BudgetProfile) -> Verdict {
    check_word_into(m, word, b, &mut TrialRecord::new(0, 0))
}

fn check_word_into(m: &MachineSpec, word: &str, b: &BudgetProfile, rec: &mut TrialRecord) -> Verdict {
    let mut results = Vec::new();
    for (name, eval, budget) in evaluators(m, b) {
        match eval(m, word, &budget) {
            Ok(s) => results.push((name, s)),
            Err(e) => return Verdict::Disagree(format!("{name} failed: {e}")),
        }
    }
    let Some((_, first)) = results.first() else {
        return Verdict::Skip("no evaluator applies".into());
    };
    let accepted = first.accepted;
    if results.iter().any(|(_, s)| s.accepted != accepted) {
        let summary: Vec<String> = results
            .iter()
            .map(|(n, s)| format!("{n}={}", if s.accepted { "accept" } else { "reject" }))
            .collect();
        if results.iter().any(|(_, s)| s.exhausted) {
            return Verdict::Skip(format!("budget exhausted: {}", summary.join(" ")));
        }
        return Verdict::Disagree(format!("evaluators differ: {}", summary.join(" ")));
    }
    let get = |n: &str| results.iter().find(|(x, _)| *x == n).map(|(_, s)| *s);
    if let (Some(direct), Some(via)) = (get("stack"), get("via-alternation")) {
        if direct.accepted {
            let bound = b.tree_ratio * direct.steps_used + b.tree_ratio;
            rec.metrics.insert("steps".into(), direct.steps_used);
            rec.metrics.insert("via_tree".into(), via.tree_nodes);
            if via.tree_nodes > bound {
                return Verdict::Disagree(format!(
                    "via-alternation tree of {} nodes exceeds {bound} for {} steps",
                    via.tree_nodes, direct.steps_used
                ));
            }
            rec.checks.push("tree ratio".into());
        }
    }
    if let Some(bal) = get("balanced") {
        if bal.accepted {
            let bound = b.co_nondet_factor * (bal.tree_nodes.max(1) as f64).log2() + b.co_nondet_offset;
            rec.metrics.insert("tree".into(), bal.tree_nodes);
            rec.metrics.insert("co_nondet".into(), bal.max_co_nondet_on_path);
            if bal.max_co_nondet_on_path as f64 > bound {
                return Verdict::Disagree(format!(
                    "balanced run uses {} co-nondeterministic steps on a path, above {bound:.2}",
                    bal.max_co_nondet_on_path
                ));
            }
            rec.checks.push("co-nondet log bound".into());
        }
    }
    rec.metrics.insert("accepted".into(), usize::from(accepted));
    Verdict::Agree
}

/// Runs every applicable evaluator on every short word for each corpus
/// machine. One trial per (machine, word) pair.
pub fn verify_machine_equivalences(corpus: &Path, budget: &BudgetProfile) -> Result<VerificationReport, VerifyError> {
    let entries = load_corpus(corpus)?;
    verify_entries(&corpus.display().to_string(), &entries, budget)
}

pub(super) fn verify_entries(
    name: &str,
    entries: &[CorpusEntry],
    budget: &BudgetProfile,
) -> Result<VerificationReport, VerifyError> {
    let jobs: Vec<(&CorpusEntry, String)> = entries
        .iter()
        .flat_map(|e| words(&e.machine, budget.max_input_len).into_iter().map(move |w| (e, w)))
        .collect();
    if jobs.is_empty() {
        return Err(VerifyError::Corpus("empty corpus".into()));
    }
    let trials = jobs
        .par_iter()
        .enumerate()
        .map(|(i, (e, w))| {
            let mut rec = TrialRecord::new(i, 0);
            let verdict = check_word_into(&e.machine, w, budget, &mut rec);
            finish(&mut rec, verdict, Subject::Machine(e.name.clone()), || serialize_machine(&e.machine));
            if let Some(c) = rec.counterexample.as_mut() {
                c.input = Some(w.clone());
            }
            rec
        })
        .collect();
    Ok(VerificationReport {
        name: name.into(),
        seed: 0,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration() {
        let m = parse_machine("m states a\ninit a\naccept a\nin 01\nwork 1 _\n").unwrap();
        let w = words(&m, 2);
        assert_eq!(w, ["", "0", "1", "00", "01", "10", "11"]);
    }

    #[test]
    fn immediate_accept_agrees_everywhere() {
        let m = parse_machine("m states a\ninit a\naccept a\nin 01\nwork 1 _\n").unwrap();
        let entries = vec![CorpusEntry {
            name: "acc".into(),
            machine: m,
        }];
        let b = BudgetProfile {
            max_input_len: 2,
            ..BudgetProfile::default()
        };
        let r = verify_entries("inline", &entries, &b).unwrap();
        assert_eq!(r.agreements(), 7);
    }
}
