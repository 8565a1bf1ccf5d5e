use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{FormatError, MachineError};
use crate::format::{records, Record};

/// Left and right input end markers.
pub const LEFT_END: char = '<';
pub const RIGHT_END: char = '>';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Deterministic,
    Existential,
    Universal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Deterministic => "det",
            Mode::Existential => "exist",
            Mode::Universal => "univ",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "det" => Some(Mode::Deterministic),
            "exist" => Some(Mode::Existential),
            "univ" => Some(Mode::Universal),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackOp {
    None,
    Push(char),
    Pop(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub next: usize,
    /// Work symbol index written under the work head.
    pub write: u8,
    pub work_move: i8,
    pub input_move: i8,
    pub stack: StackOp,
}

/// A table row: the read tuple and the action taken on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub state: usize,
    /// Input tape symbol index (see [`MachineSpec::tape_symbol`]).
    pub input: u8,
    pub work: u8,
    pub action: Action,
}

/// Resource-annotated alternating or stack machine.
///
/// Input tape symbols are indexed with `0 = '<'`, `1 = '>'` and the declared
/// input alphabet from 2 on. Work symbol 0 is the blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub initial: usize,
    pub accepting: Vec<bool>,
    pub modes: Vec<Mode>,
    pub input_alphabet: Vec<char>,
    pub work_alphabet: Vec<char>,
    pub work_cells: usize,
    pub stack: bool,
    pub transitions: Vec<Transition>,
    table: Vec<Vec<Action>>,
}

impl MachineSpec {
    /// Validates the invariants and indexes the transition table.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        states: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        modes: Vec<Mode>,
        input_alphabet: Vec<char>,
        work_alphabet: Vec<char>,
        work_cells: usize,
        stack: bool,
        transitions: Vec<Transition>,
    ) -> Result<Self, MachineError> {
        let nq = states.len();
        if nq == 0 {
            return Err(MachineError::Missing("states"));
        }
        if initial >= nq || accepting.len() != nq || modes.len() != nq {
            return Err(MachineError::Missing("per-state data"));
        }
        if work_alphabet.is_empty() {
            return Err(MachineError::Missing("work alphabet"));
        }
        if work_cells == 0 {
            return Err(MachineError::Missing("work cells"));
        }
        let nin = input_alphabet.len() + 2;
        let nw = work_alphabet.len();
        let mut table = vec![Vec::new(); nq * nin * nw];
        for t in &transitions {
            let a = &t.action;
            if t.state >= nq || a.next >= nq {
                return Err(MachineError::UnknownState(format!("#{}", t.state.max(a.next) + 1)));
            }
            if t.input as usize >= nin {
                return Err(MachineError::UnknownSymbol('?'));
            }
            if t.work as usize >= nw || a.write as usize >= nw {
                return Err(MachineError::UnknownSymbol('?'));
            }
            for m in [a.work_move, a.input_move] {
                if !(-1..=1).contains(&m) {
                    return Err(MachineError::BadMove(m as i64));
                }
            }
            if accepting[t.state] {
                return Err(MachineError::AcceptingHasTransitions(states[t.state].clone()));
            }
            if a.stack != StackOp::None && !stack {
                return Err(MachineError::StackInStackFreeMachine);
            }
            table[(t.state * nin + t.input as usize) * nw + t.work as usize].push(*a);
        }
        for q in 0..nq {
            if stack && modes[q] == Mode::Universal && !accepting[q] {
                return Err(MachineError::UniversalWithStack(states[q].clone()));
            }
        }
        for (idx, acts) in table.iter().enumerate() {
            if acts.is_empty() {
                continue;
            }
            let q = idx / (nin * nw);
            let name = &states[q];
            let pops: Vec<char> = acts
                .iter()
                .filter_map(|a| match a.stack {
                    StackOp::Pop(s) => Some(s),
                    _ => None,
                })
                .collect();
            match modes[q] {
                Mode::Universal => {
                    if acts.len() != 2 {
                        let input = idx / nw % nin;
                        return Err(MachineError::UniversalArity {
                            state: name.clone(),
                            input: tape_char(&input_alphabet, input as u8),
                            work: work_alphabet[idx % nw],
                            count: acts.len(),
                        });
                    }
                    if !pops.is_empty() {
                        return Err(MachineError::NondeterministicPop(name.clone()));
                    }
                }
                Mode::Existential => {
                    if !pops.is_empty() {
                        return Err(MachineError::NondeterministicPop(name.clone()));
                    }
                }
                Mode::Deterministic => {
                    if acts.len() > 1 {
                        // Several pops on distinct symbols are still
                        // deterministic: the stack top selects one.
                        let mut distinct = pops.clone();
                        distinct.sort_unstable();
                        distinct.dedup();
                        if pops.len() != acts.len() || distinct.len() != pops.len() {
                            return Err(MachineError::Nondeterministic(name.clone()));
                        }
                    }
                }
            }
        }
        Ok(MachineSpec {
            states,
            initial,
            accepting,
            modes,
            input_alphabet,
            work_alphabet,
            work_cells,
            stack,
            transitions,
            table,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn mode(&self, q: usize) -> Mode {
        self.modes[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn has_universal(&self) -> bool {
        (0..self.num_states()).any(|q| self.modes[q] == Mode::Universal && !self.accepting[q])
    }

    pub fn uses_stack_ops(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| t.action.stack != StackOp::None)
    }

    /// Actions for a read tuple, in table order.
    pub fn actions(&self, q: usize, input: u8, work: u8) -> &[Action] {
        let nin = self.input_alphabet.len() + 2;
        let nw = self.work_alphabet.len();
        &self.table[(q * nin + input as usize) * nw + work as usize]
    }

    /// Index of an input tape character (markers included).
    pub fn tape_symbol(&self, c: char) -> Option<u8> {
        match c {
            LEFT_END => Some(0),
            RIGHT_END => Some(1),
            _ => self
                .input_alphabet
                .iter()
                .position(|&x| x == c)
                .map(|i| i as u8 + 2),
        }
    }

    pub fn tape_char(&self, sym: u8) -> char {
        tape_char(&self.input_alphabet, sym)
    }

    pub fn work_symbol(&self, c: char) -> Option<u8> {
        self.work_alphabet.iter().position(|&x| x == c).map(|i| i as u8)
    }

    /// Input word with end markers attached.
    pub fn tape(&self, word: &str) -> Result<Vec<u8>, MachineError> {
        let mut tape = vec![0u8];
        for c in word.chars() {
            match self.tape_symbol(c) {
                Some(s) if s >= 2 => tape.push(s),
                _ => return Err(MachineError::UnknownSymbol(c)),
            }
        }
        tape.push(1);
        Ok(tape)
    }
}

fn tape_char(alpha: &[char], sym: u8) -> char {
    match sym {
        0 => LEFT_END,
        1 => RIGHT_END,
        s => alpha[s as usize - 2],
    }
}

fn parse_move(rec: &Record, tok: &str) -> Result<i8, FormatError> {
    match tok {
        "-1" => Ok(-1),
        "0" => Ok(0),
        "1" | "+1" => Ok(1),
        _ => Err(rec.err(format!("head move must be -1, 0 or 1, found '{tok}'"))),
    }
}

fn single_char(rec: &Record, tok: &str, what: &str) -> Result<char, FormatError> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(rec.err(format!("{what} must be a single character, found '{tok}'"))),
    }
}

/// Consumes machine records; returns false for records it does not know.
#[derive(Default)]
pub(crate) struct MachineBuilder<'a> {
    states: Option<&'a Record<'a>>,
    init: Option<&'a Record<'a>>,
    accept: Vec<&'a Record<'a>>,
    modes: Vec<&'a Record<'a>>,
    work: Option<&'a Record<'a>>,
    input: Option<&'a Record<'a>>,
    stack: Option<&'a Record<'a>>,
    trs: Vec<&'a Record<'a>>,
}

impl<'a> MachineBuilder<'a> {
    pub(crate) fn offer(&mut self, rec: &'a Record<'a>) -> Result<bool, FormatError> {
        let once = |slot: &mut Option<&'a Record<'a>>| -> Result<(), FormatError> {
            if slot.is_some() {
                return Err(rec.err(format!("duplicate '{}' record", rec.key())));
            }
            *slot = Some(rec);
            Ok(())
        };
        match rec.key() {
            "m" => {
                rec.min_arity(2)?;
                if rec.tokens[1] != "states" {
                    return Err(rec.err("expected 'm states <q...>'"));
                }
                once(&mut self.states)?;
            }
            "init" => {
                rec.arity(1)?;
                once(&mut self.init)?;
            }
            "accept" => self.accept.push(rec),
            "mode" => {
                rec.arity(2)?;
                self.modes.push(rec);
            }
            "work" => {
                rec.arity(2)?;
                once(&mut self.work)?;
            }
            "in" => {
                rec.arity(1)?;
                once(&mut self.input)?;
            }
            "stack" => {
                rec.arity(1)?;
                once(&mut self.stack)?;
            }
            "tr" => {
                rec.arity(9)?;
                if rec.tokens[4] != "->" {
                    return Err(rec.err("expected '->' after the read tuple"));
                }
                self.trs.push(rec);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(crate) fn build(self) -> Result<MachineSpec, FormatError> {
        let srec = self
            .states
            .ok_or_else(|| FormatError::syntax(0, "missing 'm states' record"))?;
        let states: Vec<String> = srec.tokens[2..].iter().map(|s| s.to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.as_str(), i).is_some() {
                return Err(srec.err(format!("duplicate state {s}")));
            }
        }
        let lookup = |rec: &Record, name: &str| -> Result<usize, FormatError> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| rec.err(format!("unknown state {name}")))
        };
        let irec = self
            .init
            .ok_or_else(|| FormatError::syntax(0, "missing 'init' record"))?;
        let initial = lookup(irec, irec.tokens[1])?;
        let mut accepting = vec![false; states.len()];
        for rec in self.accept {
            for name in rec.args() {
                accepting[lookup(rec, name)?] = true;
            }
        }
        let mut modes = vec![Mode::Deterministic; states.len()];
        for rec in self.modes {
            let q = lookup(rec, rec.tokens[1])?;
            modes[q] = Mode::parse(rec.tokens[2])
                .ok_or_else(|| rec.err(format!("unknown mode '{}'", rec.tokens[2])))?;
        }
        let input_alphabet: Vec<char> = match self.input {
            Some(rec) => rec.tokens[1].chars().collect(),
            None => vec!['0', '1'],
        };
        for (i, &c) in input_alphabet.iter().enumerate() {
            if matches!(c, LEFT_END | RIGHT_END | '*') || input_alphabet[..i].contains(&c) {
                let line = self.input.map_or(0, |r| r.line);
                return Err(FormatError::syntax(line, format!("bad input symbol {c:?}")));
            }
        }
        let wrec = self
            .work
            .ok_or_else(|| FormatError::syntax(0, "missing 'work' record"))?;
        let work_cells = wrec.num(0)?;
        let work_alphabet: Vec<char> = wrec.tokens[2].chars().collect();
        for (i, &c) in work_alphabet.iter().enumerate() {
            if c == '*' || work_alphabet[..i].contains(&c) {
                return Err(wrec.err(format!("bad work symbol {c:?}")));
            }
        }
        let stack = match self.stack {
            Some(rec) => match rec.tokens[1] {
                "on" => true,
                "off" => false,
                s => return Err(rec.err(format!("expected on|off, found '{s}'"))),
            },
            None => false,
        };
        let probe = MachineSpec {
            states: states.clone(),
            initial,
            accepting: accepting.clone(),
            modes: modes.clone(),
            input_alphabet: input_alphabet.clone(),
            work_alphabet: work_alphabet.clone(),
            work_cells,
            stack,
            transitions: Vec::new(),
            table: Vec::new(),
        };
        let nin = input_alphabet.len() + 2;
        let mut transitions = Vec::new();
        for rec in self.trs {
            let t = &rec.tokens;
            let q = lookup(rec, t[1])?;
            let next = lookup(rec, t[5])?;
            let ins: Vec<u8> = match single_char(rec, t[2], "input symbol")? {
                '*' => (0..nin as u8).collect(),
                c => vec![probe
                    .tape_symbol(c)
                    .ok_or_else(|| rec.err(format!("unknown input symbol {c:?}")))?],
            };
            let works: Vec<u8> = match single_char(rec, t[3], "work symbol")? {
                '*' => (0..work_alphabet.len() as u8).collect(),
                c => vec![probe
                    .work_symbol(c)
                    .ok_or_else(|| rec.err(format!("unknown work symbol {c:?}")))?],
            };
            let write = match single_char(rec, t[6], "write symbol")? {
                '*' => None,
                c => Some(
                    probe
                        .work_symbol(c)
                        .ok_or_else(|| rec.err(format!("unknown work symbol {c:?}")))?,
                ),
            };
            let work_move = parse_move(rec, t[7])?;
            let input_move = parse_move(rec, t[8])?;
            let stack_op = match t[9] {
                "none" => StackOp::None,
                s => {
                    let (kind, sym) = s
                        .split_once(':')
                        .ok_or_else(|| rec.err(format!("bad stack operation '{s}'")))?;
                    let sym = single_char(rec, sym, "stack symbol")?;
                    match kind {
                        "push" => StackOp::Push(sym),
                        "pop" => StackOp::Pop(sym),
                        _ => return Err(rec.err(format!("bad stack operation '{s}'"))),
                    }
                }
            };
            for &i in &ins {
                for &w in &works {
                    transitions.push(Transition {
                        state: q,
                        input: i,
                        work: w,
                        action: Action {
                            next,
                            write: write.unwrap_or(w),
                            work_move,
                            input_move,
                            stack: stack_op,
                        },
                    });
                }
            }
        }
        Ok(MachineSpec::new(
            states,
            initial,
            accepting,
            modes,
            input_alphabet,
            work_alphabet,
            work_cells,
            stack,
            transitions,
        )?)
    }
}

pub fn parse_machine(text: &str) -> Result<MachineSpec, FormatError> {
    let recs = records(text)?;
    let mut mb = MachineBuilder::default();
    for rec in &recs {
        if !mb.offer(rec)? {
            return Err(rec.unexpected());
        }
    }
    mb.build()
}

pub(crate) fn write_machine_records(out: &mut String, m: &MachineSpec) {
    let _ = writeln!(out, "m states {}", m.states.join(" "));
    let _ = writeln!(out, "init {}", m.states[m.initial]);
    let acc: Vec<&str> = (0..m.num_states())
        .filter(|&q| m.accepting[q])
        .map(|q| m.states[q].as_str())
        .collect();
    if acc.is_empty() {
        out.push_str("accept\n");
    } else {
        let _ = writeln!(out, "accept {}", acc.join(" "));
    }
    for q in 0..m.num_states() {
        let _ = writeln!(out, "mode {} {}", m.states[q], m.modes[q].as_str());
    }
    let _ = writeln!(out, "in {}", m.input_alphabet.iter().collect::<String>());
    let _ = writeln!(
        out,
        "work {} {}",
        m.work_cells,
        m.work_alphabet.iter().collect::<String>()
    );
    let _ = writeln!(out, "stack {}", if m.stack { "on" } else { "off" });
    for t in &m.transitions {
        let a = &t.action;
        let op = match a.stack {
            StackOp::None => "none".to_string(),
            StackOp::Push(s) => format!("push:{s}"),
            StackOp::Pop(s) => format!("pop:{s}"),
        };
        let _ = writeln!(
            out,
            "tr {} {} {} -> {} {} {} {} {}",
            m.states[t.state],
            m.tape_char(t.input),
            m.work_alphabet[t.work as usize],
            m.states[a.next],
            m.work_alphabet[a.write as usize],
            a.work_move,
            a.input_move,
            op
        );
    }
}

pub fn serialize_machine(m: &MachineSpec) -> String {
    let mut out = String::from(crate::format::HEADER);
    out.push('\n');
    write_machine_records(&mut out, m);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIV: &str = "m states s a\ninit s\naccept a\nmode s univ\nwork 1 _\n\
                        tr s < _ -> a _ 0 0 none\ntr s < _ -> a _ 0 1 none\n";

    #[test]
    fn parses_and_round_trips() {
        let m = parse_machine(UNIV).unwrap();
        assert_eq!(m.actions(0, 0, 0).len(), 2);
        assert_eq!(parse_machine(&serialize_machine(&m)).unwrap(), m);
    }

    #[test]
    fn universal_needs_two_actions() {
        let text = "m states s a\ninit s\naccept a\nmode s univ\nwork 1 _\n\
                    tr s < _ -> a _ 0 0 none\n";
        let err = parse_machine(text).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Machine(MachineError::UniversalArity { count: 1, .. })
        ));
    }

    #[test]
    fn pops_only_in_deterministic_states() {
        let text = "m states s a\ninit s\naccept a\nmode s exist\nwork 1 _\nstack on\n\
                    tr s < _ -> a _ 0 0 pop:x\n";
        assert!(matches!(
            parse_machine(text),
            Err(FormatError::Machine(MachineError::NondeterministicPop(_)))
        ));
        let text = "m states s a\ninit s\naccept a\nwork 1 _\nstack on\n\
                    tr s < _ -> a _ 0 0 pop:x\ntr s < _ -> a _ 0 0 pop:y\n";
        assert!(parse_machine(text).is_ok());
    }

    #[test]
    fn stack_ops_need_stack() {
        let text = "m states s a\ninit s\naccept a\nwork 1 _\ntr s < _ -> a _ 0 0 push:x\n";
        assert!(matches!(
            parse_machine(text),
            Err(FormatError::Machine(MachineError::StackInStackFreeMachine))
        ));
    }

    #[test]
    fn wildcards_expand() {
        let text = "m states s a\ninit s\naccept a\nmode s exist\nwork 1 _x\n\
                    tr s * * -> a * 0 0 none\n";
        let m = parse_machine(text).unwrap();
        // 4 input symbols (01 plus markers) times 2 work symbols
        assert_eq!(m.transitions.len(), 8);
        assert_eq!(m.actions(0, 2, 1)[0].write, 1);
    }
}
