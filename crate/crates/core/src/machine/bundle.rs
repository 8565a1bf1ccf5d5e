use std::fmt::Write as _;

use super::config::Configuration;
use super::shaped::check_shaped_run;
use super::spec::{write_machine_records, MachineBuilder, MachineSpec};
use crate::error::FormatError;
use crate::format::{write_tree, Record, TreeBuilder};
use crate::tree::StructureTree;

/// Work tape split into `count` blocks of `len` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub count: usize,
    pub len: usize,
}

/// A machine, an input word and a computation-tree shape: the source of
/// the configuration-encoding reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtmInstance {
    pub machine: MachineSpec,
    pub input: String,
    pub shape: StructureTree,
    pub blocks: Option<Blocks>,
}

impl AtmInstance {
    pub fn is_accepting_run(&self, configs: &[Configuration]) -> bool {
        check_shaped_run(&self.machine, &self.input, &self.shape, configs)
    }
}

pub(crate) fn parse_atm_records(recs: &[Record]) -> Result<AtmInstance, FormatError> {
    let kind = match recs.first() {
        Some(r) if r.key() == "atm" => r,
        Some(r) => return Err(r.err("expected 'atm' record first")),
        None => return Err(FormatError::syntax(0, "missing 'atm' record")),
    };
    kind.arity(0)?;
    let mut mb = MachineBuilder::default();
    let mut tb = TreeBuilder::default();
    let mut input: Option<String> = None;
    let mut blocks = None;
    for rec in &recs[1..] {
        if mb.offer(rec)? || tb.offer(rec)? {
            continue;
        }
        match rec.key() {
            "input" => {
                if input.is_some() {
                    return Err(rec.err("duplicate 'input' record"));
                }
                if rec.tokens.len() > 2 {
                    return Err(rec.err("'input' expects at most one word"));
                }
                input = Some(rec.tokens.get(1).map_or(String::new(), |s| s.to_string()));
            }
            "blocks" => {
                rec.arity(2)?;
                let (count, len) = (rec.num(0)?, rec.num(1)?);
                if count == 0 || len == 0 {
                    return Err(rec.err("block count and length must be positive"));
                }
                blocks = Some(Blocks { count, len });
            }
            _ => return Err(rec.unexpected()),
        }
    }
    let machine = mb.build()?;
    let input = input.ok_or_else(|| FormatError::syntax(0, "missing 'input' record"))?;
    machine.tape(&input)?;
    let shape = tb.build_structure()?;
    Ok(AtmInstance {
        machine,
        input,
        shape,
        blocks,
    })
}

pub(crate) fn write_atm(out: &mut String, a: &AtmInstance) {
    out.push_str("atm\n");
    write_machine_records(out, &a.machine);
    if a.input.is_empty() {
        out.push_str("input\n");
    } else {
        let _ = writeln!(out, "input {}", a.input);
    }
    write_tree(out, &a.shape);
    if let Some(b) = a.blocks {
        let _ = writeln!(out, "blocks {} {}", b.count, b.len);
    }
}
