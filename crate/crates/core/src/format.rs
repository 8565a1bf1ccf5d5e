//! Line-oriented text formats.
//!
//! Every file starts with an optional `xalpwb 1` header (always written),
//! followed by one record per line. `#` starts a comment. Identifiers are
//! 1-based in text and 0-based in memory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::decomposition::TreeDecomposition;
use crate::error::{FormatError, InstanceError};
use crate::graph::Graph;
use crate::instances::{
    CnfVariant, GraphProblem, Instance, ListColoringInstance, ListColoringKind, Literal,
    LogTwGraphInstance, TcmcInstance, TcmcMode, TreeChainedCnf, Variable,
};
use crate::tree::{RootedTree, StructureTree};

pub const HEADER: &str = "xalpwb 1";

/// One non-empty, comment-stripped line split into tokens.
#[derive(Clone, Debug)]
pub struct Record<'a> {
    pub line: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Record<'a> {
    pub fn key(&self) -> &'a str {
        self.tokens[0]
    }

    pub fn args(&self) -> &[&'a str] {
        &self.tokens[1..]
    }

    pub fn err(&self, msg: impl Into<String>) -> FormatError {
        FormatError::syntax(self.line, msg)
    }

    pub fn arity(&self, n: usize) -> Result<(), FormatError> {
        if self.tokens.len() != n + 1 {
            return Err(self.err(format!(
                "'{}' expects {} argument(s), found {}",
                self.key(),
                n,
                self.tokens.len() - 1
            )));
        }
        Ok(())
    }

    pub fn min_arity(&self, n: usize) -> Result<(), FormatError> {
        if self.tokens.len() < n + 1 {
            return Err(self.err(format!(
                "'{}' expects at least {} argument(s)",
                self.key(),
                n
            )));
        }
        Ok(())
    }

    /// Nonnegative integer argument `i` (0-based among the arguments).
    pub fn num(&self, i: usize) -> Result<usize, FormatError> {
        parse_num(self, self.tokens[i + 1])
    }

    /// 1-based identifier argument, returned 0-based.
    pub fn id(&self, i: usize) -> Result<usize, FormatError> {
        parse_id(self, self.tokens[i + 1])
    }

    pub fn ids_from(&self, i: usize) -> Result<Vec<usize>, FormatError> {
        self.tokens[i + 1..].iter().map(|t| parse_id(self, t)).collect()
    }

    pub fn unexpected(&self) -> FormatError {
        self.err(format!("unexpected record '{}'", self.key()))
    }
}

fn parse_num(rec: &Record, tok: &str) -> Result<usize, FormatError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(rec.err(format!("expected a nonnegative integer, found '{tok}'")));
    }
    tok.parse::<usize>()
        .map_err(|_| rec.err(format!("integer '{tok}' is too large")))
}

fn parse_id(rec: &Record, tok: &str) -> Result<usize, FormatError> {
    match parse_num(rec, tok)? {
        0 => Err(rec.err("identifiers are 1-based")),
        v => Ok(v - 1),
    }
}

/// Splits text into records and consumes the optional version header.
pub fn records(text: &str) -> Result<Vec<Record<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let rec = Record {
            line: i + 1,
            tokens,
        };
        if rec.key() == "xalpwb" {
            if !out.is_empty() {
                return Err(rec.err("version header must come first"));
            }
            if rec.args() != ["1"] {
                return Err(rec.err(format!(
                    "unsupported format version '{}'",
                    rec.args().join(" ")
                )));
            }
            continue;
        }
        out.push(rec);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormatTag {
    Graph,
    Tcmc,
    Cnf,
    ListColoring,
    LogTw,
    Decomposition,
    Atm,
}

impl FormatTag {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "graph" => FormatTag::Graph,
            "tcmc" => FormatTag::Tcmc,
            "cnf" => FormatTag::Cnf,
            "listcol" => FormatTag::ListColoring,
            "logtw" => FormatTag::LogTw,
            "td" => FormatTag::Decomposition,
            "atm" => FormatTag::Atm,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FormatTag::Graph => "graph",
            FormatTag::Tcmc => "tcmc",
            FormatTag::Cnf => "cnf",
            FormatTag::ListColoring => "listcol",
            FormatTag::LogTw => "logtw",
            FormatTag::Decomposition => "td",
            FormatTag::Atm => "atm",
        }
    }

    /// Tag of the format whose kind record starts `text`.
    pub fn detect(text: &str) -> Result<Self, FormatError> {
        let recs = records(text)?;
        let first = recs
            .first()
            .ok_or_else(|| FormatError::syntax(0, "empty input"))?;
        match first.key() {
            "p" => Ok(FormatTag::Graph),
            "tcmc" => Ok(FormatTag::Tcmc),
            "cnf" => Ok(FormatTag::Cnf),
            "listcol" => Ok(FormatTag::ListColoring),
            "logtw" => Ok(FormatTag::LogTw),
            "td" => Ok(FormatTag::Decomposition),
            "atm" => Ok(FormatTag::Atm),
            k => Err(first.err(format!("unknown format record '{k}'"))),
        }
    }
}

/// Parses and validates an instance of the tagged format.
pub fn parse_instance(tag: FormatTag, text: &str) -> Result<Instance, FormatError> {
    let recs = records(text)?;
    match tag {
        FormatTag::Graph => parse_graph_records(&recs).map(Instance::Graph),
        FormatTag::Tcmc => parse_tcmc(&recs).map(Instance::Tcmc),
        FormatTag::Cnf => parse_cnf(&recs).map(Instance::Cnf),
        FormatTag::ListColoring => parse_listcol(&recs).map(Instance::ListColoring),
        FormatTag::LogTw => parse_logtw(&recs).map(Instance::LogTw),
        FormatTag::Decomposition => parse_td(&recs).map(Instance::Decomposition),
        FormatTag::Atm => crate::machine::parse_atm_records(&recs).map(Instance::Atm),
    }
}

/// Detects the format and parses.
pub fn parse_any(text: &str) -> Result<Instance, FormatError> {
    parse_instance(FormatTag::detect(text)?, text)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    match inst {
        Instance::Graph(g) => write_graph(&mut out, g),
        Instance::Tcmc(t) => write_tcmc(&mut out, t),
        Instance::Cnf(c) => write_cnf(&mut out, c),
        Instance::ListColoring(l) => write_listcol(&mut out, l),
        Instance::LogTw(g) => write_logtw(&mut out, g),
        Instance::Decomposition(td) => {
            out.push_str("td\n");
            write_td(&mut out, td);
        }
        Instance::Atm(a) => crate::machine::write_atm(&mut out, a),
    }
    out
}

fn expect_kind<'a>(recs: &'a [Record<'a>], key: &str) -> Result<&'a Record<'a>, FormatError> {
    match recs.first() {
        Some(r) if r.key() == key => Ok(r),
        Some(r) => Err(r.err(format!("expected '{key}' record first, found '{}'", r.key()))),
        None => Err(FormatError::syntax(0, format!("missing '{key}' record"))),
    }
}

// ---- shared builders ----

#[derive(Default)]
pub(crate) struct GraphBuilder<'a> {
    header: Option<(usize, usize, &'a Record<'a>)>,
    edges: Vec<&'a Record<'a>>,
    labels: Vec<&'a Record<'a>>,
}

impl<'a> GraphBuilder<'a> {
    /// Consumes `p`, `e` and `label` records; returns false for others.
    pub(crate) fn offer(&mut self, rec: &'a Record<'a>) -> Result<bool, FormatError> {
        match rec.key() {
            "p" => {
                rec.arity(3)?;
                if rec.tokens[1] != "graph" {
                    return Err(rec.err(format!("unknown problem line 'p {}'", rec.tokens[1])));
                }
                if self.header.is_some() {
                    return Err(rec.err("duplicate 'p' record"));
                }
                self.header = Some((rec.num(1)?, rec.num(2)?, rec));
            }
            "e" => {
                rec.arity(2)?;
                self.edges.push(rec);
            }
            "label" => {
                rec.min_arity(2)?;
                self.labels.push(rec);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(crate) fn build(self) -> Result<Graph, FormatError> {
        let (n, m, hrec) = self
            .header
            .ok_or_else(|| FormatError::syntax(0, "missing 'p graph' record"))?;
        if self.edges.len() != m {
            return Err(hrec.err(format!(
                "header announces {m} edges, found {}",
                self.edges.len()
            )));
        }
        let mut g = Graph::new(n);
        for rec in self.edges {
            let (u, v) = (rec.id(0)?, rec.id(1)?);
            g.add_edge(u, v).map_err(|e| rec.err(e.to_string()))?;
        }
        for rec in self.labels {
            let v = rec.id(0)?;
            if v >= n {
                return Err(rec.err(format!("label for unknown vertex {}", v + 1)));
            }
            g.set_label(v, rec.tokens[2..].join(" "));
        }
        Ok(g)
    }
}

#[derive(Default)]
pub(crate) struct TreeBuilder<'a> {
    header: Option<(usize, &'a Record<'a>)>,
    links: Vec<(usize, usize, usize)>,
    link_recs: Vec<&'a Record<'a>>,
}

impl<'a> TreeBuilder<'a> {
    pub(crate) fn offer(&mut self, rec: &'a Record<'a>) -> Result<bool, FormatError> {
        match rec.key() {
            "t" => {
                rec.arity(1)?;
                if self.header.is_some() {
                    return Err(rec.err("duplicate 't' record"));
                }
                self.header = Some((rec.num(0)?, rec));
            }
            "a" => {
                rec.arity(3)?;
                let order = rec.num(2)?;
                if order == 0 {
                    return Err(rec.err("child order must be at least 1"));
                }
                self.links.push((rec.id(0)?, rec.id(1)?, order));
                self.link_recs.push(rec);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(crate) fn present(&self) -> bool {
        self.header.is_some()
    }

    pub(crate) fn build(self) -> Result<RootedTree, FormatError> {
        let (n, hrec) = self
            .header
            .ok_or_else(|| FormatError::syntax(0, "missing 't' record"))?;
        RootedTree::from_links(n, &self.links).map_err(|e| hrec.err(e.to_string()))
    }

    pub(crate) fn build_structure(self) -> Result<StructureTree, FormatError> {
        for (rec, &(_, _, order)) in self.link_recs.iter().zip(&self.links) {
            if order > 2 {
                return Err(rec.err("structure tree child order must be 1 or 2"));
            }
        }
        let line = self.header.map_or(0, |h| h.1.line);
        StructureTree::new(self.build()?).map_err(|e| FormatError::syntax(line, e.to_string()))
    }
}

#[derive(Default)]
pub(crate) struct BagBuilder<'a> {
    bags: Vec<&'a Record<'a>>,
}

impl<'a> BagBuilder<'a> {
    pub(crate) fn offer(&mut self, rec: &'a Record<'a>) -> Result<bool, FormatError> {
        if rec.key() != "bag" {
            return Ok(false);
        }
        rec.min_arity(1)?;
        self.bags.push(rec);
        Ok(true)
    }

    pub(crate) fn present(&self) -> bool {
        !self.bags.is_empty()
    }

    pub(crate) fn build(self, tree: RootedTree) -> Result<TreeDecomposition, FormatError> {
        let mut bags: Vec<Option<BTreeSet<usize>>> = vec![None; tree.len()];
        for rec in self.bags {
            let node = rec.id(0)?;
            if node >= tree.len() {
                return Err(rec.err(format!("bag for unknown node {}", node + 1)));
            }
            if bags[node].is_some() {
                return Err(rec.err(format!("duplicate bag for node {}", node + 1)));
            }
            let mut bag = BTreeSet::new();
            for v in rec.ids_from(1)? {
                if !bag.insert(v) {
                    return Err(rec.err(format!("vertex {} repeated in bag", v + 1)));
                }
            }
            bags[node] = Some(bag);
        }
        Ok(TreeDecomposition {
            tree,
            bags: bags.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }
}

// ---- graph ----

fn parse_graph_records(recs: &[Record]) -> Result<Graph, FormatError> {
    let mut gb = GraphBuilder::default();
    for rec in recs {
        if !gb.offer(rec)? {
            return Err(rec.unexpected());
        }
    }
    gb.build()
}

pub(crate) fn write_graph(out: &mut String, g: &Graph) {
    let _ = writeln!(out, "p graph {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for v in 0..g.n() {
        if let Some(l) = g.label(v) {
            let _ = writeln!(out, "label {} {}", v + 1, l);
        }
    }
}

pub(crate) fn write_tree(out: &mut String, t: &RootedTree) {
    let _ = writeln!(out, "t {}", t.len());
    for (p, c, o) in t.links() {
        let _ = writeln!(out, "a {} {} {}", p + 1, c + 1, o);
    }
}

fn write_td(out: &mut String, td: &TreeDecomposition) {
    write_tree(out, &td.tree);
    write_bags(out, td);
}

fn write_bags(out: &mut String, td: &TreeDecomposition) {
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "bag {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
}

fn parse_td(recs: &[Record]) -> Result<TreeDecomposition, FormatError> {
    let kind = expect_kind(recs, "td")?;
    kind.arity(0)?;
    let mut tb = TreeBuilder::default();
    let mut bb = BagBuilder::default();
    for rec in &recs[1..] {
        if !(tb.offer(rec)? || bb.offer(rec)?) {
            return Err(rec.unexpected());
        }
    }
    bb.build(tb.build()?)
}

// ---- tcmc ----

fn parse_tcmc(recs: &[Record]) -> Result<TcmcInstance, FormatError> {
    let kind = expect_kind(recs, "tcmc")?;
    kind.arity(2)?;
    let mode = match kind.tokens[1] {
        "clique" => TcmcMode::Clique,
        "is" => TcmcMode::IndependentSet,
        m => return Err(kind.err(format!("unknown mode '{m}'"))),
    };
    let k = kind.num(1)?;
    if k == 0 {
        return Err(kind.err("k must be positive"));
    }
    let mut tb = TreeBuilder::default();
    let mut gb = GraphBuilder::default();
    let mut class_recs = Vec::new();
    for rec in &recs[1..] {
        if tb.offer(rec)? || gb.offer(rec)? {
            continue;
        }
        if rec.key() == "class" {
            rec.min_arity(2)?;
            class_recs.push(rec);
        } else {
            return Err(rec.unexpected());
        }
    }
    let tree = tb.build_structure()?;
    let graph = gb.build()?;
    let mut classes: Vec<Option<Vec<usize>>> = vec![None; tree.len() * k];
    for rec in class_recs {
        let (node, color) = (rec.id(0)?, rec.id(1)?);
        if node >= tree.len() || color >= k {
            return Err(rec.err(
                InstanceError::ClassOutOfRange {
                    node: node + 1,
                    color: color + 1,
                }
                .to_string(),
            ));
        }
        let idx = node * k + color;
        if classes[idx].is_some() {
            return Err(rec.err(format!("duplicate class ({},{})", node + 1, color + 1)));
        }
        classes[idx] = Some(rec.ids_from(2)?);
    }
    let classes = classes.into_iter().map(Option::unwrap_or_default).collect();
    Ok(TcmcInstance::new(tree, k, mode, classes, graph)?)
}

fn write_tcmc(out: &mut String, t: &TcmcInstance) {
    let _ = writeln!(out, "tcmc {} {}", t.mode().as_str(), t.k());
    write_tree(out, t.tree());
    write_graph(out, t.graph());
    for c in 0..t.num_classes() {
        let (node, color) = t.class_coords(c);
        let _ = write!(out, "class {} {}", node + 1, color + 1);
        for v in t.class(c) {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
}

// ---- cnf ----

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.starts_with(['+', '-'])
}

fn parse_cnf(recs: &[Record]) -> Result<TreeChainedCnf, FormatError> {
    let kind = expect_kind(recs, "cnf")?;
    kind.arity(2)?;
    let variant = CnfVariant::parse(kind.tokens[1])
        .ok_or_else(|| kind.err(format!("unknown variant '{}'", kind.tokens[1])))?;
    let k = kind.num(1)?;
    let mut tb = TreeBuilder::default();
    let mut vars = Vec::new();
    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    let mut clause_recs = Vec::new();
    for rec in &recs[1..] {
        if tb.offer(rec)? {
            continue;
        }
        match rec.key() {
            "var" => {
                if rec.tokens.len() != 3 && rec.tokens.len() != 4 {
                    return Err(rec.err("'var' expects <node> <name> [<slot>]"));
                }
                let node = rec.id(0)?;
                let name = rec.tokens[2];
                if !valid_name(name) {
                    return Err(rec.err(format!("invalid variable name '{name}'")));
                }
                let slot = if rec.tokens.len() == 4 {
                    Some(rec.id(2)?)
                } else {
                    None
                };
                if names.insert(name, vars.len()).is_some() {
                    return Err(rec.err(format!("duplicate variable {name}")));
                }
                vars.push(Variable {
                    name: name.to_string(),
                    node,
                    slot,
                });
            }
            "c" => clause_recs.push(rec),
            _ => return Err(rec.unexpected()),
        }
    }
    let tree = tb.build_structure()?;
    let mut clauses = Vec::with_capacity(clause_recs.len());
    for rec in clause_recs {
        let mut clause = Vec::new();
        for tok in rec.args() {
            let (positive, name) = match tok.as_bytes()[0] {
                b'+' => (true, &tok[1..]),
                b'-' => (false, &tok[1..]),
                _ => (true, *tok),
            };
            let var = *names
                .get(name)
                .ok_or_else(|| rec.err(format!("unknown variable {name}")))?;
            clause.push(Literal { var, positive });
        }
        clauses.push(clause);
    }
    Ok(TreeChainedCnf::new(tree, variant, k, vars, clauses)?)
}

fn write_cnf(out: &mut String, c: &TreeChainedCnf) {
    let _ = writeln!(out, "cnf {} {}", c.variant().as_str(), c.k());
    write_tree(out, c.tree());
    for v in c.vars() {
        let _ = write!(out, "var {} {}", v.node + 1, v.name);
        if let Some(s) = v.slot {
            let _ = write!(out, " {}", s + 1);
        }
        out.push('\n');
    }
    for clause in c.clauses() {
        out.push('c');
        for l in clause {
            let sign = if l.positive { '+' } else { '-' };
            let _ = write!(out, " {}{}", sign, c.vars()[l.var].name);
        }
        out.push('\n');
    }
}

// ---- list coloring ----

fn parse_listcol(recs: &[Record]) -> Result<ListColoringInstance, FormatError> {
    let kind_rec = expect_kind(recs, "listcol")?;
    kind_rec.arity(1)?;
    let kind = match kind_rec.tokens[1] {
        "list" => ListColoringKind::Lists,
        "precol" => ListColoringKind::Precoloring,
        k => return Err(kind_rec.err(format!("unknown list coloring kind '{k}'"))),
    };
    let mut gb = GraphBuilder::default();
    let mut tb = TreeBuilder::default();
    let mut bb = BagBuilder::default();
    let mut palette: Option<BTreeSet<usize>> = None;
    let mut list_recs = Vec::new();
    let mut pre_recs = Vec::new();
    for rec in &recs[1..] {
        if gb.offer(rec)? || tb.offer(rec)? || bb.offer(rec)? {
            continue;
        }
        match rec.key() {
            "palette" => {
                if palette.is_some() {
                    return Err(rec.err("duplicate 'palette' record"));
                }
                palette = Some(rec.ids_from(0)?.into_iter().collect());
            }
            "list" => {
                rec.min_arity(1)?;
                list_recs.push(rec);
            }
            "pre" => {
                rec.arity(2)?;
                pre_recs.push(rec);
            }
            _ => return Err(rec.unexpected()),
        }
    }
    let graph = gb.build()?;
    let palette = palette.ok_or_else(|| FormatError::syntax(0, "missing 'palette' record"))?;
    let n = graph.n();
    let mut lists: Vec<Option<BTreeSet<usize>>> = vec![None; n];
    for rec in list_recs {
        let v = rec.id(0)?;
        if v >= n {
            return Err(rec.err(format!("list for unknown vertex {}", v + 1)));
        }
        if lists[v].is_some() {
            return Err(rec.err(format!("duplicate list for vertex {}", v + 1)));
        }
        lists[v] = Some(rec.ids_from(1)?.into_iter().collect());
    }
    let lists = lists
        .into_iter()
        .map(|l| l.unwrap_or_else(|| palette.clone()))
        .collect();
    let mut pre = BTreeMap::new();
    for rec in pre_recs {
        let (v, c) = (rec.id(0)?, rec.id(1)?);
        if pre.insert(v, c).is_some() {
            return Err(rec.err(format!("vertex {} precolored twice", v + 1)));
        }
    }
    let decomposition = if tb.present() {
        Some(bb.build(tb.build()?)?)
    } else if bb.present() {
        return Err(FormatError::syntax(0, "'bag' records need a 't' record"));
    } else {
        None
    };
    Ok(ListColoringInstance::new(
        kind,
        graph,
        palette,
        lists,
        pre,
        decomposition,
    )?)
}

fn write_listcol(out: &mut String, l: &ListColoringInstance) {
    let _ = writeln!(out, "listcol {}", l.kind().as_str());
    write_graph(out, l.graph());
    out.push_str("palette");
    for c in l.palette() {
        let _ = write!(out, " {}", c + 1);
    }
    out.push('\n');
    for (v, list) in l.lists().iter().enumerate() {
        if list != l.palette() {
            let _ = write!(out, "list {}", v + 1);
            for c in list {
                let _ = write!(out, " {}", c + 1);
            }
            out.push('\n');
        }
    }
    for (v, c) in l.precolored() {
        let _ = writeln!(out, "pre {} {}", v + 1, c + 1);
    }
    if let Some(td) = l.decomposition() {
        write_td(out, td);
    }
}

// ---- log-treewidth graph problems ----

fn parse_logtw(recs: &[Record]) -> Result<LogTwGraphInstance, FormatError> {
    let kind = expect_kind(recs, "logtw")?;
    kind.arity(3)?;
    let problem = GraphProblem::parse(kind.tokens[1])
        .ok_or_else(|| kind.err(format!("unknown problem '{}'", kind.tokens[1])))?;
    let k = kind.num(1)?;
    let threshold = kind.num(2)?;
    let mut gb = GraphBuilder::default();
    let mut tb = TreeBuilder::default();
    let mut bb = BagBuilder::default();
    let mut blue = BTreeSet::new();
    for rec in &recs[1..] {
        if gb.offer(rec)? || tb.offer(rec)? || bb.offer(rec)? {
            continue;
        }
        if rec.key() == "blue" {
            blue.extend(rec.ids_from(0)?);
        } else {
            return Err(rec.unexpected());
        }
    }
    let graph = gb.build()?;
    let td = bb.build(tb.build()?)?;
    Ok(LogTwGraphInstance::new(problem, graph, td, threshold, k, blue)?)
}

fn write_logtw(out: &mut String, g: &LogTwGraphInstance) {
    let _ = writeln!(
        out,
        "logtw {} {} {}",
        g.problem().as_str(),
        g.k(),
        g.threshold()
    );
    write_graph(out, g.graph());
    write_td(out, g.decomposition());
    if !g.blue().is_empty() {
        out.push_str("blue");
        for v in g.blue() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
}

/// A standalone computation-tree shape: a `t` record and its `a` links.
pub fn parse_shape(text: &str) -> Result<StructureTree, FormatError> {
    let recs = records(text)?;
    let mut tb = TreeBuilder::default();
    for rec in &recs {
        if !tb.offer(rec)? {
            return Err(rec.unexpected());
        }
    }
    tb.build_structure()
}

pub fn serialize_shape(t: &StructureTree) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    write_tree(&mut out, t);
    out
}

// ---- solutions ----

/// A certificate for one of the instance families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// Chosen vertices (TCMC, graph problems) or true variables (CNF).
    Set(BTreeSet<usize>),
    /// One color per vertex.
    Coloring(Vec<usize>),
    /// Per-shape-node configurations of an accepting run.
    Run(Vec<crate::machine::Configuration>),
}

impl Solution {
    pub fn as_set(&self) -> Option<&BTreeSet<usize>> {
        match self {
            Solution::Set(s) => Some(s),
            _ => None,
        }
    }
}

/// Checks a solution against the instance's own constraints.
pub fn check_solution(inst: &Instance, sol: &Solution) -> bool {
    match (inst, sol) {
        (Instance::Tcmc(t), Solution::Set(s)) => t.is_solution(s),
        (Instance::Cnf(c), Solution::Set(s)) => c.is_solution(s),
        (Instance::LogTw(g), Solution::Set(s)) => g.is_solution(s),
        (Instance::ListColoring(l), Solution::Coloring(c)) => l.is_solution(c),
        (Instance::Atm(a), Solution::Run(r)) => a.is_accepting_run(r),
        _ => false,
    }
}

/// `sol` record for a solution. CNF assignments list true variable names.
pub fn serialize_solution(inst: &Instance, sol: &Solution) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    match sol {
        Solution::Set(s) => {
            out.push_str("sol");
            for &x in s {
                match inst {
                    Instance::Cnf(c) => {
                        let _ = write!(out, " {}", c.vars()[x].name);
                    }
                    _ => {
                        let _ = write!(out, " {}", x + 1);
                    }
                }
            }
            out.push('\n');
        }
        Solution::Coloring(c) => {
            out.push_str("sol");
            for x in c {
                let _ = write!(out, " {}", x + 1);
            }
            out.push('\n');
        }
        Solution::Run(configs) => {
            if let Instance::Atm(a) = inst {
                for (i, c) in configs.iter().enumerate() {
                    let _ = writeln!(out, "run {} {}", i + 1, a.machine.display_config(c));
                }
            }
        }
    }
    out
}

/// Reads a `sol` record in the context of `inst`.
pub fn parse_solution(inst: &Instance, text: &str) -> Result<Solution, FormatError> {
    let recs = records(text)?;
    let rec = match recs.as_slice() {
        [r] if r.key() == "sol" => r,
        [r, ..] => return Err(r.err("expected a single 'sol' record")),
        [] => return Err(FormatError::syntax(0, "missing 'sol' record")),
    };
    match inst {
        Instance::Cnf(c) => {
            let mut s = BTreeSet::new();
            for name in rec.args() {
                let v = c
                    .var_by_name(name)
                    .ok_or_else(|| rec.err(format!("unknown variable {name}")))?;
                s.insert(v);
            }
            Ok(Solution::Set(s))
        }
        Instance::ListColoring(_) => Ok(Solution::Coloring(rec.ids_from(0)?)),
        _ => Ok(Solution::Set(rec.ids_from(0)?.into_iter().collect())),
    }
}

// ---- lift maps ----

/// Correspondence between source items and the target items encoding them.
///
/// Items are tokens such as `v3` (vertex), `x3` (variable), `n2` (tree node).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftMap {
    pub entries: Vec<(String, Vec<String>)>,
}

impl LiftMap {
    pub fn push(&mut self, source: impl Into<String>, targets: Vec<String>) {
        self.entries.push((source.into(), targets));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn targets_of(&self, source: &str) -> Option<&[String]> {
        self.entries
            .iter()
            .find(|(s, _)| s == source)
            .map(|(_, t)| t.as_slice())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (s, ts) in &self.entries {
            let _ = write!(out, "lift {s}");
            for t in ts {
                let _ = write!(out, " {t}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut map = LiftMap::default();
        for rec in records(text)? {
            if rec.key() != "lift" {
                return Err(rec.unexpected());
            }
            rec.min_arity(1)?;
            map.push(
                rec.tokens[1],
                rec.tokens[2..].iter().map(|s| s.to_string()).collect(),
            );
        }
        Ok(map)
    }
}

/// Decomposition as a standalone `td` file.
pub fn serialize_decomposition(td: &TreeDecomposition) -> String {
    serialize_instance(&Instance::Decomposition(td.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph_parses() {
        let g = parse_instance(FormatTag::Graph, "p graph 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, Instance::Graph(Graph::from_edges(2, &[(0, 1)]).unwrap()));
    }

    #[test]
    fn empty_graph_serializes_to_header_line() {
        let s = serialize_instance(&Instance::Graph(Graph::new(3)));
        assert_eq!(s, "xalpwb 1\np graph 3 0\n");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_instance(FormatTag::Graph, "xalpwb 1\np graph 2 1\n\ne 1 x\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 4, .. }), "{err}");
        let err = parse_instance(FormatTag::Graph, "xalpwb 2\np graph 1 0\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
        let err = parse_instance(FormatTag::Graph, "p graph 2 2\ne 1 2\n").unwrap_err();
        assert!(err.to_string().contains("announces 2 edges"));
    }

    #[test]
    fn single_class_tcmc() {
        let text = "tcmc clique 1\nt 1\np graph 1 0\nclass 1 1 1\n";
        let inst = parse_instance(FormatTag::Tcmc, text).unwrap();
        assert_eq!(parse_any(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn tcmc_non_incident_edge_is_named() {
        let text = "tcmc clique 1\nt 3\na 1 2 1\na 2 3 1\np graph 3 1\ne 1 3\n\
                    class 1 1 1\nclass 2 1 2\nclass 3 1 3\n";
        let err = parse_instance(FormatTag::Tcmc, text).unwrap_err();
        assert!(err.to_string().contains("edge joins non-incident classes"), "{err}");
    }

    #[test]
    fn cnf_with_one_clause_round_trips() {
        let text = "cnf negative 1\nt 2\na 1 2 1\nvar 1 a 1\nvar 2 b 1\nc -a -b\n";
        let inst = parse_instance(FormatTag::Cnf, text).unwrap();
        let out = serialize_instance(&inst);
        assert_eq!(out.lines().filter(|l| l.starts_with("c ")).count(), 1);
        assert_eq!(parse_any(&out).unwrap(), inst);
    }

    #[test]
    fn empty_clause_round_trips() {
        let text = "cnf positive 1\nt 1\nvar 1 a 1\nc\n";
        let inst = parse_instance(FormatTag::Cnf, text).unwrap();
        assert_eq!(parse_any(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn listcol_and_logtw_round_trip() {
        let text = "listcol list\np graph 2 1\ne 1 2\npalette 1 2 3\nlist 1 1\npre 2 2\n\
                    t 1\nbag 1 1 2\n";
        let inst = parse_any(text).unwrap();
        assert_eq!(parse_any(&serialize_instance(&inst)).unwrap(), inst);
        let text = "logtw rbds 2 1\np graph 3 2\ne 1 2\ne 2 3\nt 1\nbag 1 1 2 3\nblue 1 3\n";
        let inst = parse_any(text).unwrap();
        assert_eq!(parse_any(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn lift_map_round_trips() {
        let mut m = LiftMap::default();
        m.push("v1", vec!["v1".into(), "v4".into()]);
        m.push("v2", vec![]);
        assert_eq!(LiftMap::parse(&m.serialize()).unwrap(), m);
    }
}
