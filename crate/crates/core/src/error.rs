use thiserror::Error;

/// A structural invariant of an instance type does not hold.
///
/// Identifiers in messages are 1-based, matching the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("tree: {0}")]
    Tree(String),
    #[error("edge joins non-incident classes: {{{0},{1}}}")]
    NonIncidentEdge(usize, usize),
    #[error("vertex {0} belongs to more than one class")]
    OverlappingClasses(usize),
    #[error("vertex {0} belongs to no class")]
    UnclassifiedVertex(usize),
    #[error("class ({node},{color}) out of range")]
    ClassOutOfRange { node: usize, color: usize },
    #[error("clause {0} spans non-incident tree nodes")]
    ClauseSpansNonIncidentNodes(usize),
    #[error("clause {0} violates the variant's literal polarity")]
    WrongPolarity(usize),
    #[error("variable {0} has no partition slot")]
    MissingSlot(String),
    #[error("partition cell ({node},{slot}) is empty")]
    EmptyCell { node: usize, slot: usize },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("vertex {0} has an empty color list")]
    EmptyList(usize),
    #[error("vertex {vertex}: color {color} is not available")]
    ColorNotAvailable { vertex: usize, color: usize },
    #[error("decomposition invalid: {0}")]
    Decomposition(String),
    #[error("decomposition width {width} exceeds k*ceil(log2 n) = {bound}")]
    WidthTooLarge { width: usize, bound: usize },
    #[error("red vertices {0} and {1} are adjacent")]
    RedRedEdge(usize, usize),
    #[error("red vertex {0} has no blue neighbor")]
    UndominatableRed(usize),
    #[error("{0}")]
    Other(String),
}

/// Failure to read one of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Invalid(#[from] InstanceError),
    #[error("invalid machine: {0}")]
    Machine(#[from] MachineError),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(char),
    #[error("universal state {state} has {count} actions on ({input},{work}); exactly two are required")]
    UniversalArity {
        state: String,
        input: char,
        work: char,
        count: usize,
    },
    #[error("state {0} pops but is not deterministic")]
    NondeterministicPop(String),
    #[error("deterministic state {0} has more than one applicable action")]
    Nondeterministic(String),
    #[error("stack operation in a stack-free machine")]
    StackInStackFreeMachine,
    #[error("universal state {0} in a stack machine")]
    UniversalWithStack(String),
    #[error("accepting state {0} has outgoing transitions")]
    AcceptingHasTransitions(String),
    #[error("head move {0} out of {{-1,0,1}}")]
    BadMove(i64),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("semantics not applicable: {0}")]
    NotApplicable(String),
    #[error("budget: {0}")]
    Budget(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for oracle: {needed} candidates exceed cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("instance too large for oracle: search exceeded cap {cap}")]
    SearchCapExceeded { cap: u128 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("no oracle for {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("unknown reduction {0}")]
    UnknownReduction(String),
    #[error("source instance has the wrong family: expected {expected}, found {found}")]
    WrongFamily {
        expected: &'static str,
        found: &'static str,
    },
    #[error("machine: {0}")]
    Machine(#[from] MachineError),
    #[error("instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("precondition: {0}")]
    Precondition(String),
}
