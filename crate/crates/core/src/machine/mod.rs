//! Machine descriptions and the four acceptance evaluators.

mod alternating;
mod altstack;
mod balanced;
mod bundle;
mod config;
mod shaped;
mod spec;
mod stack;
mod via_alternation;

pub use alternating::eval_alternating;
pub use altstack::eval_alternating_as_stack;
pub use balanced::eval_balanced;
pub use bundle::{AtmInstance, Blocks};
pub use config::{Configuration, ResourceBudget, Run, RunStats};
pub use shaped::{check_shaped_run, find_run_with_tree_shape, run_with_tree_shape};
pub use spec::{
    parse_machine, serialize_machine, Action, MachineSpec, Mode, StackOp, Transition, LEFT_END,
    RIGHT_END,
};
pub use stack::eval_stack;
pub use via_alternation::eval_stack_via_alternation;

pub(crate) use bundle::{parse_atm_records, write_atm};

use crate::error::MachineError;

fn tape_for(machine: &MachineSpec, input: &str) -> Result<Vec<u8>, MachineError> {
    machine.tape(input)
}

fn check_work_budget(machine: &MachineSpec, budget: &ResourceBudget) -> bool {
    budget.work_cells.is_none_or(|w| machine.work_cells <= w)
}

fn require_stack_free(machine: &MachineSpec) -> Result<(), MachineError> {
    if machine.stack {
        return Err(MachineError::NotApplicable(
            "alternating semantics needs a stack-free machine".into(),
        ));
    }
    Ok(())
}
