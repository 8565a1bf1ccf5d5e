//! The reduction chain, each reduction addressable by a stable name.
//!
//! Every reduction maps a source [`Instance`] to a [`ReductionArtifact`] and
//! can carry solutions both ways between the two instances.

mod atm;
mod cnf;
mod covers;
mod listcol;
mod logtw;
mod tcmc;

pub use atm::{reduce_atm_to_tcmc, AtmToTcmc, BlockPos, VertexLabel};
pub use cnf::{reduce_negcnf_to_poscnf, reduce_partitioned_to_general_cnf, NegToPos, PartToGeneral};
pub use covers::{reduce_is_to_vc, reduce_rbds_to_ds, reduce_vc_to_rbds, IsToVc, RbdsToDs, VcToRbds};
pub use listcol::{reduce_listcoloring_to_precoloring, ListToPre};
pub use logtw::{clause_gadget, reduce_poscnf_to_logtw_is, PosToLogTw};
pub use tcmc::{
    complement_tcmc_to_tcmis, reduce_tcmis_to_listcoloring, reduce_tcmis_to_negcnf, Complement,
    TcmisToList, TcmisToNeg,
};

use crate::decomposition::TreeDecomposition;
use crate::error::ReductionError;
use crate::format::{LiftMap, Solution};
use crate::instances::Instance;

/// Output of one reduction step.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub name: &'static str,
    pub target: Instance,
    pub k_in: usize,
    pub k_out: usize,
    /// Tag of the parameter bound, e.g. `k'=k`.
    pub growth: &'static str,
    /// Largest `k_out` the bound allows for `k_in`.
    pub k_bound: usize,
    pub lift: LiftMap,
    pub witness: Option<TreeDecomposition>,
    /// Remarks about the construction, e.g. clauses that became empty.
    pub notes: Vec<String>,
}

impl ReductionArtifact {
    pub fn growth_line(&self) -> String {
        format!("k={} k'={} bound={}", self.k_in, self.k_out, self.growth)
    }

    pub fn growth_ok(&self) -> bool {
        self.k_out <= self.k_bound
    }
}

pub trait Reduction: Sync {
    fn name(&self) -> &'static str;

    /// Source family names accepted, as reported by [`Instance::family`].
    fn sources(&self) -> &'static [&'static str];

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError>;

    /// Carries a target solution back to a source solution.
    fn lift_back(&self, source: &Instance, art: &ReductionArtifact, sol: &Solution) -> Option<Solution>;

    /// Carries a source solution to a target solution.
    fn lift_forward(
        &self,
        source: &Instance,
        art: &ReductionArtifact,
        sol: &Solution,
    ) -> Option<Solution>;
}

/// Names of the registered reductions, in chain order.
pub const NAMES: [&str; 11] = [
    "atm-tcmc",
    "tcmc-tcmis",
    "tcmis-listcol",
    "listcol-precol",
    "tcmis-negcnf",
    "negcnf-poscnf",
    "part-gencnf",
    "poscnf-logtwis",
    "is-vc",
    "vc-rbds",
    "rbds-ds",
];

static REGISTRY: [&dyn Reduction; 11] = [
    &AtmToTcmc,
    &Complement,
    &TcmisToList,
    &ListToPre,
    &TcmisToNeg,
    &NegToPos,
    &PartToGeneral,
    &PosToLogTw,
    &IsToVc,
    &VcToRbds,
    &RbdsToDs,
];

/// The registered reductions.
pub fn registry() -> &'static [&'static dyn Reduction] {
    &REGISTRY
}

/// A registered reduction, or one of the chain-only stages `id` and
/// `fault-drop-clauses`.
pub fn lookup(name: &str) -> Result<&'static dyn Reduction, ReductionError> {
    match name {
        "id" => Ok(&Identity),
        "fault-drop-clauses" => Ok(&DropClauses),
        _ => REGISTRY
            .iter()
            .copied()
            .find(|r| r.name() == name)
            .ok_or_else(|| ReductionError::UnknownReduction(name.into())),
    }
}

pub(crate) fn check_source(r: &dyn Reduction, source: &Instance) -> Result<(), ReductionError> {
    let found = source.family();
    if r.sources().contains(&found) {
        Ok(())
    } else {
        Err(ReductionError::WrongFamily {
            expected: r.sources()[0],
            found,
        })
    }
}

fn item(prefix: char, id: usize) -> String {
    format!("{prefix}{}", id + 1)
}

/// Chain stage that returns its input unchanged.
pub struct Identity;

impl Reduction for Identity {
    fn name(&self) -> &'static str {
        "id"
    }

    fn sources(&self) -> &'static [&'static str] {
        &[
            "graph", "tcmc", "tcmis", "gencnf", "poscnf", "negcnf", "listcol", "precol", "is",
            "vc", "ds", "rbds", "td", "atm",
        ]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        Ok(ReductionArtifact {
            name: "id",
            target: source.clone(),
            k_in: 0,
            k_out: 0,
            growth: "k'=k",
            k_bound: 0,
            lift: LiftMap::default(),
            witness: None,
            notes: Vec::new(),
        })
    }

    fn lift_back(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(sol.clone())
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(sol.clone())
    }
}

/// Deliberately broken chain stage: drops every clause of a CNF instance.
/// Used to check that the harness reports disagreements.
pub struct DropClauses;

impl Reduction for DropClauses {
    fn name(&self) -> &'static str {
        "fault-drop-clauses"
    }

    fn sources(&self) -> &'static [&'static str] {
        &["poscnf", "negcnf", "gencnf"]
    }

    fn reduce(&self, source: &Instance) -> Result<ReductionArtifact, ReductionError> {
        check_source(self, source)?;
        let Instance::Cnf(c) = source else {
            unreachable!()
        };
        let variant = c.variant();
        let target = crate::instances::TreeChainedCnf::new(
            c.tree().clone(),
            variant,
            c.k(),
            c.vars().to_vec(),
            Vec::new(),
        )?;
        Ok(ReductionArtifact {
            name: "fault-drop-clauses",
            target: Instance::Cnf(target),
            k_in: c.k(),
            k_out: c.k(),
            growth: "k'=k",
            k_bound: c.k(),
            lift: LiftMap::default(),
            witness: None,
            notes: Vec::new(),
        })
    }

    fn lift_back(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(sol.clone())
    }

    fn lift_forward(&self, _: &Instance, _: &ReductionArtifact, sol: &Solution) -> Option<Solution> {
        Some(sol.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_names() {
        let names: Vec<&str> = registry().iter().map(|r| r.name()).collect();
        assert_eq!(names, NAMES);
        for n in NAMES {
            assert_eq!(lookup(n).unwrap().name(), n);
        }
        assert!(matches!(lookup("nope"), Err(ReductionError::UnknownReduction(_))));
    }
}
