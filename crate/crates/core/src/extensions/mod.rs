//! Split extensions and the τ-map, commutator inclusion checks, braid groups,
//! extensions with factor sets and torsion search.

mod braid;
mod factor;
mod semidirect;

use thiserror::Error;

use crate::finite::FiniteError;
use crate::nilpotent::{NilpotentError, PcError};
use crate::pgroups::PGroupError;

pub use braid::{
    artin_action, braid_action_on_pure, braid_quotient, braid_quotient_with, pure_braid_presentation, pure_braid_word, transversal_word,
    BraidAction, BraidQuotient, BraidWord, Permutation,
};
pub use factor::{
    brute_force_torsion, lcm_report, torsion_search, torsion_search_with, ExtensionWithFactorSet, LcmReport, SearchBounds, TorsionReport,
    TorsionVerdict, TorsionWitness,
};
pub use semidirect::{
    acts_unipotently, falk_randell_inclusion_check, hall_inclusion_check, iterated_unipotence_check, split_fixtures, tau_equation_check,
    SemidirectProduct,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("strand count {0} outside the supported range")]
    StrandCount(usize),
    #[error("class {0} outside the supported range")]
    Class(usize),
    #[error("action does not respect the relations of the acting group: {0}")]
    ActionMismatch(String),
    #[error("factor set fails the cocycle identity at {0:?}")]
    Cocycle((usize, usize, usize)),
    #[error("factor set is incompatible with the action at {0:?}")]
    Compatibility((usize, usize)),
    #[error("factor set is not normalized")]
    NotNormalized,
    #[error("kernel has torsion")]
    KernelTorsion,
    #[error("action does not preserve the lower central series layers")]
    LayerNotPreserved,
    #[error("torsion search was inconclusive within its bounds")]
    Inconclusive,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    PGroup(#[from] PGroupError),
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
    #[error(transparent)]
    Pc(#[from] PcError),
}
