//! Nilpotent groups: polycyclic presentations with collection, free
//! nilpotent groups, the nilpotent quotient engine and torsion subgroups.

mod free;
mod nq;
pub(crate) mod pc;
mod subgroup;
mod torsion;

use thiserror::Error;

pub use crate::snf::{abelian_invariants, snf, AbelianInvariants, IntMatrix, SnfResult};
pub use free::{bracket_word, free_nilpotent, FreeNilpotent};
pub use nq::{nq, nq_with, NilpotentQuotient, NqConfig};
pub use pc::{ExpVec, PcError, PcGenerator, PcJson, PcPresentation};
pub use subgroup::{Quotient, Subgroup};
pub use torsion::{enough_tf_probe, enough_tf_probe_with, torsion_subgroup, TfProbe, TfProbeEntry, TorsionInfo};

pub const DEFAULT_CLASS_CAP: usize = 6;
pub const DEFAULT_GENERATOR_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("rank and class must be positive")]
    Degenerate,
    #[error("more than {cap} pc generators required")]
    GeneratorCap { cap: usize },
    #[error("class {class} exceeds the class cap {cap}")]
    ClassCap { class: usize, cap: usize },
}
