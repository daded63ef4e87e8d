//! Position-space wave functions and differential operators.

pub mod diffop;
pub mod special;
pub mod states;
pub mod t1rep;
pub mod waveform;

pub use diffop::{apply_coeffs, flat_connection_rep, position_op, position_variant_op, CompiledDiffOp, DiffOpSpec};
pub use special::{hermite, laguerre, special_eval, SpecialKind};
pub use states::{gauge_phase, psi_fock, psi_fock_form, psi_t1, psi_t1_form};
pub use t1rep::{fit_kernel, t1_overlap_jet, t1rep_apply};
pub use waveform::{Jet, SpecialFactor, WaveForm};
