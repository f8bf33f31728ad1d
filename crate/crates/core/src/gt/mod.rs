//! Gelfand-Tsetlin modules of so_N and the shift operators between them.

pub mod coeff;
pub mod pattern;
pub mod rep;
pub mod shift;
pub mod verify;

pub use coeff::{a_coeff, l_value};
pub use pattern::{enumerate_patterns, is_dominant, GTPattern};
pub use rep::{max_abs, rep_matrices, CMat, RepAction};
pub use shift::{build_shift, build_shift_with, shift_indices, shift_weight, ShiftData};
pub use verify::{
    all_shift_reports, c_action_scalar, center_action, pf_diagonal, shift_reports, verify_no_x, verify_pf_shift, verify_pipi, verify_x1, verify_x2,
    GtReport, ShiftCheck,
};
