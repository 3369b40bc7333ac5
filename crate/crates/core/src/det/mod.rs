//! Wronskian, imaginary-shift Casoratian and real-shift Casoratian determinants.

mod bareiss;
mod families;

pub use bareiss::{det, det_float};
pub use families::{
    casoratian_imag, casoratian_imag_matrix, casoratian_real, casoratian_real_grid, casoratian_real_matrix,
    imag_node, scale_by, wronskian, wronskian_common_den, wronskian_exp, wronskian_exp_parts, wronskian_matrix, GridDet,
};
