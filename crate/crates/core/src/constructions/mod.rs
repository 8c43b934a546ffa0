//! Explicit equilibria of the matrix games and their building blocks.

mod diagonal;
mod expansion;
mod profiles;
mod random;
mod window;
mod witness;
mod zig;

pub use diagonal::diagonal_check;
pub use expansion::{close_to_equilibrium, expand_left, expand_right, left_cell, right_cell};
pub use profiles::{perfect_profile, semiperfect_profile, sum_windows};
pub use random::{random_cell, random_equilibrium, random_semiperfect_window, random_successor};
pub use window::{verify_matrix_profile, MatrixProfile, MatrixWindow};
pub use witness::{f_profile, g1_witness, g2_witness, g_profile, gn_witness};
pub use zig::zig_sequence;
