//! Exact loop-matrix algebra for Smyth potentials.

pub mod gauge;
pub mod laurent;
pub mod matrix;
pub mod split;
pub mod symmetry;

pub use gauge::{
    build_gauge_ladder, c_minus, c_plus, c_plus_opposite_sign, gauge, ladder_product, ladder_steps,
    smyth_equivalent, GaugeLadder, LadderFactor, LadderStep, SmythPotential,
};
pub use laurent::{LaurentPoly, LaurentTerm};
pub use matrix::LoopMatrix;
pub use split::{is_block_diagonal, permutation_block_split, permutation_matrix, BlockSplit};
pub use symmetry::{check_symmetries, sample_points, ConnectionSample, SymmetryReport};
