//! Exact arithmetic substrate: rationals, dense rational matrices,
//! multivariate polynomials and vector-valued interpolation.

mod interp;
mod mat;
mod poly;
mod rat;

pub use interp::{interpolate_vector_poly, interpolate_with_nodes};
pub use mat::{Kernel, Mat, Rref};
pub use poly::{evaluated_rank, generic_rank, poly_det, GenericRank, Poly};
pub use rat::{factorial, fmt_rat, parse_rat, rat, ratio, Rat};
