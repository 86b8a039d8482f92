//! Exact and high-precision arithmetic for the hexapod pipeline.
//!
//! Rationals come from GMP through `rug`, Gaussian rationals are pairs of
//! them, and polynomials are sparse maps from exponent vectors to
//! coefficients kept in graded-lexicographic order.

mod bigcomplex;
mod error;
mod field;
mod gauss;
mod gcd;
mod linalg;
mod modgcd;
mod mono;
mod mpoly;
mod rat;
mod reconstruct;
mod resultant;
mod roots;
mod upoly;

pub use bigcomplex::{eval_cpoly, eval_mpoly, eval_upoly, BigComplex, CMatrix, CRank};
pub use gcd::{monic, normalize};
pub use error::{Error, Result};
pub use field::Field;
pub use gauss::GaussRat;
pub use gcd::{mpoly_gcd, mpoly_gcd_many, primitive_part, upoly_gcd};
pub use linalg::Matrix;
pub use mono::{Mono, MAX_VARS};
pub use mpoly::MPoly;
pub use rat::{parse_rat, rat, rat_to_string, Rat};
pub use reconstruct::{rational_reconstruct, rational_reconstruct_complex, rational_reconstruct_tol};
pub use resultant::{det_bareiss, resultant_dense, sylvester_matrix, sylvester_resultant, sylvester_resultant_formal};
pub use roots::{aberth, roots_complex, roots_numeric, RootsResult};
pub use upoly::UPoly;

pub use rug::{Float, Integer};
