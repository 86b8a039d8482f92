//! Mobility of hexapods: Möbius photogrammetry of point 6-tuples, liaison
//! platforms, tangency conditions at bonds and self-motions in Study
//! parameters.

pub mod conformal;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod liaison;
pub mod moebius;
pub mod study;
pub mod tuple;

pub use error::{Error, Result};
pub use moebius::{
    matched_directions, moebius_general_test, photographic_map, quadric_pencil, residual_intersection_count,
    segre_check, t_plane_roots, MapClass, MoebiusMap, ParamPt, QuadricPencil,
};
pub use tuple::{Hexapod, Point, SixTuple};
