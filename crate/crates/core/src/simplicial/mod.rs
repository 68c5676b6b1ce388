//! Finite simplicial complexes, cyclic `p`-group actions, and the calculus
//! of constructible functions on them.

mod action;
mod cfun;
mod complex;
mod map;
mod smith;
mod subdivide;

pub use action::GComplex;
pub use cfun::{
    dualize, euler_integral, extend_by_zero, pullback, pullback_shriek, pushforward, pushforward_star, restrict,
    specialize, standard_costandard, CFun, Sign,
};
pub use complex::{label_cmp, Complex};
pub use map::SimplicialMap;
pub use smith::{fixed_map, smith_restrict};
pub use subdivide::Subdivision;
