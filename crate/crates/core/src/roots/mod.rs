//! Root data of rank at most 8, Kac's classification of order-p elements
//! with semisimple centralizer, Weyl characters, and the lattice model of
//! the spherical Hecke algebra.
//!
//! In the lattice model the Smith operator is literally restriction of
//! Weyl-invariant functions followed by reduction mod p, so the content
//! worth checking is the centralizer datum itself (computed twice, by
//! affine-diagram deletion and by a congruence on roots) and the
//! compatibility of coroots with the inclusion of dual groups.

mod cartan;
mod character;
mod datum;
mod kac;

pub use cartan::{components, type_label, CartanType};
pub use character::{
    check_weyl_subgroup, decompose, level, parse_weight, restrict_invariants, weight_key, weyl_character, InvariantElement,
    ShaModel,
};
pub use datum::{determinant, pair, solve_rational, Isogeny, Rat, RootDatum};
pub use kac::{
    affine_deletion, center_check, centralizer_datum, congruence_subsystem, kac_nodes, kac_order_p_nodes,
    verify_coroot_compatibility, CenterReport, CorootReport, KacNode,
};
