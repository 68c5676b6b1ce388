//! Orthogonal and symplectic groups over `F_2` and `F_4`: the inclusion
//! `O(2a) ⊆ Sp(2a)` coming from the alternating polar form, the map
//! `O(2a+1) × O(2b+1) → O(2a+2b+1)` through a radical line, and the
//! primitivity of `F4` roots.

mod embed;
mod f4;
mod field;
mod form;

pub use embed::{odd_orthogonal_sum_embedding, so_to_sp, Coverage, Failure, OddSumEmbedding, OddSumReport, SoSpReport};
pub use f4::{f4_primitivity_check, F4Report};
pub use field::{Gf, GfMat};
pub use form::{all_vectors, dickson_invariant, QuadForm};
