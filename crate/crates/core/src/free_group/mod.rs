//! The free group `pi = F<a_1, b_1, .., a_g, b_g>`: words, automorphisms induced
//! by Dehn twists, Magnus expansion and the lower central series.

pub mod endo;
pub mod lie;
pub mod magnus;
pub mod word;

pub use endo::{dehn_twist_generator, parse_mapping_class, FreeEndomorphism, MappingClass, TwistGenerator};
pub use lie::{boundary_twist_class, expected_boundary_twist_class, LieElement};
pub use magnus::{johnson_depth, lcs_depth, magnus_expansion, TruncatedMagnusSeries};
pub use word::{boundary_word, FreeWord, Letter};
