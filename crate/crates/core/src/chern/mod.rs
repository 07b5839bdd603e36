//! Chern-class algebra of formal bundles.

mod a1;
mod bundle;
mod expansion;
mod ring;

pub use a1::{a1_ring, a1_segre_form, a1_thom, verify_a1_identity};
pub use bundle::{segre_series, super_schur, virtual_chern, FormalBundle};
pub use expansion::{expand_product_schur, stable_expand, ProductSchurExpansion, SchurKey, StableExpansion, Variance};
pub use ring::{BundleRing, GradedPolynomial, Slot};
