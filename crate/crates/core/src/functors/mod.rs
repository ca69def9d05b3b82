//! Quiver morphisms and the functors they induce between representation categories.

mod extension;
mod morphism;

pub use extension::{
    orbit_canonical, preimage_relations, pullback_default_relations, pushforward_left, pushforward_morphism,
    pushforward_right, restrict, translate, LazyRep,
};
pub use morphism::{is_covering, lift_path, morphism_f, morphism_g, Covering, QuiverMorphism};
