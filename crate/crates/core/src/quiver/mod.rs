//! Quiver families, paths, the path algebra and its relation sets.

mod path;
mod relations;
mod schema;

pub use path::{compose, pathsum_mul, Path, PathSum};
pub use relations::{
    check_common_ends, default_family, inversions, normal_form, normal_form_path, relation_instances, rewrite_at,
    rewrite_sites, RelationFamily, RelationSet,
};
pub use schema::{ArrowId, QuiverSchema, VertexId, Window};
