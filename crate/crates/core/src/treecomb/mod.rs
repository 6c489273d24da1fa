//! Rooted trees with `(r, n)`-markings: the reduced condition, canonical codes,
//! automorphism groups and enumeration of reduced isomorphism classes.

mod canon;
mod enumerate;
mod tree;

pub use canon::{
    automorphisms, canonical_children, canonical_code, canonical_order, is_automorphism, vertex_codes, AutGroup,
    CanonicalCode,
};
pub use enumerate::{enumerate_reduced, respects_flags, structural_bound, EnumFlags, StructuralBound};
pub use tree::{is_reduced, MarkedTree, Marking, Tree, VertexKind};
