//! Pointed full-dimensional polyhedral cones, marked cones and convex bodies,
//! with duality, products, membership and face structure.

mod body;
mod dd;
mod faces;
mod morphism;
mod polycone;

pub use body::{body_product, lift_body, marked_product, slice_cone, ConvexBody, Facet, MarkedCone};
pub use dd::extreme_rays_of_h;
pub use faces::{face_lattice, is_face, is_face_of_points, validate_supporting, Face, FaceCap};
pub use morphism::ConeMorphism;
pub use polycone::{cone_product, dual_cone, reduce_to_extreme_rays, Membership, PolyCone};
