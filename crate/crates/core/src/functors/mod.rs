//! Tensor, symmetric, Hom and Schur functors on cones and bodies, their
//! action on morphisms, face witnesses and morphism classification.

mod hom;
mod morphisms;
mod partition;
mod schur;
mod sym;
mod tensor;
mod witness;

pub use hom::{adjunction_permutation, hom_cone, hom_matrix, permute};
pub use morphisms::{
    classify_morphism, facet_embedding, induced_map, is_strongly_injective, is_surjective, Classification, FunctorTag,
};
pub use partition::{count_ssyt, hook_content, schur_dim, Partition};
pub use schur::{schur_body, schur_images, SchurBasis, SchurBody, YoungSymmetrizer};
pub use sym::{
    lifted_to_body_index, multisets, sym_body, sym_body_monomials, sym_cone, sym_point, sym_power_matrix, sym_product,
    SymBody,
};
pub use tensor::{tensor_body, tensor_cone, tensor_point, TensorBody};
pub use witness::{product_face_census, sym_face_witness, tensor_face_witness, FaceCensus};
