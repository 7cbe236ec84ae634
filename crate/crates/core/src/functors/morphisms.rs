use super::hom::hom_cone;
use super::sym::{sym_cone, sym_power_matrix};
use super::tensor::tensor_cone;
use crate::cones::{extreme_rays_of_h, ConeMorphism, PolyCone};
use crate::error::{Error, Result};
use crate::qlinalg::{conic_combination, ints_to_q, rank, QMatrix, QVector};

/// Which functor to apply to a morphism.
#[derive(Debug, Clone)]
pub enum FunctorTag {
    /// `f ⊗ g`.
    TensorWith(ConeMorphism),
    /// `Symⁿ(f)`.
    Sym(usize),
    /// `Hom(A, f) : Hom(A, C) → Hom(A, D)`, `F ↦ f∘F`.
    HomPost(PolyCone),
    /// `Hom(f, B) : Hom(D, B) → Hom(C, B)`, `F ↦ F∘f`.
    HomPre(PolyCone),
}

/// Functor applied to `f : C → D`; the result is checked to map generators into the target.
pub fn induced_map(f: &ConeMorphism, tag: &FunctorTag) -> Result<ConeMorphism> {
    match tag {
        FunctorTag::TensorWith(g) => ConeMorphism::new(
            f.matrix.kron(&g.matrix),
            tensor_cone(&f.source, &g.source)?,
            tensor_cone(&f.target, &g.target)?,
        ),
        FunctorTag::Sym(n) => {
            ConeMorphism::new(sym_power_matrix(&f.matrix, *n), sym_cone(&f.source, *n)?, sym_cone(&f.target, *n)?)
        }
        FunctorTag::HomPost(a) => ConeMorphism::new(
            f.matrix.kron(&QMatrix::identity(a.dim())),
            hom_cone(a, &f.source)?,
            hom_cone(a, &f.target)?,
        ),
        FunctorTag::HomPre(b) => ConeMorphism::new(
            QMatrix::identity(b.dim()).kron(&f.matrix.transpose()),
            hom_cone(&f.target, b)?,
            hom_cone(&f.source, b)?,
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub strongly_injective: bool,
    pub surjective: bool,
}

/// Strong injectivity: `f` injective and `f⁻¹(D) = C`, comparing the
/// extreme rays of the pulled-back inequality system with those of `C`.
pub fn is_strongly_injective(f: &ConeMorphism) -> Result<bool> {
    if rank(&f.matrix) < f.matrix.cols() {
        return Ok(false);
    }
    let ft = f.matrix.transpose();
    let pulled: Vec<QVector> = f.target.facets().iter().map(|h| ft.mul_vec(h)).collect::<Result<_>>()?;
    let rays = extreme_rays_of_h(&pulled, f.source.dim())?;
    let mut rays: Vec<QVector> = rays.iter().map(|r| ints_to_q(r)).collect();
    rays.sort();
    Ok(rays == f.source.rays())
}

/// Surjectivity: every extreme ray of `D` is a conic combination of images of generators of `C`.
pub fn is_surjective(f: &ConeMorphism) -> Result<bool> {
    let images: Vec<QVector> = f.source.rays().iter().map(|r| f.matrix.mul_vec(r)).collect::<Result<_>>()?;
    for r in f.target.rays() {
        if conic_combination(&images, r)?.is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify_morphism(f: &ConeMorphism) -> Result<Classification> {
    Ok(Classification { strongly_injective: is_strongly_injective(f)?, surjective: is_surjective(f)? })
}

/// The facet embedding `C → ℝᵐ₊`, `x ↦ (h₁·x, …, h_m·x)`.
pub fn facet_embedding(c: &PolyCone) -> Result<ConeMorphism> {
    let m = QMatrix::from_rows(c.facets())?;
    if m.rows() == 0 {
        return Err(Error::Input("cone has no facets".into()));
    }
    ConeMorphism::new(m, c.clone(), PolyCone::nonneg_orthant(c.facets().len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::qvec;

    fn c_x() -> PolyCone {
        PolyCone::new(3, &[qvec(&[1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[-1, -1, 1])]).unwrap()
    }

    #[test]
    fn facet_embedding_is_strongly_injective() {
        let phi = facet_embedding(&c_x()).unwrap();
        let c = classify_morphism(&phi).unwrap();
        assert!(c.strongly_injective && !c.surjective);
        let d = classify_morphism(&phi.dual()).unwrap();
        assert!(d.surjective && !d.strongly_injective);
    }

    #[test]
    fn projection_is_surjective_only() {
        let f = ConeMorphism::new(
            QMatrix::from_i64(&[&[1, 0]]),
            PolyCone::nonneg_orthant(2),
            PolyCone::nonneg_orthant(1),
        )
        .unwrap();
        assert_eq!(classify_morphism(&f).unwrap(), Classification { strongly_injective: false, surjective: true });
    }

    #[test]
    fn identities_are_preserved() {
        let c = c_x();
        let id = ConeMorphism::identity(&c);
        for tag in [
            FunctorTag::TensorWith(ConeMorphism::identity(&PolyCone::nonneg_orthant(2))),
            FunctorTag::Sym(2),
            FunctorTag::HomPost(PolyCone::nonneg_orthant(2)),
            FunctorTag::HomPre(PolyCone::nonneg_orthant(2)),
        ] {
            let g = induced_map(&id, &tag).unwrap();
            assert_eq!(g.matrix, QMatrix::identity(g.matrix.rows()));
            assert_eq!(g.source, g.target);
        }
    }
}
