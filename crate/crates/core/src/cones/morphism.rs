use super::polycone::{dual_cone, PolyCone};
use crate::error::{Error, Result};
use crate::qlinalg::{format_rational, QMatrix};

/// Linear map `f : LC₁ → LC₂` with `f(C₁) ⊆ C₂`; the matrix is `dim C₂ × dim C₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeMorphism {
    pub matrix: QMatrix,
    pub source: PolyCone,
    pub target: PolyCone,
}

impl ConeMorphism {
    pub fn new(matrix: QMatrix, source: PolyCone, target: PolyCone) -> Result<Self> {
        if matrix.cols() != source.dim() || matrix.rows() != target.dim() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but source has dimension {} and target {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for r in source.rays() {
            let img = matrix.mul_vec(r)?;
            if !target.contains(&img)? {
                return Err(Error::Input(format!(
                    "generator {:?} is not mapped into the target cone",
                    r.iter().map(format_rational).collect::<Vec<_>>()
                )));
            }
        }
        Ok(ConeMorphism { matrix, source, target })
    }

    pub fn identity(c: &PolyCone) -> Self {
        ConeMorphism { matrix: QMatrix::identity(c.dim()), source: c.clone(), target: c.clone() }
    }

    /// `fᵀ : D* → C*`.
    pub fn dual(&self) -> ConeMorphism {
        ConeMorphism {
            matrix: self.matrix.transpose(),
            source: dual_cone(&self.target),
            target: dual_cone(&self.source),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ConeMorphism) -> Result<ConeMorphism> {
        if other.target != self.source {
            return Err(Error::Input("composition of morphisms with mismatched cones".into()));
        }
        Ok(ConeMorphism { matrix: self.matrix.mul(&other.matrix)?, source: other.source.clone(), target: self.target.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::qvec;

    #[test]
    fn projection_and_dual() {
        let src = PolyCone::nonneg_orthant(2);
        let tgt = PolyCone::nonneg_orthant(1);
        let f = ConeMorphism::new(QMatrix::from_i64(&[&[1, 0]]), src.clone(), tgt.clone()).unwrap();
        let d = f.dual();
        assert_eq!(d.matrix, QMatrix::from_i64(&[&[1], &[0]]));
        assert!(ConeMorphism::new(QMatrix::from_i64(&[&[1, -1]]), src, tgt).is_err());
        let c = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[1, 1])]).unwrap();
        let id = ConeMorphism::identity(&c);
        assert_eq!(id.compose(&id).unwrap(), id);
    }
}
