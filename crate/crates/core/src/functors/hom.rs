use crate::cones::{extreme_rays_of_h, PolyCone};
use crate::error::Result;
use crate::qlinalg::{ints_to_q, kron, QMatrix, QVector, Rational};

/// `Hom(A, B) = {F : F(A) ⊆ B}`, flattened row-major (`F[r][s]` at `r·d_A + s`).
///
/// Computed as the dual of `Cone{b* ⊗ a}` over facets `b*` of `B` and rays `a` of `A`.
pub fn hom_cone(a: &PolyCone, b: &PolyCone) -> Result<PolyCone> {
    let cons: Vec<QVector> = b.facets().iter().flat_map(|h| a.rays().iter().map(move |r| kron(h, r))).collect();
    let rays = extreme_rays_of_h(&cons, a.dim() * b.dim())?;
    Ok(PolyCone::from_extreme_rays(a.dim() * b.dim(), rays.iter().map(|r| ints_to_q(r)).collect()))
}

/// Reshape a flattened `Hom` element into its `d_B × d_A` matrix.
pub fn hom_matrix(flat: &[Rational], rows: usize, cols: usize) -> Result<QMatrix> {
    QMatrix::from_flat(rows, cols, flat.to_vec())
}

/// Index permutation for `Hom(A⊗B, C) ≅ Hom(A, Hom(B, C))`:
/// entry `(c, (a, b))` of the left side is entry `((c, b), a)` of the right side.
pub fn adjunction_permutation(da: usize, db: usize, dc: usize) -> Vec<usize> {
    let mut perm = vec![0; da * db * dc];
    for c in 0..dc {
        for a in 0..da {
            for b in 0..db {
                let left = c * (da * db) + a * db + b;
                let right = (c * db + b) * da + a;
                perm[left] = right;
            }
        }
    }
    perm
}

pub fn permute(v: &[Rational], perm: &[usize]) -> QVector {
    let mut out = vec![Rational::default(); v.len()];
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::tensor_cone;
    use crate::qlinalg::qvec;

    #[test]
    fn hom_from_half_line_is_target() {
        let c = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[1, 1])]).unwrap();
        let h = hom_cone(&PolyCone::nonneg_orthant(1), &c).unwrap();
        assert_eq!(h, c);
    }

    #[test]
    fn hom_of_orthants_is_nonnegative_matrices() {
        let o = PolyCone::nonneg_orthant(2);
        assert_eq!(hom_cone(&o, &o).unwrap(), PolyCone::nonneg_orthant(4));
    }

    #[test]
    fn adjunction_on_small_cones() {
        let a = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[1, 1])]).unwrap();
        let b = PolyCone::nonneg_orthant(2);
        let c = PolyCone::new(2, &[qvec(&[1, 2]), qvec(&[2, 1])]).unwrap();
        let left = hom_cone(&tensor_cone(&a, &b).unwrap(), &c).unwrap();
        let right = hom_cone(&a, &hom_cone(&b, &c).unwrap()).unwrap();
        let perm = adjunction_permutation(2, 2, 2);
        let moved = PolyCone::new(8, &left.rays().iter().map(|r| permute(r, &perm)).collect::<Vec<_>>()).unwrap();
        assert_eq!(moved, right);
    }
}
