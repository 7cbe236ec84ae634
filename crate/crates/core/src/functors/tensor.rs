use crate::caps::Caps;
use crate::cones::{reduce_to_extreme_rays, ConvexBody, PolyCone};
use crate::error::{Error, Result};
use crate::qlinalg::{kron, QVector, Rational};

/// `A ⊗ B = Cone{a ⊗ b}` in row-major Kronecker coordinates (`i·d_B + j`).
pub fn tensor_cone(a: &PolyCone, b: &PolyCone) -> Result<PolyCone> {
    let gens: Vec<QVector> = a.rays().iter().flat_map(|x| b.rays().iter().map(move |y| kron(x, y))).collect();
    reduce_to_extreme_rays(a.dim() * b.dim(), &gens)
}

/// `(p, q, p ⊗ q)`.
pub fn tensor_point(p: &[Rational], q: &[Rational]) -> QVector {
    let mut v = p.to_vec();
    v.extend(q.iter().cloned());
    v.extend(kron(p, q));
    v
}

/// `P ⊗ Q = Conv{(p, q, p⊗q)}` with its coordinate layout.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorBody {
    pub body: ConvexBody,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl TensorBody {
    pub fn dim(&self) -> usize {
        self.body.dim()
    }
}

pub fn tensor_body(p: &ConvexBody, q: &ConvexBody, caps: &Caps) -> Result<TensorBody> {
    caps.check_factor("left factor", p.vertices().len())?;
    caps.check_factor("right factor", q.vertices().len())?;
    let (d1, d2) = (p.dim(), q.dim());
    let e = d1 + d2 + d1 * d2;
    if e > caps.tensor_dim {
        return Err(Error::SizeCap(format!("tensor body dimension {e} exceeds the cap {}", caps.tensor_dim)));
    }
    let pts: Vec<QVector> =
        p.vertices().iter().flat_map(|v| q.vertices().iter().map(move |w| tensor_point(v, w))).collect();
    let body = ConvexBody::hull_of(e, &pts)?;
    if body.vertices().len() != pts.len() {
        return Err(Error::Validation(format!(
            "only {} of the {} vertex products are extreme",
            body.vertices().len(),
            pts.len()
        )));
    }
    Ok(TensorBody { body, left_dim: d1, right_dim: d2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qvec};

    #[test]
    fn segment_squared_is_a_tetrahedron() {
        let seg = ConvexBody::interval(q(-1), q(1)).unwrap();
        let t = tensor_body(&seg, &seg, &Caps::default()).unwrap();
        let mut expect = vec![qvec(&[1, 1, 1]), qvec(&[-1, 1, -1]), qvec(&[-1, -1, 1]), qvec(&[1, -1, -1])];
        expect.sort();
        assert_eq!(t.body.vertices(), expect.as_slice());
    }

    #[test]
    fn triangle_times_segment_has_six_vertices() {
        let tri = ConvexBody::from_vertices(2, &[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])]).unwrap();
        let seg = ConvexBody::interval(q(-1), q(1)).unwrap();
        let t = tensor_body(&tri, &seg, &Caps::default()).unwrap();
        assert_eq!(t.body.vertices().len(), 6);
        assert_eq!(t.dim(), 5);
    }

    #[test]
    fn orthant_tensor_is_orthant() {
        let o = PolyCone::nonneg_orthant(2);
        assert_eq!(tensor_cone(&o, &o).unwrap(), PolyCone::nonneg_orthant(4));
    }
}
