use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use super::polycone::{cone_product, reduce_to_extreme_rays, PolyCone};
use crate::error::{Error, Result};
use crate::qlinalg::{dot, scale, sub, QVector, Rational};

/// Affine inequality `a·x + b ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: QVector,
    pub offset: Rational,
}

impl Facet {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) + &self.offset
    }
}

/// Full-dimensional polytope with the origin strictly inside, given by its vertices.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<QVector>,
    cone: PolyCone,
    facets: Arc<OnceLock<Vec<Facet>>>,
}

impl PartialEq for ConvexBody {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for ConvexBody {}

fn homogenize(p: &[Rational]) -> QVector {
    let mut v = p.to_vec();
    v.push(Rational::one());
    v
}

fn dehomogenize(r: &[Rational]) -> QVector {
    let (last, head) = r.split_last().expect("nonempty ray");
    head.iter().map(|x| x / last).collect()
}

impl ConvexBody {
    /// Convex hull of `points`, dropping non-extreme ones.
    pub fn hull_of(dim: usize, points: &[QVector]) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension(format!("point of length {} in dimension {dim}", p.len())));
        }
        let lifted: Vec<QVector> = points.iter().map(|p| homogenize(p)).collect();
        let cone = match reduce_to_extreme_rays(dim + 1, &lifted) {
            Ok(c) => c,
            Err(Error::NotFullDimensional { rank, .. }) => {
                return Err(Error::Input(format!(
                    "points span an affine space of dimension {} < {dim}; the hull is not full-dimensional",
                    rank.saturating_sub(1)
                )))
            }
            Err(e) => return Err(e),
        };
        Self::from_lifted_cone(dim, cone)
    }

    /// Strict constructor: every given point must be a vertex.
    pub fn from_vertices(dim: usize, vertices: &[QVector]) -> Result<Self> {
        let body = Self::hull_of(dim, vertices)?;
        let mut given: Vec<QVector> = vertices.to_vec();
        given.sort();
        given.dedup();
        if given.len() != body.vertices.len() {
            return Err(Error::Input(format!(
                "{} of the {} given points are not vertices of their hull",
                given.len() - body.vertices.len(),
                given.len()
            )));
        }
        Ok(body)
    }

    fn from_lifted_cone(dim: usize, cone: PolyCone) -> Result<Self> {
        let mut vertices: Vec<QVector> = cone.rays().iter().map(|r| dehomogenize(r)).collect();
        vertices.sort();
        let body = ConvexBody { dim, vertices, cone, facets: Arc::new(OnceLock::new()) };
        if let Some(f) = body.facets().iter().find(|f| !f.offset.is_positive()) {
            return Err(Error::Input(format!(
                "the origin is not strictly inside the hull (facet normal {:?} has offset {})",
                f.normal.iter().map(crate::qlinalg::format_rational).collect::<Vec<_>>(),
                f.offset
            )));
        }
        Ok(body)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    /// The homogenized cone `Cone{(p, 1)}`.
    pub fn lifted_cone(&self) -> &PolyCone {
        &self.cone
    }

    /// Facets `a·x + b ≥ 0` with `(a, b)` primitive integral and `b > 0`.
    pub fn facets(&self) -> &[Facet] {
        self.facets.get_or_init(|| {
            let mut fs: Vec<Facet> = self
                .cone
                .facets()
                .iter()
                .map(|h| {
                    let (b, a) = h.split_last().expect("nonempty facet");
                    Facet { normal: a.to_vec(), offset: b.clone() }
                })
                .collect();
            fs.sort();
            fs
        })
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::Dimension(format!("point of length {} for body in dimension {}", x.len(), self.dim)));
        }
        Ok(self.facets().iter().all(|f| !f.eval(x).is_negative()))
    }

    pub fn vertex_index(&self, v: &[Rational]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }

    /// `max ⟨c, x⟩` over the body and the first vertex attaining it.
    pub fn support(&self, c: &[Rational]) -> Result<(Rational, QVector)> {
        if c.len() != self.dim {
            return Err(Error::Dimension(format!("functional of length {} for body in dimension {}", c.len(), self.dim)));
        }
        let mut best: Option<(Rational, &QVector)> = None;
        for v in &self.vertices {
            let s = dot(c, v);
            if best.as_ref().map_or(true, |(b, _)| s > *b) {
                best = Some((s, v));
            }
        }
        let (val, v) = best.expect("body has vertices");
        Ok((val, v.clone()))
    }

    /// Polar body `{y : ⟨y, x⟩ ≥ −1 for all x}`; its vertices are `a/b` over facets.
    pub fn polar(&self) -> Result<ConvexBody> {
        let pts: Vec<QVector> = self.facets().iter().map(|f| scale(&f.normal, &(Rational::one() / &f.offset))).collect();
        ConvexBody::from_vertices(self.dim, &pts)
    }

    /// Interval `[lo, hi]` with `lo < 0 < hi`.
    pub fn interval(lo: Rational, hi: Rational) -> Result<Self> {
        Self::from_vertices(1, &[vec![lo], vec![hi]])
    }

    /// Cube `[−1, 1]^d`.
    pub fn cube(d: usize) -> Self {
        let pts: Vec<QVector> = (0..1usize << d)
            .map(|m| (0..d).map(|i| Rational::from_integer(if m >> i & 1 == 1 { 1 } else { -1 }.into())).collect())
            .collect();
        Self::from_vertices(d, &pts).expect("cube is a valid body")
    }
}

/// Cone with a grading functional and a section point `s(1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedCone {
    pub cone: PolyCone,
    pub grading: QVector,
    pub section: QVector,
}

impl MarkedCone {
    pub fn new(cone: PolyCone, grading: QVector, section: QVector) -> Result<Self> {
        let d = cone.dim();
        if grading.len() != d || section.len() != d {
            return Err(Error::Dimension("grading and section must live in the cone's space".into()));
        }
        if let Some(r) = cone.rays().iter().find(|r| !dot(&grading, r).is_positive()) {
            return Err(Error::Input(format!(
                "grading is not positive on generator {:?}",
                r.iter().map(crate::qlinalg::format_rational).collect::<Vec<_>>()
            )));
        }
        if !dot(&grading, &section).is_one() {
            return Err(Error::Input("grading does not take the value 1 on the section point".into()));
        }
        if !cone.is_interior(&section)? {
            return Err(Error::Input("section point is not strictly interior".into()));
        }
        Ok(MarkedCone { cone, grading, section })
    }
}

/// `P ↦ (Cone{(p,1)}, g = e_last, s(1) = (0,…,0,1))`.
pub fn lift_body(p: &ConvexBody) -> MarkedCone {
    let d = p.dim();
    let mut g = vec![Rational::zero(); d + 1];
    g[d] = Rational::one();
    MarkedCone { cone: p.lifted_cone().clone(), grading: g.clone(), section: g }
}

/// Slice `g⁻¹(1) ∩ C`, recentered at `s(1)`.
///
/// Coordinates on `ker g` drop the first coordinate where `g` is nonzero, so
/// that `slice_cone(lift_body(P)) = P` exactly.
pub fn slice_cone(m: &MarkedCone) -> Result<ConvexBody> {
    let j = m.grading.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Input("zero grading".into()))?;
    let pts: Vec<QVector> = m
        .cone
        .rays()
        .iter()
        .map(|r| {
            let y = sub(&scale(r, &(Rational::one() / dot(&m.grading, r))), &m.section);
            y.into_iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| x).collect()
        })
        .collect();
    ConvexBody::from_vertices(m.cone.dim() - 1, &pts)
}

/// Product of marked cones: `C₁ × C₂` with grading `(g₁ + g₂)/2` and section `(s₁, s₂)`.
pub fn marked_product(a: &MarkedCone, b: &MarkedCone) -> MarkedCone {
    let half = Rational::new(1.into(), 2.into());
    let cone = cone_product(&a.cone, &b.cone);
    let mut grading = scale(&a.grading, &half);
    grading.extend(scale(&b.grading, &half));
    let mut section = a.section.clone();
    section.extend(b.section.iter().cloned());
    MarkedCone { cone, grading, section }
}

/// Product of bodies through their marked cones.
pub fn body_product(p: &ConvexBody, q: &ConvexBody) -> Result<ConvexBody> {
    slice_cone(&marked_product(&lift_body(p), &lift_body(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qvec};

    fn seg() -> ConvexBody {
        ConvexBody::interval(q(-1), q(1)).unwrap()
    }

    #[test]
    fn segment_lift() {
        let m = lift_body(&seg());
        assert_eq!(m.cone.rays(), &[qvec(&[-1, 1]), qvec(&[1, 1])]);
        assert_eq!(m.grading, qvec(&[0, 1]));
        assert_eq!(m.section, qvec(&[0, 1]));
        assert!(MarkedCone::new(m.cone.clone(), m.grading.clone(), m.section.clone()).is_ok());
    }

    #[test]
    fn square_round_trip_and_slice_of_square_cone() {
        let sq = ConvexBody::cube(2);
        assert_eq!(slice_cone(&lift_body(&sq)).unwrap(), sq);
        let cx = PolyCone::new(3, &[qvec(&[1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[-1, -1, 1])])
            .unwrap();
        let m = MarkedCone::new(cx, qvec(&[0, 0, 1]), qvec(&[0, 0, 1])).unwrap();
        assert_eq!(slice_cone(&m).unwrap(), sq);
    }

    #[test]
    fn invalid_inputs() {
        assert!(ConvexBody::from_vertices(1, &[qvec(&[1]), qvec(&[2])]).is_err());
        assert!(ConvexBody::from_vertices(2, &[qvec(&[1, 0]), qvec(&[-1, 0])]).is_err());
        assert!(ConvexBody::from_vertices(1, &[qvec(&[1]), qvec(&[0]), qvec(&[-1])]).is_err());
        assert!(ConvexBody::hull_of(1, &[qvec(&[1]), qvec(&[0]), qvec(&[-1])]).is_ok());
        let c = PolyCone::nonneg_orthant(2);
        assert!(MarkedCone::new(c.clone(), qvec(&[1, 0]), qvec(&[1, 0])).is_err());
        assert!(MarkedCone::new(c, qvec(&[1, 1]), vec![q(1) / q(2); 2]).is_ok());
    }

    #[test]
    fn square_polar_is_cross_polytope() {
        let p = ConvexBody::cube(2).polar().unwrap();
        assert_eq!(p.vertices(), &[qvec(&[-1, 0]), qvec(&[0, -1]), qvec(&[0, 1]), qvec(&[1, 0])]);
        assert_eq!(p.polar().unwrap(), ConvexBody::cube(2));
    }

    #[test]
    fn product_of_segments() {
        let p = body_product(&seg(), &seg()).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }
}
