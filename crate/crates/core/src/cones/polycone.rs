use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use super::dd::extreme_rays_of_h;
use crate::error::{Error, Result};
use crate::qlinalg::{
    conic_combination, dot, format_rational, ints_to_q, lp_optimize, primitive_ray_q, rank_of_vectors, LpOutcome,
    LpProblem, QMatrix, QVector, Rational, Sense,
};

/// Pointed, closed, full-dimensional polyhedral cone in `ℚᵈ`.
///
/// The generator list is the primary representation: primitive integer
/// extreme rays, sorted. Facet normals (inner-pointing, primitive) are
/// computed on demand by double description and cached.
#[derive(Debug, Clone)]
pub struct PolyCone {
    dim: usize,
    rays: Vec<QVector>,
    facets: Arc<OnceLock<Vec<QVector>>>,
}

impl PartialEq for PolyCone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays
    }
}

impl Eq for PolyCone {}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    Inside,
    Boundary,
    /// `separator·g ≥ 0` on every generator and `separator·v < 0`.
    Outside { separator: QVector },
}

fn normalize_set(gens: &[QVector]) -> Vec<QVector> {
    let mut out: Vec<QVector> =
        gens.iter().filter(|g| !g.iter().all(Zero::is_zero)).map(|g| primitive_ray_q(g)).collect();
    out.sort();
    out.dedup();
    out
}

/// Nonzero `λ ≥ 0` with `Σ λᵢ gᵢ = 0`, if one exists.
fn find_line(gens: &[QVector], dim: usize) -> Result<Option<QVector>> {
    let k = gens.len();
    if k == 0 {
        return Ok(None);
    }
    let mut rows: Vec<QVector> = (0..dim).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    rows.push(vec![Rational::from_integer(1.into()); k]);
    let mut b = vec![Rational::zero(); dim];
    b.push(Rational::from_integer(1.into()));
    let p = LpProblem::new(vec![Rational::zero(); k], QMatrix::from_rows(&rows)?, b, vec![Sense::Eq; dim + 1])?
        .all_nonneg()?;
    Ok(match lp_optimize(&p)? {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    })
}

/// Irredundant extreme rays of the cone spanned by `generators`.
///
/// Rejects lower-dimensional inputs and inputs containing a line.
pub fn reduce_to_extreme_rays(dim: usize, generators: &[QVector]) -> Result<PolyCone> {
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(Error::Dimension(format!("generator of length {} in dimension {dim}", g.len())));
    }
    let mut gens = normalize_set(generators);
    let r = rank_of_vectors(&gens, dim);
    if r < dim {
        return Err(Error::NotFullDimensional { rank: r, dim });
    }
    if let Some(weights) = find_line(&gens, dim)? {
        let j = weights.iter().position(|w| w.is_positive()).expect("weights sum to one");
        return Err(Error::NotPointed { line: gens[j].iter().map(format_rational).collect() });
    }
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<QVector> =
            gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        if conic_combination(&others, &gens[i])?.is_ok() {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(PolyCone { dim, rays: gens, facets: Arc::new(OnceLock::new()) })
}

impl PolyCone {
    /// Validating constructor; equivalent to [`reduce_to_extreme_rays`].
    pub fn new(dim: usize, generators: &[QVector]) -> Result<Self> {
        reduce_to_extreme_rays(dim, generators)
    }

    /// Wrap rays already known to be the extreme rays of a pointed
    /// full-dimensional cone (e.g. double-description output).
    pub(crate) fn from_extreme_rays(dim: usize, rays: Vec<QVector>) -> Self {
        PolyCone { dim, rays: normalize_set(&rays), facets: Arc::new(OnceLock::new()) }
    }

    /// Build from both descriptions, cross-validating them: every ray
    /// satisfies every facet, each facet is tight on rays of rank `d-1`,
    /// and each ray is tight on facets of rank `d-1`.
    pub fn from_v_and_h(dim: usize, rays: &[QVector], facets: &[QVector]) -> Result<Self> {
        let cone = Self::new(dim, rays)?;
        let facets = normalize_set(facets);
        for f in &facets {
            if f.len() != dim {
                return Err(Error::Dimension("facet length mismatch".into()));
            }
            if cone.rays.iter().any(|r| dot(f, r).is_negative()) {
                return Err(Error::Validation("a generator violates a cached facet".into()));
            }
            let tight: Vec<QVector> = cone.rays.iter().filter(|r| dot(f, r).is_zero()).cloned().collect();
            if rank_of_vectors(&tight, dim) != dim - 1 {
                return Err(Error::Validation("cached inequality is not a facet".into()));
            }
        }
        for r in &cone.rays {
            let tight: Vec<QVector> = facets.iter().filter(|f| dot(f, r).is_zero()).cloned().collect();
            if rank_of_vectors(&tight, dim) != dim - 1 {
                return Err(Error::Validation("cached facets do not cut out the generator cone".into()));
            }
        }
        let _ = cone.facets.set(facets);
        Ok(cone)
    }

    pub fn nonneg_orthant(dim: usize) -> Self {
        let rays = (0..dim)
            .map(|i| (0..dim).map(|j| Rational::from_integer(((i == j) as i64).into())).collect())
            .collect();
        Self::from_extreme_rays(dim, rays)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    /// Inner facet normals, sorted primitive integer vectors.
    pub fn facets(&self) -> &[QVector] {
        self.facets.get_or_init(|| {
            extreme_rays_of_h(&self.rays, self.dim)
                .expect("valid cone has a pointed dual")
                .iter()
                .map(|v| ints_to_q(v))
                .collect()
        })
    }

    pub fn has_cached_facets(&self) -> bool {
        self.facets.get().is_some()
    }

    pub fn membership(&self, v: &[Rational]) -> Result<Membership> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("point of length {} for cone in dimension {}", v.len(), self.dim)));
        }
        let mut boundary = false;
        for f in self.facets() {
            let s = dot(f, v);
            if s.is_negative() {
                return Ok(Membership::Outside { separator: f.clone() });
            }
            if s.is_zero() {
                boundary = true;
            }
        }
        Ok(if boundary { Membership::Boundary } else { Membership::Inside })
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(!matches!(self.membership(v)?, Membership::Outside { .. }))
    }

    /// `h` is nonnegative on the cone (checked on generators).
    pub fn is_dual_element(&self, h: &[Rational]) -> bool {
        h.len() == self.dim && self.rays.iter().all(|r| !dot(h, r).is_negative())
    }

    pub fn is_interior(&self, v: &[Rational]) -> Result<bool> {
        Ok(matches!(self.membership(v)?, Membership::Inside))
    }

    /// A strictly interior point: the sum of the extreme rays.
    pub fn interior_point(&self) -> QVector {
        let mut s = vec![Rational::zero(); self.dim];
        for r in &self.rays {
            for (x, y) in s.iter_mut().zip(r) {
                *x += y;
            }
        }
        s
    }
}

/// Dual cone `{y : ⟨y, x⟩ ≥ 0 for all x ∈ C}`, generated by the facet normals of `C`.
pub fn dual_cone(c: &PolyCone) -> PolyCone {
    PolyCone::from_extreme_rays(c.dim(), c.facets().to_vec())
}

/// Cartesian product `C₁ × C₂ ⊆ ℚ^{d₁+d₂}`.
pub fn cone_product(a: &PolyCone, b: &PolyCone) -> PolyCone {
    let d = a.dim() + b.dim();
    let mut rays = Vec::with_capacity(a.rays().len() + b.rays().len());
    for r in a.rays() {
        let mut v = r.clone();
        v.resize(d, Rational::zero());
        rays.push(v);
    }
    for r in b.rays() {
        let mut v = vec![Rational::zero(); a.dim()];
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    PolyCone::from_extreme_rays(d, rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::qvec;

    fn c_x() -> PolyCone {
        PolyCone::new(3, &[qvec(&[1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[-1, -1, 1])]).unwrap()
    }

    #[test]
    fn redundant_and_scaled_generators_are_dropped() {
        let c = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]).unwrap();
        assert_eq!(c.rays(), &[qvec(&[0, 1]), qvec(&[1, 0])]);
        let d = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[2, 0]), qvec(&[0, 3])]).unwrap();
        assert_eq!(d.rays(), &[qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn lines_and_flat_inputs_are_rejected() {
        assert!(matches!(
            PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[-1, 0]), qvec(&[0, 1])]),
            Err(Error::NotPointed { .. })
        ));
        assert!(matches!(
            PolyCone::new(3, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])]),
            Err(Error::NotFullDimensional { rank: 2, dim: 3 })
        ));
    }

    #[test]
    fn square_cone_dual_and_membership() {
        let c = c_x();
        let d = dual_cone(&c);
        assert_eq!(d.rays(), &[qvec(&[-1, 0, 1]), qvec(&[0, -1, 1]), qvec(&[0, 1, 1]), qvec(&[1, 0, 1])]);
        assert_eq!(c.membership(&qvec(&[0, 0, 1])).unwrap(), Membership::Inside);
        assert_eq!(c.membership(&qvec(&[1, 1, 1])).unwrap(), Membership::Boundary);
        assert_eq!(c.membership(&qvec(&[0, 0, 0])).unwrap(), Membership::Boundary);
        match c.membership(&qvec(&[2, 0, 1])).unwrap() {
            Membership::Outside { separator } => {
                assert!(c.is_dual_element(&separator));
                assert!(dot(&separator, &qvec(&[2, 0, 1])) < Rational::zero());
            }
            m => panic!("unexpected {m:?}"),
        }
        assert!(c.membership(&qvec(&[1, 1])).is_err());
    }

    #[test]
    fn cross_validated_construction() {
        let c = c_x();
        let facets = c.facets().to_vec();
        assert!(PolyCone::from_v_and_h(3, c.rays(), &facets).is_ok());
        let mut wrong = facets.clone();
        wrong[0] = qvec(&[0, 0, 1]);
        assert!(PolyCone::from_v_and_h(3, c.rays(), &wrong).is_err());
    }

    #[test]
    fn product_facets_add_up() {
        let a = c_x();
        let b = PolyCone::nonneg_orthant(2);
        let p = cone_product(&a, &b);
        assert_eq!(p.facets().len(), a.facets().len() + b.facets().len());
    }
}
