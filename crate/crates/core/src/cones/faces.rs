use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use super::body::{ConvexBody, Facet};
use crate::error::{Error, Result};
use crate::qlinalg::{add, QVector, Rational};

/// Default face-enumeration cap: proceed if facets ≤ 12 or vertices ≤ 20.
#[derive(Debug, Clone, Copy)]
pub struct FaceCap {
    pub max_facets: usize,
    pub max_vertices: usize,
}

impl Default for FaceCap {
    fn default() -> Self {
        FaceCap { max_facets: 12, max_vertices: 20 }
    }
}

impl FaceCap {
    /// Scale both limits by `factor` (the `CVXFUN_CAP` override uses this).
    pub fn scaled(factor: usize) -> Self {
        FaceCap { max_facets: 12 * factor.max(1), max_vertices: 20 * factor.max(1) }
    }

    fn admits(&self, p: &ConvexBody) -> bool {
        p.facets().len() <= self.max_facets || p.vertices().len() <= self.max_vertices
    }
}

/// A face given by the indices of its vertices and an affine functional
/// `a·x + b` that is `≥ 0` on the body and vanishes exactly on the face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub functional: Facet,
}

impl Face {
    pub fn dim(&self, p: &ConvexBody) -> isize {
        if self.vertices.is_empty() {
            return -1;
        }
        let v0 = &p.vertices()[self.vertices[0]];
        let diffs: Vec<QVector> =
            self.vertices[1..].iter().map(|&i| crate::qlinalg::sub(&p.vertices()[i], v0)).collect();
        crate::qlinalg::rank_of_vectors(&diffs, p.dim()) as isize
    }
}

fn incidence(p: &ConvexBody) -> Vec<FixedBitSet> {
    let n = p.vertices().len();
    p.facets()
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(n);
            for (i, v) in p.vertices().iter().enumerate() {
                if f.eval(v).is_zero() {
                    s.insert(i);
                }
            }
            s
        })
        .collect()
}

fn supporting(p: &ConvexBody, inc: &[FixedBitSet], set: &FixedBitSet) -> Facet {
    if set.count_ones(..) == 0 {
        return Facet { normal: vec![Rational::zero(); p.dim()], offset: Rational::one() };
    }
    let mut normal = vec![Rational::zero(); p.dim()];
    let mut offset = Rational::zero();
    for (f, s) in p.facets().iter().zip(inc) {
        if set.is_subset(s) {
            normal = add(&normal, &f.normal);
            offset += &f.offset;
        }
    }
    Facet { normal, offset }
}

/// All faces including the empty face and the body itself, ordered by
/// dimension and then by vertex indices.
pub fn face_lattice(p: &ConvexBody, cap: FaceCap) -> Result<Vec<Face>> {
    if !cap.admits(p) {
        return Err(Error::SizeCap(format!(
            "face enumeration for a body with {} vertices and {} facets exceeds the cap ({} facets or {} vertices); \
             use census sampling or raise CVXFUN_CAP",
            p.vertices().len(),
            p.facets().len(),
            cap.max_facets,
            cap.max_vertices
        )));
    }
    let n = p.vertices().len();
    let inc = incidence(p);
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![full];
    let mut sets: Vec<FixedBitSet> = Vec::new();
    while let Some(s) = stack.pop() {
        let key: Vec<usize> = s.ones().collect();
        if !seen.insert(key) {
            continue;
        }
        for f in &inc {
            let mut t = s.clone();
            t.intersect_with(f);
            if t != s {
                stack.push(t);
            }
        }
        sets.push(s);
    }
    let mut faces: Vec<Face> = sets
        .iter()
        .map(|s| Face { vertices: s.ones().collect(), functional: supporting(p, &inc, s) })
        .collect();
    faces.sort_by(|a, b| a.dim(p).cmp(&b.dim(p)).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(faces)
}

/// Whether the given vertex indices are exactly the vertex set of a face.
pub fn is_face(p: &ConvexBody, subset: &[usize]) -> Result<bool> {
    let n = p.vertices().len();
    if let Some(i) = subset.iter().find(|&&i| i >= n) {
        return Err(Error::Input(format!("vertex index {i} out of range for {n} vertices")));
    }
    if subset.is_empty() {
        return Ok(true);
    }
    let mut s = FixedBitSet::with_capacity(n);
    for &i in subset {
        s.insert(i);
    }
    let mut closure = FixedBitSet::with_capacity(n);
    closure.insert_range(..);
    for f in incidence(p) {
        if s.is_subset(&f) {
            closure.intersect_with(&f);
        }
    }
    Ok(closure == s)
}

/// Face of the body determined by vertex points rather than indices.
pub fn is_face_of_points(p: &ConvexBody, points: &[QVector]) -> Result<bool> {
    let idx: Option<Vec<usize>> = points.iter().map(|v| p.vertex_index(v)).collect();
    match idx {
        Some(idx) => is_face(p, &idx),
        None => Err(Error::Input("point is not a vertex of the body".into())),
    }
}

/// Check that `f` is nonnegative on the body and zero exactly on `face`.
pub fn validate_supporting(p: &ConvexBody, face: &[usize], f: &Facet) -> bool {
    p.vertices().iter().enumerate().all(|(i, v)| {
        let s = f.eval(v);
        !s.is_negative() && (s.is_zero() == face.contains(&i))
    })
}
