use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::sym::{multisets, sym_body, sym_point, sym_product};
use crate::caps::Caps;
use crate::cones::{face_lattice, is_face, ConvexBody, PolyCone};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, multinomial, Poly};
use crate::qlinalg::{
    add, dot, kron, lp_optimize, primitive_ray_q, LpOutcome, LpProblem, QMatrix, QVector, Rational, Sense, VarBound,
};

fn check_supporting(c: &PolyCone, phi: &[Rational], what: &str) -> Result<()> {
    if phi.len() != c.dim() {
        return Err(Error::Dimension(format!("{what} has length {} for a cone in dimension {}", phi.len(), c.dim())));
    }
    if !c.is_dual_element(phi) {
        return Err(Error::Validation(format!("{what} is negative on a generator, so it supports no face")));
    }
    Ok(())
}

fn check_grading(c: &PolyCone, g: &[Rational]) -> Result<()> {
    if g.len() != c.dim() || c.rays().iter().any(|r| !dot(g, r).is_positive()) {
        return Err(Error::Validation("grading is not positive on every generator".into()));
    }
    Ok(())
}

/// `φ_A ⊗ g_B + g_A ⊗ φ_B`, supporting `F_A ⊗ F_B` in `A ⊗ B`.
pub fn tensor_face_witness(
    a: &PolyCone,
    phi_a: &[Rational],
    g_a: &[Rational],
    b: &PolyCone,
    phi_b: &[Rational],
    g_b: &[Rational],
) -> Result<QVector> {
    check_supporting(a, phi_a, "left functional")?;
    check_supporting(b, phi_b, "right functional")?;
    check_grading(a, g_a)?;
    check_grading(b, g_b)?;
    Ok(add(&kron(phi_a, g_b), &kron(g_a, phi_b)))
}

/// Does the multiset of rays admit an assignment `rays[σ(i)] ∈ Fᵢ`?
fn matches_faces(ms: &[usize], in_face: &[Vec<bool>]) -> bool {
    fn rec(i: usize, ms: &[usize], in_face: &[Vec<bool>], used: &mut Vec<bool>) -> bool {
        if i == in_face.len() {
            return true;
        }
        for k in 0..ms.len() {
            if !used[k] && in_face[i][ms[k]] {
                used[k] = true;
                if rec(i + 1, ms, in_face, used) {
                    return true;
                }
                used[k] = false;
            }
        }
        false
    }
    rec(0, ms, in_face, &mut vec![false; ms.len()])
}

/// Functional on `Symⁿ(LA)` (monomial coordinates) that is nonnegative on
/// `Symⁿ(A)` and vanishes exactly on the generators of `F₁⋯Fₙ`.
///
/// When all faces coincide the functional is the symmetric form
/// `n·φ(v)·g(v)^{n−1}`; otherwise it is found by an exact LP over the ray products.
pub fn sym_face_witness(a: &PolyCone, phis: &[QVector], g: &[Rational]) -> Result<QVector> {
    let n = phis.len();
    if n == 0 {
        return Err(Error::Input("at least one face functional is required".into()));
    }
    for (i, phi) in phis.iter().enumerate() {
        check_supporting(a, phi, &format!("functional {}", i + 1))?;
    }
    check_grading(a, g)?;
    let d = a.dim();
    let basis = monomials_of_degree(d, n as u32);

    if phis.iter().all(|p| p == &phis[0]) {
        let mut poly = Poly::linear(&phis[0]).mul(&Poly::constant(d, Rational::from_integer(n.into())));
        let gl = Poly::linear(g);
        for _ in 1..n {
            poly = poly.mul(&gl);
        }
        return Ok(basis.iter().map(|e| poly.coeff(e) / multinomial(e)).collect());
    }

    let rays = a.rays();
    let in_face: Vec<Vec<bool>> =
        phis.iter().map(|phi| rays.iter().map(|r| dot(phi, r).is_zero()).collect()).collect();
    let mut face: BTreeSet<QVector> = BTreeSet::new();
    let mut all: BTreeSet<QVector> = BTreeSet::new();
    for ms in multisets(rays.len(), n) {
        let vs: Vec<&[Rational]> = ms.iter().map(|&i| rays[i].as_slice()).collect();
        let p = primitive_ray_q(&sym_product(&vs, d));
        if matches_faces(&ms, &in_face) {
            face.insert(p.clone());
        }
        all.insert(p);
    }
    let others: Vec<&QVector> = all.iter().filter(|p| !face.contains(*p)).collect();
    let mut rows: Vec<QVector> = face.iter().cloned().collect();
    let mut senses = vec![Sense::Eq; rows.len()];
    let mut rhs = vec![Rational::zero(); rows.len()];
    for p in &others {
        rows.push((*p).clone());
        senses.push(Sense::Ge);
        rhs.push(Rational::one());
    }
    let dim = basis.len();
    let lp = LpProblem::new(vec![Rational::zero(); dim], QMatrix::from_rows(&rows)?, rhs, senses)?
        .with_bounds(vec![VarBound::free(); dim])?;
    match lp_optimize(&lp)? {
        LpOutcome::Optimal { point, .. } => Ok(point),
        _ => Err(Error::Validation("no functional exposes the requested product face".into())),
    }
}

/// Counts for the product faces `F₁⋯Fₙ` of `Symⁿ(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCensus {
    pub product_faces: usize,
    pub total_nonempty_faces: usize,
    /// Vertex-index sets (into the symmetric power's vertex list) of the product faces.
    pub product_face_sets: Vec<Vec<usize>>,
}

pub fn product_face_census(p: &ConvexBody, n: usize, caps: &Caps) -> Result<FaceCensus> {
    let faces: Vec<Vec<usize>> =
        face_lattice(p, caps.faces)?.into_iter().map(|f| f.vertices).filter(|v| !v.is_empty()).collect();
    let s = sym_body(p, n, caps)?;
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for ms in multisets(faces.len(), n) {
        let mut idx: BTreeSet<usize> = BTreeSet::new();
        let chosen: Vec<&Vec<usize>> = ms.iter().map(|&i| &faces[i]).collect();
        let mut pick = vec![0usize; n];
        'tuples: loop {
            let vs: Vec<&[Rational]> =
                chosen.iter().zip(&pick).map(|(f, &k)| p.vertices()[f[k]].as_slice()).collect();
            if let Some(i) = s.body.vertex_index(&sym_point(&vs, p.dim())) {
                idx.insert(i);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'tuples;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < chosen[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
        let set: Vec<usize> = idx.into_iter().collect();
        if !is_face(&s.body, &set)? {
            return Err(Error::Validation(format!("product of faces {ms:?} is not a face of the symmetric power")));
        }
        sets.insert(set);
    }
    let total = face_lattice(&s.body, caps.faces)?.len() - 1;
    Ok(FaceCensus { product_faces: sets.len(), total_nonempty_faces: total, product_face_sets: sets.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::lift_body;
    use crate::functors::tensor_cone;
    use crate::qlinalg::{q, qvec};

    fn lifted_segment() -> PolyCone {
        lift_body(&ConvexBody::interval(q(-1), q(1)).unwrap()).cone
    }

    fn vanishing(gens: &[QVector], w: &[Rational]) -> usize {
        assert!(gens.iter().all(|g| !dot(w, g).is_negative()));
        gens.iter().filter(|g| dot(w, g).is_zero()).count()
    }

    #[test]
    fn tensor_witnesses_on_the_tetrahedron() {
        let c = lifted_segment();
        let t = tensor_cone(&c, &c).unwrap();
        let g = qvec(&[0, 1]);
        let at_one = qvec(&[-1, 1]);
        let at_minus_one = qvec(&[1, 1]);
        let zero = qvec(&[0, 0]);
        let w = tensor_face_witness(&c, &at_one, &g, &c, &at_minus_one, &g).unwrap();
        assert_eq!(vanishing(t.rays(), &w), 1);
        let w = tensor_face_witness(&c, &at_one, &g, &c, &zero, &g).unwrap();
        assert_eq!(vanishing(t.rays(), &w), 2);
        let w = tensor_face_witness(&c, &zero, &g, &c, &zero, &g).unwrap();
        assert_eq!(w, qvec(&[0, 0, 0, 0]));
        assert!(tensor_face_witness(&c, &qvec(&[1, 0]), &g, &c, &zero, &g).is_err());
    }

    #[test]
    fn sym_witnesses_on_the_triangle() {
        let c = lifted_segment();
        let g = qvec(&[0, 1]);
        let at_one = qvec(&[-1, 1]);
        let at_minus_one = qvec(&[1, 1]);
        let gens: Vec<QVector> = vec![
            sym_product(&[&c.rays()[0], &c.rays()[0]], 2),
            sym_product(&[&c.rays()[0], &c.rays()[1]], 2),
            sym_product(&[&c.rays()[1], &c.rays()[1]], 2),
        ];
        let mixed = sym_face_witness(&c, &[at_minus_one.clone(), at_one.clone()], &g).unwrap();
        assert_eq!(vanishing(&gens, &mixed), 1);
        assert!(dot(&mixed, &gens[1]).is_zero());
        let same = sym_face_witness(&c, &[at_one.clone(), at_one.clone()], &g).unwrap();
        assert_eq!(vanishing(&gens, &same), 1);
        assert!(dot(&same, &gens[2]).is_zero());
        let whole = sym_face_witness(&c, &[qvec(&[0, 0]), qvec(&[0, 0])], &g).unwrap();
        assert_eq!(whole, qvec(&[0, 0, 0]));
    }

    #[test]
    fn census_on_segment() {
        let seg = ConvexBody::interval(q(-1), q(1)).unwrap();
        for (n, expect_prod, expect_total) in [(2, 6, 7), (3, 10, 15)] {
            let c = product_face_census(&seg, n, &Caps::default()).unwrap();
            assert_eq!(c.product_faces, expect_prod);
            assert_eq!(c.total_nonempty_faces, expect_total);
        }
    }
}
