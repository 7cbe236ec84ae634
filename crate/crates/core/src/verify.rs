//! The worked examples: the segment's tensor and symmetric squares, the two
//! strict-inclusion counterexamples, the cube's exterior square, product-face
//! censuses, duality and adjunction checks, and finite convergence on the square.

use serde_json::{json, Value};

use crate::caps::Caps;
use crate::cones::{ConeMorphism, ConvexBody, Membership, PolyCone};
use crate::error::Result;
use crate::functors::{
    adjunction_permutation, classify_morphism, count_ssyt, hom_cone, permute, product_face_census, schur_body,
    sym_body, sym_cone, sym_power_matrix, tensor_body, tensor_cone, Partition,
};
use crate::io::{vec_json, vecs_json};
use crate::moments::{finite_convergence, PolyMap, DEFAULT_TOL};
use crate::poly::{monomials_of_degree, Poly};
use crate::qlinalg::{dot, format_rational, kron, q, qvec, QMatrix, QVector, Rational};

/// `Cone(±x₁ ± x₂ + x₃)`.
pub fn square_cone() -> PolyCone {
    PolyCone::new(3, &[qvec(&[1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[-1, -1, 1])])
        .expect("square cone is pointed and full-dimensional")
}

/// Facet map `C_x → ℝ⁴₊` with rows `(−1,0,1), (1,0,1), (0,−1,1), (0,1,1)`.
pub fn square_facet_map() -> QMatrix {
    QMatrix::from_i64(&[&[-1, 0, 1], &[1, 0, 1], &[0, -1, 1], &[0, 1, 1]])
}

/// `β = −x₁⊗y₁ + x₁⊗y₂ + x₂⊗y₁ + x₂⊗y₂ + x₃⊗y₃`, row-major in `(xᵢ, yⱼ)`.
pub fn tensor_beta() -> QVector {
    qvec(&[-1, 1, 0, 1, 1, 0, 0, 0, 1])
}

/// `γ = x₁'⊗y₁' − x₁'⊗y₂' − x₂'⊗y₁' − x₂'⊗y₂' + 2x₃'⊗y₃'`.
pub fn tensor_gamma() -> QVector {
    qvec(&[1, -1, 0, -1, -1, 0, 0, 0, 2])
}

/// `(φ⊗φ)(β)` as listed: `2` at `(z₂,w₁), (z₃,w₁), (z₁,w₂), (z₄,w₂), (z₁,w₃), (z₃,w₃), (z₂,w₄), (z₄,w₄)`.
pub fn listed_phi_phi_beta() -> QVector {
    let mut v = vec![q(0); 16];
    for (z, w) in [(2, 1), (3, 1), (1, 2), (4, 2), (1, 3), (3, 3), (2, 4), (4, 4)] {
        v[(z - 1) * 4 + (w - 1)] = q(2);
    }
    v
}

/// `β̄ = −x₁² + x₂² + x₃² + 2x₁x₂` on the monomials `x₁², x₁x₂, x₁x₃, x₂², x₂x₃, x₃²`.
pub fn sym_beta() -> QVector {
    qvec(&[-1, 2, 0, 1, 0, 1])
}

/// `γ̄ = (x₁')² − 2x₁'x₂' − (x₂')² + 2(x₃')²` as the functional `v·w ↦ γ̄(v, w)`.
pub fn sym_gamma() -> QVector {
    qvec(&[1, -1, 0, -1, 0, 2])
}

/// `2(2z₁z₂ + 2z₁z₃ + 2z₂z₄ + z₃² + z₄²)` on the degree-2 monomials in `z₁..z₄`.
pub fn listed_sym_phi_beta() -> QVector {
    let mons = monomials_of_degree(4, 2);
    let terms: [(&[u32], i64); 5] =
        [(&[1, 1, 0, 0], 4), (&[1, 0, 1, 0], 4), (&[0, 1, 0, 1], 4), (&[0, 0, 2, 0], 2), (&[0, 0, 0, 2], 2)];
    let p = Poly::from_terms(4, terms.iter().map(|(e, c)| (e.to_vec(), q(*c)))).expect("four variables");
    p.coefficients(&mons)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub values: Value,
}

fn segment() -> ConvexBody {
    ConvexBody::interval(q(-1), q(1)).expect("segment")
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn tensor_square_item(caps: &Caps) -> Result<Item> {
    let t = tensor_body(&segment(), &segment(), caps)?;
    let expected = [qvec(&[1, 1, 1]), qvec(&[-1, 1, -1]), qvec(&[-1, -1, 1]), qvec(&[1, -1, -1])];
    let mut exp = expected.to_vec();
    exp.sort();
    Ok(Item {
        name: "tensor-square-of-segment",
        anchor: "[−1,1]⊗[−1,1] is the tetrahedron on (1,1,1), (−1,1,−1), (−1,−1,1), (1,−1,−1)",
        passed: t.body.vertices() == exp.as_slice(),
        values: json!({"vertices": vecs_json(t.body.vertices())}),
    })
}

/// Coefficients of `x, x²` in `(1 + x)^m (1 − x)^{2−m}`.
fn segment_products() -> Vec<QVector> {
    let plus = Poly::from_terms(1, [(vec![0], q(1)), (vec![1], q(1))]).expect("one variable");
    let minus = Poly::from_terms(1, [(vec![0], q(1)), (vec![1], q(-1))]).expect("one variable");
    (0..=2)
        .map(|m| {
            let mut p = Poly::constant(1, q(1));
            for i in 0..2 {
                p = p.mul(if i < m { &plus } else { &minus });
            }
            vec![p.coeff(&[1]), p.coeff(&[2])]
        })
        .collect()
}

fn sym_square_item(caps: &Caps) -> Result<Item> {
    let s = sym_body(&segment(), 2, caps)?;
    let mut exp = segment_products();
    exp.sort();
    Ok(Item {
        name: "symmetric-square-of-segment",
        anchor: "Sym²([−1,1]) is the triangle of coefficient vectors of (x+1)^m(1−x)^(2−m), listed in (e₁, e₂) order",
        passed: s.body.vertices() == exp.as_slice(),
        values: json!({"vertices": vecs_json(s.body.vertices()), "coordinate_order": ["e1", "e2"]}),
    })
}

fn tensor_counterexample_item(beta: &[Rational]) -> Result<Item> {
    let c = square_cone();
    let phi = square_facet_map();
    let image = phi.kron(&phi).mul_vec(beta)?;
    let in_dual_side = image.iter().all(|x| *x >= q(0));
    let matches_listing = image == listed_phi_phi_beta();
    let tc = tensor_cone(&c, &c)?;
    let (outside, separator) = match tc.membership(beta)? {
        Membership::Outside { separator } => (tc.is_dual_element(&separator) && dot(&separator, beta) < q(0), Some(separator)),
        _ => (false, None),
    };
    let gamma = tensor_gamma();
    let gamma_dual = tc.is_dual_element(&gamma);
    let gamma_beta = dot(&gamma, beta);
    Ok(Item {
        name: "tensor-counterexample",
        anchor: "β ∈ (C_x*⊗C_y*)* yet β ∉ C_x⊗C_y, separated by γ with γ(β) = −2",
        passed: in_dual_side && matches_listing && outside && gamma_dual && gamma_beta == q(-2),
        values: json!({
            "beta": vec_json(beta),
            "phi_phi_beta": strs(&image),
            "phi_phi_beta_matches_listing": matches_listing,
            "separator": separator.as_deref().map(vec_json),
            "gamma_in_dual": gamma_dual,
            "gamma_beta": format_rational(&gamma_beta),
        }),
    })
}

fn sym_counterexample_item() -> Result<Item> {
    let c = square_cone();
    let s2phi = sym_power_matrix(&square_facet_map(), 2);
    let beta = sym_beta();
    let image = s2phi.mul_vec(&beta)?;
    let matches_listing = image == listed_sym_phi_beta();
    let sc = sym_cone(&c, 2)?;
    let outside = matches!(sc.membership(&beta)?, Membership::Outside { .. });
    let gamma = sym_gamma();
    let gamma_dual = sc.is_dual_element(&gamma);
    let pairing = dot(&gamma, &beta);
    Ok(Item {
        name: "symmetric-square-counterexample",
        anchor: "Sym²(φ)(β̄) = 2(2z₁z₂+2z₁z₃+2z₂z₄+z₃²+z₄²) yet β̄ ∉ Sym²(C_x), separated by γ̄",
        passed: matches_listing && image.iter().all(|x| *x >= q(0)) && outside && gamma_dual && pairing == q(-2),
        values: json!({
            "sym2_phi_beta": strs(&image),
            "matches_listing": matches_listing,
            "gamma_bar_in_dual": gamma_dual,
            "gamma_bar_beta_bar": format_rational(&pairing),
        }),
    })
}

fn schur_cube_item(caps: &Caps) -> Result<Item> {
    let lambda = Partition::new(vec![1, 1])?;
    let s = schur_body(&ConvexBody::cube(3), &lambda, caps)?;
    let vs = s.body.vertices();
    let mut negated: Vec<QVector> = vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    negated.sort();
    let ssyt = count_ssyt(&lambda, 3);
    Ok(Item {
        name: "exterior-square-of-cube",
        anchor: "S_(1,1) of the cube [−1,1]³ has only 12 vertices",
        passed: vs.len() == 12 && s.body.dim() as u64 == ssyt && negated == vs,
        values: json!({"vertices": vs.len(), "dim": s.body.dim(), "ssyt_count": ssyt, "negation_closed": negated == vs}),
    })
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn census_item(caps: &Caps) -> Result<Item> {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let c = product_face_census(&segment(), n, caps)?;
        ok &= c.product_faces == binom(n + 2, 2);
        rows.push(json!({
            "n": n,
            "product_faces": c.product_faces,
            "expected_product_faces": binom(n + 2, 2),
            "total_nonempty_faces": c.total_nonempty_faces,
            "stated_total": (1usize << n) - 1,
        }));
    }
    Ok(Item {
        name: "product-face-census",
        anchor: "faces of Symⁿ([−1,1]) that are products of faces: binom(n+2,2); totals reported from enumeration",
        passed: ok,
        values: json!({"rows": rows}),
    })
}

fn sidi_item() -> Result<Item> {
    let c = square_cone();
    let phi = ConeMorphism::new(square_facet_map(), c, PolyCone::nonneg_orthant(4))?;
    let f = classify_morphism(&phi)?;
    let d = classify_morphism(&phi.dual())?;
    Ok(Item {
        name: "strong-injectivity-duality",
        anchor: "φ: C_x ↪ ℝ⁴₊ is strongly injective and its transpose is surjective",
        passed: f.strongly_injective && d.surjective && f.strongly_injective == d.surjective && f.surjective == d.strongly_injective,
        values: json!({
            "phi": {"strongly_injective": f.strongly_injective, "surjective": f.surjective},
            "transpose": {"strongly_injective": d.strongly_injective, "surjective": d.surjective},
        }),
    })
}

fn adjunction_item() -> Result<Item> {
    let a = square_cone();
    let b = PolyCone::new(2, &[qvec(&[1, 0]), qvec(&[1, 1])])?;
    let c = PolyCone::nonneg_orthant(2);
    let left = hom_cone(&tensor_cone(&a, &b)?, &c)?;
    let right = hom_cone(&a, &hom_cone(&b, &c)?)?;
    let perm = adjunction_permutation(a.dim(), b.dim(), c.dim());
    let mut moved: Vec<QVector> = left.rays().iter().map(|r| permute(r, &perm)).collect();
    moved.sort();
    let passed = moved.as_slice() == right.rays();
    Ok(Item {
        name: "hom-tensor-adjunction",
        anchor: "Hom(A⊗B, C) = Hom(A, Hom(B, C)) under the canonical reindexing",
        passed,
        values: json!({"left_rays": left.rays().len(), "right_rays": right.rays().len()}),
    })
}

fn finite_convergence_item(caps: &Caps) -> Result<Item> {
    let b = vec![qvec(&[-1, -1]), qvec(&[-1, 1]), qvec(&[1, -1]), qvec(&[1, 1])];
    let one = Rational::from_integer(1.into());
    let t = PolyMap::new(vec![
        Poly::from_terms(2, [(vec![1, 0], one.clone())])?,
        Poly::from_terms(2, [(vec![0, 1], one.clone())])?,
        Poly::from_terms(2, [(vec![1, 1], one)])?,
    ])?;
    let fc = finite_convergence(&b, &t, 4, DEFAULT_TOL, caps)?;
    let last = fc.levels.last();
    Ok(Item {
        name: "finite-convergence-on-square",
        anchor: "Conv(T(B)) = Q_k° for some k, B the square's vertices and T(a,b) = (a, b, ab)",
        passed: fc.verified && fc.k_star.is_some_and(|k| k <= 4),
        values: json!({
            "k_star": fc.k_star,
            "verified": fc.verified,
            "polar_vertices": fc.polar.vertices().len(),
            "supports": last.map(|l| l.supports.iter().map(|(e, v)| json!({"exact": format_rational(e), "computed": v})).collect::<Vec<_>>()),
        }),
    })
}

fn tensor_rays_item() -> Result<Item> {
    let c = square_cone();
    let t = tensor_cone(&c, &c)?;
    let mut products: Vec<QVector> = c.rays().iter().flat_map(|a| c.rays().iter().map(move |b| kron(a, b))).collect();
    products.sort();
    Ok(Item {
        name: "tensor-extreme-rays",
        anchor: "extreme rays of A⊗B are the products of extreme rays",
        passed: t.rays() == products.as_slice(),
        values: json!({"rays": t.rays().len()}),
    })
}

/// Every example, in report order. `beta` replaces the tensor counterexample's β.
pub fn verify_examples(beta: Option<&[Rational]>, caps: &Caps) -> Result<Vec<Item>> {
    let default_beta = tensor_beta();
    let beta = beta.unwrap_or(&default_beta);
    Ok(vec![
        tensor_square_item(caps)?,
        sym_square_item(caps)?,
        tensor_counterexample_item(beta)?,
        sym_counterexample_item()?,
        schur_cube_item(caps)?,
        census_item(caps)?,
        sidi_item()?,
        adjunction_item()?,
        tensor_rays_item()?,
        finite_convergence_item(caps)?,
    ])
}

pub fn report_json(items: &[Item]) -> Value {
    json!({
        "passed": items.iter().all(|i| i.passed),
        "items": items.iter().map(|i| json!({"name": i.name, "anchor": i.anchor, "passed": i.passed, "values": i.values})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_values() {
        let item = tensor_counterexample_item(&tensor_beta()).unwrap();
        assert!(item.passed, "{}", item.values);
        assert_eq!(item.values["gamma_beta"], json!("-2"));
        let item = sym_counterexample_item().unwrap();
        assert!(item.passed, "{}", item.values);
    }

    #[test]
    fn perturbed_beta_fails() {
        let mut b = tensor_beta();
        b[0] = q(0);
        assert!(!tensor_counterexample_item(&b).unwrap().passed);
    }

    #[test]
    fn segment_squares() {
        let caps = Caps::default();
        assert!(tensor_square_item(&caps).unwrap().passed);
        assert!(sym_square_item(&caps).unwrap().passed);
        assert!(sidi_item().unwrap().passed);
        assert!(adjunction_item().unwrap().passed);
        assert!(tensor_rays_item().unwrap().passed);
    }
}
