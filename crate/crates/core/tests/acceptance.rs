//! The acceptance criteria, one pass/fail line each.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use cvxfun::caps::Caps;
use cvxfun::cones::{ConeMorphism, ConvexBody, Membership, PolyCone};
use cvxfun::functors::{
    classify_morphism, count_ssyt, hom_cone, hook_content, permute, adjunction_permutation, product_face_census,
    schur_body, sym_body, sym_cone, sym_power_matrix, tensor_body, tensor_cone, tensor_face_witness, Partition,
};
use cvxfun::linearizer::{brute_force_max, linearize_sym, linearize_tensor, lp_max_over_body};
use cvxfun::moments::{assemble_pencil, finite_convergence, qk_maximize, qk_membership, Measure, PolyMap};
use cvxfun::poly::{monomials_of_degree, Poly};
use cvxfun::qlinalg::{dot, kron, primitive_ray_q, q, qvec, QMatrix, QVector, Rational};
use cvxfun::random::{random_body, random_cone, random_morphism, random_objective, rng, MorphismKind};
use rand::Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn sorted(mut v: Vec<QVector>) -> Vec<QVector> {
    v.sort();
    v.dedup();
    v
}

fn segment() -> ConvexBody {
    ConvexBody::interval(q(-1), q(1)).unwrap()
}

/// `C_x = Cone(±x₁ ± x₂ + x₃)` and its facet map into ℝ⁴₊, typed from the example.
fn square_cone() -> PolyCone {
    PolyCone::new(3, &[qvec(&[1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[-1, -1, 1])]).unwrap()
}

fn phi_rows() -> [[i64; 3]; 4] {
    [[-1, 0, 1], [1, 0, 1], [0, -1, 1], [0, 1, 1]]
}

fn criterion_1() -> Check {
    let t = tensor_body(&segment(), &segment(), &Caps::default()).map_err(|e| e.to_string())?;
    let expected = sorted(vec![qvec(&[1, 1, 1]), qvec(&[-1, 1, -1]), qvec(&[-1, -1, 1]), qvec(&[1, -1, -1])]);
    ensure(t.body.vertices() == expected.as_slice(), format!("vertices {:?}", t.body.vertices()))?;
    Ok("4 vertices, exact match".into())
}

/// Coefficients of `(1+x)^m (1−x)^{n−m}` by repeated convolution.
fn segment_expansion(m: usize, n: usize) -> Vec<i64> {
    let mut c = vec![1i64];
    for i in 0..n {
        let s = if i < m { 1 } else { -1 };
        let mut next = vec![0; c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            next[k] += x;
            next[k + 1] += s * x;
        }
        c = next;
    }
    c
}

fn criterion_2() -> Check {
    let s = sym_body(&segment(), 2, &Caps::default()).map_err(|e| e.to_string())?;
    let expected = sorted((0..=2).map(|m| segment_expansion(m, 2)[1..].iter().map(|&x| q(x)).collect()).collect());
    ensure(s.body.vertices() == expected.as_slice(), format!("vertices {:?}", s.body.vertices()))?;
    Ok("3 vertices = coefficients of x, x² in (x+1)^m(1−x)^(2−m); coordinates in (e₁, e₂) order".into())
}

fn criterion_3() -> Check {
    let c = square_cone();
    let beta = qvec(&[-1, 1, 0, 1, 1, 0, 0, 0, 1]);
    let gamma = qvec(&[1, -1, 0, -1, -1, 0, 0, 0, 2]);
    let phi = phi_rows();
    // (φ⊗φ)β entrywise: Σ_{ij} φ[z][i] φ[w][j] β[i][j]
    let mut image = vec![q(0); 16];
    for z in 0..4 {
        for w in 0..4 {
            for i in 0..3 {
                for j in 0..3 {
                    image[z * 4 + w] += q(phi[z][i] * phi[w][j]) * &beta[i * 3 + j];
                }
            }
        }
    }
    let mut listed = vec![q(0); 16];
    for (z, w) in [(2, 1), (3, 1), (1, 2), (4, 2), (1, 3), (3, 3), (2, 4), (4, 4)] {
        listed[(z - 1) * 4 + (w - 1)] = q(2);
    }
    ensure(image.iter().all(|x| *x >= q(0)), "(φ⊗φ)β has a negative coefficient")?;
    ensure(image == listed, "(φ⊗φ)β differs from the listed 8 doubled terms")?;
    let products: Vec<QVector> = c.rays().iter().flat_map(|a| c.rays().iter().map(move |b| kron(a, b))).collect();
    let in_dual = |h: &[Rational]| products.iter().all(|p| dot(h, p) >= q(0));
    let tc = tensor_cone(&c, &c).map_err(|e| e.to_string())?;
    let sep = match tc.membership(&beta).map_err(|e| e.to_string())? {
        Membership::Outside { separator } => separator,
        _ => return Err("β reported inside C_x⊗C_y".into()),
    };
    ensure(in_dual(&sep) && dot(&sep, &beta) < q(0), "computed separator is not valid")?;
    ensure(in_dual(&gamma), "γ is negative on a product of rays")?;
    let gb = dot(&gamma, &beta);
    ensure(gb == q(-2), format!("γ(β) = {gb}"))?;
    Ok(format!("16 coefficients ≥ 0 matching listing; separator value {}; γ(β) = {gb}", dot(&sep, &beta)))
}

/// `Σ β̄_α ℓ^α` for the linear forms `ℓᵢ(z) = Σ_r φ[r][i] z_r`.
fn sym_image_by_expansion(beta: &[(usize, usize, i64)]) -> Poly {
    let phi = phi_rows();
    let forms: Vec<Poly> = (0..3).map(|i| Poly::linear(&(0..4).map(|r| q(phi[r][i])).collect::<Vec<_>>())).collect();
    let mut total = Poly::zero(4);
    for &(i, j, c) in beta {
        let t = forms[i].mul(&forms[j]).mul(&Poly::constant(4, q(c)));
        for (e, x) in t.terms() {
            total.add_term(e.clone(), x.clone());
        }
    }
    total
}

fn criterion_4() -> Check {
    // β̄ = −x₁² + 2x₁x₂ + x₂² + x₃² on the monomials x₁², x₁x₂, x₁x₃, x₂², x₂x₃, x₃².
    let beta_terms = [(0, 0, -1), (0, 1, 2), (1, 1, 1), (2, 2, 1)];
    let beta = qvec(&[-1, 2, 0, 1, 0, 1]);
    let gamma = qvec(&[1, -1, 0, -1, 0, 2]);
    let by_expansion = sym_image_by_expansion(&beta_terms);
    let mut listed = Poly::zero(4);
    for (e, c) in [([1, 1, 0, 0], 4), ([1, 0, 1, 0], 4), ([0, 1, 0, 1], 4), ([0, 0, 2, 0], 2), ([0, 0, 0, 2], 2)] {
        listed.add_term(e.to_vec(), q(c));
    }
    let mons = monomials_of_degree(4, 2);
    let phi = QMatrix::from_i64(&phi_rows().iter().map(|r| r.as_slice()).collect::<Vec<_>>());
    let matrix_image = sym_power_matrix(&phi, 2).mul_vec(&beta).map_err(|e| e.to_string())?;
    ensure(by_expansion.coefficients(&mons) == listed.coefficients(&mons), "expanded Sym²(φ)β̄ differs from the listed quadric")?;
    ensure(matrix_image == listed.coefficients(&mons), "Sym²(φ) matrix image differs from the listed quadric")?;
    let c = square_cone();
    let rays = c.rays();
    let basis = monomials_of_degree(3, 2);
    let products: Vec<QVector> = (0..rays.len())
        .flat_map(|i| (i..rays.len()).map(move |j| (i, j)))
        .map(|(i, j)| Poly::linear(&rays[i]).mul(&Poly::linear(&rays[j])).coefficients(&basis))
        .collect();
    ensure(products.iter().all(|p| dot(&gamma, p) >= q(0)), "γ̄ is negative on a product of rays")?;
    let sc = sym_cone(&c, 2).map_err(|e| e.to_string())?;
    ensure(matches!(sc.membership(&beta).map_err(|e| e.to_string())?, Membership::Outside { .. }), "β̄ reported inside Sym²(C_x)")?;
    let pairing = dot(&gamma, &beta);
    ensure(pairing == q(-2), format!("γ̄(β̄) = {pairing}"))?;
    Ok(format!("10 coefficients match by expansion and by matrix; γ̄(β̄) = {pairing}"))
}

fn criterion_5() -> Check {
    let cube = ConvexBody::hull_of(
        3,
        &(0..8).map(|m| (0..3).map(|i| q(if m >> i & 1 == 1 { 1 } else { -1 })).collect()).collect::<Vec<_>>(),
    )
    .map_err(|e| e.to_string())?;
    let s = schur_body(&cube, &Partition::new(vec![1, 1]).unwrap(), &Caps::default()).map_err(|e| e.to_string())?;
    let vs = s.body.vertices();
    let neg = sorted(vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect());
    ensure(vs.len() == 12, format!("{} vertices", vs.len()))?;
    // dim Λ²ℝ³ = binom(3, 2)
    ensure(s.body.dim() == 3, format!("ambient dimension {}", s.body.dim()))?;
    ensure(neg == vs, "vertex set is not closed under negation")?;
    Ok("12 vertices, dimension 3, centrally symmetric".into())
}

/// Sum of the facet normals tight at `ray` exposes exactly that ray.
fn exposing(c: &PolyCone, ray: &[Rational]) -> QVector {
    let mut h = vec![q(0); c.dim()];
    for f in c.facets().iter().filter(|f| dot(f, ray) == q(0)) {
        for (a, b) in h.iter_mut().zip(f) {
            *a += b;
        }
    }
    h
}

fn grading(c: &PolyCone) -> QVector {
    let mut g = vec![q(0); c.dim()];
    for f in c.facets() {
        for (a, b) in g.iter_mut().zip(f) {
            *a += b;
        }
    }
    g
}

fn criterion_6() -> Check {
    let mut g = rng(6);
    let mut total_rays = 0;
    for trial in 0..50 {
        let (da, db) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let a = random_cone(&mut g, da, 6).map_err(|e| e.to_string())?;
        let b = random_cone(&mut g, db, 6).map_err(|e| e.to_string())?;
        let t = tensor_cone(&a, &b).map_err(|e| e.to_string())?;
        let products: Vec<QVector> =
            a.rays().iter().flat_map(|x| b.rays().iter().map(move |y| primitive_ray_q(&kron(x, y)))).collect();
        let expected = sorted(products.clone());
        let got = sorted(t.rays().iter().map(|r| primitive_ray_q(r)).collect());
        ensure(got == expected, format!("trial {trial}: redundancy removal disagrees with ray products"))?;
        // Second route: an exact functional exposing each product ray.
        let (ga, gb) = (grading(&a), grading(&b));
        for x in a.rays() {
            for y in b.rays() {
                let h = tensor_face_witness(&a, &exposing(&a, x), &ga, &b, &exposing(&b, y), &gb).map_err(|e| e.to_string())?;
                let me = primitive_ray_q(&kron(x, y));
                for p in &products {
                    let v = dot(&h, p);
                    ensure(v >= q(0), format!("trial {trial}: witness negative on a product"))?;
                    ensure((v == q(0)) == (*p == me), format!("trial {trial}: witness does not expose exactly one ray"))?;
                }
            }
        }
        total_rays += got.len();
    }
    Ok(format!("50 pairs, {total_rays} extreme rays, each exposed by an exact witness"))
}

fn criterion_7() -> Check {
    let caps = Caps::default();
    let mut g = rng(7);
    for trial in 0..100 {
        let (d1, d2) = (g.gen_range(1..=2), g.gen_range(1..=2));
        let p = random_body(&mut g, d1, 5).map_err(|e| e.to_string())?;
        let q2 = random_body(&mut g, d2, 5).map_err(|e| e.to_string())?;
        let t = random_objective(&mut g, &[d1 + 1, d2 + 1], false).map_err(|e| e.to_string())?;
        let (f, body) = linearize_tensor(&t, &p, &q2, &caps).map_err(|e| e.to_string())?;
        let (lp, _) = lp_max_over_body(&f.linear, &body.body).map_err(|e| e.to_string())?;
        let (bf, _) = brute_force_max(&t, &[p.vertices(), q2.vertices()], &caps).map_err(|e| e.to_string())?;
        ensure(lp + &f.constant == bf, format!("bilinear trial {trial}"))?;
    }
    for trial in 0..100 {
        let (d, n) = if trial % 4 == 3 { (1, 3) } else { (g.gen_range(1..=2), 2) };
        let p = random_body(&mut g, d, 5).map_err(|e| e.to_string())?;
        let t = random_objective(&mut g, &vec![d + 1; n], true).map_err(|e| e.to_string())?;
        let (f, body) = linearize_sym(&t, &p, &caps).map_err(|e| e.to_string())?;
        let (lp, _) = lp_max_over_body(&f.linear, &body.body).map_err(|e| e.to_string())?;
        let lists = vec![p.vertices(); n];
        let (bf, _) = brute_force_max(&t, &lists, &caps).map_err(|e| e.to_string())?;
        ensure(lp + &f.constant == bf, format!("symmetric trial {trial}"))?;
    }
    Ok("100 bilinear + 100 symmetric objectives, exact equality".into())
}

fn criterion_8() -> Check {
    let mut g = rng(8);
    for trial in 0..20 {
        let da = g.gen_range(2..=3);
        let a = random_cone(&mut g, da, 4).map_err(|e| e.to_string())?;
        let b = random_cone(&mut g, 2, 3).map_err(|e| e.to_string())?;
        let c = random_cone(&mut g, 2, 3).map_err(|e| e.to_string())?;
        let left = hom_cone(&tensor_cone(&a, &b).map_err(|e| e.to_string())?, &c).map_err(|e| e.to_string())?;
        let right = hom_cone(&a, &hom_cone(&b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let perm = adjunction_permutation(a.dim(), b.dim(), c.dim());
        let moved = sorted(left.rays().iter().map(|r| primitive_ray_q(&permute(r, &perm))).collect());
        let right = sorted(right.rays().iter().map(|r| primitive_ray_q(r)).collect());
        ensure(moved == right, format!("trial {trial}: ray sets differ"))?;
    }
    Ok("20 triples, equal ray sets".into())
}

fn criterion_9() -> Check {
    let mut g = rng(9);
    let mut morphisms = Vec::new();
    for i in 0..50 {
        let kind = [MorphismKind::Surjective, MorphismKind::StronglyInjective, MorphismKind::Generic][i % 3];
        morphisms.push(random_morphism(&mut g, kind, 3).map_err(|e| e.to_string())?);
    }
    let phi = QMatrix::from_i64(&phi_rows().iter().map(|r| r.as_slice()).collect::<Vec<_>>());
    morphisms.push(ConeMorphism::new(phi, square_cone(), PolyCone::nonneg_orthant(4)).map_err(|e| e.to_string())?);
    let (mut si, mut surj) = (0, 0);
    for (i, f) in morphisms.iter().enumerate() {
        let a = classify_morphism(f).map_err(|e| e.to_string())?;
        let b = classify_morphism(&f.dual()).map_err(|e| e.to_string())?;
        ensure(a.strongly_injective == b.surjective, format!("morphism {i}: strong injectivity ≠ dual surjectivity"))?;
        ensure(a.surjective == b.strongly_injective, format!("morphism {i}: surjectivity ≠ dual strong injectivity"))?;
        si += a.strongly_injective as usize;
        surj += a.surjective as usize;
    }
    let last = classify_morphism(morphisms.last().unwrap()).map_err(|e| e.to_string())?;
    ensure(last.strongly_injective, "φ is not strongly injective")?;
    Ok(format!("51 morphisms ({si} strongly injective, {surj} surjective), equivalence holds"))
}

fn criterion_10() -> Check {
    let caps = Caps::default();
    let m = Measure::counting(vec![qvec(&[-1]), qvec(&[1])]).map_err(|e| e.to_string())?;
    let p = assemble_pencil(&m, &PolyMap::identity(1), 1, &caps).map_err(|e| e.to_string())?;
    let mut g = rng(10);
    let mut pts: Vec<Rational> = vec![q(1), q(-1), r(1001, 1000), r(-1001, 1000), r(999, 1000), q(0)];
    pts.extend((0..50).map(|_| r(g.gen_range(-300..=300), g.gen_range(1..=100))));
    for l in &pts {
        let member = qk_membership(&p, &[l.clone()]).map_err(|e| e.to_string())?;
        ensure(member == (*l <= q(1) && *l >= q(-1)), format!("membership of {l} is {member}"))?;
    }
    for c in [1, -1] {
        let res = qk_maximize(&p, &[q(c)], &q(10), 1e-7).map_err(|e| e.to_string())?;
        ensure((res.value - 1.0).abs() <= 1e-6, format!("support along {c} is {}", res.value))?;
    }
    Ok(format!("{} points agree with |λ| ≤ 1; supports ±1 equal 1", pts.len()))
}

fn criterion_11() -> Check {
    let b = vec![qvec(&[-1, -1]), qvec(&[-1, 1]), qvec(&[1, -1]), qvec(&[1, 1])];
    let t = PolyMap::new(vec![
        Poly::from_terms(2, [(vec![1, 0], q(1))]).unwrap(),
        Poly::from_terms(2, [(vec![0, 1], q(1))]).unwrap(),
        Poly::from_terms(2, [(vec![1, 1], q(1))]).unwrap(),
    ])
    .map_err(|e| e.to_string())?;
    let fc = finite_convergence(&b, &t, 4, 1e-7, &Caps::default()).map_err(|e| e.to_string())?;
    let k = fc.k_star.ok_or("no k ≤ 4 verified")?;
    ensure(fc.verified && k <= 4, "not verified")?;
    let level = fc.levels.iter().find(|l| l.k == k).ok_or("missing level")?;
    ensure(level.polar_vertices_inside, "a polar vertex fails exact membership")?;
    ensure(level.supports.len() == 4, format!("{} support directions", level.supports.len()))?;
    // Polar facets are {y : ⟨y, v⟩ = −1} for the image vertices v; the support along −v is 1.
    let mut worst = 0f64;
    for (exact, got) in &level.supports {
        ensure(*exact == q(1), format!("exact support {exact}"))?;
        worst = worst.max((got - 1.0).abs());
    }
    ensure(worst <= 1e-6, format!("support error {worst:e}"))?;
    ensure(fc.polar.vertices().len() == 4, "polar is not a simplex")?;
    Ok(format!("k* = {k}, max support error {worst:.1e}"))
}

fn criterion_12() -> Check {
    let caps = Caps::default();
    let tol = 1e-7;
    let m = Measure::lebesgue(vec![q(-1)], vec![q(1)]).map_err(|e| e.to_string())?;
    let t = PolyMap::new(vec![Poly::from_terms(1, [(vec![2], q(1))]).unwrap()]).map_err(|e| e.to_string())?;
    let pencils: Vec<_> = (0..=4).map(|k| assemble_pencil(&m, &t, k, &caps)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut cols = BTreeMap::new();
    for c in [1i64, -1] {
        let vals: Vec<f64> = pencils
            .iter()
            .map(|p| qk_maximize(p, &[q(c)], &q(10), tol).map(|r| r.value))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for w in vals.windows(2) {
            ensure(w[1] <= w[0] + 2.0 * tol, format!("c = {c}: values increase {vals:?}"))?;
        }
        cols.insert(c, vals);
    }
    let mut g = rng(12);
    let sample: Vec<Rational> = (0..100).map(|_| r(g.gen_range(-4000..=4000), 1000)).collect();
    let mut checked = 0;
    for k in 0..4 {
        for l in &sample {
            if qk_membership(&pencils[k + 1], &[l.clone()]).map_err(|e| e.to_string())? {
                checked += 1;
                ensure(qk_membership(&pencils[k], &[l.clone()]).map_err(|e| e.to_string())?, format!("{l} ∈ Q_{} but ∉ Q_{k}", k + 1))?;
            }
        }
    }
    ensure(checked > 0, "no sampled point lies in any Q_(k+1)")?;
    let fmt = |v: &Vec<f64>| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    Ok(format!("c=+1: {}; c=−1: {}; {checked} nested memberships", fmt(&cols[&1]), fmt(&cols[&-1])))
}

fn criterion_13() -> Check {
    let mut rows = Vec::new();
    for n in 2..=4usize {
        let c = product_face_census(&segment(), n, &Caps::default()).map_err(|e| e.to_string())?;
        let expected = (n + 2) * (n + 1) / 2;
        ensure(c.product_faces == expected, format!("n = {n}: {} product faces, expected {expected}", c.product_faces))?;
        rows.push(format!("n={n}: {} product faces, {} nonempty faces (stated {})", c.product_faces, c.total_nonempty_faces, (1 << n) - 1));
    }
    Ok(rows.join("; "))
}

fn criterion_14() -> Check {
    let mut count = 0;
    for n in 1..=4 {
        for lambda in Partition::all_of(n) {
            for d in 1..=4 {
                let (a, b) = (count_ssyt(&lambda, d), hook_content(&lambda, d));
                ensure(a == b, format!("λ = {lambda}, d = {d}: {a} tableaux vs hook-content {b}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (λ, d) pairs agree"))
}

fn criterion_15() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_cvxfun")).arg("verify-paper").output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let items = report["items"].as_array().ok_or("no items")?;
    for name in [
        "tensor-square-of-segment",
        "symmetric-square-of-segment",
        "tensor-counterexample",
        "symmetric-square-counterexample",
        "exterior-square-of-cube",
    ] {
        let item = items.iter().find(|i| i["name"] == name).ok_or(format!("{name} missing"))?;
        ensure(item["passed"] == true && item["values"].is_object(), format!("{name} failed"))?;
    }
    let gb = &items.iter().find(|i| i["name"] == "tensor-counterexample").unwrap()["values"]["gamma_beta"];
    ensure(gb == "-2", format!("reported γ(β) = {gb}"))?;
    Ok(format!("exit 0, {} items pass, γ(β) = -2 reported", items.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 15] = [
        ("tensor square of the segment", criterion_1),
        ("symmetric square of the segment", criterion_2),
        ("tensor counterexample", criterion_3),
        ("symmetric-square counterexample", criterion_4),
        ("exterior square of the cube", criterion_5),
        ("extreme rays of tensor products", criterion_6),
        ("universal linearization", criterion_7),
        ("hom-tensor adjunction", criterion_8),
        ("strong injectivity duality", criterion_9),
        ("hierarchy exactness at k = 1", criterion_10),
        ("finite convergence on the square", criterion_11),
        ("nesting and monotonicity", criterion_12),
        ("product-face census", criterion_13),
        ("Schur dimension cross-check", criterion_14),
        ("verify-paper command", criterion_15),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
