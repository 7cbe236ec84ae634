use crate::caps::Caps;
use crate::cones::{reduce_to_extreme_rays, ConvexBody, PolyCone};
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, product_of_linear_forms, Exponent, Poly};
use crate::qlinalg::{QMatrix, QVector, Rational};

/// Multisets of size `n` from `0..m`, as weakly increasing index lists.
pub fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// Monomial coordinates of the symmetric product `v₁⋯vₙ ∈ Symⁿ(ℝᵈ)`.
pub fn sym_product(vs: &[&[Rational]], d: usize) -> QVector {
    let n = vs.len() as u32;
    product_of_linear_forms(vs, d).coefficients(&monomials_of_degree(d, n))
}

/// `Symⁿ(C)`, generated by products of extreme rays.
pub fn sym_cone(c: &PolyCone, n: usize) -> Result<PolyCone> {
    if n == 0 {
        return Err(Error::Input("symmetric power order must be positive".into()));
    }
    let d = c.dim();
    let gens: Vec<QVector> = multisets(c.rays().len(), n)
        .iter()
        .map(|ms| {
            let vs: Vec<&[Rational]> = ms.iter().map(|&i| c.rays()[i].as_slice()).collect();
            sym_product(&vs, d)
        })
        .collect();
    reduce_to_extreme_rays(monomials_of_degree(d, n as u32).len(), &gens)
}

/// Matrix of `Symⁿ(f)` on monomial coordinates: the column for `x^α` holds
/// the coefficients of `∏ (f eᵢ)^{αᵢ}`.
pub fn sym_power_matrix(f: &QMatrix, n: usize) -> QMatrix {
    let src = monomials_of_degree(f.cols(), n as u32);
    let tgt = monomials_of_degree(f.rows(), n as u32);
    let cols: Vec<QVector> = src
        .iter()
        .map(|alpha| {
            let images: Vec<QVector> =
                alpha.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(f.column(i)).take(a as usize)).collect();
            let refs: Vec<&[Rational]> = images.iter().map(|v| v.as_slice()).collect();
            product_of_linear_forms(&refs, f.rows()).coefficients(&tgt)
        })
        .collect();
    QMatrix::from_columns(&cols).expect("columns share the target monomial count")
}

/// Monomial list of the body coordinates `(e₁ | e₂ | … | eₙ)`, blocks in
/// increasing degree and descending lex within a block.
pub fn sym_body_monomials(d: usize, n: usize) -> Vec<Exponent> {
    (1..=n as u32).flat_map(|j| monomials_of_degree(d, j)).collect()
}

/// `(e₁(p), …, eₙ(p))`: the nonconstant coefficients of `∏ (1 + pᵢ·x)`.
pub fn sym_point(ps: &[&[Rational]], d: usize) -> QVector {
    let mut poly = Poly::constant(d, Rational::one());
    for p in ps {
        let mut lin = Poly::linear(p);
        lin.add_term(vec![0; d], Rational::one());
        poly = poly.mul(&lin);
    }
    poly.coefficients(&sym_body_monomials(d, ps.len()))
}

/// For each monomial of `Symⁿ(ℝ^{d+1})` (last variable = homogenizing
/// coordinate) the index of the matching body coordinate, or `None` for `tⁿ`.
pub fn lifted_to_body_index(d: usize, n: usize) -> Vec<Option<usize>> {
    let body = sym_body_monomials(d, n);
    monomials_of_degree(d + 1, n as u32)
        .iter()
        .map(|e| {
            let head = &e[..d];
            if head.iter().all(|&x| x == 0) {
                None
            } else {
                body.iter().position(|b| b.as_slice() == head)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymBody {
    pub body: ConvexBody,
    pub n: usize,
    pub source_dim: usize,
    pub monomials: Vec<Exponent>,
}

pub fn sym_body(p: &ConvexBody, n: usize, caps: &Caps) -> Result<SymBody> {
    if n == 0 {
        return Err(Error::Input("symmetric power order must be positive".into()));
    }
    caps.check_factor("body", p.vertices().len())?;
    caps.check_power(p.dim(), n)?;
    let d = p.dim();
    let monomials = sym_body_monomials(d, n);
    let pts: Vec<QVector> = multisets(p.vertices().len(), n)
        .iter()
        .map(|ms| {
            let vs: Vec<&[Rational]> = ms.iter().map(|&i| p.vertices()[i].as_slice()).collect();
            sym_point(&vs, d)
        })
        .collect();
    let body = ConvexBody::hull_of(monomials.len(), &pts)?;
    Ok(SymBody { body, n, source_dim: d, monomials })
}
