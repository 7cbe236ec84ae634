//! Linearization of multilinear objectives over products of bodies through
//! the tensor and symmetric-power bodies, with brute-force and LP oracles.

use num_traits::Zero;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::cones::ConvexBody;
use crate::error::{Error, Result};
use crate::functors::{lifted_to_body_index, sym_body, tensor_body, SymBody, TensorBody};
use crate::poly::{monomials_of_degree, multinomial};
use crate::qlinalg::{dot, lp_optimize, LpOutcome, LpProblem, QMatrix, QVector, Rational, Sense, VarBound};

/// Multilinear map on lifted factors `(pᵢ, 1) ∈ ℝ^{dᵢ+1}`, stored as a flat
/// row-major coefficient tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearObjective {
    lift_dims: Vec<usize>,
    coeffs: Vec<Rational>,
    symmetric: bool,
}

/// `x ↦ ⟨linear, x⟩ + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunctional {
    pub linear: QVector,
    pub constant: Rational,
}

impl AffineFunctional {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.linear, x) + &self.constant
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

impl MultilinearObjective {
    pub fn new(lift_dims: Vec<usize>, coeffs: Vec<Rational>, symmetric: bool) -> Result<Self> {
        if lift_dims.is_empty() {
            return Err(Error::Input("objective order must be positive".into()));
        }
        if lift_dims.iter().any(|&d| d < 2) {
            return Err(Error::Dimension("lifted factor dimensions must be at least 2".into()));
        }
        let total: usize = lift_dims.iter().product();
        if coeffs.len() != total {
            return Err(Error::Dimension(format!(
                "coefficient tensor has {} entries but the lifted dimensions {lift_dims:?} need {total}",
                coeffs.len()
            )));
        }
        let obj = MultilinearObjective { lift_dims, coeffs, symmetric };
        if symmetric && !obj.is_symmetric_tensor() {
            return Err(Error::Validation("objective is flagged symmetric but its tensor is not".into()));
        }
        Ok(obj)
    }

    pub fn order(&self) -> usize {
        self.lift_dims.len()
    }

    pub fn lift_dims(&self) -> &[usize] {
        &self.lift_dims
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn coeff(&self, idx: &[usize]) -> &Rational {
        let s = strides(&self.lift_dims);
        &self.coeffs[idx.iter().zip(&s).map(|(i, st)| i * st).sum::<usize>()]
    }

    fn index_tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = self.coeffs.len();
        let dims = self.lift_dims.clone();
        (0..total).map(move |mut k| {
            let mut idx = vec![0; dims.len()];
            for i in (0..dims.len()).rev() {
                idx[i] = k % dims[i];
                k /= dims[i];
            }
            idx
        })
    }

    pub fn is_symmetric_tensor(&self) -> bool {
        if self.lift_dims.iter().any(|&d| d != self.lift_dims[0]) {
            return false;
        }
        self.index_tuples().zip(&self.coeffs).all(|(idx, c)| {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            self.coeff(&sorted) == c
        })
    }

    /// `T((p₁,1), …, (pₙ,1))`.
    pub fn eval(&self, points: &[&[Rational]]) -> Result<Rational> {
        if points.len() != self.order() {
            return Err(Error::Dimension(format!("{} points for an order-{} objective", points.len(), self.order())));
        }
        for (p, &d) in points.iter().zip(&self.lift_dims) {
            if p.len() + 1 != d {
                return Err(Error::Dimension(format!("point of length {} for lifted dimension {d}", p.len())));
            }
        }
        let one = Rational::from_integer(1.into());
        let mut total = Rational::zero();
        for (idx, c) in self.index_tuples().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut t = c.clone();
            for (p, &i) in points.iter().zip(&idx) {
                let x = if i < p.len() { &p[i] } else { &one };
                if x.is_zero() {
                    t = Rational::zero();
                    break;
                }
                t *= x;
            }
            total += t;
        }
        Ok(total)
    }
}

/// Affine functional `t` on `P ⊗ Q` with `T(p, q) = t(p, q, p⊗q)`.
pub fn linearize_tensor(
    obj: &MultilinearObjective,
    p: &ConvexBody,
    q: &ConvexBody,
    caps: &Caps,
) -> Result<(AffineFunctional, TensorBody)> {
    if obj.order() != 2 {
        return Err(Error::Input(format!("tensor linearization needs an order-2 objective, got order {}", obj.order())));
    }
    let (d1, d2) = (p.dim(), q.dim());
    if obj.lift_dims() != [d1 + 1, d2 + 1] {
        return Err(Error::Dimension(format!(
            "objective lifted dimensions {:?} do not match bodies of dimensions {d1} and {d2}",
            obj.lift_dims()
        )));
    }
    let body = tensor_body(p, q, caps)?;
    let mut linear = Vec::with_capacity(body.dim());
    linear.extend((0..d1).map(|i| obj.coeff(&[i, d2]).clone()));
    linear.extend((0..d2).map(|j| obj.coeff(&[d1, j]).clone()));
    for i in 0..d1 {
        for j in 0..d2 {
            linear.push(obj.coeff(&[i, j]).clone());
        }
    }
    let constant = obj.coeff(&[d1, d2]).clone();
    Ok((AffineFunctional { linear, constant }, body))
}

/// Affine functional `t` on `Symⁿ(P)` with `T(p₁, …, pₙ) = t(e₁(p), …, eₙ(p))`.
pub fn linearize_sym(obj: &MultilinearObjective, p: &ConvexBody, caps: &Caps) -> Result<(AffineFunctional, SymBody)> {
    let n = obj.order();
    let d = p.dim();
    if obj.lift_dims().iter().any(|&x| x != d + 1) {
        return Err(Error::Dimension(format!(
            "objective lifted dimensions {:?} do not match a body of dimension {d}",
            obj.lift_dims()
        )));
    }
    if !obj.is_symmetric_tensor() {
        return Err(Error::Input("symmetric linearization needs a symmetric objective".into()));
    }
    let body = sym_body(p, n, caps)?;
    // Coefficients of the form T(x, …, x) on monomials of Symⁿ(ℝ^{d+1}).
    let lifted = monomials_of_degree(d + 1, n as u32);
    let mut poly: std::collections::BTreeMap<Vec<u32>, Rational> = std::collections::BTreeMap::new();
    for (idx, c) in obj.index_tuples().zip(obj.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0u32; d + 1];
        for &i in &idx {
            e[i] += 1;
        }
        *poly.entry(e).or_insert_with(Rational::zero) += c;
    }
    let targets = lifted_to_body_index(d, n);
    let mut linear = vec![Rational::zero(); body.body.dim()];
    let mut constant = Rational::zero();
    for (e, slot) in lifted.iter().zip(&targets) {
        let v = poly.get(e).cloned().unwrap_or_else(Rational::zero) / multinomial(e);
        match slot {
            Some(i) => linear[*i] = v,
            None => constant = v,
        }
    }
    Ok((AffineFunctional { linear, constant }, body))
}

/// Exact maximum of `T` over all vertex tuples, with the lexicographically
/// first maximizing index tuple.
pub fn brute_force_max(
    obj: &MultilinearObjective,
    factors: &[&[QVector]],
    caps: &Caps,
) -> Result<(Rational, Vec<usize>)> {
    if factors.len() != obj.order() || factors.iter().any(|f| f.is_empty()) {
        return Err(Error::Input("one nonempty vertex list per objective factor is required".into()));
    }
    let total = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len()));
    let total = match total {
        Some(t) if t <= caps.tuples => t,
        _ => return Err(Error::SizeCap(format!("vertex tuple count exceeds the cap {}", caps.tuples))),
    };
    let lens: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let decode = |mut k: usize| {
        let mut idx = vec![0; lens.len()];
        for i in (0..lens.len()).rev() {
            idx[i] = k % lens[i];
            k /= lens[i];
        }
        idx
    };
    let results: Vec<Result<(Rational, usize)>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let idx = decode(k);
            let pts: Vec<&[Rational]> = idx.iter().zip(factors).map(|(&i, f)| f[i].as_slice()).collect();
            obj.eval(&pts).map(|v| (v, k))
        })
        .collect();
    let mut best: Option<(Rational, usize)> = None;
    for r in results {
        let (v, k) = r?;
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, k));
        }
    }
    let (v, k) = best.expect("at least one tuple");
    Ok((v, decode(k)))
}

/// Exact `max ⟨c, x⟩` over the body by simplex on its facet description,
/// returning the optimal vertex.
pub fn lp_max_over_body(c: &[Rational], p: &ConvexBody) -> Result<(Rational, QVector)> {
    if c.len() != p.dim() {
        return Err(Error::Dimension(format!("functional of length {} for body of dimension {}", c.len(), p.dim())));
    }
    let facets = p.facets();
    let a = QMatrix::from_rows(&facets.iter().map(|f| f.normal.clone()).collect::<Vec<_>>())?;
    let b: QVector = facets.iter().map(|f| -f.offset.clone()).collect();
    let lp = LpProblem::new(c.to_vec(), a, b, vec![Sense::Ge; facets.len()])?
        .with_bounds(vec![VarBound::free(); p.dim()])?;
    match lp_optimize(&lp)? {
        LpOutcome::Optimal { value, point, .. } => {
            if p.vertex_index(&point).is_some() {
                return Ok((value, point));
            }
            let v = p
                .vertices()
                .iter()
                .find(|v| dot(c, v) == value)
                .cloned()
                .ok_or_else(|| Error::Numerical("LP optimum is not attained at any vertex".into()))?;
            Ok((value, v))
        }
        _ => Err(Error::Numerical("LP over a bounded nonempty body did not report an optimum".into())),
    }
}
