use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::partition::{schur_dim, Partition};
use crate::caps::Caps;
use crate::cones::ConvexBody;
use crate::error::{Error, Result};
use crate::qlinalg::{QMatrix, QVector, Rational};

/// All permutations of `0..n` that preserve each block, with their signs.
fn block_permutations(blocks: &[Vec<usize>], n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out: Vec<(Vec<usize>, i64)> = vec![((0..n).collect(), 1)];
    for block in blocks {
        let mut next = Vec::new();
        for (perm, sign) in &out {
            for (arr, s) in permutations_of(block) {
                let mut p = perm.clone();
                for (from, to) in block.iter().zip(&arr) {
                    p[*from] = *to;
                }
                next.push((p, sign * s));
            }
        }
        out = next;
    }
    out
}

/// Orderings of `items` with the sign of the rearrangement.
fn permutations_of(items: &[usize]) -> Vec<(Vec<usize>, i64)> {
    if items.len() <= 1 {
        return vec![(items.to_vec(), 1)];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (mut tail, s) in permutations_of(&rest) {
            tail.insert(0, head);
            out.push((tail, sign * s));
        }
    }
    out
}

/// The operator `Σ_{σ ∈ R} Σ_{τ ∈ C} sgn(τ) στ` on `(ℝᵈ)^{⊗n}`: column
/// antisymmetrization first, then row symmetrization, so that exchanging two
/// entries of a column negates the image.
#[derive(Debug, Clone)]
pub struct YoungSymmetrizer {
    pub lambda: Partition,
    terms: Vec<(Vec<usize>, i64)>,
}

impl YoungSymmetrizer {
    pub fn new(lambda: &Partition) -> Self {
        let n = lambda.size();
        let cells = lambda.cells();
        let pos = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c)).expect("cell exists");
        let rows: Vec<Vec<usize>> =
            (0..lambda.rows()).map(|r| (0..lambda.parts()[r]).map(|c| pos(r, c)).collect()).collect();
        let conj = lambda.conjugate();
        let cols: Vec<Vec<usize>> =
            (0..conj.rows()).map(|c| (0..conj.parts()[c]).map(|r| pos(r, c)).collect()).collect();
        let row_group: Vec<Vec<usize>> = block_permutations(&rows, n).into_iter().map(|(p, _)| p).collect();
        let col_group = block_permutations(&cols, n);
        let mut terms = Vec::with_capacity(row_group.len() * col_group.len());
        for sigma in &row_group {
            for (tau, sign) in &col_group {
                let composed: Vec<usize> = (0..n).map(|k| sigma[tau[k]]).collect();
                terms.push((composed, *sign));
            }
        }
        YoungSymmetrizer { lambda: lambda.clone(), terms }
    }

    pub fn order(&self) -> usize {
        self.lambda.size()
    }

    /// Entry `J` of the image of `v₁ ⊗ … ⊗ vₙ`.
    pub fn apply_entry(&self, vs: &[&[Rational]], j: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for (pi, sign) in &self.terms {
            let mut prod = Rational::one();
            for (k, v) in vs.iter().enumerate() {
                let x = &v[j[pi[k]]];
                if x.is_zero() {
                    prod = Rational::zero();
                    break;
                }
                prod *= x;
            }
            if !prod.is_zero() {
                if *sign > 0 {
                    total += prod;
                } else {
                    total -= prod;
                }
            }
        }
        total
    }

    /// Image of a standard basis tensor `e_I` as a sparse integer vector.
    fn apply_basis(&self, idx: &[usize], d: usize) -> BTreeMap<usize, i64> {
        let n = idx.len();
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (pi, sign) in &self.terms {
            // J with J[π(k)] = I[k].
            let mut j = vec![0; n];
            for k in 0..n {
                j[pi[k]] = idx[k];
            }
            *out.entry(encode(&j, d)).or_insert(0) += sign;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

fn encode(idx: &[usize], d: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i)
}

fn decode(mut k: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        out[i] = k % d;
        k /= d;
    }
    out
}

/// Reduced echelon basis of the symmetrizer image inside `(ℝᵈ)^{⊗n}`.
///
/// Coordinates of an image vector are its entries at the pivot positions.
#[derive(Debug, Clone)]
pub struct SchurBasis {
    pub symmetrizer: YoungSymmetrizer,
    pub d: usize,
    pub pivots: Vec<usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SchurBasis {
    pub fn new(lambda: &Partition, d: usize, caps: &Caps) -> Result<Self> {
        if lambda.rows() > d {
            return Err(Error::ZeroFunctor(format!(
                "the shape ({lambda}) has {} rows but the space has dimension {d}",
                lambda.rows()
            )));
        }
        let n = lambda.size();
        caps.check_power(d, n)?;
        let target = schur_dim(lambda, d)? as usize;
        let sym = YoungSymmetrizer::new(lambda);
        let mut pivots: Vec<usize> = Vec::new();
        let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let total = d.pow(n as u32);
        for k in 0..total {
            if rows.len() == target {
                break;
            }
            let img = sym.apply_basis(&decode(k, d, n), d);
            let mut v: BTreeMap<usize, Rational> =
                img.into_iter().map(|(i, c)| (i, Rational::from_integer(c.into()))).collect();
            for (p, row) in pivots.iter().zip(&rows) {
                let Some(c) = v.get(p).cloned() else { continue };
                for (i, x) in row {
                    let e = v.entry(*i).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                v.retain(|_, x| !x.is_zero());
            }
            let Some((&lead, lead_val)) = v.iter().next() else { continue };
            let inv = Rational::one() / lead_val;
            for x in v.values_mut() {
                *x *= &inv;
            }
            for row in rows.iter_mut() {
                if let Some(c) = row.get(&lead).cloned() {
                    for (i, x) in &v {
                        let e = row.entry(*i).or_insert_with(Rational::zero);
                        *e -= &c * x;
                    }
                    row.retain(|_, x| !x.is_zero());
                }
            }
            pivots.push(lead);
            rows.push(v);
        }
        if rows.len() != target {
            return Err(Error::Validation(format!(
                "symmetrizer image has dimension {} but {target} was expected",
                rows.len()
            )));
        }
        let mut order: Vec<usize> = (0..pivots.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        let pivots = order.iter().map(|&i| pivots[i]).collect();
        let rows = order.iter().map(|&i| rows[i].clone()).collect();
        Ok(SchurBasis { symmetrizer: sym, d, pivots, rows })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn order(&self) -> usize {
        self.symmetrizer.order()
    }

    /// Coordinates of `h_λ(v₁, …, vₙ)`.
    pub fn image_coordinates(&self, vs: &[&[Rational]]) -> QVector {
        let n = self.order();
        self.pivots.iter().map(|&p| self.symmetrizer.apply_entry(vs, &decode(p, self.d, n))).collect()
    }

    /// Basis matrix: column `r` is basis vector `r` in the ambient tensor coordinates.
    pub fn basis_matrix(&self) -> QMatrix {
        let total = self.d.pow(self.order() as u32);
        let cols: Vec<QVector> = self
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![Rational::zero(); total];
                for (i, x) in row {
                    v[*i] = x.clone();
                }
                v
            })
            .collect();
        QMatrix::from_columns(&cols).expect("nonempty basis")
    }

    /// Matrix of `S_λ(f)` from this basis to `target`, where `f` is `target.d × self.d`.
    pub fn induced_matrix(&self, target: &SchurBasis, f: &QMatrix) -> Result<QMatrix> {
        if f.cols() != self.d || f.rows() != target.d || target.symmetrizer.lambda != self.symmetrizer.lambda {
            return Err(Error::Dimension("map does not match the Schur bases".into()));
        }
        let n = self.order();
        let cols: Vec<QVector> = self
            .rows
            .iter()
            .map(|row| {
                target
                    .pivots
                    .iter()
                    .map(|&jp| {
                        let j = decode(jp, target.d, n);
                        let mut s = Rational::zero();
                        for (k, x) in row {
                            let kk = decode(*k, self.d, n);
                            let mut prod = x.clone();
                            for t in 0..n {
                                prod *= &f[(j[t], kk[t])];
                            }
                            s += prod;
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        QMatrix::from_columns(&cols)
    }
}

#[derive(Debug, Clone)]
pub struct SchurBody {
    pub body: ConvexBody,
    pub lambda: Partition,
    pub source_dim: usize,
    pub basis: SchurBasis,
}

/// Distinct images `h_λ(v₁, …, vₙ)` over all vertex tuples.
pub fn schur_images(p: &ConvexBody, basis: &SchurBasis) -> Vec<QVector> {
    let n = basis.order();
    let m = p.vertices().len();
    let mut seen: BTreeSet<QVector> = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let vs: Vec<&[Rational]> = idx.iter().map(|&i| p.vertices()[i].as_slice()).collect();
        seen.insert(basis.image_coordinates(&vs));
        let mut k = n;
        loop {
            if k == 0 {
                return seen.into_iter().collect();
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
        }
    }
}

pub fn schur_body(p: &ConvexBody, lambda: &Partition, caps: &Caps) -> Result<SchurBody> {
    caps.check_factor("body", p.vertices().len())?;
    let basis = SchurBasis::new(lambda, p.dim(), caps)?;
    let pts = schur_images(p, &basis);
    let body = ConvexBody::hull_of(basis.dim(), &pts)?;
    Ok(SchurBody { body, lambda: lambda.clone(), source_dim: p.dim(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{neg, qvec};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn exterior_square_of_cube() {
        let s = schur_body(&ConvexBody::cube(3), &p("1,1"), &Caps::default()).unwrap();
        assert_eq!(s.body.dim(), 3);
        assert_eq!(s.body.vertices().len(), 12);
        for v in s.body.vertices() {
            assert!(s.body.vertex_index(&neg(v)).is_some());
        }
    }

    #[test]
    fn column_exchange_negates() {
        let b = SchurBasis::new(&p("2,1"), 3, &Caps::default()).unwrap();
        let (u, v, w) = (qvec(&[1, 2, 0]), qvec(&[0, 1, -1]), qvec(&[3, 0, 1]));
        // Reading order puts entries 0 and 2 in the first column.
        let a = b.image_coordinates(&[&u, &v, &w]);
        let c = b.image_coordinates(&[&w, &v, &u]);
        assert_eq!(a, neg(&c));
        assert!(a.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn basis_dimensions_match_tableau_counts() {
        for (shape, d) in [("2", 3), ("1,1", 3), ("2,1", 3), ("3", 2), ("2,2", 3)] {
            let lam = p(shape);
            let b = SchurBasis::new(&lam, d, &Caps::default()).unwrap();
            assert_eq!(b.dim() as u64, schur_dim(&lam, d).unwrap());
        }
    }

    #[test]
    fn too_many_rows_is_a_zero_functor() {
        assert!(matches!(SchurBasis::new(&p("1,1,1"), 2, &Caps::default()), Err(Error::ZeroFunctor(_))));
    }

    #[test]
    fn induced_identity() {
        let b = SchurBasis::new(&p("2,1"), 2, &Caps::default()).unwrap();
        let m = b.induced_matrix(&b, &QMatrix::identity(2)).unwrap();
        assert_eq!(m, QMatrix::identity(b.dim()));
    }
}
