//! Seeded generators for random cones, bodies, morphisms and objectives.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cones::{extreme_rays_of_h, ConeMorphism, ConvexBody, PolyCone};
use crate::error::{Error, Result};
use crate::linearizer::MultilinearObjective;
use crate::qlinalg::{ints_to_q, q, rank_of_vectors, QMatrix, QVector, Rational};

pub type SeededRng = ChaCha8Rng;

const MAX_ATTEMPTS: usize = 1000;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int_vec(rng: &mut SeededRng, dim: usize, lo: i64, hi: i64) -> QVector {
    (0..dim).map(|_| q(rng.gen_range(lo..=hi))).collect()
}

/// Pointed full-dimensional cone spanned by `dim..=max_rays` small integer
/// generators with positive last coordinate.
pub fn random_cone(rng: &mut SeededRng, dim: usize, max_rays: usize) -> Result<PolyCone> {
    if dim == 0 || max_rays < dim {
        return Err(Error::Input("need dim ≥ 1 and at least dim generators".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let n = rng.gen_range(dim..=max_rays);
        let gens: Vec<QVector> = (0..n)
            .map(|_| {
                let mut v = int_vec(rng, dim - 1, -3, 3);
                v.push(q(rng.gen_range(1..=3)));
                v
            })
            .collect();
        if rank_of_vectors(&gens, dim) == dim {
            return PolyCone::new(dim, &gens);
        }
    }
    Err(Error::Numerical("could not draw a full-dimensional cone".into()))
}

/// Polytope with the origin inside: random integer points, recentred at
/// their average.
pub fn random_body(rng: &mut SeededRng, dim: usize, max_points: usize) -> Result<ConvexBody> {
    if dim == 0 || max_points <= dim {
        return Err(Error::Input("need dim ≥ 1 and more than dim points".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let n = rng.gen_range(dim + 1..=max_points);
        let pts: Vec<QVector> = (0..n).map(|_| int_vec(rng, dim, -3, 3)).collect();
        let (pts, _) = crate::moments::recenter(&pts)?;
        if let Ok(b) = ConvexBody::hull_of(dim, &pts) {
            return Ok(b);
        }
    }
    Err(Error::Numerical("could not draw a full-dimensional body".into()))
}

/// Integer coefficients in `[−9, 9]`; symmetric objectives are drawn on
/// sorted index tuples and copied to their permutations.
pub fn random_objective(rng: &mut SeededRng, lift_dims: &[usize], symmetric: bool) -> Result<MultilinearObjective> {
    let total: usize = lift_dims.iter().product();
    let mut coeffs: Vec<Rational> = (0..total).map(|_| q(rng.gen_range(-9..=9))).collect();
    if symmetric {
        let n = lift_dims.len();
        let d = lift_dims[0];
        for k in 0..total {
            let mut idx = vec![0; n];
            let mut r = k;
            for i in (0..n).rev() {
                idx[i] = r % d;
                r /= d;
            }
            idx.sort_unstable();
            let src = idx.iter().fold(0, |acc, &i| acc * d + i);
            coeffs[k] = coeffs[src].clone();
        }
    }
    MultilinearObjective::new(lift_dims.to_vec(), coeffs, symmetric)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    /// Target spanned by the images of the source rays.
    Surjective,
    /// Source is the preimage of the target under an injective map.
    StronglyInjective,
    /// Target spanned by the images plus extra random rays.
    Generic,
}

fn random_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> QMatrix {
    let data = (0..rows * cols).map(|_| q(rng.gen_range(-2..=2))).collect();
    QMatrix::from_flat(rows, cols, data).expect("sizes match")
}

pub fn random_morphism(rng: &mut SeededRng, kind: MorphismKind, max_dim: usize) -> Result<ConeMorphism> {
    let max_dim = max_dim.max(2);
    for _ in 0..MAX_ATTEMPTS {
        let attempt = match kind {
            MorphismKind::Surjective => {
                let dt = rng.gen_range(2..=max_dim);
                let ds = rng.gen_range(dt..=max_dim);
                let src = random_cone(rng, ds, ds + 2)?;
                let m = random_matrix(rng, dt, ds);
                let imgs: Vec<QVector> = src.rays().iter().map(|r| m.mul_vec(r)).collect::<Result<_>>()?;
                PolyCone::new(dt, &imgs).and_then(|t| ConeMorphism::new(m, src, t))
            }
            MorphismKind::StronglyInjective => {
                let ds = rng.gen_range(2..=max_dim);
                let dt = rng.gen_range(ds..=max_dim);
                let tgt = random_cone(rng, dt, dt + 2)?;
                let m = random_matrix(rng, dt, ds);
                let cons: Vec<QVector> = tgt
                    .facets()
                    .iter()
                    .map(|h| m.transpose().mul_vec(h))
                    .collect::<Result<_>>()?;
                extreme_rays_of_h(&cons, ds)
                    .and_then(|rays| PolyCone::new(ds, &rays.iter().map(|r| ints_to_q(r)).collect::<Vec<_>>()))
                    .and_then(|s| ConeMorphism::new(m, s, tgt))
            }
            MorphismKind::Generic => {
                let ds = rng.gen_range(2..=max_dim);
                let dt = rng.gen_range(2..=max_dim);
                let src = random_cone(rng, ds, ds + 2)?;
                let m = random_matrix(rng, dt, ds);
                let mut gens: Vec<QVector> = src.rays().iter().map(|r| m.mul_vec(r)).collect::<Result<_>>()?;
                for _ in 0..rng.gen_range(0..=2) {
                    let mut v = int_vec(rng, dt - 1, -3, 3);
                    v.push(q(rng.gen_range(1..=3)));
                    gens.push(v);
                }
                PolyCone::new(dt, &gens).and_then(|t| ConeMorphism::new(m, src, t))
            }
        };
        if let Ok(f) = attempt {
            return Ok(f);
        }
    }
    Err(Error::Numerical("could not draw a morphism of the requested kind".into()))
}
