//! Double description: extreme rays of `{y : aᵢ·y ≥ 0 for all i}`.
//!
//! Constraints are added one at a time to an initial simplicial cone. Pairs of
//! rays on opposite sides of the new hyperplane are combined only when they
//! are adjacent, decided combinatorially from their zero sets.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{primitive_ray, solve, QMatrix, QVector, Rational};

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

/// Extreme rays of the polyhedral cone cut out by `constraints`, as primitive
/// integer vectors. The constraint matrix must have full column rank `dim`
/// (equivalently, the cone is pointed).
pub fn extreme_rays_of_h(constraints: &[QVector], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if dim == 0 {
        return Ok(vec![]);
    }
    let rows: Vec<Vec<BigInt>> = constraints
        .iter()
        .map(|c| {
            if c.len() != dim {
                Err(Error::Dimension(format!("constraint of length {} in dimension {dim}", c.len())))
            } else {
                Ok(primitive_ray(c))
            }
        })
        .collect::<Result<_>>()?;
    let m = rows.len();

    // Greedy choice of `dim` independent rows.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<QVector> = Vec::new();
    for (i, r) in constraints.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.clone());
        if crate::qlinalg::rank_of_vectors(&trial, dim) == trial.len() {
            echelon = trial;
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(Error::Input(format!(
            "constraint system has rank {} < {dim}; the cone contains a line",
            basis.len()
        )));
    }

    // Initial rays: columns of the inverse of the basis block.
    let block = QMatrix::from_rows(&basis.iter().map(|&i| constraints[i].clone()).collect::<Vec<_>>())?;
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[k] = Rational::from_integer(1.into());
        let col = solve(&block, &e).ok_or_else(|| Error::Numerical("singular basis block".into()))?;
        let mut zeros = FixedBitSet::with_capacity(m);
        for (j, &bi) in basis.iter().enumerate() {
            if j != k {
                zeros.insert(bi);
            }
        }
        rays.push(Ray { v: primitive_ray(&col), zeros });
    }

    let in_basis: FixedBitSet = {
        let mut b = FixedBitSet::with_capacity(m);
        for &i in &basis {
            b.insert(i);
        }
        b
    };
    let mut processed = in_basis.clone();
    for i in 0..m {
        if in_basis.contains(i) {
            continue;
        }
        let a = &rows[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zeros.insert(i);
                }
            }
            processed.insert(i);
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                common.intersect_with(&processed);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| {
                    t == p || t == n || !common.is_subset(&rays[t].zeros)
                });
                if !adjacent {
                    continue;
                }
                let vp = &vals[p];
                let vn = -&vals[n];
                let v: Vec<BigInt> =
                    rays[n].v.iter().zip(&rays[p].v).map(|(x, y)| vp * x + &vn * y).collect();
                let mut zeros = common;
                zeros.insert(i);
                fresh.push(Ray { v: make_primitive(v), zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
        processed.insert(i);
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::qvec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_is_self_dual() {
        let rays = extreme_rays_of_h(&[qvec(&[1, 0]), qvec(&[0, 1])], 2).unwrap();
        assert_eq!(rays, vec![ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn square_pyramid_dual() {
        // Constraints are the generators (±1, ±1, 1); the resulting rays are
        // the facet normals of that cone.
        let gens: Vec<QVector> =
            [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]].iter().map(|g| qvec(g)).collect();
        let rays = extreme_rays_of_h(&gens, 3).unwrap();
        let mut expect = vec![ints(&[-1, 0, 1]), ints(&[0, -1, 1]), ints(&[0, 1, 1]), ints(&[1, 0, 1])];
        expect.sort();
        assert_eq!(rays, expect);
    }

    #[test]
    fn rank_deficient_system_rejected() {
        assert!(extreme_rays_of_h(&[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])], 3).is_err());
    }
}
