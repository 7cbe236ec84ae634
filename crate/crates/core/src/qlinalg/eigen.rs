use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Ascending eigenvalues with unit-norm eigenvectors (one per eigenvalue).
#[derive(Debug, Clone)]
pub struct SymEig {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS: usize = 10_000;

fn inf_norm(s: &[Vec<f64>]) -> f64 {
    s.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Floating-point symmetric eigendecomposition, used only to generate cuts.
pub fn sym_eig_approx(s: &[Vec<f64>], tol: f64) -> Result<SymEig> {
    let n = s.len();
    if s.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("eigen input is not square".into()));
    }
    if n == 0 {
        return Ok(SymEig { values: vec![], vectors: vec![] });
    }
    let norm = inf_norm(s);
    for i in 0..n {
        for j in 0..i {
            if (s[i][j] - s[j][i]).abs() > tol * (1.0 + norm) {
                return Err(Error::Input(format!("matrix not symmetric at ({i},{j})")));
            }
        }
    }
    let m = DMatrix::from_fn(n, n, |i, j| 0.5 * (s[i][j] + s[j][i]));
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::Numerical(format!("symmetric eigensolver did not converge for a {n}x{n} matrix (norm {norm:.3e})")))?;

    let (vals, vecs) = jacobi_polish(&m, eig.eigenvectors);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let values: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let col = vecs.column(k);
            let nrm = col.norm();
            col.iter().map(|x| x / nrm).collect()
        })
        .collect();

    for (mu, v) in values.iter().zip(&vectors) {
        let resid = (0..n)
            .map(|i| ((0..n).map(|j| s[i][j] * v[j]).sum::<f64>() - mu * v[i]).abs())
            .fold(0.0, f64::max);
        if resid > tol * (1.0 + norm) {
            return Err(Error::Numerical(format!("eigenpair residual {resid:.3e} exceeds tolerance")));
        }
    }
    Ok(SymEig { values, vectors })
}

/// Cyclic Jacobi sweeps on `VᵀSV`, which is already nearly diagonal; the
/// QR-based solver alone can leave residuals near `1e-8` when eigenvalues
/// cluster.
fn jacobi_polish(s: &DMatrix<f64>, mut v: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = s.nrows();
    let mut a = v.transpose() * s * &v;
    for _ in 0..50 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        let diag: f64 = (0..n).map(|i| a[(i, i)].powi(2)).sum();
        if off <= f64::EPSILON * f64::EPSILON * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}
