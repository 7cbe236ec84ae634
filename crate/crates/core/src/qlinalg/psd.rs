use num_traits::{Signed, Zero};

use super::matrix::QMatrix;
use super::rational::{primitive_ray_q, QVector, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum PsdVerdict {
    Psd,
    /// `witnessᵀ S witness < 0`, exactly.
    NotPsd { witness: QVector },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd)
    }
}

struct Step {
    pivot: usize,
    /// `(j, S_pj / S_pp)` for the indices still active after the step.
    multipliers: Vec<(usize, Rational)>,
}

/// Exact PSD decision by symmetric Gaussian elimination on diagonal pivots.
///
/// A negative diagonal entry of a Schur complement, or a zero diagonal with a
/// nonzero entry in its row, certifies indefiniteness; the witness is pulled
/// back through the elimination steps so it applies to `s` itself.
pub fn psd_decide_exact(s: &QMatrix) -> Result<PsdVerdict> {
    if !s.is_symmetric() {
        return Err(Error::Input("matrix is not symmetric".into()));
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut steps: Vec<Step> = Vec::new();

    let reduced_witness: Option<QVector> = loop {
        if active.is_empty() {
            break None;
        }
        if let Some(&i) = active.iter().find(|&&i| a[(i, i)].is_negative()) {
            let mut w = vec![Rational::zero(); n];
            w[i] = Rational::from_integer(1.into());
            break Some(w);
        }
        let Some(&p) = active.iter().find(|&&i| a[(i, i)].is_positive()) else {
            // Every remaining diagonal entry is zero.
            let off = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
            });
            match off {
                None => break None,
                Some((i, j)) => {
                    let mut w = vec![Rational::zero(); n];
                    w[i] = Rational::from_integer(1.into());
                    w[j] = if a[(i, j)].is_positive() {
                        Rational::from_integer((-1).into())
                    } else {
                        Rational::from_integer(1.into())
                    };
                    break Some(w);
                }
            }
        };
        active.retain(|&i| i != p);
        let pivot = a[(p, p)].clone();
        let multipliers: Vec<(usize, Rational)> =
            active.iter().map(|&j| (j, &a[(p, j)] / &pivot)).collect();
        for &(j, ref mj) in &multipliers {
            if mj.is_zero() {
                continue;
            }
            for &k in &active {
                let d = mj * &a[(p, k)];
                a[(j, k)] -= d;
            }
        }
        steps.push(Step { pivot: p, multipliers });
    };

    let Some(mut w) = reduced_witness else {
        return Ok(PsdVerdict::Psd);
    };
    for step in steps.iter().rev() {
        let mut v = Rational::zero();
        for (j, m) in &step.multipliers {
            v -= m * &w[*j];
        }
        w[step.pivot] = v;
    }
    let w = primitive_ray_q(&w);
    if !s.quad_form(&w)?.is_negative() {
        return Err(Error::Numerical("indefiniteness witness failed exact re-check".into()));
    }
    Ok(PsdVerdict::NotPsd { witness: w })
}
