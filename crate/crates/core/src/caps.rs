//! Enumeration limits shared by the functor, face and brute-force code.

use crate::cones::FaceCap;
use crate::error::{Error, Result};

pub const CAP_ENV: &str = "CVXFUN_CAP";

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest allowed `dⁿ` for tensor and symmetric powers.
    pub tensor_dim: usize,
    /// Largest allowed vertex count of a functor argument.
    pub factor_vertices: usize,
    /// Largest brute-force tuple count.
    pub tuples: usize,
    /// Largest pencil size (monomial count).
    pub monomials: usize,
    pub faces: FaceCap,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { tensor_dim: 4096, factor_vertices: 20, tuples: 1_000_000, monomials: 400, faces: FaceCap::default() }
    }
}

impl Caps {
    /// Every limit multiplied by `factor`.
    pub fn scaled(factor: usize) -> Self {
        let f = factor.max(1);
        let d = Caps::default();
        Caps {
            tensor_dim: d.tensor_dim.saturating_mul(f),
            factor_vertices: d.factor_vertices.saturating_mul(f),
            tuples: d.tuples.saturating_mul(f),
            monomials: d.monomials.saturating_mul(f),
            faces: FaceCap::scaled(f),
        }
    }

    /// Defaults, scaled by the `CVXFUN_CAP` factor when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(s) => {
                let f: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Input(format!("{CAP_ENV} must be a positive integer factor, got {s:?}")))?;
                Ok(Caps::scaled(f))
            }
            Err(_) => Ok(Caps::default()),
        }
    }

    pub(crate) fn check_factor(&self, what: &str, vertices: usize) -> Result<()> {
        if vertices > self.factor_vertices {
            return Err(Error::SizeCap(format!(
                "{what} has {vertices} vertices; the per-factor cap is {}",
                self.factor_vertices
            )));
        }
        Ok(())
    }

    pub(crate) fn check_power(&self, d: usize, n: usize) -> Result<()> {
        let mut p: usize = 1;
        for _ in 0..n {
            p = p.saturating_mul(d);
        }
        if p > self.tensor_dim {
            return Err(Error::SizeCap(format!("tensor power dimension {d}^{n} exceeds the cap {}", self.tensor_dim)));
        }
        Ok(())
    }
}
