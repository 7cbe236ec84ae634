//! Symmetric travelling salesman polytopes in recentred span coordinates.

use crate::error::{Error, Result};
use crate::moments::recenter;
use crate::qlinalg::{q, QVector, SpanBasis};

pub const MAX_CITIES: usize = 7;

/// Hamiltonian cycles on `0..n`, each listed once: start at 0 and keep the
/// orientation whose second city is smaller than its last.
pub fn hamiltonian_cycles(n: usize) -> Vec<Vec<usize>> {
    fn rec(path: &mut Vec<usize>, used: &mut [bool], n: usize, out: &mut Vec<Vec<usize>>) {
        if path.len() == n {
            if n < 3 || path[1] < path[n - 1] {
                out.push(path.clone());
            }
            return;
        }
        for c in 1..n {
            if !used[c] {
                used[c] = true;
                path.push(c);
                rec(path, used, n, out);
                path.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut used = vec![false; n];
    used[0] = true;
    rec(&mut vec![0], &mut used, n, &mut out);
    out
}

fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Edge-indicator vectors in `ℝ^{n(n−1)/2}`, edges `(i, j)`, `i < j`, in lex order.
pub fn cycle_indicators(n: usize) -> Vec<QVector> {
    let m = n * (n - 1) / 2;
    hamiltonian_cycles(n)
        .iter()
        .map(|c| {
            let mut v = vec![q(0); m];
            for k in 0..n {
                v[edge_index(n, c[k], c[(k + 1) % n])] = q(1);
            }
            v
        })
        .collect()
}

/// Vertices of STSP(n) minus their average, in coordinates of a basis of
/// their span.
pub fn stsp_body_vertices(n: usize) -> Result<(usize, Vec<QVector>)> {
    if n > MAX_CITIES {
        return Err(Error::SizeCap(format!("STSP generation is capped at {MAX_CITIES} cities")));
    }
    if n < 3 {
        return Err(Error::Input("STSP needs at least 3 cities".into()));
    }
    let (centred, _) = recenter(&cycle_indicators(n))?;
    let m = n * (n - 1) / 2;
    let span = SpanBasis::of(&centred, m);
    if span.dim() == 0 {
        return Err(Error::Input(format!("STSP({n}) has a single vertex; its recentred hull is not full-dimensional")));
    }
    let coords = centred
        .iter()
        .map(|v| span.coordinates(v).ok_or_else(|| Error::Validation("vertex outside its own span".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((span.dim(), coords))
}
