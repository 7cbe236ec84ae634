use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::qlinalg::Rational;

/// Integer partition `λ₁ ≥ λ₂ ≥ … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Input("partition must have at least one part".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Input("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        Partition { parts: (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }

    /// Cells `(row, col)` in reading order: left to right, top to bottom.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=d`, by enumeration.
pub fn count_ssyt(lambda: &Partition, d: usize) -> u64 {
    let cells = lambda.cells();
    let mut fill = vec![vec![0usize; lambda.parts[0]]; lambda.rows()];
    fn rec(k: usize, cells: &[(usize, usize)], d: usize, fill: &mut Vec<Vec<usize>>) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=d {
            fill[r][c] = v;
            total += rec(k + 1, cells, d, fill);
        }
        fill[r][c] = 0;
        total
    }
    rec(0, &cells, d, &mut fill)
}

/// Hook-content formula `∏ (d + c(x)) / h(x)`.
pub fn hook_content(lambda: &Partition, d: usize) -> u64 {
    let conj = lambda.conjugate();
    let mut v = Rational::one();
    for (r, c) in lambda.cells() {
        let content = d as i64 + c as i64 - r as i64;
        let hook = (lambda.parts[r] - c - 1) + (conj.parts[c] - r - 1) + 1;
        v = v * Rational::from_integer(content.into()) / Rational::from_integer(BigInt::from(hook));
    }
    assert!(v.is_integer(), "hook-content product is an integer");
    v.to_integer().to_u64().unwrap_or(0)
}

/// `dim S_λ(ℝᵈ)`, computed twice and cross-checked.
pub fn schur_dim(lambda: &Partition, d: usize) -> Result<u64> {
    let a = count_ssyt(lambda, d);
    let b = hook_content(lambda, d);
    if a != b {
        return Err(Error::Validation(format!(
            "semistandard tableau count {a} disagrees with the hook-content formula {b} for λ = ({lambda}), d = {d}"
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(schur_dim(&p("3"), 2).unwrap(), 4);
        assert_eq!(schur_dim(&p("1,1"), 3).unwrap(), 3);
        assert_eq!(schur_dim(&p("2,1"), 3).unwrap(), 8);
        assert_eq!(schur_dim(&p("1,1,1"), 2).unwrap(), 0);
    }

    #[test]
    fn parsing_and_validation() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(Partition::all_of(4).len(), 5);
    }
}
