//! Sparse multivariate polynomials with rational coefficients and the
//! monomial orderings shared by the symmetric-power and moment code.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{QVector, Rational};

pub type Exponent = Vec<u32>;

/// Exponent vectors of total degree exactly `deg` in `nvars` variables,
/// in descending lexicographic order (`x₁² , x₁x₂, …, x₂², …`).
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Exponent> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, nvars, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, nvars, deg, &mut vec![0; nvars], &mut out);
    out
}

/// Graded-lex list of all monomials of degree `≤ k`: degree ascending, then
/// descending lex within each degree.
pub fn monomials_up_to(nvars: usize, k: u32) -> Vec<Exponent> {
    (0..=k).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// `n! / ∏ αᵢ!`.
pub fn multinomial(e: &[u32]) -> Rational {
    let mut num = Rational::one();
    let mut k = 0u32;
    for &a in e {
        for j in 1..=a {
            k += 1;
            num = num * Rational::from_integer(k.into()) / Rational::from_integer(j.into());
        }
    }
    num
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear(c: &[Rational]) -> Self {
        let n = c.len();
        let mut p = Self::zero(n);
        for (i, ci) in c.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, ci.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!("exponent of length {} for {nvars} variables", e.len())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| degree(e)).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    /// Coefficients on the given monomial list.
    pub fn coefficients(&self, basis: &[Exponent]) -> QVector {
        basis.iter().map(|e| self.coeff(e)).collect()
    }
}

/// Product of linear forms `∏ (vᵢ · x)`, the symmetric product `v₁⋯vₙ`.
pub fn product_of_linear_forms(vs: &[&[Rational]], nvars: usize) -> Poly {
    let mut p = Poly::constant(nvars, Rational::one());
    for v in vs {
        p = p.mul(&Poly::linear(v));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qvec};

    #[test]
    fn monomial_orders() {
        assert_eq!(
            monomials_of_degree(3, 2),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
        assert_eq!(monomials_up_to(2, 2), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_up_to(1, 3).len(), 4);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1]), q(2));
        assert_eq!(multinomial(&[2, 1, 0]), q(3));
        assert_eq!(multinomial(&[0, 0]), q(1));
    }

    #[test]
    fn symmetric_product_convention() {
        let v = qvec(&[1, 2]);
        let w = qvec(&[3, 4]);
        let p = product_of_linear_forms(&[&v, &w], 2);
        // x₁x₂ carries v₁w₂ + v₂w₁.
        assert_eq!(p.coefficients(&monomials_of_degree(2, 2)), qvec(&[3, 10, 8]));
        assert_eq!(p.eval(&qvec(&[1, 1])), q(21));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = Poly::linear(&qvec(&[1, 1]));
        p.add_term(vec![1, 0], q(-1));
        assert_eq!(p.terms().count(), 1);
    }
}
