//! Exact rational linear algebra: reduction and kernels, a certified simplex
//! solver and an exact PSD test, plus a floating-point eigensolver used only
//! for cut generation.

mod eigen;
mod lp;
mod matrix;
mod psd;
mod rational;

pub use eigen::{sym_eig_approx, SymEig};
pub use lp::{conic_combination, lp_optimize, CertRow, LpOutcome, LpProblem, Sense, VarBound};
pub use matrix::{rank, rank_of_vectors, rref, rref_kernel, solve, QMatrix, SpanBasis};
pub use psd::{psd_decide_exact, PsdVerdict};
pub use rational::{
    add, dot, format_rational, from_f64_rounded, ints_to_q, is_zero_vec, kron, max_abs, neg, parse_rational,
    primitive_ray, primitive_ray_q, q, qf, qvec, scale, sub, to_f64, QVector, Rational,
};
