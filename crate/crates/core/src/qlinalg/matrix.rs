use std::fmt;

use num_traits::{One, Zero};

use super::rational::{QVector, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals. Dimensions are fixed at
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(super::format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Ok(QMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<QVector> = rows.iter().map(|r| super::qvec(r)).collect();
        Self::from_rows(&rows).expect("rectangular literal")
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "flat data of length {} does not fill {rows}x{cols}",
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> QVector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<QVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|r| super::dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum shape mismatch".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scaled(&self, s: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Kronecker product; row `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> QMatrix {
        let mut out = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Quadratic form `vᵀ M v`.
    pub fn quad_form(&self, v: &[Rational]) -> Result<Rational> {
        let mv = self.mul_vec(v)?;
        Ok(super::dot(v, &mv))
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(super::to_f64).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form. Returns the reduced matrix (zero rows dropped)
/// and the pivot column of each remaining row.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a: Vec<QVector> = m.row_vectors();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let reduced = if a.is_empty() {
        QMatrix::zeros(0, cols)
    } else {
        QMatrix::from_rows(&a).expect("rectangular")
    };
    (reduced, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

pub fn rank_of_vectors(vs: &[QVector], dim: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = QMatrix::from_rows(vs).expect("equal lengths");
    debug_assert_eq!(m.cols(), dim);
    rank(&m)
}

/// Rank and an exact basis of the right kernel `{k : M k = 0}`.
///
/// Kernel vectors come from the free columns of the reduced form: the vector
/// for free column `f` has a one at `f` and zeros at every other free column.
pub fn rref_kernel(m: &QMatrix) -> (usize, Vec<QVector>) {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut k = vec![Rational::zero(); cols];
        k[f] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            k[p] = -r[(row, f)].clone();
        }
        kernel.push(k);
    }
    (pivots.len(), kernel)
}

/// Solve `M x = b` exactly; returns one solution if the system is consistent.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<QVector> {
    let aug_rows: Vec<QVector> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let aug = QMatrix::from_rows(&aug_rows).ok()?;
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = red[(row, m.cols())].clone();
    }
    Some(x)
}

/// Row basis of a span with coordinates read off pivot columns: for any `y` in
/// the span, `y = Σ_i y[pivots[i]] · basis[i]`.
pub struct SpanBasis {
    pub basis: Vec<QVector>,
    pub pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn of(vectors: &[QVector], dim: usize) -> SpanBasis {
        if vectors.is_empty() {
            return SpanBasis { basis: vec![], pivots: vec![] };
        }
        let m = QMatrix::from_rows(vectors).expect("equal lengths");
        debug_assert_eq!(m.cols(), dim);
        let (r, pivots) = rref(&m);
        SpanBasis { basis: r.row_vectors(), pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `y`, or `None` when `y` is outside the span.
    pub fn coordinates(&self, y: &[Rational]) -> Option<QVector> {
        let coords: QVector = self.pivots.iter().map(|&p| y[p].clone()).collect();
        let mut back = vec![Rational::zero(); y.len()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (x, bv) in back.iter_mut().zip(b) {
                *x += c * bv;
            }
        }
        (back.as_slice() == y).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qvec};

    #[test]
    fn identity_has_full_rank_and_trivial_kernel() {
        let (r, k) = rref_kernel(&QMatrix::identity(2));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn proportional_rows_give_one_kernel_vector() {
        let m = QMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        let (r, k) = rref_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![qvec(&[-1, 1])]);
    }

    #[test]
    fn solve_and_span_coordinates() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let x = solve(&m, &qvec(&[3, 4])).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), qvec(&[3, 4]));
        let inconsistent = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(solve(&inconsistent, &qvec(&[1, 2])).is_none());

        let span = SpanBasis::of(&[qvec(&[1, 1, 0]), qvec(&[0, 1, 1])], 3);
        assert_eq!(span.dim(), 2);
        let y = qvec(&[2, 5, 3]);
        let c = span.coordinates(&y).unwrap();
        assert_eq!(c.len(), 2);
        assert!(span.coordinates(&qvec(&[1, 0, 0])).is_none());
    }

    #[test]
    fn kron_matches_vector_kron() {
        let a = QMatrix::from_i64(&[&[1, 2], &[0, -1]]);
        let b = QMatrix::from_i64(&[&[3], &[1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 2));
        let v = qvec(&[1, 1]);
        let w = qvec(&[1]);
        let lhs = k.mul_vec(&crate::qlinalg::kron(&v, &w)).unwrap();
        let rhs = crate::qlinalg::kron(&a.mul_vec(&v).unwrap(), &b.mul_vec(&w).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(k[(0, 0)], q(3));
    }
}
