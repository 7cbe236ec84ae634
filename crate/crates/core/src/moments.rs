//! Moment pencils `φᵏ_λ = M₀ + Σ λᵢ Mᵢ` over a measure and a polynomial map,
//! the spectrahedra `Q_k = {λ : φᵏ_λ ⪰ 0}`, optimization over them, and
//! finite-convergence detection for finite supports.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::caps::Caps;
use crate::cones::ConvexBody;
use crate::error::{Error, Result};
use crate::poly::{monomials_up_to, Exponent, Poly};
use crate::qlinalg::{
    dot, from_f64_rounded, lp_optimize, psd_decide_exact, sym_eig_approx, to_f64, LpOutcome, LpProblem, PsdVerdict,
    QMatrix, QVector, Rational, Sense, VarBound,
};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    /// Weighted point masses.
    FinitePoints { points: Vec<QVector>, weights: Vec<Rational> },
    /// Lebesgue measure on the box `[lower, upper]`.
    BoxLebesgue { lower: QVector, upper: QVector },
    /// Product measure; variables are concatenated in factor order.
    Product(Vec<Measure>),
}

impl Measure {
    pub fn counting(points: Vec<QVector>) -> Result<Self> {
        let w = vec![Rational::one(); points.len()];
        Self::finite(points, w)
    }

    pub fn finite(points: Vec<QVector>, weights: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input("a finite measure needs at least one point".into()));
        }
        if weights.len() != points.len() {
            return Err(Error::Dimension(format!("{} weights for {} points", weights.len(), points.len())));
        }
        if points.iter().any(|p| p.len() != points[0].len()) {
            return Err(Error::Dimension("measure points have different lengths".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Input("point weights must be positive".into()));
        }
        Ok(Measure::FinitePoints { points, weights })
    }

    pub fn lebesgue(lower: QVector, upper: QVector) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::Dimension("box bounds must be nonempty and of equal length".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l >= u) {
            return Err(Error::Input("box bounds need lower < upper in every coordinate".into()));
        }
        Ok(Measure::BoxLebesgue { lower, upper })
    }

    pub fn product(factors: Vec<Measure>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Input("a product measure needs at least one factor".into()));
        }
        Ok(Measure::Product(factors))
    }

    pub fn nvars(&self) -> usize {
        match self {
            Measure::FinitePoints { points, .. } => points[0].len(),
            Measure::BoxLebesgue { lower, .. } => lower.len(),
            Measure::Product(fs) => fs.iter().map(Measure::nvars).sum(),
        }
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

/// `∫ x^α dm`, exactly.
pub fn moment(m: &Measure, alpha: &[u32]) -> Result<Rational> {
    if alpha.len() != m.nvars() {
        return Err(Error::Dimension(format!("exponent of length {} for a measure on {} variables", alpha.len(), m.nvars())));
    }
    Ok(match m {
        Measure::FinitePoints { points, weights } => points
            .iter()
            .zip(weights)
            .map(|(p, w)| p.iter().zip(alpha).fold(w.clone(), |acc, (x, &a)| acc * pow(x, a)))
            .sum(),
        Measure::BoxLebesgue { lower, upper } => lower
            .iter()
            .zip(upper)
            .zip(alpha)
            .map(|((l, u), &a)| (pow(u, a + 1) - pow(l, a + 1)) / Rational::from_integer((a + 1).into()))
            .product(),
        Measure::Product(fs) => {
            let mut off = 0;
            let mut r = Rational::one();
            for f in fs {
                let n = f.nvars();
                r *= moment(f, &alpha[off..off + n])?;
                off += n;
            }
            r
        }
    })
}

/// Polynomial map `ℝⁿ → ℝᵐ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    nvars: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::Input("a polynomial map needs a component".into()))?;
        let nvars = first.nvars();
        if components.iter().any(|c| c.nvars() != nvars) {
            return Err(Error::Dimension("map components use different variable counts".into()));
        }
        Ok(PolyMap { nvars, components })
    }

    pub fn identity(n: usize) -> Self {
        let comps = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                Poly::from_terms(n, [(e, Rational::one())]).expect("valid monomial")
            })
            .collect();
        PolyMap { nvars: n, components: comps }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, x: &[Rational]) -> QVector {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// `T − shift`.
    pub fn shifted(&self, shift: &[Rational]) -> Result<PolyMap> {
        if shift.len() != self.target_dim() {
            return Err(Error::Dimension("shift length does not match the map's target".into()));
        }
        let comps = self
            .components
            .iter()
            .zip(shift)
            .map(|(c, s)| {
                let mut c = c.clone();
                c.add_term(vec![0; self.nvars], -s.clone());
                c
            })
            .collect();
        Ok(PolyMap { nvars: self.nvars, components: comps })
    }
}

/// `M₀ + Σ λᵢ Mᵢ`, indexed by the graded-lex monomials of degree `≤ k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPencil {
    pub k: u32,
    pub monomials: Vec<Exponent>,
    /// `M₀, M₁, …, M_m`.
    pub matrices: Vec<QMatrix>,
}

impl MomentPencil {
    pub fn new(k: u32, monomials: Vec<Exponent>, matrices: Vec<QMatrix>) -> Result<Self> {
        let n = monomials.len();
        if matrices.len() < 2 {
            return Err(Error::Input("a pencil needs M₀ and at least one Mᵢ".into()));
        }
        for m in &matrices {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!("pencil matrix is {}x{} for {n} monomials", m.rows(), m.cols())));
            }
            if !m.is_symmetric() {
                return Err(Error::Input("pencil matrices must be symmetric".into()));
            }
        }
        Ok(MomentPencil { k, monomials, matrices })
    }

    /// Number of parameters `m`.
    pub fn params(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn at(&self, lambda: &[Rational]) -> Result<QMatrix> {
        self.check_len(lambda.len())?;
        let mut s = self.matrices[0].clone();
        for (l, m) in lambda.iter().zip(&self.matrices[1..]) {
            if !l.is_zero() {
                s = s.add(&m.scaled(l))?;
            }
        }
        Ok(s)
    }

    fn at_f64(&self, lambda: &[f64], mats: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
        let mut s = mats[0].clone();
        for (l, m) in lambda.iter().zip(&mats[1..]) {
            for (row, mrow) in s.iter_mut().zip(m) {
                for (x, y) in row.iter_mut().zip(mrow) {
                    *x += l * y;
                }
            }
        }
        s
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.params() {
            return Err(Error::Dimension(format!("λ of length {n} for a pencil with {} parameters", self.params())));
        }
        Ok(())
    }

    /// `(vᵀM₀v, vᵀM₁v, …)`.
    fn quad_forms(&self, v: &[Rational]) -> Result<QVector> {
        self.matrices.iter().map(|m| m.quad_form(v)).collect()
    }
}

fn add_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn assemble_pencil(m: &Measure, t: &PolyMap, k: u32, caps: &Caps) -> Result<MomentPencil> {
    let n = m.nvars();
    if t.nvars() != n {
        return Err(Error::Dimension(format!("map on {} variables with a measure on {n}", t.nvars())));
    }
    let basis = monomials_up_to(n, k);
    if basis.len() > caps.monomials {
        return Err(Error::SizeCap(format!("{} monomials of degree ≤ {k} exceed the cap {}", basis.len(), caps.monomials)));
    }
    let mut needed: BTreeSet<Exponent> = BTreeSet::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let ab = add_exp(a, b);
            for c in t.components() {
                for (g, _) in c.terms() {
                    needed.insert(add_exp(&ab, g));
                }
            }
            needed.insert(ab);
        }
    }
    let needed: Vec<Exponent> = needed.into_iter().collect();
    let values: Vec<Rational> = needed.par_iter().map(|e| moment(m, e)).collect::<Result<_>>()?;
    let table: BTreeMap<&Exponent, &Rational> = needed.iter().zip(&values).collect();
    let size = basis.len();
    let entry = |a: &Exponent, b: &Exponent, comp: Option<&Poly>| -> Rational {
        let ab = add_exp(a, b);
        match comp {
            None => table[&ab].clone(),
            Some(p) => p.terms().map(|(g, c)| c * table[&add_exp(&ab, g)]).sum(),
        }
    };
    let comps: Vec<Option<&Poly>> = std::iter::once(None).chain(t.components().iter().map(Some)).collect();
    let matrices: Vec<QMatrix> = comps
        .par_iter()
        .map(|comp| {
            let mut mat = QMatrix::zeros(size, size);
            for i in 0..size {
                for j in i..size {
                    let v = entry(&basis[i], &basis[j], *comp);
                    mat[(j, i)] = v.clone();
                    mat[(i, j)] = v;
                }
            }
            mat
        })
        .collect();
    if !psd_decide_exact(&matrices[0])?.is_psd() {
        return Err(Error::Validation("M₀ of the assembled pencil is not PSD".into()));
    }
    MomentPencil::new(k, basis, matrices)
}

/// Exact test of `φᵏ_λ ⪰ 0`.
pub fn qk_membership(p: &MomentPencil, lambda: &[Rational]) -> Result<bool> {
    Ok(psd_decide_exact(&p.at(lambda)?)?.is_psd())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QkMax {
    /// Upper bound on `sup ⟨c, λ⟩` over `Q_k ∩ box`, from the cut LP.
    pub value: f64,
    /// `⟨c, λ⟩` at `lambda_exact`, a certified member of `Q_k`.
    pub lower: f64,
    pub lambda: Vec<f64>,
    pub lambda_exact: QVector,
    pub cuts: usize,
    pub iterations: usize,
    /// The final LP optimum sits on the box boundary.
    pub box_active: bool,
    /// The LP optimum is itself in `Q_k`, so `value` is the exact supremum.
    pub exact: bool,
}

fn integral_cut(v: &[f64]) -> QVector {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    v.iter().map(|x| from_f64_rounded(x / m, 24) * Rational::from_integer((1i64 << 24).into())).collect()
}

/// `W` with `WᵀM₀W = I` on the numerical range of `M₀`.
fn range_whitener(m0: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let eig = sym_eig_approx(m0, 1e-9)?;
    let top = eig.values.last().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    let n = m0.len();
    let cols: Vec<Vec<f64>> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(v, _)| **v > 1e-12 * top)
        .map(|(v, u)| u.iter().map(|x| x / v.sqrt()).collect())
        .collect();
    Ok((0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

/// Largest `t ∈ [0, 1]` with `M₀ + tA ⪰ 0` on the range of `M₀`, in floats.
fn max_step(w: &[Vec<f64>], a: &[Vec<f64>]) -> Result<f64> {
    let n = w.len();
    let r = w.first().map_or(0, Vec::len);
    if r == 0 {
        return Ok(1.0);
    }
    let aw: Vec<Vec<f64>> = (0..n).map(|i| (0..r).map(|j| (0..n).map(|k| a[i][k] * w[k][j]).sum()).collect()).collect();
    let b: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| -(0..n).map(|k| w[k][i] * aw[k][j]).sum::<f64>()).collect()).collect();
    let b: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| 0.5 * (b[i][j] + b[j][i])).collect()).collect();
    let top = sym_eig_approx(&b, 1e-9)?.values.last().copied().unwrap_or(0.0);
    Ok(if top <= 1.0 { 1.0 } else { 1.0 / top })
}

/// Cutting-plane maximization of `⟨c, λ⟩` over `Q_k ∩ {‖λ‖∞ ≤ R}`.
///
/// LP optima over the box and the accumulated cuts `vᵀφ_λ v ≥ 0` give upper
/// bounds; eigenvectors of negative eigenvalues at the optimum become new
/// cuts. Scaling the optimum toward `0 ∈ Q_k` and checking it exactly gives
/// lower bounds. Stops when the LP optimum is exactly PSD or the bounds are
/// within `tol`.
pub fn qk_maximize(p: &MomentPencil, c: &[Rational], r: &Rational, tol: f64) -> Result<QkMax> {
    qk_maximize_with(p, c, r, tol, DEFAULT_MAX_ITERATIONS)
}

pub fn qk_maximize_with(p: &MomentPencil, c: &[Rational], r: &Rational, tol: f64, max_iter: usize) -> Result<QkMax> {
    p.check_len(c.len())?;
    if !r.is_positive() || !(tol > 0.0) {
        return Err(Error::Input("box bound and tolerance must be positive".into()));
    }
    let m = p.params();
    let mats: Vec<Vec<Vec<f64>>> = p.matrices.iter().map(QMatrix::to_f64_rows).collect();
    let whitener = range_whitener(&mats[0])?;
    let bounds = vec![VarBound::boxed(-r.clone(), r.clone()); m];
    let mut rows: Vec<QVector> = Vec::new();
    let mut rhs: QVector = Vec::new();
    let add_cut = |v: &[Rational], rows: &mut Vec<QVector>, rhs: &mut QVector| -> Result<()> {
        let f = p.quad_forms(v)?;
        rows.push(f[1..].to_vec());
        rhs.push(-f[0].clone());
        Ok(())
    };
    let mut best = (Rational::zero(), vec![Rational::zero(); m]);
    let mut last: Option<QVector> = None;
    for it in 0..max_iter {
        let a = if rows.is_empty() { QMatrix::zeros(0, m) } else { QMatrix::from_rows(&rows)? };
        let lp = LpProblem::new(c.to_vec(), a, rhs.clone(), vec![Sense::Ge; rows.len()])?.with_bounds(bounds.clone())?;
        let lambda = match lp_optimize(&lp)? {
            LpOutcome::Optimal { point, .. } => point,
            _ => return Err(Error::Numerical("cutting-plane LP lost feasibility; λ = 0 should always be feasible".into())),
        };
        let upper = dot(c, &lambda);
        let finish = |lower: &(Rational, QVector), exact: bool, cuts: usize| QkMax {
            value: to_f64(&upper),
            lower: to_f64(&lower.0),
            lambda: lower.1.iter().map(to_f64).collect(),
            lambda_exact: lower.1.clone(),
            cuts,
            iterations: it + 1,
            box_active: lambda.iter().any(|x| x.abs() == *r),
            exact,
        };
        let witness = match psd_decide_exact(&p.at(&lambda)?)? {
            PsdVerdict::Psd => return Ok(finish(&(upper.clone(), lambda.clone()), true, rows.len())),
            PsdVerdict::NotPsd { witness } => witness,
        };
        let lf: Vec<f64> = lambda.iter().map(to_f64).collect();
        let sf = p.at_f64(&lf, &mats);
        let diff: Vec<Vec<f64>> = sf.iter().zip(&mats[0]).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a - b).collect()).collect();
        let t = max_step(&whitener, &diff)?;
        let tq = from_f64_rounded(t * (1.0 - 1e-9), 40);
        if tq.is_positive() {
            let scaled: QVector = lambda.iter().map(|x| x * &tq).collect();
            let val = dot(c, &scaled);
            if val > best.0 && qk_membership(p, &scaled)? {
                best = (val, scaled);
            }
        }
        if to_f64(&(upper.clone() - &best.0)) <= tol {
            return Ok(finish(&best, false, rows.len()));
        }
        let scale = sf.iter().flatten().fold(1.0f64, |a, x| a.max(x.abs()));
        let eig = sym_eig_approx(&sf, 1e-9)?;
        let before = rows.len();
        for (val, vec) in eig.values.iter().zip(&eig.vectors) {
            if *val < -1e-14 * scale {
                add_cut(&integral_cut(vec), &mut rows, &mut rhs)?;
            }
        }
        if rows.len() == before {
            add_cut(&crate::qlinalg::primitive_ray_q(&witness), &mut rows, &mut rhs)?;
        }
        last = Some(lambda);
    }
    let last = last.map(|l| l.iter().map(|x| to_f64(x).to_string()).collect::<Vec<_>>().join(", "));
    Err(Error::Numerical(format!(
        "cutting-plane iteration cap {max_iter} reached; last iterate λ = ({})",
        last.unwrap_or_default()
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarVerdict {
    Inside,
    Outside,
    Borderline,
}

/// Whether `x ∈ Q_k°`, where polars are `{x : ⟨x, λ⟩ ≥ −1 on Q_k}`; decided by
/// maximizing `⟨−x, λ⟩` over `Q_k`.
pub fn qk_polar_membership(p: &MomentPencil, x: &[Rational], r: &Rational, tol: f64) -> Result<(PolarVerdict, QkMax)> {
    let c: QVector = x.iter().map(|v| -v.clone()).collect();
    let res = qk_maximize(p, &c, r, tol)?;
    let verdict = if res.value <= 1.0 - tol {
        PolarVerdict::Inside
    } else if res.lower >= 1.0 + tol && !res.box_active {
        PolarVerdict::Outside
    } else {
        PolarVerdict::Borderline
    };
    Ok((verdict, res))
}

/// Translate points so their average is the origin; returns the shifted
/// points and the average.
pub fn recenter(points: &[QVector]) -> Result<(Vec<QVector>, QVector)> {
    let first = points.first().ok_or_else(|| Error::Input("no points to recenter".into()))?;
    let n = Rational::from_integer(points.len().into());
    let mut avg = vec![Rational::zero(); first.len()];
    for p in points {
        for (a, x) in avg.iter_mut().zip(p) {
            *a += x;
        }
    }
    for a in avg.iter_mut() {
        *a /= &n;
    }
    Ok((points.iter().map(|p| p.iter().zip(&avg).map(|(x, a)| x - a).collect()).collect(), avg))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub k: u32,
    /// Every vertex of the exact polar is exactly in `Q_k`.
    pub polar_vertices_inside: bool,
    /// `(exact, computed)` supports of `Q_k` along the polar's facet normals.
    pub supports: Vec<(Rational, f64)>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteConvergence {
    pub k_star: Option<u32>,
    pub verified: bool,
    pub levels: Vec<LevelReport>,
    pub image: ConvexBody,
    pub polar: ConvexBody,
}

/// Least `k ≤ k_max` with `Q_k = Conv(T(B))°` for the counting measure on `B`.
pub fn finite_convergence(b: &[QVector], t: &PolyMap, k_max: u32, tol: f64, caps: &Caps) -> Result<FiniteConvergence> {
    if b.is_empty() {
        return Err(Error::Input("support set is empty".into()));
    }
    let images: Vec<QVector> = b.iter().map(|x| t.eval(x)).collect();
    let image = ConvexBody::hull_of(t.target_dim(), &images).map_err(|e| {
        Error::Input(format!("{e}; the image hull must be full-dimensional with the origin inside (recenter the map)"))
    })?;
    let polar = image.polar()?;
    let r = polar.vertices().iter().flatten().fold(Rational::one(), |a, x| a.max(x.abs())) * Rational::from_integer(2.into());
    let measure = Measure::counting(b.to_vec())?;
    let mut levels = Vec::new();
    let mut k_star = None;
    for k in 0..=k_max {
        let pencil = assemble_pencil(&measure, t, k, caps)?;
        let mut inside = true;
        for v in polar.vertices() {
            if !qk_membership(&pencil, v)? {
                inside = false;
                break;
            }
        }
        let mut supports = Vec::new();
        let mut passed = inside;
        // Facets of the polar are ⟨x, λ⟩ ≥ −1 for vertices x of the image.
        for x in image.vertices() {
            let c: QVector = x.iter().map(|v| -v.clone()).collect();
            let res = qk_maximize(&pencil, &c, &r, tol)?;
            let exact = polar.support(&c)?.0;
            if (res.value - to_f64(&exact)).abs() > tol || res.box_active {
                passed = false;
            }
            supports.push((exact, res.value));
        }
        levels.push(LevelReport { k, polar_vertices_inside: inside, supports, passed });
        if passed {
            k_star = Some(k);
            break;
        }
    }
    Ok(FiniteConvergence { k_star, verified: k_star.is_some(), levels, image, polar })
}
