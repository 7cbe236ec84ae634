//! Exact two-phase simplex over the rationals.
//!
//! Bland's rule is used for both entering and leaving variables, which rules
//! out cycling; with exact arithmetic that is the only termination hazard.
//! Every outcome carries an exact certificate: a primal point plus a dual
//! solution of equal value, a Farkas vector, or an improving ray.

use num_traits::{One, Signed, Zero};

use super::matrix::QMatrix;
use super::rational::{dot, QVector, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VarBound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn free() -> Self {
        VarBound::default()
    }

    pub fn nonneg() -> Self {
        VarBound { lower: Some(Rational::zero()), upper: None }
    }

    pub fn boxed(lower: Rational, upper: Rational) -> Self {
        VarBound { lower: Some(lower), upper: Some(upper) }
    }
}

/// `maximize objective·x` subject to `a x (senses) b` and per-variable bounds.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: QVector,
    pub a: QMatrix,
    pub b: QVector,
    pub senses: Vec<Sense>,
    pub bounds: Vec<VarBound>,
}

/// A constraint row in the flattened view used by certificates: user rows
/// first, then one row per finite upper bound, then one per finite lower
/// bound (each in variable order).
#[derive(Debug, Clone)]
pub struct CertRow {
    pub coeffs: QVector,
    pub rhs: Rational,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// `dual` is indexed like [`LpProblem::certificate_rows`].
    Optimal { value: Rational, point: QVector, dual: QVector },
    /// Farkas vector over [`LpProblem::certificate_rows`].
    Infeasible { certificate: QVector },
    /// Feasible point plus a recession direction that strictly improves the
    /// objective.
    Unbounded { point: QVector, ray: QVector },
}

impl LpProblem {
    pub fn new(objective: QVector, a: QMatrix, b: QVector, senses: Vec<Sense>) -> Result<Self> {
        let n = objective.len();
        let p = LpProblem { objective, a, b, senses, bounds: vec![VarBound::free(); n] };
        p.validate()?;
        Ok(p)
    }

    pub fn with_bounds(mut self, bounds: Vec<VarBound>) -> Result<Self> {
        self.bounds = bounds;
        self.validate()?;
        Ok(self)
    }

    pub fn all_nonneg(self) -> Result<Self> {
        let n = self.objective.len();
        self.with_bounds(vec![VarBound::nonneg(); n])
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.a.rows() != self.b.len() || self.a.rows() != self.senses.len() {
            return Err(Error::Dimension(format!(
                "constraint matrix has {} rows, rhs {} and senses {}",
                self.a.rows(),
                self.b.len(),
                self.senses.len()
            )));
        }
        if self.a.rows() > 0 && self.a.cols() != n {
            return Err(Error::Dimension(format!(
                "objective has length {n}, constraint matrix has {} columns",
                self.a.cols()
            )));
        }
        if self.bounds.len() != n {
            return Err(Error::Dimension(format!("{} bounds for {n} variables", self.bounds.len())));
        }
        for (j, bd) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&bd.lower, &bd.upper) {
                if l > u {
                    return Err(Error::Input(format!("variable {j} has lower bound above upper bound")));
                }
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn certificate_rows(&self) -> Vec<CertRow> {
        let n = self.num_vars();
        let unit = |j: usize| {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            e
        };
        let mut rows: Vec<CertRow> = (0..self.a.rows())
            .map(|i| CertRow { coeffs: self.a.row(i).to_vec(), rhs: self.b[i].clone(), sense: self.senses[i] })
            .collect();
        for (j, bd) in self.bounds.iter().enumerate() {
            if let Some(u) = &bd.upper {
                rows.push(CertRow { coeffs: unit(j), rhs: u.clone(), sense: Sense::Le });
            }
        }
        for (j, bd) in self.bounds.iter().enumerate() {
            if let Some(l) = &bd.lower {
                rows.push(CertRow { coeffs: unit(j), rhs: l.clone(), sense: Sense::Ge });
            }
        }
        rows
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.certificate_rows().iter().all(|r| {
                let lhs = dot(&r.coeffs, x);
                match r.sense {
                    Sense::Le => lhs <= r.rhs,
                    Sense::Ge => lhs >= r.rhs,
                    Sense::Eq => lhs == r.rhs,
                }
            })
    }

    /// Checks a Farkas certificate exactly: sign pattern by sense,
    /// `Σ yᵢ rowᵢ = 0` and `Σ yᵢ rhsᵢ < 0`.
    pub fn verify_farkas(&self, y: &[Rational]) -> bool {
        let rows = self.certificate_rows();
        if y.len() != rows.len() || !signs_ok(&rows, y) {
            return false;
        }
        let combo = combine(&rows, y, self.num_vars());
        combo.iter().all(Zero::is_zero) && rhs_value(&rows, y).is_negative()
    }

    /// Checks dual feasibility (`Σ yᵢ rowᵢ = c`, signs by sense) and that the
    /// dual objective equals `value`.
    pub fn verify_dual(&self, y: &[Rational], value: &Rational) -> bool {
        let rows = self.certificate_rows();
        if y.len() != rows.len() || !signs_ok(&rows, y) {
            return false;
        }
        combine(&rows, y, self.num_vars()) == self.objective && &rhs_value(&rows, y) == value
    }

    /// `ray` is a recession direction (homogeneous rows respected) with
    /// positive objective slope.
    pub fn verify_ray(&self, ray: &[Rational]) -> bool {
        ray.len() == self.num_vars()
            && dot(&self.objective, ray).is_positive()
            && self.certificate_rows().iter().all(|r| {
                let lhs = dot(&r.coeffs, ray);
                match r.sense {
                    Sense::Le => !lhs.is_positive(),
                    Sense::Ge => !lhs.is_negative(),
                    Sense::Eq => lhs.is_zero(),
                }
            })
    }
}

fn signs_ok(rows: &[CertRow], y: &[Rational]) -> bool {
    rows.iter().zip(y).all(|(r, yi)| match r.sense {
        Sense::Le => !yi.is_negative(),
        Sense::Ge => !yi.is_positive(),
        Sense::Eq => true,
    })
}

fn combine(rows: &[CertRow], y: &[Rational], n: usize) -> QVector {
    let mut out = vec![Rational::zero(); n];
    for (r, yi) in rows.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(&r.coeffs) {
            *o += yi * c;
        }
    }
    out
}

fn rhs_value(rows: &[CertRow], y: &[Rational]) -> Rational {
    rows.iter().zip(y).fold(Rational::zero(), |acc, (r, yi)| acc + yi * &r.rhs)
}

/// How an original variable is expressed through standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    /// `x = offset + col`
    Shifted { col: usize, offset: Rational },
    /// `x = offset - col`
    Mirrored { col: usize, offset: Rational },
    /// `x = plus - minus`
    Split { plus: usize, minus: usize },
}

struct StandardForm {
    /// Row-major `m x n` equality system `A x = b`, `x ≥ 0`, `b ≥ 0`.
    a: Vec<QVector>,
    b: QVector,
    cost: QVector,
    /// `+1` or `-1` per row: the sign applied to the original row.
    flip: Vec<Rational>,
    var_map: Vec<VarMap>,
    /// Offset into the objective introduced by shifting variables.
    cost_offset: Rational,
}

impl StandardForm {
    fn build(p: &LpProblem) -> StandardForm {
        let n = p.num_vars();
        let mut var_map = Vec::with_capacity(n);
        let mut ncols = 0usize;
        // Rows: user rows plus upper-bound rows for variables that also carry
        // a lower bound (upper-only variables are mirrored instead).
        let mut extra_upper: Vec<(usize, Rational)> = Vec::new();
        for (j, bd) in p.bounds.iter().enumerate() {
            match (&bd.lower, &bd.upper) {
                (Some(l), u) => {
                    var_map.push(VarMap::Shifted { col: ncols, offset: l.clone() });
                    if let Some(u) = u {
                        extra_upper.push((j, u.clone()));
                    }
                    ncols += 1;
                }
                (None, Some(u)) => {
                    var_map.push(VarMap::Mirrored { col: ncols, offset: u.clone() });
                    ncols += 1;
                }
                (None, None) => {
                    var_map.push(VarMap::Split { plus: ncols, minus: ncols + 1 });
                    ncols += 2;
                }
            }
        }

        // Expand each original row a·x (sense) rhs into standard columns.
        let mut rows: Vec<(QVector, Rational, Sense)> = Vec::new();
        let expand = |coeffs: &[Rational], rhs: &Rational, ncols: usize| {
            let mut row = vec![Rational::zero(); ncols];
            let mut r = rhs.clone();
            for (j, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &var_map[j] {
                    VarMap::Shifted { col, offset } => {
                        row[*col] += c;
                        r -= c * offset;
                    }
                    VarMap::Mirrored { col, offset } => {
                        row[*col] -= c;
                        r -= c * offset;
                    }
                    VarMap::Split { plus, minus } => {
                        row[*plus] += c;
                        row[*minus] -= c;
                    }
                }
            }
            (row, r)
        };
        for i in 0..p.a.rows() {
            let (row, r) = expand(p.a.row(i), &p.b[i], ncols);
            rows.push((row, r, p.senses[i]));
        }
        for (j, u) in &extra_upper {
            let mut e = vec![Rational::zero(); n];
            e[*j] = Rational::one();
            let (row, r) = expand(&e, u, ncols);
            rows.push((row, r, Sense::Le));
        }

        // Slack columns, then sign normalisation so that b ≥ 0.
        let nslack = rows.iter().filter(|(_, _, s)| *s != Sense::Eq).count();
        let total = ncols + nslack;
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        let mut flip = Vec::with_capacity(rows.len());
        let mut slack = ncols;
        for (mut row, r, sense) in rows {
            row.resize(total, Rational::zero());
            match sense {
                Sense::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Sense::Eq => {}
            }
            if r.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                a.push(row);
                b.push(-r);
                flip.push(-Rational::one());
            } else {
                a.push(row);
                b.push(r);
                flip.push(Rational::one());
            }
        }

        let mut cost = vec![Rational::zero(); total];
        let mut cost_offset = Rational::zero();
        for (j, c) in p.objective.iter().enumerate() {
            match &var_map[j] {
                VarMap::Shifted { col, offset } => {
                    cost[*col] += c;
                    cost_offset += c * offset;
                }
                VarMap::Mirrored { col, offset } => {
                    cost[*col] -= c;
                    cost_offset += c * offset;
                }
                VarMap::Split { plus, minus } => {
                    cost[*plus] += c;
                    cost[*minus] -= c;
                }
            }
        }
        StandardForm { a, b, cost, flip, var_map, cost_offset }
    }

    fn recover(&self, xs: &[Rational], shift: bool) -> QVector {
        self.var_map
            .iter()
            .map(|m| match m {
                VarMap::Shifted { col, offset } => {
                    if shift {
                        offset + &xs[*col]
                    } else {
                        xs[*col].clone()
                    }
                }
                VarMap::Mirrored { col, offset } => {
                    if shift {
                        offset - &xs[*col]
                    } else {
                        -xs[*col].clone()
                    }
                }
                VarMap::Split { plus, minus } => &xs[*plus] - &xs[*minus],
            })
            .collect()
    }
}

/// Dense simplex tableau `[B⁻¹A | B⁻¹ | B⁻¹b]`; the artificial block starts as
/// the identity so it always holds the current basis inverse.
struct Tableau {
    m: usize,
    n: usize,
    t: Vec<QVector>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(sf: &StandardForm) -> Tableau {
        let m = sf.a.len();
        let n = sf.cost.len();
        let t = (0..m)
            .map(|i| {
                let mut row = sf.a[i].clone();
                row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
                row.push(sf.b[i].clone());
                row
            })
            .collect();
        Tableau { m, n, t, basis: (n..n + m).collect() }
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.n + self.m]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.m {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.t[i][j] -= d;
            }
        }
        self.basis[r] = c;
    }

    /// Dual multipliers `c_B B⁻¹` for a cost vector over all columns.
    fn duals(&self, cost: &[Rational]) -> QVector {
        (0..self.m)
            .map(|k| {
                (0..self.m).fold(Rational::zero(), |acc, i| {
                    let cb = &cost[self.basis[i]];
                    if cb.is_zero() {
                        acc
                    } else {
                        acc + cb * &self.t[i][self.n + k]
                    }
                })
            })
            .collect()
    }

    /// `c_j - yᵀ A_j` for a structural column `j`.
    fn reduced_cost(&self, cost: &[Rational], y: &[Rational], j: usize, a: &[QVector]) -> Rational {
        let mut r = cost[j].clone();
        for (yi, row) in y.iter().zip(a) {
            if !yi.is_zero() && !row[j].is_zero() {
                r -= yi * &row[j];
            }
        }
        r
    }

    /// Runs Bland's-rule simplex on `cost` (maximisation). Columns with index
    /// `>= allowed` never enter. Returns the entering column when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize, a: &[QVector]) -> Option<usize> {
        loop {
            let y = self.duals(cost);
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, &y, j, a).is_positive());
            let Some(c) = entering else {
                return None;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.m {
                let aic = &self.t[i][c];
                if !aic.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / aic;
                let better = match &best {
                    None => true,
                    Some((br, bvar, _)) => ratio < *br || (ratio == *br && self.basis[i] < *bvar),
                };
                if better {
                    best = Some((ratio, self.basis[i], i));
                }
            }
            match best {
                None => return Some(c),
                Some((_, _, r)) => self.pivot(r, c),
            }
        }
    }
}

/// Solve an LP exactly.
pub fn lp_optimize(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let sf = StandardForm::build(p);
    let m = sf.a.len();
    let n = sf.cost.len();
    let mut tab = Tableau::new(&sf);

    // Phase 1: maximise -Σ artificials.
    let mut phase1 = vec![Rational::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = -Rational::one();
    }
    tab.optimize(&phase1, n, &sf.a);
    let infeasibility: Rational =
        (0..m).filter(|&i| tab.basis[i] >= n).fold(Rational::zero(), |acc, i| acc + tab.rhs(i));
    if infeasibility.is_positive() {
        let y_std = tab.duals(&phase1);
        let certificate = farkas_from_phase1(p, &sf, &y_std);
        if !p.verify_farkas(&certificate) {
            return Err(Error::Numerical("simplex produced an invalid Farkas certificate".into()));
        }
        return Ok(LpOutcome::Infeasible { certificate });
    }

    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero() && !tab.basis.contains(&j)) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2.
    let mut cost = sf.cost.clone();
    cost.resize(n + m, Rational::zero());
    let unbounded = tab.optimize(&cost, n, &sf.a);

    let mut xs = vec![Rational::zero(); n];
    for i in 0..m {
        if tab.basis[i] < n {
            xs[tab.basis[i]] = tab.rhs(i).clone();
        }
    }
    let point = sf.recover(&xs, true);
    debug_assert!(p.is_feasible_point(&point));

    if let Some(c) = unbounded {
        let mut dir = vec![Rational::zero(); n];
        dir[c] = Rational::one();
        for i in 0..m {
            if tab.basis[i] < n {
                dir[tab.basis[i]] = -tab.t[i][c].clone();
            }
        }
        let ray = sf.recover(&dir, false);
        if !p.verify_ray(&ray) {
            return Err(Error::Numerical("simplex produced an invalid unbounded ray".into()));
        }
        return Ok(LpOutcome::Unbounded { point, ray });
    }

    let value = dot(&p.objective, &point);
    debug_assert_eq!(value, dot(&sf.cost, &xs) + &sf.cost_offset);
    let y_std = tab.duals(&cost);
    let dual = dual_from_std(p, &sf, &y_std);
    if !p.verify_dual(&dual, &value) {
        return Err(Error::Numerical("strong duality check failed at the simplex optimum".into()));
    }
    Ok(LpOutcome::Optimal { value, point, dual })
}

/// Map standard-form multipliers back onto [`LpProblem::certificate_rows`].
///
/// Row multipliers come straight from `y_std` (undoing the sign flip); the
/// multiplier of each lower-bound row absorbs the residual `c_j - Σ yᵢ aᵢⱼ`
/// of its column (with `c = 0` for the Farkas case).
fn map_multipliers(p: &LpProblem, sf: &StandardForm, y_std: &[Rational], target: &[Rational]) -> QVector {
    let rows = p.certificate_rows();
    let n = p.num_vars();
    let n_user = p.a.rows();
    let n_upper = p.bounds.iter().filter(|b| b.upper.is_some()).count();
    let mut y = vec![Rational::zero(); rows.len()];

    // Standard rows: user rows, then upper rows for variables with both bounds.
    for i in 0..n_user {
        y[i] = &y_std[i] * &sf.flip[i];
    }
    let mut std_row = n_user;
    let mut upper_idx = n_user;
    for bd in &p.bounds {
        if bd.upper.is_some() {
            if bd.lower.is_some() {
                y[upper_idx] = &y_std[std_row] * &sf.flip[std_row];
                std_row += 1;
            }
            upper_idx += 1;
        }
    }

    // Mirrored (upper-only) and shifted variables absorb residuals in their
    // bound row; split variables have zero residual.
    let mut residual = target.to_vec();
    for (r, yi) in rows.iter().zip(&y).take(n_user) {
        for j in 0..n {
            residual[j] -= yi * &r.coeffs[j];
        }
    }
    upper_idx = n_user;
    let mut lower_idx = n_user + n_upper;
    for (j, bd) in p.bounds.iter().enumerate() {
        if bd.upper.is_some() {
            if bd.lower.is_some() {
                residual[j] -= &y[upper_idx];
            }
            upper_idx += 1;
        }
    }
    upper_idx = n_user;
    for (j, bd) in p.bounds.iter().enumerate() {
        match (&bd.lower, &bd.upper) {
            (Some(_), _) => {
                y[lower_idx] = residual[j].clone();
                lower_idx += 1;
            }
            (None, Some(_)) => {
                y[upper_idx] = residual[j].clone();
            }
            (None, None) => {}
        }
        if bd.upper.is_some() {
            upper_idx += 1;
        }
    }
    y
}

fn farkas_from_phase1(p: &LpProblem, sf: &StandardForm, y_std: &[Rational]) -> QVector {
    map_multipliers(p, sf, y_std, &vec![Rational::zero(); p.num_vars()])
}

fn dual_from_std(p: &LpProblem, sf: &StandardForm, y_std: &[Rational]) -> QVector {
    map_multipliers(p, sf, y_std, &p.objective)
}

/// Feasibility of `Σ λᵢ gᵢ = v, λ ≥ 0`. Returns the weights, or a Farkas
/// separator `h` with `h·gᵢ ≥ 0` for all generators and `h·v < 0`.
pub fn conic_combination(generators: &[QVector], v: &[Rational]) -> Result<std::result::Result<QVector, QVector>> {
    let d = v.len();
    let k = generators.len();
    if generators.iter().any(|g| g.len() != d) {
        return Err(Error::Dimension("generator length differs from target".into()));
    }
    if k == 0 {
        return Ok(if v.iter().all(Zero::is_zero) {
            Ok(vec![])
        } else {
            // h = -v separates v from the zero cone.
            Err(v.iter().map(|x| -x.clone()).collect())
        });
    }
    let cols: Vec<QVector> = generators.to_vec();
    let a = QMatrix::from_columns(&cols)?;
    let p = LpProblem::new(vec![Rational::zero(); k], a, v.to_vec(), vec![Sense::Eq; d])?.all_nonneg()?;
    match lp_optimize(&p)? {
        LpOutcome::Optimal { point, .. } => Ok(Ok(point)),
        LpOutcome::Infeasible { certificate } => {
            // Farkas: y over d equality rows then k lower-bound rows (≤ 0).
            // Σ yᵢ gⱼ,ᵢ + μⱼ = 0 with μ ≤ 0 gives y·gⱼ ≥ 0, and y·v < 0.
            let h: QVector = certificate[..d].to_vec();
            Ok(Err(h))
        }
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}
