//! Exact rational linear programming with a dense two-phase simplex.
//!
//! Everything is computed exactly; pivoting uses Bland's rule, so results
//! are deterministic and cycling is impossible. The tableau runs on
//! checked 128-bit fractions and falls back to arbitrary-precision
//! rationals if an entry ever overflows, which keeps the oracles fast at
//! desk scale without giving up exactness on larger inputs. The solver
//! also reports an exact dual solution, which the polytope oracles turn
//! into face certificates.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint row has {got} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty constraint system needs at least a variable count")]
    NoVariables,
    #[error("pivot limit exceeded; system too large for the dense simplex")]
    PivotLimit,
    #[error("128-bit fraction overflow")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs · x REL rhs` over free variables.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// Outcome of maximizing an objective over a constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpVerdict {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Outcome of the nonnegative-variable core solver.
#[derive(Debug, Clone)]
pub enum EqNonnegVerdict {
    /// Optimal basic solution, its value, and exact duals `y` with
    /// `y·A_j >= c_j` for all columns and `y·b = value`.
    Optimal {
        value: Rat,
        point: Vec<Rat>,
        duals: Vec<Rat>,
    },
    Infeasible,
    Unbounded,
}

const PIVOT_LIMIT: usize = 2_000_000;

/// Scalar the tableau pivots on. The fast implementation reports overflow
/// through `None`, triggering a retry on big rationals.
trait PivotScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn try_cmp(&self, o: &Self) -> Option<std::cmp::Ordering>;
    fn from_rat(r: &Rat) -> Option<Self>;
    fn to_rat(&self) -> Rat;
}

impl PivotScalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn try_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
}

/// Reduced fraction over checked i128 arithmetic: denominator positive,
/// gcd(|n|, d) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Q128 {
    n: i128,
    d: i128,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q128 {
    fn reduced(n: i128, d: i128) -> Option<Q128> {
        debug_assert!(d != 0);
        if n == 0 {
            return Some(Q128 { n: 0, d: 1 });
        }
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (n, d) = (n / g, d / g);
        if d < 0 {
            Some(Q128 {
                n: n.checked_neg()?,
                d: d.checked_neg()?,
            })
        } else {
            Some(Q128 { n, d })
        }
    }
}

impl PivotScalar for Q128 {
    fn zero() -> Self {
        Q128 { n: 0, d: 1 }
    }
    fn one() -> Self {
        Q128 { n: 1, d: 1 }
    }
    fn is_zero(&self) -> bool {
        self.n == 0
    }
    fn is_positive(&self) -> bool {
        self.n > 0
    }
    fn neg(&self) -> Self {
        Q128 { n: -self.n, d: self.d }
    }
    fn add(&self, o: &Self) -> Option<Self> {
        let left = self.n.checked_mul(o.d)?;
        let right = o.n.checked_mul(self.d)?;
        Q128::reduced(left.checked_add(right)?, self.d.checked_mul(o.d)?)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Q128::reduced(self.n.checked_mul(o.n)?, self.d.checked_mul(o.d)?)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.n == 0 {
            return None;
        }
        Q128::reduced(self.n.checked_mul(o.d)?, self.d.checked_mul(o.n)?)
    }
    fn try_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        let left = self.n.checked_mul(o.d)?;
        let right = o.n.checked_mul(self.d)?;
        Some(left.cmp(&right))
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        let n = i128::try_from(r.numer()).ok()?;
        let d = i128::try_from(r.denom()).ok()?;
        Some(Q128 { n, d })
    }
    fn to_rat(&self) -> Rat {
        Rat::new(self.n.into(), self.d.into())
    }
}

/// Maximize `objective · x` over free variables subject to `constraints`.
///
/// Free variables are split into positive and negative parts and the system
/// is passed to the equality-form core solver.
pub fn lp_solve(objective: &[Rat], constraints: &[Constraint]) -> Result<LpVerdict, LpError> {
    let nvars = objective.len();
    if nvars == 0 {
        return Err(LpError::NoVariables);
    }
    for c in constraints {
        if c.coeffs.len() != nvars {
            return Err(LpError::DimensionMismatch {
                expected: nvars,
                got: c.coeffs.len(),
            });
        }
    }
    let nslack = constraints
        .iter()
        .filter(|c| c.rel != Relation::Eq)
        .count();
    let ncols = 2 * nvars + nslack;
    let m = constraints.len();
    let mut cols = vec![vec![<Rat as Zero>::zero(); m]; ncols];
    let mut rhs = Vec::with_capacity(m);
    let mut slack_idx = 2 * nvars;
    for (i, c) in constraints.iter().enumerate() {
        for (v, a) in c.coeffs.iter().enumerate() {
            cols[2 * v][i] = a.clone();
            cols[2 * v + 1][i] = -a.clone();
        }
        match c.rel {
            Relation::Le => {
                cols[slack_idx][i] = <Rat as One>::one();
                slack_idx += 1;
            }
            Relation::Ge => {
                cols[slack_idx][i] = -<Rat as One>::one();
                slack_idx += 1;
            }
            Relation::Eq => {}
        }
        rhs.push(c.rhs.clone());
    }
    let mut obj = vec![<Rat as Zero>::zero(); ncols];
    for (v, cv) in objective.iter().enumerate() {
        obj[2 * v] = cv.clone();
        obj[2 * v + 1] = -cv.clone();
    }
    match solve_eq_nonneg(&cols, &rhs, &obj)? {
        EqNonnegVerdict::Optimal { value, point, .. } => {
            let x = (0..nvars)
                .map(|v| &point[2 * v] - &point[2 * v + 1])
                .collect();
            Ok(LpVerdict::Optimal { value, point: x })
        }
        EqNonnegVerdict::Infeasible => Ok(LpVerdict::Infeasible),
        EqNonnegVerdict::Unbounded => Ok(LpVerdict::Unbounded),
    }
}

/// Maximize `objective · x` subject to `A x = rhs`, `x >= 0`, with `A`
/// given column-major.
pub fn solve_eq_nonneg(
    columns: &[Vec<Rat>],
    rhs: &[Rat],
    objective: &[Rat],
) -> Result<EqNonnegVerdict, LpError> {
    let m = rhs.len();
    let n = columns.len();
    if objective.len() != n {
        return Err(LpError::DimensionMismatch {
            expected: n,
            got: objective.len(),
        });
    }
    for col in columns {
        if col.len() != m {
            return Err(LpError::DimensionMismatch {
                expected: m,
                got: col.len(),
            });
        }
    }
    match run::<Q128>(columns, rhs, objective) {
        Ok(v) => Ok(v),
        Err(LpError::Overflow) => run::<Rat>(columns, rhs, objective),
        Err(e) => Err(e),
    }
}

fn run<N: PivotScalar>(
    columns: &[Vec<Rat>],
    rhs: &[Rat],
    objective: &[Rat],
) -> Result<EqNonnegVerdict, LpError> {
    let m = rhs.len();
    let n = columns.len();
    let conv = |r: &Rat| N::from_rat(r).ok_or(LpError::Overflow);
    let mut cols_n: Vec<Vec<N>> = Vec::with_capacity(n);
    for col in columns {
        cols_n.push(col.iter().map(conv).collect::<Result<_, _>>()?);
    }
    let rhs_n: Vec<N> = rhs.iter().map(conv).collect::<Result<_, _>>()?;
    let obj_n: Vec<N> = objective.iter().map(conv).collect::<Result<_, _>>()?;

    let mut t = Tableau::new(&cols_n, &rhs_n, m, n)?;
    if !t.phase_one()? {
        return Ok(EqNonnegVerdict::Infeasible);
    }
    t.load_objective(&obj_n)?;
    match t.phase_two()? {
        true => {
            let point: Vec<Rat> = t.primal_point().iter().map(N::to_rat).collect();
            let duals = t.duals();
            let value = objective
                .iter()
                .zip(&point)
                .map(|(c, x)| c * x)
                .fold(<Rat as Zero>::zero(), |acc, v| acc + v);
            Ok(EqNonnegVerdict::Optimal {
                value,
                point,
                duals,
            })
        }
        false => Ok(EqNonnegVerdict::Unbounded),
    }
}

/// Dense simplex tableau. Structural columns come first, then one
/// artificial marker column per row; the marker columns stay in the tableau
/// through phase two (barred from entering) so exact duals can be read off.
struct Tableau<N> {
    m: usize,
    n: usize,
    /// m rows of n + m + 1 entries (structural, markers, rhs).
    rows: Vec<Vec<N>>,
    /// Reduced-cost row, same width (rhs slot holds -objective value).
    obj: Vec<N>,
    /// Basic variable of each row.
    basis: Vec<usize>,
    /// Sign applied to each input row to make the rhs nonnegative.
    row_sign: Vec<bool>,
    pivots: usize,
}

impl<N: PivotScalar> Tableau<N> {
    fn new(columns: &[Vec<N>], rhs: &[N], m: usize, n: usize) -> Result<Self, LpError> {
        let width = n + m + 1;
        let mut rows = vec![vec![N::zero(); width]; m];
        let mut row_sign = vec![false; m];
        for i in 0..m {
            let negate = !rhs[i].is_positive() && !rhs[i].is_zero();
            row_sign[i] = negate;
            for (j, col) in columns.iter().enumerate() {
                rows[i][j] = if negate { col[i].neg() } else { col[i].clone() };
            }
            rows[i][n + i] = N::one();
            rows[i][width - 1] = if negate { rhs[i].neg() } else { rhs[i].clone() };
        }
        Ok(Tableau {
            m,
            n,
            rows,
            obj: vec![N::zero(); width],
            basis: (n..n + m).collect(),
            row_sign,
            pivots: 0,
        })
    }

    fn width(&self) -> usize {
        self.n + self.m + 1
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.n
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<(), LpError> {
        self.pivots += 1;
        if self.pivots > PIVOT_LIMIT {
            return Err(LpError::PivotLimit);
        }
        let width = self.width();
        let piv = self.rows[row][col].clone();
        for j in 0..width {
            if !self.rows[row][j].is_zero() {
                self.rows[row][j] = self.rows[row][j].div(&piv).ok_or(LpError::Overflow)?;
            }
        }
        for i in 0..self.m {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..width {
                if !self.rows[row][j].is_zero() {
                    let delta = factor.mul(&self.rows[row][j]).ok_or(LpError::Overflow)?;
                    self.rows[i][j] = self.rows[i][j].sub(&delta).ok_or(LpError::Overflow)?;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let factor = self.obj[col].clone();
            for j in 0..width {
                if !self.rows[row][j].is_zero() {
                    let delta = factor.mul(&self.rows[row][j]).ok_or(LpError::Overflow)?;
                    self.obj[j] = self.obj[j].sub(&delta).ok_or(LpError::Overflow)?;
                }
            }
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Bland entering column: lowest-index enterable column with positive
    /// reduced cost.
    fn entering(&self) -> Option<usize> {
        (0..self.n).find(|&j| self.obj[j].is_positive())
    }

    /// Leaving row for an entering column. Rows whose basic variable is an
    /// artificial stuck at zero take priority whenever their coefficient is
    /// nonzero: pivoting there is a degenerate exchange that drives the
    /// artificial out and keeps it from ever turning positive.
    fn leaving(&self, col: usize) -> Result<Option<usize>, LpError> {
        let rhs_col = self.width() - 1;
        let mut artificial_row: Option<usize> = None;
        for i in 0..self.m {
            if self.is_artificial(self.basis[i])
                && self.rows[i][rhs_col].is_zero()
                && !self.rows[i][col].is_zero()
            {
                match artificial_row {
                    Some(r) if self.basis[r] <= self.basis[i] => {}
                    _ => artificial_row = Some(i),
                }
            }
        }
        if let Some(r) = artificial_row {
            return Ok(Some(r));
        }
        let mut best: Option<(N, usize)> = None;
        for i in 0..self.m {
            if self.rows[i][col].is_positive() {
                let ratio = self.rows[i][rhs_col]
                    .div(&self.rows[i][col])
                    .ok_or(LpError::Overflow)?;
                match &best {
                    None => best = Some((ratio, i)),
                    Some((r, row)) => {
                        let ord = ratio.try_cmp(r).ok_or(LpError::Overflow)?;
                        if ord == std::cmp::Ordering::Less
                            || (ord == std::cmp::Ordering::Equal
                                && self.basis[i] < self.basis[*row])
                        {
                            best = Some((ratio, i));
                        }
                    }
                }
            }
        }
        Ok(best.map(|(_, i)| i))
    }

    /// Returns false when the system is infeasible.
    fn phase_one(&mut self) -> Result<bool, LpError> {
        // Phase-one objective: maximize -(sum of artificials). With the
        // all-artificial starting basis the reduced cost of a structural
        // column is its column sum, and the objective value is -(sum rhs).
        let width = self.width();
        self.obj = vec![N::zero(); width];
        for j in 0..self.n {
            let mut s = N::zero();
            for i in 0..self.m {
                if !self.rows[i][j].is_zero() {
                    s = s.add(&self.rows[i][j]).ok_or(LpError::Overflow)?;
                }
            }
            self.obj[j] = s;
        }
        let mut z = N::zero();
        for i in 0..self.m {
            z = z.add(&self.rows[i][width - 1]).ok_or(LpError::Overflow)?;
        }
        self.obj[width - 1] = z;
        while let Some(col) = self.entering() {
            match self.leaving(col)? {
                Some(row) => self.pivot(row, col)?,
                // Phase-one objective is bounded, so a missing leaving row
                // cannot happen on feasible data; treat as converged.
                None => break,
            }
        }
        if !self.obj[width - 1].is_zero() {
            return Ok(false);
        }
        // Drive any remaining artificials out of the basis where possible.
        for i in 0..self.m {
            if self.is_artificial(self.basis[i]) {
                if let Some(col) = (0..self.n).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, col)?;
                }
                // An all-zero structural row is a redundant constraint; its
                // artificial stays basic at zero and never moves again.
            }
        }
        Ok(true)
    }

    fn load_objective(&mut self, objective: &[N]) -> Result<(), LpError> {
        let width = self.width();
        self.obj = vec![N::zero(); width];
        self.obj[..self.n].clone_from_slice(objective);
        // Subtract c_B rows to restore zero reduced costs on the basis.
        for i in 0..self.m {
            let b = self.basis[i];
            if b < self.n && !objective[b].is_zero() {
                let factor = objective[b].clone();
                for j in 0..width {
                    if !self.rows[i][j].is_zero() {
                        let delta = factor.mul(&self.rows[i][j]).ok_or(LpError::Overflow)?;
                        self.obj[j] = self.obj[j].sub(&delta).ok_or(LpError::Overflow)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Returns false when unbounded.
    fn phase_two(&mut self) -> Result<bool, LpError> {
        while let Some(col) = self.entering() {
            match self.leaving(col)? {
                Some(row) => self.pivot(row, col)?,
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    fn primal_point(&self) -> Vec<N> {
        let rhs_col = self.width() - 1;
        let mut x = vec![N::zero(); self.n];
        for i in 0..self.m {
            if self.basis[i] < self.n {
                x[self.basis[i]] = self.rows[i][rhs_col].clone();
            }
        }
        x
    }

    /// Exact duals for the original row system, read off the marker columns:
    /// the reduced cost of marker i is -y_i in the sign-normalized system.
    fn duals(&self) -> Vec<Rat> {
        (0..self.m)
            .map(|i| {
                let y = -self.obj[self.n + i].to_rat();
                if self.row_sign[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}
