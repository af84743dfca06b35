//! Exact rational linear programming.
//!
//! Dense bounded-variable primal simplex over [`Rational`], two phases,
//! Bland's rule for anti-cycling, so termination is guaranteed and results
//! are exact. Every optimal solve is self-checked before it is returned:
//! primal feasibility, dual sign conditions, complementary slackness and
//! strong duality are asserted in exact arithmetic.
//!
//! [`solve_with_separation`] layers lazy constraint generation on top for
//! programs whose row family is exponential, given a violated-row oracle.
//! [`min_deficit`] is that oracle for the omniscience constraint family.

use crate::model::{check_enum, HypergraphSource, SubsetMask};
use crate::rat::Rational;
use crate::{Error, Result};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// One constraint row: `coeffs . x  relation  rhs`.
#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Row {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn violated_by(&self, point: &[Rational]) -> bool {
        !self.relation.holds(&dot(&self.coeffs, point), &self.rhs)
    }
}

/// An LP instance: rational objective with a sense, rational rows, and
/// per-variable bounds. Fresh variables default to `[0, +inf)`; `None`
/// bounds mean unbounded on that side.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    sense: Sense,
    nvars: usize,
    objective: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(sense: Sense, nvars: usize) -> Self {
        LinearProgram {
            sense,
            nvars,
            objective: vec![Rational::zero(); nvars],
            lower: vec![Some(Rational::zero()); nvars],
            upper: vec![None; nvars],
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn set_objective(&mut self, c: Vec<Rational>) {
        assert_eq!(c.len(), self.nvars, "objective length mismatch");
        self.objective = c;
    }

    pub fn set_objective_term(&mut self, j: usize, c: Rational) {
        self.objective[j] = c;
    }

    pub fn set_lower(&mut self, j: usize, lo: Option<Rational>) {
        self.lower[j] = lo;
    }

    pub fn set_upper(&mut self, j: usize, up: Option<Rational>) {
        self.upper[j] = up;
    }

    pub fn set_bounds(&mut self, j: usize, lo: Option<Rational>, up: Option<Rational>) {
        self.lower[j] = lo;
        self.upper[j] = up;
    }

    /// Unbounded in both directions.
    pub fn set_free(&mut self, j: usize) {
        self.set_bounds(j, None, None);
    }

    pub fn push_row(&mut self, row: Row) {
        assert_eq!(row.coeffs.len(), self.nvars, "row length mismatch");
        self.rows.push(row);
    }

    pub fn push_dense_row(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.push_row(Row::new(coeffs, relation, rhs));
    }

    pub fn push_sparse_row(
        &mut self,
        terms: &[(usize, Rational)],
        relation: Relation,
        rhs: Rational,
    ) {
        let mut coeffs = vec![Rational::zero(); self.nvars];
        for (j, c) in terms {
            coeffs[*j] = c.clone();
        }
        self.push_row(Row::new(coeffs, relation, rhs));
    }

    /// Exact optimum, or the infeasible/unbounded status. Deterministic
    /// given the instance ordering.
    pub fn solve(&self) -> LpSolution {
        for (j, (lo, up)) in self.lower.iter().zip(&self.upper).enumerate() {
            if let (Some(l), Some(u)) = (lo, up) {
                assert!(l <= u, "variable {j} has lower bound above upper bound");
            }
        }
        Simplex::new(self).run()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. `value`, `point`, `duals` and `reduced_costs` are filled
/// only when `status` is optimal; duals and reduced costs are reported in
/// the instance's own sense, so for a maximization a binding `Le` row has a
/// nonnegative dual and for a minimization a binding `Ge` row does.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Vec<Rational>,
    pub duals: Vec<Rational>,
    pub reduced_costs: Vec<Rational>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn status_only(status: LpStatus) -> Self {
        LpSolution {
            status,
            value: None,
            point: Vec::new(),
            duals: Vec::new(),
            reduced_costs: Vec::new(),
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(p, q)| !p.is_zero() && !q.is_zero())
        .map(|(p, q)| p * q)
        .sum()
}

/// dst -= f * src, skipping zeros.
fn sub_scaled(dst: &mut [Rational], f: &Rational, src: &[Rational]) {
    if f.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
    /// Nonbasic free variable resting at zero.
    FreeZero,
}

enum Step {
    Optimal,
    Unbounded,
}

enum Blocker {
    Flip,
    Row { r: usize, to_upper: bool },
}

/// Internal solver state. Variables are laid out as structural columns,
/// then one slack per row, then artificials for rows whose slack start is
/// bound-infeasible. The tableau `t` is `B^{-1} A`; `beta` is `B^{-1} b`;
/// `xb` holds the basic variable values for the current nonbasic bound
/// assignment; `d` is the reduced cost row for the current phase cost.
struct Simplex<'a> {
    lp: &'a LinearProgram,
    n: usize,
    m: usize,
    total: usize,
    cmin: Vec<Rational>,
    t: Vec<Vec<Rational>>,
    beta: Vec<Rational>,
    lo: Vec<Option<Rational>>,
    up: Vec<Option<Rational>>,
    cost: Vec<Rational>,
    d: Vec<Rational>,
    state: Vec<VarState>,
    basic: Vec<usize>,
    xb: Vec<Rational>,
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a LinearProgram) -> Self {
        let n = lp.nvars;
        let m = lp.rows.len();

        // Internal work is always minimization.
        let cmin: Vec<Rational> = match lp.sense {
            Sense::Min => lp.objective.clone(),
            Sense::Max => lp.objective.iter().map(|c| -c).collect(),
        };

        let mut lo = lp.lower.clone();
        let mut up = lp.upper.clone();
        for row in &lp.rows {
            // Row form is coeffs . x + s = rhs, so the slack bounds encode
            // the relation.
            match row.relation {
                Relation::Le => {
                    lo.push(Some(Rational::zero()));
                    up.push(None);
                }
                Relation::Eq => {
                    lo.push(Some(Rational::zero()));
                    up.push(Some(Rational::zero()));
                }
                Relation::Ge => {
                    lo.push(None);
                    up.push(Some(Rational::zero()));
                }
            }
        }

        let start = |j: usize, lo: &[Option<Rational>], up: &[Option<Rational>]| -> VarState {
            if lo[j].is_some() {
                VarState::AtLower
            } else if up[j].is_some() {
                VarState::AtUpper
            } else {
                VarState::FreeZero
            }
        };
        let mut state: Vec<VarState> = (0..n).map(|j| start(j, &lo, &up)).collect();
        let struct_val = |j: usize, state: &[VarState]| -> Rational {
            match state[j] {
                VarState::AtLower => lo[j].clone().unwrap(),
                VarState::AtUpper => up[j].clone().unwrap(),
                _ => Rational::zero(),
            }
        };

        // Slack-basis start values, to decide which rows need an artificial.
        let mut start_xb: Vec<Rational> = Vec::with_capacity(m);
        let mut arts: Vec<(usize, bool)> = Vec::new(); // (row, above upper)
        for (i, row) in lp.rows.iter().enumerate() {
            let mut v = row.rhs.clone();
            for j in 0..n {
                let val = struct_val(j, &state);
                if !val.is_zero() && !row.coeffs[j].is_zero() {
                    v -= &row.coeffs[j] * &val;
                }
            }
            let s = n + i;
            if lo[s].as_ref().is_some_and(|l| &v < l) {
                arts.push((i, false));
            } else if up[s].as_ref().is_some_and(|u| &v > u) {
                arts.push((i, true));
            }
            start_xb.push(v);
        }

        let nart = arts.len();
        let total = n + m + nart;
        let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for (i, row) in lp.rows.iter().enumerate() {
            let mut r = vec![Rational::zero(); total];
            r[..n].clone_from_slice(&row.coeffs);
            r[n + i] = Rational::from_integer(1.into());
            t.push(r);
        }
        let mut beta: Vec<Rational> = lp.rows.iter().map(|r| r.rhs.clone()).collect();
        let mut basic: Vec<usize> = (0..m).map(|i| n + i).collect();
        for i in 0..m {
            state.push(VarState::Basic(i));
        }

        // Artificials: column sigma * e_i with sigma chosen so the
        // artificial starts basic at the (positive) violation amount. The
        // displaced slack rests at the bound it violated.
        for (q, &(i, above)) in arts.iter().enumerate() {
            let col = n + m + q;
            let sigma_neg = !above;
            t[i][col] = if sigma_neg {
                -Rational::from_integer(1.into())
            } else {
                Rational::from_integer(1.into())
            };
            lo.push(Some(Rational::zero()));
            up.push(None);
            state.push(VarState::Basic(i));
            state[n + i] = if above {
                VarState::AtUpper
            } else {
                VarState::AtLower
            };
            basic[i] = col;
            if sigma_neg {
                for v in t[i].iter_mut() {
                    if !v.is_zero() {
                        *v = -&*v;
                    }
                }
                beta[i] = -&beta[i];
            }
        }

        let mut s = Simplex {
            lp,
            n,
            m,
            total,
            cmin,
            t,
            beta,
            lo,
            up,
            cost: vec![Rational::zero(); total],
            d: vec![Rational::zero(); total],
            state,
            basic,
            xb: vec![Rational::zero(); m],
        };
        s.recompute_xb();
        s
    }

    fn nart(&self) -> usize {
        self.total - self.n - self.m
    }

    fn nonbasic_value(&self, j: usize) -> Rational {
        match self.state[j] {
            VarState::AtLower => self.lo[j].clone().unwrap(),
            VarState::AtUpper => self.up[j].clone().unwrap(),
            VarState::FreeZero => Rational::zero(),
            VarState::Basic(_) => unreachable!("nonbasic_value on a basic variable"),
        }
    }

    fn value_of(&self, j: usize) -> Rational {
        match self.state[j] {
            VarState::Basic(r) => self.xb[r].clone(),
            _ => self.nonbasic_value(j),
        }
    }

    fn recompute_xb(&mut self) {
        for r in 0..self.m {
            let mut v = self.beta[r].clone();
            for j in 0..self.total {
                if matches!(self.state[j], VarState::Basic(_)) || self.t[r][j].is_zero() {
                    continue;
                }
                let val = self.nonbasic_value(j);
                if !val.is_zero() {
                    v -= &self.t[r][j] * &val;
                }
            }
            self.xb[r] = v;
        }
    }

    fn rebuild_reduced_costs(&mut self) {
        self.d = self.cost.clone();
        for r in 0..self.m {
            let cb = self.cost[self.basic[r]].clone();
            if !cb.is_zero() {
                let row = self.t[r].clone();
                sub_scaled(&mut self.d, &cb, &row);
            }
        }
    }

    fn run(mut self) -> LpSolution {
        if self.nart() > 0 {
            // Phase 1: drive total artificial mass to zero.
            for q in self.n + self.m..self.total {
                self.cost[q] = Rational::from_integer(1.into());
            }
            self.rebuild_reduced_costs();
            match self.optimize() {
                Step::Optimal => {}
                Step::Unbounded => unreachable!("phase 1 objective is bounded below"),
            }
            let infeas: Rational = (self.n + self.m..self.total).map(|q| self.value_of(q)).sum();
            assert!(!infeas.is_negative(), "artificials must stay nonnegative");
            if !infeas.is_zero() {
                return LpSolution::status_only(LpStatus::Infeasible);
            }
            // Pin artificials at zero; cost resets below.
            for q in self.n + self.m..self.total {
                self.cost[q] = Rational::zero();
                self.up[q] = Some(Rational::zero());
            }
        }

        self.cost[..self.n].clone_from_slice(&self.cmin);
        self.rebuild_reduced_costs();
        let step = self.optimize();
        match step {
            Step::Unbounded => LpSolution::status_only(LpStatus::Unbounded),
            Step::Optimal => self.extract(),
        }
    }

    fn optimize(&mut self) -> Step {
        let mut iter = 0usize;
        let guard = 10_000 + 500 * (self.total + self.m);
        loop {
            iter += 1;
            assert!(iter <= guard, "simplex exceeded the iteration guard; anti-cycling bug");
            let Some((j, inc)) = self.choose_entering() else {
                return Step::Optimal;
            };
            match self.ratio_test(j, inc) {
                None => return Step::Unbounded,
                Some((delta, Blocker::Flip)) => self.apply_flip(j, inc, &delta),
                Some((delta, Blocker::Row { r, to_upper })) => {
                    self.apply_pivot(j, inc, r, &delta, to_upper)
                }
            }
        }
    }

    /// Bland: smallest-index improving nonbasic variable, with its move
    /// direction (`true` = increase).
    fn choose_entering(&self) -> Option<(usize, bool)> {
        for j in 0..self.total {
            match self.state[j] {
                VarState::Basic(_) => continue,
                _ => {}
            }
            if self.lo[j].is_some() && self.lo[j] == self.up[j] {
                continue; // pinned, includes Eq slacks and spent artificials
            }
            let d = &self.d[j];
            match self.state[j] {
                VarState::AtLower if d.is_negative() => return Some((j, true)),
                VarState::AtUpper if d.is_positive() => return Some((j, false)),
                VarState::FreeZero if !d.is_zero() => return Some((j, d.is_negative())),
                _ => {}
            }
        }
        None
    }

    /// Largest step for `j` moving in direction `inc`, with what blocks it.
    /// `None` means unbounded. Ties among rows break toward the smallest
    /// basic variable index (Bland); a bound flip is taken only when it is
    /// strictly shortest.
    fn ratio_test(&self, j: usize, inc: bool) -> Option<(Rational, Blocker)> {
        // (step length, row, basic variable there, bound it hits)
        let mut best: Option<(Rational, usize, usize, bool)> = None;
        for r in 0..self.m {
            if self.t[r][j].is_zero() {
                continue;
            }
            let g = if inc {
                self.t[r][j].clone()
            } else {
                -&self.t[r][j]
            };
            let k = self.basic[r];
            // Basic k moves by -g * delta.
            let (delta, to_upper) = if g.is_positive() {
                match &self.lo[k] {
                    Some(l) => ((&self.xb[r] - l) / &g, false),
                    None => continue,
                }
            } else {
                match &self.up[k] {
                    Some(u) => ((u - &self.xb[r]) / -&g, true),
                    None => continue,
                }
            };
            debug_assert!(!delta.is_negative(), "basic values must be within bounds");
            let better = match &best {
                None => true,
                Some((bd, _, bk, _)) => &delta < bd || (&delta == bd && k < *bk),
            };
            if better {
                best = Some((delta, r, k, to_upper));
            }
        }
        let own_gap = match (&self.lo[j], &self.up[j]) {
            (Some(l), Some(u)) => Some(u - l),
            _ => None,
        };
        match (best, own_gap) {
            (Some((bd, _, _, _)), Some(gap)) if gap < bd => Some((gap, Blocker::Flip)),
            (Some((bd, r, _, up)), _) => Some((bd, Blocker::Row { r, to_upper: up })),
            (None, Some(gap)) => Some((gap, Blocker::Flip)),
            (None, None) => None,
        }
    }

    fn shift_basics(&mut self, j: usize, inc: bool, delta: &Rational) {
        if delta.is_zero() {
            return;
        }
        for r in 0..self.m {
            if self.t[r][j].is_zero() {
                continue;
            }
            let step = delta * &self.t[r][j];
            if inc {
                self.xb[r] -= step;
            } else {
                self.xb[r] += step;
            }
        }
    }

    fn apply_flip(&mut self, j: usize, inc: bool, delta: &Rational) {
        self.shift_basics(j, inc, delta);
        self.state[j] = match self.state[j] {
            VarState::AtLower => VarState::AtUpper,
            VarState::AtUpper => VarState::AtLower,
            _ => unreachable!("only bounded variables flip"),
        };
    }

    fn apply_pivot(&mut self, j: usize, inc: bool, r: usize, delta: &Rational, to_upper: bool) {
        let entering_value = {
            let v = self.nonbasic_value(j);
            if inc {
                v + delta
            } else {
                v - delta
            }
        };
        self.shift_basics(j, inc, delta);
        let leaving = self.basic[r];
        self.state[leaving] = if to_upper {
            VarState::AtUpper
        } else {
            VarState::AtLower
        };

        let pivot = self.t[r][j].clone();
        debug_assert!(!pivot.is_zero());
        let inv = pivot.recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.beta[r] *= &inv;
        let prow = self.t[r].clone();
        let pbeta = self.beta[r].clone();
        for k in 0..self.m {
            if k == r || self.t[k][j].is_zero() {
                continue;
            }
            let f = self.t[k][j].clone();
            sub_scaled(&mut self.t[k], &f, &prow);
            self.beta[k] -= &f * &pbeta;
        }
        let f = self.d[j].clone();
        sub_scaled(&mut self.d, &f, &prow);

        self.basic[r] = j;
        self.state[j] = VarState::Basic(r);
        self.xb[r] = entering_value;
    }

    fn extract(&self) -> LpSolution {
        let point: Vec<Rational> = (0..self.n).map(|j| self.value_of(j)).collect();
        let zmin = dot(&self.cmin, &point);
        // Internal duals: the reduced cost of slack i is -y_i.
        let ymin: Vec<Rational> = (0..self.m).map(|i| -&self.d[self.n + i]).collect();
        let value = match self.lp.sense {
            Sense::Min => zmin.clone(),
            Sense::Max => -&zmin,
        };
        let duals: Vec<Rational> = match self.lp.sense {
            Sense::Min => ymin.clone(),
            Sense::Max => ymin.iter().map(|y| -y).collect(),
        };
        let reduced: Vec<Rational> = match self.lp.sense {
            Sense::Min => self.d[..self.n].to_vec(),
            Sense::Max => self.d[..self.n].iter().map(|d| -d).collect(),
        };
        self.verify_optimal(&point, &zmin, &ymin);
        LpSolution {
            status: LpStatus::Optimal,
            value: Some(value),
            point,
            duals,
            reduced_costs: reduced,
        }
    }

    /// Exact optimality certificate, asserted. Checks primal feasibility,
    /// recomputes reduced costs from the duals and checks the sign
    /// conditions per variable state, checks complementary slackness row by
    /// row, and closes with strong duality.
    fn verify_optimal(&self, point: &[Rational], zmin: &Rational, ymin: &[Rational]) {
        // Primal: bounds on every variable, relations on every row.
        for j in 0..self.total {
            let v = self.value_of(j);
            if let Some(l) = &self.lo[j] {
                assert!(&v >= l, "variable {j} below lower bound");
            }
            if let Some(u) = &self.up[j] {
                assert!(&v <= u, "variable {j} above upper bound");
            }
        }
        let mut slack_vals: Vec<Rational> = Vec::with_capacity(self.m);
        for (i, row) in self.lp.rows.iter().enumerate() {
            let lhs = dot(&row.coeffs, point);
            assert!(
                row.relation.holds(&lhs, &row.rhs),
                "row {i} violated at the reported optimum"
            );
            slack_vals.push(&row.rhs - &lhs);
        }

        // Dual feasibility: d_j = c_j - y . A_j with state sign conditions.
        let mut dual_obj = dot(ymin, &self.lp.rows.iter().map(|r| r.rhs.clone()).collect::<Vec<_>>());
        for j in 0..self.n {
            let mut dj = self.cmin[j].clone();
            for (i, y) in ymin.iter().enumerate() {
                if !y.is_zero() && !self.lp.rows[i].coeffs[j].is_zero() {
                    dj -= y * &self.lp.rows[i].coeffs[j];
                }
            }
            assert_eq!(dj, self.d[j], "reduced cost row drifted at column {j}");
            self.check_sign(j, &dj);
            if !matches!(self.state[j], VarState::Basic(_)) {
                let val = self.nonbasic_value(j);
                if !val.is_zero() {
                    dual_obj += &dj * &val;
                }
            }
        }
        for i in 0..self.m {
            let s = self.n + i;
            let dj = -&ymin[i];
            self.check_sign(s, &dj);
            // Slack bounds are all zero, so slacks never contribute to the
            // dual objective.
            // Complementary slackness: a row with a nonzero multiplier is
            // tight.
            if !ymin[i].is_zero() {
                assert!(
                    slack_vals[i].is_zero(),
                    "row {i} has a nonzero dual but is not tight"
                );
            }
        }

        assert_eq!(*zmin, dual_obj, "strong duality gap detected");
    }

    fn check_sign(&self, j: usize, dj: &Rational) {
        if self.lo[j].is_some() && self.lo[j] == self.up[j] {
            return; // pinned variables have free multipliers
        }
        match self.state[j] {
            VarState::Basic(_) => assert!(dj.is_zero(), "basic variable {j} with nonzero reduced cost"),
            VarState::AtLower => assert!(!dj.is_negative(), "variable {j} at lower with negative reduced cost"),
            VarState::AtUpper => assert!(!dj.is_positive(), "variable {j} at upper with positive reduced cost"),
            VarState::FreeZero => assert!(dj.is_zero(), "free variable {j} with nonzero reduced cost"),
        }
    }
}

/// Cutting-plane driver. Solves `base`, asks the separator for a violated
/// row of the implicit LP, adds it, repeats. The separator contract: return
/// a row violated by the query point, or `None` when the point is feasible
/// for the whole implicit family. More than `cut_limit` cuts means a broken
/// separator, as does a returned row the point already satisfies.
pub fn solve_with_separation<F>(
    base: &mut LinearProgram,
    cut_limit: usize,
    mut separator: F,
) -> Result<LpSolution>
where
    F: FnMut(&[Rational]) -> Result<Option<Row>>,
{
    let mut cuts = 0usize;
    loop {
        let sol = base.solve();
        if !sol.is_optimal() {
            return Ok(sol);
        }
        match separator(&sol.point)? {
            None => return Ok(sol),
            Some(row) => {
                if !row.violated_by(&sol.point) {
                    return Err(Error::SeparationStalled);
                }
                cuts += 1;
                if cuts > cut_limit {
                    return Err(Error::SeparationLimit { limit: cut_limit });
                }
                base.push_row(row);
            }
        }
    }
}

/// Minimizes `r(B) - x(E(B))` over all `B` contained in `V \ {i}` by
/// exhaustive enumeration, returning a minimizer and the minimum. Ties
/// break toward the smallest mask in numeric order, so the empty set wins
/// whenever the minimum is zero. This is the separation oracle for the
/// omniscience row family: a negative value exhibits a violated row.
pub fn min_deficit(
    source: &HypergraphSource,
    r: &[Rational],
    x: &[Rational],
    i: usize,
) -> Result<(SubsetMask, Rational)> {
    let n = source.vertex_count();
    check_enum("min_deficit", n)?;
    if i >= n || !source.active().contains(i) {
        return Err(Error::InvalidArgument(format!(
            "vertex {i} is not an active vertex"
        )));
    }
    if r.len() != n || x.len() != source.edge_count() {
        return Err(Error::InvalidArgument(
            "rate or edge vector length mismatch".into(),
        ));
    }
    let allowed = source.full_mask().without(i);
    let mut best: Option<(SubsetMask, Rational)> = None;
    for b in allowed.submasks() {
        let rb: Rational = b.iter().map(|v| &r[v]).sum();
        let value = rb - source.sum_within(x, b);
        match &best {
            Some((_, bv)) if &value >= bv => {}
            _ => best = Some((b, value)),
        }
    }
    Ok(best.expect("the empty set is always a candidate"))
}
