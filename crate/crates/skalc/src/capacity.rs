//! The main computable quantities: communication for omniscience, the
//! secrecy capacity with and without a discussion budget, communication
//! complexity, the full capacity curve, the zero-rate point, and the
//! decremental source reduction that certifies achievability.
//!
//! Every operation first applies the adversary reduction, so sources with
//! untrusted users or wiretapped edges are handled transparently; vectors
//! passed in (edge usages, rate caps) are indexed against the reduced
//! source. Operations solve rational LPs either eagerly (every subset row
//! materialized) or lazily through the deficit separation oracle; both
//! routes return identical values and that equality is part of the test
//! suite, so the lazy default stays honest.

use crate::exactlp::{
    min_deficit, solve_with_separation, LinearProgram, LpSolution, Relation, Row, Sense,
};
use crate::model::{check_enum, key_subsets, HypergraphSource, SubsetMask};
use crate::partitions::{i_lambda, FractionalAssignment};
use crate::rat::{format_rational, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SolveStrategy {
    /// Seed with singleton rows and generate violated subset rows on demand.
    #[default]
    Lazy,
    /// Materialize the full subset row family up front.
    Eager,
}

#[derive(Clone, Debug, Default)]
pub struct CapacityOptions {
    pub strategy: SolveStrategy,
    /// Also clamp every rate variable at zero. The LPs leave rates sign-free
    /// (subset rows already imply nonnegativity when two or more users are
    /// active); this flag exists to demonstrate that the clamp changes
    /// nothing.
    pub nonneg_rates: bool,
}

/// One operating point of the capacity curve with full witnesses: the edge
/// usage `x`, the rate vector `r`, and the dual fractional partition.
#[derive(Clone, Debug)]
pub struct CapacityPoint {
    /// Total discussion rate this point was computed for; `r` sums to at
    /// most this.
    pub rate: Rational,
    /// The secrecy capacity at that rate.
    pub value: Rational,
    pub x: Vec<Rational>,
    pub r: Vec<Rational>,
    pub lambda: FractionalAssignment,
}

impl CapacityPoint {
    /// Constructor that asserts the witness invariants exactly: the box on
    /// `x`, every subset row (via the deficit oracle), the rate budget, the
    /// objective identity, and validity of the dual partition.
    fn checked(
        src: &HypergraphSource,
        rate: Rational,
        value: Rational,
        x: Vec<Rational>,
        r: Vec<Rational>,
        lambda: FractionalAssignment,
    ) -> Result<Self> {
        for (e, xe) in x.iter().enumerate() {
            assert!(
                !xe.is_negative() && xe <= &src.edges()[e].weight,
                "edge usage outside its box"
            );
        }
        for i in src.active().iter() {
            let (_, deficit) = min_deficit(src, &r, &x, i)?;
            assert!(!deficit.is_negative(), "a subset row is violated at the witness");
        }
        let r_sum: Rational = r.iter().sum();
        assert!(r_sum <= rate, "witness rates exceed the discussion budget");
        let x_sum: Rational = x.iter().sum();
        assert_eq!(value, x_sum - &r_sum, "objective identity broken");
        assert!(lambda.validate(src), "dual is not a fractional partition");
        Ok(CapacityPoint {
            rate,
            value,
            x,
            r,
            lambda,
        })
    }

    /// Attained total discussion rate `r(V)`, at most [`Self::rate`].
    pub fn attained_rate(&self) -> Rational {
        self.r.iter().sum()
    }
}

/// A source with every edge weight lowered from `w_e` to the optimal usage
/// `x_e`; running plain omniscience on it achieves the constrained capacity.
#[derive(Clone, Debug)]
pub struct ReducedSource {
    source: HypergraphSource,
    x: Vec<Rational>,
}

impl ReducedSource {
    pub fn source(&self) -> &HypergraphSource {
        &self.source
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }
}

/// The capacity curve `R -> C_S(R)`: piecewise linear, concave and
/// nondecreasing from `(0, C_S(0))` to `(R_S, C_S)`, flat beyond.
#[derive(Clone, Debug)]
pub struct CapacityCurve {
    breakpoints: Vec<(Rational, Rational)>,
    slopes: Vec<Rational>,
}

impl CapacityCurve {
    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// Segment slopes between consecutive breakpoints; strictly decreasing.
    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    /// Smallest rate attaining the unconstrained capacity.
    pub fn total_rate(&self) -> &Rational {
        &self.breakpoints.last().unwrap().0
    }

    /// The unconstrained capacity.
    pub fn total_value(&self) -> &Rational {
        &self.breakpoints.last().unwrap().1
    }

    /// Evaluates the curve, extending flat beyond the last breakpoint.
    pub fn value_at(&self, rate: &Rational) -> Rational {
        assert!(!rate.is_negative(), "rates are nonnegative");
        let mut prev = &self.breakpoints[0];
        for (k, bp) in self.breakpoints.iter().enumerate().skip(1) {
            if rate <= &bp.0 {
                return &prev.1 + &self.slopes[k - 1] * (rate - &prev.0);
            }
            prev = bp;
        }
        prev.1.clone()
    }
}

fn prepared(source: &HypergraphSource) -> Result<HypergraphSource> {
    source.reduce_for_adversaries()
}

pub(crate) fn require_two_active(src: &HypergraphSource, what: &str) -> Result<()> {
    if src.active().len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "{what} needs at least two active users after adversary reduction"
        )));
    }
    Ok(())
}

/// Singleton masks `{i}` that belong to the subset row family.
fn seed_masks(src: &HypergraphSource) -> Vec<SubsetMask> {
    (0..src.vertex_count())
        .map(SubsetMask::singleton)
        .filter(|b| !b.is_superset_of(src.active()))
        .collect()
}

/// Row `r(B) >= rhs` (pure rate variables), laid out after `nx` edge
/// variables with coefficient -1 on each edge inside `B` when `nx > 0`.
fn subset_row(src: &HypergraphSource, nx: usize, b: SubsetMask, rhs: Rational) -> Row {
    let n = src.vertex_count();
    let mut coeffs = vec![Rational::zero(); nx + n];
    for e in src.edges_within(b) {
        if nx > 0 {
            coeffs[e] = -Rational::one();
        }
    }
    for i in b.iter() {
        coeffs[nx + i] = Rational::one();
    }
    Row::new(coeffs, Relation::Ge, rhs)
}

/// Shared solve loop for the three omniscience-style programs. `nx` is 0
/// when the edge usages are fixed at the full weights (plain omniscience)
/// and the edge count otherwise. Returns the solution plus the mask behind
/// every subset row, in row order after `fixed_rows` leading rows.
fn solve_family(
    src: &HypergraphSource,
    lp: &mut LinearProgram,
    nx: usize,
    opts: &CapacityOptions,
    what: &'static str,
) -> Result<(LpSolution, Vec<SubsetMask>)> {
    let n = src.vertex_count();
    let weights = src.weights();
    let mut masks: Vec<SubsetMask> = Vec::new();
    let sol = match opts.strategy {
        SolveStrategy::Eager => {
            check_enum(what, n)?;
            for b in key_subsets(n, src.active()) {
                let rhs = if nx > 0 {
                    Rational::zero()
                } else {
                    src.cond_entropy(b)
                };
                lp.push_row(subset_row(src, nx, b, rhs));
                masks.push(b);
            }
            lp.solve()
        }
        SolveStrategy::Lazy => {
            for b in seed_masks(src) {
                let rhs = if nx > 0 {
                    Rational::zero()
                } else {
                    src.cond_entropy(b)
                };
                lp.push_row(subset_row(src, nx, b, rhs));
                masks.push(b);
            }
            let cut_limit = 1usize << n.min(62);
            solve_with_separation(lp, cut_limit, |point| {
                let (x_part, r_part) = if nx > 0 {
                    (point[..nx].to_vec(), point[nx..].to_vec())
                } else {
                    (weights.clone(), point.to_vec())
                };
                let mut worst: Option<(SubsetMask, Rational)> = None;
                for i in src.active().iter() {
                    let (b, v) = min_deficit(src, &r_part, &x_part, i)?;
                    match &worst {
                        Some((_, wv)) if &v >= wv => {}
                        _ => worst = Some((b, v)),
                    }
                }
                Ok(match worst {
                    Some((b, v)) if v.is_negative() => {
                        let rhs = if nx > 0 { Rational::zero() } else { src.cond_entropy(b) };
                        masks.push(b);
                        Some(subset_row(src, nx, b, rhs))
                    }
                    _ => None,
                })
            })?
        }
    };
    if !sol.is_optimal() {
        panic!("{what} solve unexpectedly reported {:?}", sol.status);
    }
    Ok((sol, masks))
}

fn rco_internal(
    src: &HypergraphSource,
    opts: &CapacityOptions,
) -> Result<(Rational, Vec<Rational>, FractionalAssignment)> {
    let n = src.vertex_count();
    let mut lp = LinearProgram::new(Sense::Min, n);
    lp.set_objective(vec![Rational::one(); n]);
    for j in 0..n {
        if !opts.nonneg_rates {
            lp.set_free(j);
        }
    }
    if src.active().len() == 1 {
        // No subset row touches the lone active vertex, so pin its rate at
        // zero to keep the program bounded.
        let a = src.active().iter().next().unwrap();
        lp.set_lower(a, Some(Rational::zero()));
    }
    let (sol, masks) = solve_family(src, &mut lp, 0, opts, "omniscience row family")?;
    let value = sol.value.clone().unwrap();
    let lambda = FractionalAssignment::partition(
        src,
        masks.iter().cloned().zip(sol.duals.iter().cloned()),
    )?;
    // Dual objective must reproduce the optimum exactly.
    let dual_value: Rational = lambda
        .iter()
        .map(|(b, w)| w * &src.cond_entropy(b))
        .sum();
    assert_eq!(dual_value, value, "omniscience duality gap");
    Ok((value, sol.point, lambda))
}

/// Smallest total discussion rate for omniscience, with an optimal rate
/// vector. Rates are sign-free; subset rows already keep them nonnegative
/// when at least two users are active.
pub fn rco(source: &HypergraphSource, opts: &CapacityOptions) -> Result<(Rational, Vec<Rational>)> {
    let src = prepared(source)?;
    let (value, point, _) = rco_internal(&src, opts)?;
    Ok((value, point))
}

/// Omniscience optimum together with the dual fractional partition. The
/// dual needs at least two active users to be a partition at all.
pub fn rco_with_dual(
    source: &HypergraphSource,
    opts: &CapacityOptions,
) -> Result<(Rational, Vec<Rational>, FractionalAssignment)> {
    let src = prepared(source)?;
    require_two_active(&src, "the omniscience dual")?;
    let (value, point, lambda) = rco_internal(&src, opts)?;
    assert!(lambda.validate(&src), "omniscience dual is not a fractional partition");
    Ok((value, point, lambda))
}

/// Unconstrained secrecy capacity `H(Z_V) - R_CO`, cross-checked against
/// the dual route `I_lambda` at the omniscience dual.
pub fn cs_unconstrained(source: &HypergraphSource, opts: &CapacityOptions) -> Result<Rational> {
    let src = prepared(source)?;
    require_two_active(&src, "the secrecy capacity")?;
    let (value, _, lambda) = rco_internal(&src, opts)?;
    let cs = src.total_entropy() - &value;
    assert_eq!(
        i_lambda(&src, &lambda),
        cs,
        "dual information measure disagrees with the capacity"
    );
    Ok(cs)
}

/// Secrecy capacity under a total discussion budget, with the exact
/// subgradient of the curve at that rate (the dual of the budget row).
pub fn cs_at_rate_with_slope(
    source: &HypergraphSource,
    rate: &Rational,
    opts: &CapacityOptions,
) -> Result<(CapacityPoint, Rational)> {
    let src = prepared(source)?;
    require_two_active(&src, "the constrained secrecy capacity")?;
    if rate.is_negative() {
        return Err(Error::InvalidArgument(
            "the discussion rate must be nonnegative".into(),
        ));
    }
    let m = src.edge_count();
    let n = src.vertex_count();
    let mut lp = LinearProgram::new(Sense::Max, m + n);
    let mut c = vec![Rational::one(); m];
    c.extend(vec![-Rational::one(); n]);
    lp.set_objective(c);
    for (e, edge) in src.edges().iter().enumerate() {
        lp.set_bounds(e, Some(Rational::zero()), Some(edge.weight.clone()));
    }
    for j in 0..n {
        if !opts.nonneg_rates {
            lp.set_free(m + j);
        }
    }
    let mut budget = vec![Rational::zero(); m + n];
    for j in 0..n {
        budget[m + j] = Rational::one();
    }
    lp.push_row(Row::new(budget, Relation::Le, rate.clone()));

    let (sol, masks) = solve_family(&src, &mut lp, m, opts, "constrained capacity row family")?;
    let mu = sol.duals[0].clone();
    assert!(!mu.is_negative(), "budget dual must be nonnegative");
    let scale = (Rational::one() + &mu).recip();
    let lambda = FractionalAssignment::partition(
        &src,
        masks
            .iter()
            .zip(&sol.duals[1..])
            .map(|(b, y)| (*b, -(y * &scale))),
    )?;
    let point = CapacityPoint::checked(
        &src,
        rate.clone(),
        sol.value.clone().unwrap(),
        sol.point[..m].to_vec(),
        sol.point[m..].to_vec(),
        lambda,
    )?;
    Ok((point, mu))
}

/// Secrecy capacity at a total discussion budget.
pub fn cs_at_rate(
    source: &HypergraphSource,
    rate: &Rational,
    opts: &CapacityOptions,
) -> Result<CapacityPoint> {
    cs_at_rate_with_slope(source, rate, opts).map(|(p, _)| p)
}

/// Communication complexity: the smallest total discussion rate at which
/// the key rate `r_k` is achievable, with a witnessing operating point.
/// Requesting more than the unconstrained capacity is an error.
pub fn rs_at_key_rate(
    source: &HypergraphSource,
    r_k: &Rational,
    opts: &CapacityOptions,
) -> Result<(Rational, CapacityPoint)> {
    let src = prepared(source)?;
    require_two_active(&src, "the communication complexity")?;
    if r_k.is_negative() {
        return Err(Error::InvalidArgument(
            "the key rate must be nonnegative".into(),
        ));
    }
    let capacity = cs_unconstrained(&src, opts)?;
    if r_k > &capacity {
        return Err(Error::InfeasibleKeyRate {
            requested: format_rational(r_k),
            capacity: format_rational(&capacity),
        });
    }
    let m = src.edge_count();
    let n = src.vertex_count();
    let mut lp = LinearProgram::new(Sense::Min, m + n);
    let mut c = vec![Rational::zero(); m];
    c.extend(vec![Rational::one(); n]);
    lp.set_objective(c);
    for (e, edge) in src.edges().iter().enumerate() {
        lp.set_bounds(e, Some(Rational::zero()), Some(edge.weight.clone()));
    }
    for j in 0..n {
        if !opts.nonneg_rates {
            lp.set_free(m + j);
        }
    }
    let mut key_row = vec![Rational::one(); m];
    key_row.extend(vec![-Rational::one(); n]);
    lp.push_row(Row::new(key_row, Relation::Ge, r_k.clone()));

    let (sol, masks) = solve_family(&src, &mut lp, m, opts, "communication complexity row family")?;
    let nu = sol.duals[0].clone();
    assert!(!nu.is_negative(), "key-rate dual must be nonnegative");
    let scale = (Rational::one() + &nu).recip();
    let lambda = FractionalAssignment::partition(
        &src,
        masks
            .iter()
            .zip(&sol.duals[1..])
            .map(|(b, y)| (*b, y * &scale)),
    )?;
    let total = sol.value.clone().unwrap();
    let x = sol.point[..m].to_vec();
    let r = sol.point[m..].to_vec();
    let x_sum: Rational = x.iter().sum();
    let key_value = x_sum - &total;
    assert!(&key_value >= r_k, "witness key rate fell below the request");
    let point = CapacityPoint::checked(&src, total.clone(), key_value, x, r, lambda)?;
    Ok((total, point))
}

/// The capacity at zero discussion: total weight of the edges observed by
/// every active user.
pub fn gk_zero_rate(source: &HypergraphSource) -> Result<Rational> {
    let src = prepared(source)?;
    Ok(src
        .spanning_edges()
        .into_iter()
        .map(|e| src.edges()[e].weight.clone())
        .sum())
}

/// Smallest omniscience rate for the source reduced to edge usages `x`
/// (indexed against the adversary-reduced source).
pub fn rho_of_x(source: &HypergraphSource, x: &[Rational]) -> Result<Rational> {
    let src = prepared(source)?;
    if x.len() != src.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "usage vector has length {}, the reduced source has {} edges",
            x.len(),
            src.edge_count()
        )));
    }
    for (e, xe) in x.iter().enumerate() {
        if xe.is_negative() || xe > &src.edges()[e].weight {
            return Err(Error::InvalidArgument(format!(
                "usage of edge {e} lies outside [0, w_e]"
            )));
        }
    }
    let reduced = src.with_weights(x)?;
    let opts = CapacityOptions::default();
    Ok(rco(&reduced, &opts)?.0)
}

/// The decremental reduction at budget `rate`: lowers each edge weight to
/// the optimal usage `x*`. Asserts the achievability postconditions: the
/// reduced source's unconstrained capacity equals `C_S(rate)` and its
/// omniscience rate fits inside the budget.
pub fn optimal_reduced_source(
    source: &HypergraphSource,
    rate: &Rational,
    opts: &CapacityOptions,
) -> Result<ReducedSource> {
    let src = prepared(source)?;
    let point = cs_at_rate(&src, rate, opts)?;
    let reduced = src.with_weights(&point.x)?;
    let reduced_cs = cs_unconstrained(&reduced, opts)?;
    assert_eq!(
        reduced_cs, point.value,
        "reduced source capacity must equal the constrained capacity"
    );
    let (reduced_rco, _) = rco(&reduced, opts)?;
    assert_eq!(
        reduced_rco,
        point.attained_rate(),
        "reduced omniscience rate must match the witness rates"
    );
    assert!(&reduced_rco <= rate, "reduced omniscience rate exceeds the budget");
    Ok(ReducedSource {
        source: reduced,
        x: point.x,
    })
}

/// Upper bound on the capacity under per-user rate caps (`None` = no cap):
/// max of `x(E) - r(V)` with `r_i` at most its cap and the subset rows. The
/// sum-rate version is recovered by spreading a budget across the caps.
pub fn cs_vector_rate_upper_bound(
    source: &HypergraphSource,
    caps: &[Option<Rational>],
    opts: &CapacityOptions,
) -> Result<Rational> {
    let src = prepared(source)?;
    require_two_active(&src, "the vector-rate bound")?;
    let n = src.vertex_count();
    let m = src.edge_count();
    if caps.len() != n {
        return Err(Error::InvalidArgument(format!(
            "cap vector has length {}, the reduced source has {n} users",
            caps.len()
        )));
    }
    if caps.iter().flatten().any(|c| c.is_negative()) {
        return Err(Error::InvalidArgument("rate caps must be nonnegative".into()));
    }
    let mut lp = LinearProgram::new(Sense::Max, m + n);
    let mut c = vec![Rational::one(); m];
    c.extend(vec![-Rational::one(); n]);
    lp.set_objective(c);
    for (e, edge) in src.edges().iter().enumerate() {
        lp.set_bounds(e, Some(Rational::zero()), Some(edge.weight.clone()));
    }
    for j in 0..n {
        let lo = if opts.nonneg_rates {
            Some(Rational::zero())
        } else {
            None
        };
        lp.set_bounds(m + j, lo, caps[j].clone());
    }
    let (sol, _) = solve_family(&src, &mut lp, m, opts, "vector-rate bound row family")?;
    Ok(sol.value.unwrap())
}

/// Traces every breakpoint of the capacity curve by intersecting exact
/// supporting lines: solve at both interval ends, intersect the two
/// supporting lines, query there, and either confirm a single breakpoint or
/// split. Terminates because each split discovers a new segment slope.
pub fn capacity_curve(source: &HypergraphSource, opts: &CapacityOptions) -> Result<CapacityCurve> {
    let src = prepared(source)?;
    require_two_active(&src, "the capacity curve")?;
    let gk = gk_zero_rate(&src)?;
    let cs = cs_unconstrained(&src, opts)?;
    let (rs_total, _) = rs_at_key_rate(&src, &cs, opts)?;

    let query = |rate: &Rational| -> Result<(Rational, Rational, Rational)> {
        let (p, mu) = cs_at_rate_with_slope(&src, rate, opts)?;
        Ok((rate.clone(), p.value, mu))
    };

    let first = query(&Rational::zero())?;
    assert_eq!(first.1, gk, "zero-rate capacity must be the common edge mass");
    if rs_total.is_zero() {
        assert_eq!(gk, cs, "flat curve must already attain the capacity");
        return Ok(CapacityCurve {
            breakpoints: vec![(Rational::zero(), gk)],
            slopes: vec![],
        });
    }
    let last = query(&rs_total)?;
    assert_eq!(last.1, cs, "curve must attain the capacity at its end");

    let mut samples = vec![first.clone(), last.clone()];
    let mut stack = vec![(first, last)];
    let mut guard = 0usize;
    while let Some((a, b)) = stack.pop() {
        guard += 1;
        assert!(guard < 4096, "curve tracing failed to converge");
        if a.2 == b.2 {
            continue; // equal slopes: one segment
        }
        // Intersection of the supporting lines at a and b.
        let rstar = (&b.1 - &a.1 + &a.2 * &a.0 - &b.2 * &b.0) / (&a.2 - &b.2);
        assert!(rstar >= a.0 && rstar <= b.0, "supporting lines cross outside");
        if rstar == a.0 || rstar == b.0 {
            continue; // the lines meet on the curve: a single segment
        }
        let p = query(&rstar)?;
        let on_line = &a.1 + &a.2 * (&rstar - &a.0);
        samples.push(p.clone());
        if p.1 == on_line {
            continue; // the intersection lies on the curve: true breakpoint
        }
        stack.push((a, p.clone()));
        stack.push((p, b));
    }

    samples.sort_by(|p, q| p.0.cmp(&q.0));
    samples.dedup_by(|p, q| {
        if p.0 == q.0 {
            assert_eq!(p.1, q.1, "conflicting curve values at one rate");
            true
        } else {
            false
        }
    });
    // Drop interior samples that sit on a straight stretch.
    let mut breakpoints: Vec<(Rational, Rational)> = Vec::new();
    for s in samples.into_iter().map(|(r, v, _)| (r, v)) {
        while breakpoints.len() >= 2 {
            let p = &breakpoints[breakpoints.len() - 2];
            let q = &breakpoints[breakpoints.len() - 1];
            let lhs = (&q.1 - &p.1) * (&s.0 - &q.0);
            let rhs = (&s.1 - &q.1) * (&q.0 - &p.0);
            if lhs == rhs {
                breakpoints.pop();
            } else {
                break;
            }
        }
        breakpoints.push(s);
    }

    let slopes: Vec<Rational> = breakpoints
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect();
    assert_eq!(breakpoints.first().unwrap(), &(Rational::zero(), gk));
    assert_eq!(breakpoints.last().unwrap(), &(rs_total, cs));
    for s in &slopes {
        assert!(s.is_positive(), "curve slopes must be positive up to the end");
    }
    for w in slopes.windows(2) {
        assert!(w[0] > w[1], "curve must be strictly concave across breakpoints");
    }
    Ok(CapacityCurve {
        breakpoints,
        slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Edge;
    use crate::rat::{rat, rint};

    fn triangle() -> HypergraphSource {
        HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn opts() -> CapacityOptions {
        CapacityOptions::default()
    }

    fn eager() -> CapacityOptions {
        CapacityOptions {
            strategy: SolveStrategy::Eager,
            ..Default::default()
        }
    }

    #[test]
    fn triangle_omniscience() {
        let s = triangle();
        let (v, r) = rco(&s, &opts()).unwrap();
        assert_eq!(v, rat(3, 2));
        assert_eq!(r, vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        let (ve, _) = rco(&s, &eager()).unwrap();
        assert_eq!(ve, rat(3, 2));
        assert_eq!(cs_unconstrained(&s, &opts()).unwrap(), rat(3, 2));
    }

    #[test]
    fn two_users_share_their_bit_for_free() {
        let s = HypergraphSource::numbered_pin(2, &[(0, 1)]).unwrap();
        assert_eq!(rco(&s, &opts()).unwrap().0, rint(0));
        assert_eq!(cs_unconstrained(&s, &opts()).unwrap(), rint(1));
        assert_eq!(gk_zero_rate(&s).unwrap(), rint(1));
        let curve = capacity_curve(&s, &opts()).unwrap();
        assert_eq!(curve.breakpoints(), &[(rint(0), rint(1))]);
        assert!(curve.slopes().is_empty());
        assert_eq!(curve.value_at(&rint(7)), rint(1));
    }

    #[test]
    fn independent_users_must_ship_everything() {
        let edges = (0..3)
            .map(|i| Edge::new(SubsetMask::singleton(i), rint(1)))
            .collect();
        let s = HypergraphSource::numbered(3, edges, SubsetMask::full(3)).unwrap();
        assert_eq!(rco(&s, &opts()).unwrap().0, rint(3));
        assert_eq!(cs_unconstrained(&s, &opts()).unwrap(), rint(0));
    }

    #[test]
    fn nonneg_rate_mode_changes_nothing_with_two_active() {
        let s = triangle();
        let strict = CapacityOptions {
            nonneg_rates: true,
            ..Default::default()
        };
        assert_eq!(rco(&s, &strict).unwrap().0, rat(3, 2));
        assert_eq!(
            cs_at_rate(&s, &rint(1), &strict).unwrap().value,
            cs_at_rate(&s, &rint(1), &opts()).unwrap().value
        );
    }

    #[test]
    fn one_active_user_needs_all_helpers_to_talk() {
        // Helpers 1 and 2 must describe their private parts to user 0.
        let s = HypergraphSource::numbered(
            3,
            vec![
                Edge::new(SubsetMask::from_indices([0, 1]), rint(1)),
                Edge::new(SubsetMask::from_indices([1, 2]), rint(1)),
            ],
            SubsetMask::singleton(0),
        )
        .unwrap();
        let (v, _) = rco(&s, &opts()).unwrap();
        assert_eq!(v, rint(1));
        assert!(cs_unconstrained(&s, &opts()).is_err());
    }

    #[test]
    fn triangle_budgeted_capacity() {
        let s = triangle();
        let p = cs_at_rate(&s, &rint(1), &opts()).unwrap();
        assert_eq!(p.value, rint(1));
        // The witness is one of several optimal vertices; its invariants are
        // asserted by construction, only the totals are pinned here.
        assert_eq!(p.attained_rate(), rint(1));
        assert_eq!(p.x.iter().sum::<Rational>(), rint(2));
        let p0 = cs_at_rate(&s, &rint(0), &opts()).unwrap();
        assert_eq!(p0.value, rint(0));
        let pbig = cs_at_rate(&s, &rint(9), &opts()).unwrap();
        assert_eq!(pbig.value, rat(3, 2));
        let pe = cs_at_rate(&s, &rint(1), &eager()).unwrap();
        assert_eq!(pe.value, rint(1));
    }

    #[test]
    fn triangle_curve_has_one_segment() {
        let s = triangle();
        let curve = capacity_curve(&s, &opts()).unwrap();
        assert_eq!(
            curve.breakpoints(),
            &[(rint(0), rint(0)), (rat(3, 2), rat(3, 2))]
        );
        assert_eq!(curve.slopes(), &[rint(1)]);
        assert_eq!(curve.value_at(&rat(3, 4)), rat(3, 4));
        assert_eq!(curve.value_at(&rint(2)), rat(3, 2));
    }

    #[test]
    fn communication_complexity_inverts_the_curve() {
        let s = triangle();
        let (v, p) = rs_at_key_rate(&s, &rat(3, 2), &opts()).unwrap();
        assert_eq!(v, rat(3, 2));
        assert!(p.value >= rat(3, 2));
        let (v0, _) = rs_at_key_rate(&s, &rint(0), &opts()).unwrap();
        assert_eq!(v0, rint(0));
        let (vh, _) = rs_at_key_rate(&s, &rat(1, 2), &opts()).unwrap();
        assert_eq!(vh, rat(1, 2));
        match rs_at_key_rate(&s, &rint(2), &opts()) {
            Err(Error::InfeasibleKeyRate { requested, capacity }) => {
                assert_eq!(requested, "2");
                assert_eq!(capacity, "3/2");
            }
            other => panic!("expected an infeasible key rate, got {other:?}"),
        }
    }

    #[test]
    fn rho_interpolates_between_zero_and_omniscience() {
        let s = triangle();
        assert_eq!(rho_of_x(&s, &s.weights()).unwrap(), rat(3, 2));
        assert_eq!(rho_of_x(&s, &vec![rint(0); 3]).unwrap(), rint(0));
        assert_eq!(rho_of_x(&s, &vec![rat(2, 3); 3]).unwrap(), rint(1));
        assert!(rho_of_x(&s, &vec![rint(2); 3]).is_err());
    }

    #[test]
    fn reduction_witnesses_the_budgeted_capacity() {
        let s = triangle();
        let red = optimal_reduced_source(&s, &rint(1), &opts()).unwrap();
        assert_eq!(cs_unconstrained(red.source(), &opts()).unwrap(), rint(1));
        assert!(rco(red.source(), &opts()).unwrap().0 <= rint(1));
        let full = optimal_reduced_source(&s, &rat(3, 2), &opts()).unwrap();
        assert_eq!(cs_unconstrained(full.source(), &opts()).unwrap(), rat(3, 2));
    }

    #[test]
    fn zero_rate_point_is_the_spanning_mass() {
        let s = HypergraphSource::numbered(
            3,
            vec![
                Edge::new(SubsetMask::full(3), rat(5, 2)),
                Edge::new(SubsetMask::from_indices([0, 1]), rint(1)),
            ],
            SubsetMask::full(3),
        )
        .unwrap();
        assert_eq!(gk_zero_rate(&s).unwrap(), rat(5, 2));
        assert_eq!(cs_at_rate(&s, &rint(0), &opts()).unwrap().value, rat(5, 2));
        assert_eq!(gk_zero_rate(&triangle()).unwrap(), rint(0));
    }

    #[test]
    fn spanning_edge_only_gives_a_flat_curve() {
        let s = HypergraphSource::numbered(
            2,
            vec![Edge::new(SubsetMask::full(2), rat(5, 2))],
            SubsetMask::full(2),
        )
        .unwrap();
        let curve = capacity_curve(&s, &opts()).unwrap();
        assert_eq!(curve.breakpoints(), &[(rint(0), rat(5, 2))]);
    }

    #[test]
    fn vector_caps_recover_the_named_points() {
        let s = triangle();
        let unc = cs_vector_rate_upper_bound(&s, &[None, None, None], &opts()).unwrap();
        assert_eq!(unc, rat(3, 2));
        let zero = cs_vector_rate_upper_bound(
            &s,
            &[Some(rint(0)), Some(rint(0)), Some(rint(0))],
            &opts(),
        )
        .unwrap();
        assert_eq!(zero, rint(0));
        // Caps at an optimal rate split reproduce the sum-rate value.
        let p = cs_at_rate(&s, &rint(1), &opts()).unwrap();
        let caps: Vec<Option<Rational>> = p.r.iter().cloned().map(Some).collect();
        assert_eq!(
            cs_vector_rate_upper_bound(&s, &caps, &opts()).unwrap(),
            p.value
        );
    }

    #[test]
    fn adversary_pipeline_identity() {
        let s = HypergraphSource::new(
            (1..=4).map(|i| i.to_string()).collect(),
            vec![
                Edge::new(SubsetMask::from_indices([0, 1]), rint(1)),
                Edge::new(SubsetMask::from_indices([1, 2]), rint(1)),
                Edge::new(SubsetMask::from_indices([2, 3]), rint(1)),
                Edge::new(SubsetMask::from_indices([0, 2]), rat(1, 2)),
            ],
            SubsetMask::from_indices([0, 1, 2]),
            SubsetMask::singleton(3),
            [0],
        )
        .unwrap();
        let manual = s.reduce_for_adversaries().unwrap();
        for rate in [rint(0), rat(1, 2), rint(1), rint(3)] {
            let a = cs_at_rate(&s, &rate, &opts()).unwrap();
            let b = cs_at_rate(&manual, &rate, &opts()).unwrap();
            assert_eq!(a.value, b.value);
        }
        assert_eq!(
            rco(&s, &opts()).unwrap().0,
            rco(&manual, &opts()).unwrap().0
        );
    }

    #[test]
    fn lazy_and_eager_agree_on_a_messy_source() {
        let s = HypergraphSource::numbered(
            5,
            vec![
                Edge::new(SubsetMask::from_indices([0, 1, 2]), rat(7, 3)),
                Edge::new(SubsetMask::from_indices([2, 3]), rat(1, 5)),
                Edge::new(SubsetMask::from_indices([0, 3]), rint(2)),
                Edge::new(SubsetMask::from_indices([3, 4]), rat(5, 7)),
                Edge::new(SubsetMask::singleton(1), rat(2, 7)),
                Edge::new(SubsetMask::from_indices([0, 4]), rint(1)),
            ],
            SubsetMask::from_indices([0, 1, 3, 4]),
        )
        .unwrap();
        assert_eq!(rco(&s, &opts()).unwrap().0, rco(&s, &eager()).unwrap().0);
        for rate in [rint(0), rint(1), rint(2), rint(5)] {
            assert_eq!(
                cs_at_rate(&s, &rate, &opts()).unwrap().value,
                cs_at_rate(&s, &rate, &eager()).unwrap().value
            );
        }
        let curve = capacity_curve(&s, &opts()).unwrap();
        for w in curve.breakpoints().windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        }
    }
}
