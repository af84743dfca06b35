//! The bound family around the capacity curve: the lamination bound driven
//! by the best fractional partition, its partition (EP) and vertex-packing
//! (VP) specializations, the degree-based slope bound, and the helper-set
//! lower bound on the rate a helper subset must contribute.
//!
//! Upper bounds compute the exact capacity at the same operating point and
//! assert soundness; reports carry the certificate parameters so a reader
//! can recheck every number.

use crate::capacity::{cs_at_rate, gk_zero_rate, require_two_active, CapacityOptions};
use crate::exactlp::{LinearProgram, LpStatus, Relation, Row, Sense};
use crate::model::{check_enum, key_subsets, HypergraphSource, SubsetMask};
use crate::partitions::{
    enumerate_partitions, i_lambda, lambda_from_partition, lambda_from_weights,
    FractionalAssignment, SetPartition,
};
use crate::rat::{format_rational, rat, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundOutcome {
    Bound(Rational),
    /// The formula leaves its admissible regime for these parameters; the
    /// reason is reported instead of a vacuous number.
    NotApplicable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Upper bound on the capacity at a discussion rate.
    CapacityUpper,
    /// Upper bound on the initial slope of the capacity curve.
    SlopeUpper,
    /// Lower bound on the discussion rate a helper subset must supply.
    HelperRateLower,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    pub outcome: BoundOutcome,
    /// Certificate parameters, formatted for display.
    pub params: Vec<(String, String)>,
    /// Exact quantity at the same operating point, when one is computable.
    pub exact: Option<Rational>,
    /// `bound - exact`; nonnegative for upper bounds.
    pub gap: Option<Rational>,
    /// Set when an equality condition certifies the bound is exact.
    pub tight: Option<bool>,
}

impl BoundReport {
    pub fn value(&self) -> Option<&Rational> {
        match &self.outcome {
            BoundOutcome::Bound(v) => Some(v),
            BoundOutcome::NotApplicable(_) => None,
        }
    }

    fn not_applicable(name: &'static str, kind: BoundKind, reason: String) -> Self {
        BoundReport {
            name,
            kind,
            outcome: BoundOutcome::NotApplicable(reason),
            params: vec![],
            exact: None,
            gap: None,
            tight: None,
        }
    }
}

fn describe_lambda(src: &HypergraphSource, lam: &FractionalAssignment) -> String {
    lam.iter()
        .map(|(b, w)| format!("{} on {}", format_rational(w), src.set_to_string(b)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Builds an upper-bound report: computes the exact capacity at the same
/// rate, the gap, and asserts soundness (and exactness when `tight`).
fn capacity_report(
    name: &'static str,
    src: &HypergraphSource,
    rate: &Rational,
    value: Rational,
    params: Vec<(String, String)>,
    tight: Option<bool>,
) -> Result<BoundReport> {
    let exact = cs_at_rate(src, rate, &CapacityOptions::default())?.value;
    let gap = &value - &exact;
    assert!(!gap.is_negative(), "{name} bound fell below the exact capacity");
    if tight == Some(true) {
        assert!(gap.is_zero(), "{name} bound missed its certified equality");
    }
    Ok(BoundReport {
        name,
        kind: BoundKind::CapacityUpper,
        outcome: BoundOutcome::Bound(value),
        params,
        exact: Some(exact),
        gap: Some(gap),
        tight,
    })
}

/// Indices of the edges missed by at least one active user; the only edges
/// the bound family has to control. Adversary reduction is applied first.
pub fn noncritical_edges(source: &HypergraphSource) -> Result<Vec<usize>> {
    Ok(source.reduce_for_adversaries()?.noncritical_edges())
}

/// The guaranteed coverage coefficient of a fractional partition: 1 when
/// the uncovered edges carry no mass, otherwise the minimum over uncovered
/// edges `e` (zero-weight ones included) of the lambda mass on sets
/// containing `e`.
pub fn alpha(source: &HypergraphSource, lam: &FractionalAssignment) -> Result<Rational> {
    let src = source.reduce_for_adversaries()?;
    if !lam.validate(&src) {
        return Err(Error::InvalidAssignment(
            "alpha needs a valid fractional partition".into(),
        ));
    }
    let crit = src.noncritical_edges();
    let mass: Rational = crit.iter().map(|&e| src.edges()[e].weight.clone()).sum();
    if mass.is_zero() {
        return Ok(Rational::one());
    }
    let mut best: Option<Rational> = None;
    for &e in &crit {
        let incidence = src.edges()[e].incidence;
        let covered: Rational = lam
            .iter()
            .filter(|(b, _)| incidence.is_subset_of(*b))
            .map(|(_, w)| w.clone())
            .sum();
        if best.as_ref().is_none_or(|b| &covered < b) {
            best = Some(covered);
        }
    }
    Ok(best.unwrap())
}

/// Best achievable coverage coefficient and a witnessing fractional
/// partition, by LP over every admissible set. The optimum is always
/// strictly positive: uniform weight on the active singletons and their
/// complements covers each uncovered edge with positive mass.
pub fn max_alpha(source: &HypergraphSource) -> Result<(Rational, FractionalAssignment)> {
    let src = source.reduce_for_adversaries()?;
    require_two_active(&src, "the coverage coefficient")?;
    let n = src.vertex_count();
    let crit = src.noncritical_edges();
    if crit.is_empty() {
        let singles = FractionalAssignment::partition(
            &src,
            (0..n).map(|i| (SubsetMask::singleton(i), Rational::one())),
        )?;
        return Ok((Rational::one(), singles));
    }
    check_enum("coverage family", n)?;
    let family: Vec<SubsetMask> = key_subsets(n, src.active()).collect();
    let nb = family.len();
    let mut lp = LinearProgram::new(Sense::Max, nb + 1);
    lp.set_objective_term(nb, Rational::one());
    lp.set_free(nb);
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); nb + 1];
        for (k, b) in family.iter().enumerate() {
            if b.contains(i) {
                coeffs[k] = Rational::one();
            }
        }
        lp.push_row(Row::new(coeffs, Relation::Eq, Rational::one()));
    }
    for &e in &crit {
        let incidence = src.edges()[e].incidence;
        let mut coeffs = vec![Rational::zero(); nb + 1];
        for (k, b) in family.iter().enumerate() {
            if incidence.is_subset_of(*b) {
                coeffs[k] = Rational::one();
            }
        }
        coeffs[nb] = -Rational::one();
        lp.push_row(Row::new(coeffs, Relation::Ge, Rational::zero()));
    }
    let sol = lp.solve();
    assert!(sol.is_optimal(), "the coverage LP is feasible and bounded");
    let value = sol.value.unwrap();
    let lam = FractionalAssignment::partition(
        &src,
        family.iter().cloned().zip(sol.point.iter().cloned()),
    )?;
    assert!(lam.validate(&src), "coverage witness must be a fractional partition");
    let mass: Rational = crit.iter().map(|&e| src.edges()[e].weight.clone()).sum();
    if !mass.is_zero() {
        assert_eq!(alpha(&src, &lam)?, value, "coverage LP and definition disagree");
    }
    Ok((value, lam))
}

/// The general lamination upper bound `C_S(R) <= gk + (1/alpha* - 1) R`,
/// exact whenever `R` stays below the lightest uncovered edge.
pub fn lamination_bound(source: &HypergraphSource, rate: &Rational) -> Result<BoundReport> {
    let src = source.reduce_for_adversaries()?;
    if rate.is_negative() {
        return Err(Error::InvalidArgument(
            "the discussion rate must be nonnegative".into(),
        ));
    }
    let (astar, lam) = max_alpha(&src)?;
    if astar.is_zero() {
        return Err(Error::InvalidArgument(
            "the lamination slope is undefined: the best coverage coefficient is zero".into(),
        ));
    }
    let gk = gk_zero_rate(&src)?;
    let slope = astar.recip() - Rational::one();
    let value = &gk + &slope * rate;
    let crit = src.noncritical_edges();
    let min_weight = crit
        .iter()
        .map(|&e| src.edges()[e].weight.clone())
        .min();
    let tight = min_weight.as_ref().is_none_or(|m| rate <= m);
    let mut params = vec![
        ("alpha".into(), format_rational(&astar)),
        ("slope".into(), format_rational(&slope)),
        ("lambda".into(), describe_lambda(&src, &lam)),
    ];
    let zero_weight = crit
        .iter()
        .filter(|&&e| src.edges()[e].weight.is_zero())
        .count();
    if zero_weight > 0 {
        // Zero-weight uncovered edges still participate in the coverage
        // minimum and can drag alpha down; surface that in the report.
        params.push(("zero-weight uncovered edges".into(), zero_weight.to_string()));
    }
    capacity_report("lamination", &src, rate, value, params, Some(tight))
}

/// The partition specialization: coverage comes in closed form from how
/// many blocks each uncovered edge meets. Only defined when every user is
/// active. The closed form is asserted against [`alpha`] exactly.
pub fn ep_bound(
    source: &HypergraphSource,
    p: &SetPartition,
    rate: &Rational,
) -> Result<BoundReport> {
    let src = source.reduce_for_adversaries()?;
    if src.active() != src.full_mask() {
        return Err(Error::InvalidArgument(
            "the partition bound needs every user active".into(),
        ));
    }
    if rate.is_negative() {
        return Err(Error::InvalidArgument(
            "the discussion rate must be nonnegative".into(),
        ));
    }
    let lam = lambda_from_partition(&src, p)?;
    let a = ep_alpha(&src, p);
    assert_eq!(
        a,
        alpha(&src, &lam)?,
        "closed-form coverage disagrees with the definition"
    );
    let params = vec![
        ("partition".into(), p.describe(&src)),
        ("alpha".into(), format_rational(&a)),
    ];
    if !a.is_positive() {
        let mut report = BoundReport::not_applicable(
            "partition",
            BoundKind::CapacityUpper,
            "the partition's coverage coefficient is not positive".into(),
        );
        report.params = params;
        return Ok(report);
    }
    let gk = gk_zero_rate(&src)?;
    let value = gk + (a.recip() - Rational::one()) * rate;
    capacity_report("partition", &src, rate, value, params, None)
}

/// Closed-form coverage of a partition: with `m_e` blocks meeting the
/// uncovered edge `e`, the complements of the untouched blocks cover `e`,
/// giving `(|P| - max_e m_e) / (|P| - 1)`; 1 when nothing is uncovered.
fn ep_alpha(src: &HypergraphSource, p: &SetPartition) -> Rational {
    let crit = src.noncritical_edges();
    let mass: Rational = crit.iter().map(|&e| src.edges()[e].weight.clone()).sum();
    if mass.is_zero() {
        return Rational::one();
    }
    let worst = crit
        .iter()
        .map(|&e| {
            p.blocks()
                .iter()
                .filter(|c| c.intersects(src.edges()[e].incidence))
                .count()
        })
        .max()
        .unwrap();
    rat((p.len() - worst) as i64, (p.len() - 1) as i64)
}

/// The vertex-packing specialization: solve the fractional packing LP over
/// the active users, turn its optimizer into a fractional partition, and
/// bound the slope by `1/(tau - 1)`. Not applicable when the packing number
/// stays at 1; an unbounded packing (an active user outside every edge)
/// collapses the bound to the zero-rate value.
pub fn vp_bound(source: &HypergraphSource, rate: &Rational) -> Result<BoundReport> {
    let src = source.reduce_for_adversaries()?;
    require_two_active(&src, "the packing bound")?;
    if rate.is_negative() {
        return Err(Error::InvalidArgument(
            "the discussion rate must be nonnegative".into(),
        ));
    }
    let n = src.vertex_count();
    let gk = gk_zero_rate(&src)?;
    let mut lp = LinearProgram::new(Sense::Max, n);
    lp.set_objective(vec![Rational::one(); n]);
    for j in 0..n {
        if !src.active().contains(j) {
            lp.set_bounds(j, Some(Rational::zero()), Some(Rational::zero()));
        }
    }
    for edge in src.edges() {
        let mut coeffs = vec![Rational::zero(); n];
        for i in edge.incidence.iter() {
            coeffs[i] = Rational::one();
        }
        lp.push_row(Row::new(coeffs, Relation::Le, Rational::one()));
    }
    let sol = lp.solve();
    if sol.status == LpStatus::Unbounded {
        // Some active user sits outside every edge; its observation is
        // constant, so the capacity cannot exceed the zero-rate value.
        let isolated = src
            .active()
            .iter()
            .find(|&i| src.edges().iter().all(|e| !e.incidence.contains(i)))
            .expect("an unbounded packing implies an isolated active user");
        let mut u = vec![Rational::zero(); n];
        u[isolated] = Rational::one();
        let lam = lambda_from_weights(&src, &u)?;
        assert_eq!(alpha(&src, &lam)?, Rational::one());
        let params = vec![
            ("tau".into(), "unbounded".into()),
            (
                "isolated user".into(),
                src.label(isolated).to_string(),
            ),
            ("lambda".into(), describe_lambda(&src, &lam)),
        ];
        return capacity_report("packing", &src, rate, gk, params, None);
    }
    assert!(sol.is_optimal(), "the packing LP is feasible");
    let tau = sol.value.unwrap();
    assert!(tau >= Rational::one(), "a single active user already packs 1");
    if tau == Rational::one() {
        return Ok(BoundReport::not_applicable(
            "packing",
            BoundKind::CapacityUpper,
            "the fractional packing number does not exceed 1".into(),
        ));
    }
    let u = sol.point;
    let lam = lambda_from_weights(&src, &u)?;
    let a = alpha(&src, &lam)?;
    assert!(
        a >= Rational::one() - tau.recip(),
        "packing witness must cover at least 1 - 1/tau"
    );
    let value = &gk + rate / (&tau - Rational::one());
    let params = vec![
        ("tau".into(), format_rational(&tau)),
        (
            "u".into(),
            u.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        ),
        ("lambda".into(), describe_lambda(&src, &lam)),
    ];
    capacity_report("packing", &src, rate, value, params, None)
}

/// Degree-based cap on the capacity curve's slope: with `d` the largest
/// uncovered edge size, the slope never exceeds
/// `(min{d,|A|} - 1) / max{|A| - d, 1}`; 0 when nothing is uncovered. This
/// dominates the exact best lamination slope.
pub fn slope_bound(source: &HypergraphSource) -> Result<Rational> {
    let src = source.reduce_for_adversaries()?;
    let crit = src.noncritical_edges();
    if crit.is_empty() {
        return Ok(Rational::zero());
    }
    let d = crit
        .iter()
        .map(|&e| src.edges()[e].incidence.len() as i64)
        .max()
        .unwrap();
    let a = src.active().len() as i64;
    Ok(rat(d.min(a) - 1, (a - d).max(1)))
}

fn helper_context(
    src: &HypergraphSource,
    s: SubsetMask,
) -> Result<HypergraphSource> {
    if !s.is_subset_of(src.full_mask()) {
        return Err(Error::InvalidArgument(
            "the helper set mentions users beyond the source".into(),
        ));
    }
    let rem_active = src.active().minus(s);
    if rem_active.len() < 2 {
        return Err(Error::InvalidArgument(
            "at least two active users must remain outside the helper set".into(),
        ));
    }
    src.restrict(src.full_mask().minus(s), rem_active)
}

fn helper_value(
    restricted: &HypergraphSource,
    lam: &FractionalAssignment,
    key_rate: &Rational,
) -> Result<(Rational, Rational, Rational)> {
    let sigma = lam.total();
    if sigma <= Rational::one() {
        return Err(Error::InvalidArgument(
            "degenerate assignment: its total weight must exceed 1".into(),
        ));
    }
    let i_val = i_lambda(restricted, lam);
    let raw = (key_rate - &i_val) / (&sigma - Rational::one());
    let value = if raw.is_negative() { Rational::zero() } else { raw };
    Ok((value, sigma, i_val))
}

/// Lower bound on the total rate the helper set `s` must contribute for the
/// others to reach key rate `key_rate`, from a fractional partition of the
/// source with the helpers removed. Clamped at zero: negative values carry
/// no information.
pub fn helper_set_bound(
    source: &HypergraphSource,
    s: SubsetMask,
    lam: &FractionalAssignment,
    key_rate: &Rational,
) -> Result<BoundReport> {
    let src = source.reduce_for_adversaries()?;
    if key_rate.is_negative() {
        return Err(Error::InvalidArgument("the key rate must be nonnegative".into()));
    }
    let restricted = helper_context(&src, s)?;
    if !lam.validate(&restricted) {
        return Err(Error::InvalidAssignment(
            "the assignment is not a fractional partition of the source without the helpers"
                .into(),
        ));
    }
    let (value, sigma, i_val) = helper_value(&restricted, lam, key_rate)?;
    Ok(BoundReport {
        name: "helper-set",
        kind: BoundKind::HelperRateLower,
        outcome: BoundOutcome::Bound(value),
        params: vec![
            ("S".into(), src.set_to_string(s)),
            ("sigma".into(), format_rational(&sigma)),
            ("residual information".into(), format_rational(&i_val)),
            ("lambda'".into(), describe_lambda(&restricted, lam)),
        ],
        exact: None,
        gap: None,
        tight: None,
    })
}

/// Best helper-set bound over every fractional partition induced by a set
/// partition of the remaining users. A lower bound on the best possible
/// bound: extreme fractional partitions beyond set partitions are not
/// searched.
pub fn best_helper_set_bound(
    source: &HypergraphSource,
    s: SubsetMask,
    key_rate: &Rational,
) -> Result<BoundReport> {
    let src = source.reduce_for_adversaries()?;
    if key_rate.is_negative() {
        return Err(Error::InvalidArgument("the key rate must be nonnegative".into()));
    }
    let restricted = helper_context(&src, s)?;
    let mut best: Option<(Rational, Rational, Rational, SetPartition, FractionalAssignment)> =
        None;
    for p in enumerate_partitions(restricted.vertex_count())? {
        let Ok(lam) = lambda_from_partition(&restricted, &p) else {
            continue; // a block misses the remaining active users
        };
        let (value, sigma, i_val) = helper_value(&restricted, &lam, key_rate)?;
        if best.as_ref().is_none_or(|(b, ..)| &value > b) {
            best = Some((value, sigma, i_val, p, lam));
        }
    }
    let (value, sigma, i_val, p, lam) =
        best.expect("two remaining active users admit a partition");
    Ok(BoundReport {
        name: "helper-set",
        kind: BoundKind::HelperRateLower,
        outcome: BoundOutcome::Bound(value),
        params: vec![
            ("S".into(), src.set_to_string(s)),
            ("partition".into(), p.describe(&restricted)),
            ("sigma".into(), format_rational(&sigma)),
            ("residual information".into(), format_rational(&i_val)),
            ("lambda'".into(), describe_lambda(&restricted, &lam)),
            ("search".into(), "partition-induced assignments".into()),
        ],
        exact: None,
        gap: None,
        tight: None,
    })
}

/// The standard upper-bound family at one rate: lamination, the best
/// partition bound (when every user is active), the packing bound, and the
/// slope cap. Helper-set bounds need extra parameters and are reported
/// separately.
pub fn standard_family(source: &HypergraphSource, rate: &Rational) -> Result<Vec<BoundReport>> {
    let src = source.reduce_for_adversaries()?;
    require_two_active(&src, "the bound family")?;
    let mut out = Vec::new();
    out.push(lamination_bound(&src, rate)?);

    if src.active() == src.full_mask() {
        match enumerate_partitions(src.vertex_count()) {
            Ok(ps) => {
                // The closed form is cheap: pick the partition with the best
                // coverage first, then build the one full report.
                let best = ps
                    .into_iter()
                    .map(|p| (ep_alpha(&src, &p), p))
                    .max_by(|a, b| a.0.cmp(&b.0));
                match best {
                    Some((a, p)) if a.is_positive() => out.push(ep_bound(&src, &p, rate)?),
                    _ => out.push(BoundReport::not_applicable(
                        "partition",
                        BoundKind::CapacityUpper,
                        "no partition has positive coverage".into(),
                    )),
                }
            }
            Err(Error::SizeLimit { .. }) => out.push(BoundReport::not_applicable(
                "partition",
                BoundKind::CapacityUpper,
                "beyond the partition enumeration limit".into(),
            )),
            Err(e) => return Err(e),
        }
    } else {
        out.push(BoundReport::not_applicable(
            "partition",
            BoundKind::CapacityUpper,
            "needs every user active".into(),
        ));
    }

    out.push(vp_bound(&src, rate)?);

    let d_slope = slope_bound(&src)?;
    let (astar, _) = max_alpha(&src)?;
    let exact_slope = astar.recip() - Rational::one();
    assert!(
        d_slope >= exact_slope,
        "degree slope cap fell below the best lamination slope"
    );
    out.push(BoundReport {
        name: "slope",
        kind: BoundKind::SlopeUpper,
        outcome: BoundOutcome::Bound(d_slope.clone()),
        params: vec![(
            "best lamination slope".into(),
            format_rational(&exact_slope),
        )],
        exact: Some(exact_slope.clone()),
        gap: Some(d_slope - exact_slope),
        tight: None,
    });
    Ok(out)
}
