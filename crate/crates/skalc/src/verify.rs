//! Randomized verification harness: seeded ensembles of small sources,
//! brute-force eager programs that materialize every constraint, and
//! property sweeps that cross-check the production solvers. Any violated
//! property is reported together with a standalone reproduction document
//! in the command-line input format.

use crate::capacity::{
    cs_at_rate, cs_unconstrained, rco, rco_with_dual, CapacityOptions,
};
use crate::exactlp::{LinearProgram, LpSolution, Relation, Row, Sense};
use crate::model::{check_enum, check_partition_enum, Edge, HypergraphSource, SubsetMask};
use crate::partitions::{enumerate_partitions, i_lambda, lambda_from_partition, mmi};
use crate::rat::{rat, Rational};
use crate::Result;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// How the active set of a sampled source is chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ActivePolicy {
    /// Every user is active.
    AllUsers,
    /// A uniformly random subset of at least two users.
    AtLeastTwo,
    /// A fair coin between the two policies above.
    #[default]
    Mixed,
}

/// Deterministic recipe for an ensemble of random hypergraphical sources.
/// The same spec always produces the same sources, and instance `k` can be
/// regenerated on its own.
#[derive(Clone, Debug)]
pub struct RandomEnsembleSpec {
    pub seed: u64,
    /// Inclusive range for the number of users; at least two.
    pub vertices: (usize, usize),
    /// Inclusive range for the number of edges.
    pub edges: (usize, usize),
    /// Largest edge incidence sampled (clipped to the user count).
    pub max_degree: usize,
    /// Weights are `p/q` with `1 <= q <=` this bound and `0 <= p <= 2q`,
    /// so occasional zero weights stress the degenerate paths.
    pub denominator_bound: u64,
    pub active_policy: ActivePolicy,
}

impl Default for RandomEnsembleSpec {
    fn default() -> Self {
        RandomEnsembleSpec {
            seed: 7,
            vertices: (2, 6),
            edges: (1, 10),
            max_degree: 4,
            denominator_bound: 4,
            active_policy: ActivePolicy::Mixed,
        }
    }
}

impl RandomEnsembleSpec {
    pub fn with_seed(seed: u64) -> Self {
        RandomEnsembleSpec {
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        check_enum("ensemble vertex range", self.vertices.1)?;
        if self.vertices.0 < 2 || self.vertices.0 > self.vertices.1 {
            return Err(crate::Error::InvalidArgument(
                "the vertex range must be an interval starting at 2 or more".into(),
            ));
        }
        if self.edges.0 > self.edges.1 {
            return Err(crate::Error::InvalidArgument(
                "the edge range must be a nonempty interval".into(),
            ));
        }
        if self.max_degree == 0 || self.denominator_bound == 0 {
            return Err(crate::Error::InvalidArgument(
                "degree and denominator bounds must be positive".into(),
            ));
        }
        Ok(())
    }

    fn instance_rng(&self, k: usize) -> ChaCha20Rng {
        // Per-instance streams: a failing instance replays without the
        // rest of the ensemble.
        ChaCha20Rng::seed_from_u64(self.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

fn sample_active(rng: &mut ChaCha20Rng, n: usize, policy: ActivePolicy) -> SubsetMask {
    match policy {
        ActivePolicy::AllUsers => SubsetMask::full(n),
        ActivePolicy::AtLeastTwo => {
            let size = rng.random_range(2..=n);
            SubsetMask::from_indices(rand::seq::index::sample(rng, n, size))
        }
        ActivePolicy::Mixed => {
            let all = rng.random_bool(0.5);
            sample_active(
                rng,
                n,
                if all {
                    ActivePolicy::AllUsers
                } else {
                    ActivePolicy::AtLeastTwo
                },
            )
        }
    }
}

/// The `k`-th source of the ensemble, regenerated deterministically.
pub fn sample_instance(spec: &RandomEnsembleSpec, k: usize) -> Result<HypergraphSource> {
    spec.validate()?;
    let rng = &mut spec.instance_rng(k);
    let n = rng.random_range(spec.vertices.0..=spec.vertices.1);
    let edge_count = rng.random_range(spec.edges.0..=spec.edges.1);
    let edges = (0..edge_count)
        .map(|_| {
            let d = rng.random_range(1..=spec.max_degree.min(n));
            let incidence = SubsetMask::from_indices(rand::seq::index::sample(rng, n, d));
            let q = rng.random_range(1..=spec.denominator_bound) as i64;
            let p = rng.random_range(0..=2 * q);
            Edge::new(incidence, rat(p, q))
        })
        .collect();
    let active = sample_active(rng, n, spec.active_policy);
    HypergraphSource::numbered(n, edges, active)
}

/// The `k`-th source of the independent-users ensemble: every user owns one
/// private edge, everyone active. Used for the equality regimes.
pub fn independent_instance(spec: &RandomEnsembleSpec, k: usize) -> Result<HypergraphSource> {
    spec.validate()?;
    let rng = &mut spec.instance_rng(k);
    let n = rng.random_range(spec.vertices.0..=spec.vertices.1);
    let edges = (0..n)
        .map(|i| {
            let q = rng.random_range(1..=spec.denominator_bound) as i64;
            let p = rng.random_range(0..=2 * q);
            Edge::new(SubsetMask::singleton(i), rat(p, q))
        })
        .collect();
    HypergraphSource::numbered(n, edges, SubsetMask::full(n))
}

/// Which full-enumeration program [`eager_lp`] builds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProgramId {
    /// Smallest total omniscience rate.
    Rco,
    /// Constrained capacity at the given total rate budget.
    CsAtRate(Rational),
}

/// Ground truth for the lazy separation solver: the full program with every
/// subset constraint materialized by direct enumeration over the bit masks.
/// Values must agree with the production routines exactly; witnesses may
/// differ at degenerate vertices.
pub fn eager_lp(source: &HypergraphSource, program: &ProgramId) -> Result<LpSolution> {
    let src = source.reduce_for_adversaries()?;
    let n = src.vertex_count();
    check_enum("eager row family", n)?;
    let active = src.active();
    let rows: Vec<SubsetMask> = (1..(1u64 << n))
        .map(SubsetMask)
        .filter(|b| !active.is_subset_of(*b))
        .collect();
    let sol = match program {
        ProgramId::Rco => {
            let mut lp = LinearProgram::new(Sense::Min, n);
            lp.set_objective(vec![Rational::one(); n]);
            for j in 0..n {
                lp.set_free(j);
            }
            if active.len() == 1 {
                lp.set_lower(active.iter().next().unwrap(), Some(Rational::zero()));
            }
            for &b in &rows {
                let mut coeffs = vec![Rational::zero(); n];
                for i in b.iter() {
                    coeffs[i] = Rational::one();
                }
                lp.push_row(Row::new(coeffs, Relation::Ge, src.cond_entropy(b)));
            }
            lp.solve()
        }
        ProgramId::CsAtRate(rate) => {
            let ne = src.edge_count();
            let mut lp = LinearProgram::new(Sense::Max, ne + n);
            let mut obj = vec![Rational::one(); ne];
            obj.extend(vec![-Rational::one(); n]);
            lp.set_objective(obj);
            for (e, edge) in src.edges().iter().enumerate() {
                lp.set_bounds(e, Some(Rational::zero()), Some(edge.weight.clone()));
            }
            for j in 0..n {
                lp.set_free(ne + j);
            }
            let mut budget = vec![Rational::zero(); ne];
            budget.extend(vec![Rational::one(); n]);
            lp.push_row(Row::new(budget, Relation::Le, rate.clone()));
            for &b in &rows {
                let mut coeffs = vec![Rational::zero(); ne + n];
                for e in src.edges_within(b) {
                    coeffs[e] = -Rational::one();
                }
                for i in b.iter() {
                    coeffs[ne + i] = Rational::one();
                }
                lp.push_row(Row::new(coeffs, Relation::Ge, Rational::zero()));
            }
            lp.solve()
        }
    };
    Ok(sol)
}

/// Both duality legs on one source: the omniscience dual must be a valid
/// fractional partition reproducing the primal value, and with everyone
/// active the capacity must equal the multivariate mutual information
/// computed by exhaustive partition search.
pub fn partition_duality_check(source: &HypergraphSource) -> Result<bool> {
    let src = source.reduce_for_adversaries()?;
    let opts = CapacityOptions::default();
    let (value, _, lambda) = rco_with_dual(&src, &opts)?;
    let mut dual_value = Rational::zero();
    for (b, w) in lambda.iter() {
        dual_value += w * &src.cond_entropy(b);
    }
    let mut ok = lambda.validate(&src) && dual_value == value;
    if src.active() == src.full_mask() {
        let (m, _) = mmi(&src)?;
        ok = ok && src.total_entropy() - &value == m;
    }
    Ok(ok)
}

/// One property violation, with everything needed to replay it: the
/// ensemble seed, the instance index, and the offending source rendered in
/// the command-line input format.
#[derive(Clone, Debug)]
pub struct FailureArtifact {
    pub seed: u64,
    pub instance: usize,
    pub what: String,
    pub document: String,
}

/// Outcome of one property sweep.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub what: &'static str,
    pub instances: usize,
    /// Individual property evaluations, summed over instances.
    pub checks: usize,
    /// Smallest value observed where the property is a lower bound
    /// (the Shearer sweep); `None` elsewhere.
    pub min_observed: Option<Rational>,
    pub failures: Vec<FailureArtifact>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn artifact(spec: &RandomEnsembleSpec, k: usize, src: &HypergraphSource, what: String) -> FailureArtifact {
    FailureArtifact {
        seed: spec.seed,
        instance: k,
        what,
        document: crate::cli::render_hypergraph_document(src),
    }
}

/// Primal/dual agreement on every instance of the ensemble.
pub fn duality_sweep(spec: &RandomEnsembleSpec, instances: usize) -> Result<SweepReport> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for k in 0..instances {
        let src = sample_instance(spec, k)?;
        checks += 1;
        if !partition_duality_check(&src)? {
            failures.push(artifact(spec, k, &src, "primal/dual omniscience mismatch".into()));
        }
    }
    Ok(SweepReport {
        what: "duality",
        instances,
        checks,
        min_observed: None,
        failures,
    })
}

/// Nonnegativity of the partition information measure over every
/// partition-induced assignment of every instance; the reported minimum is
/// zero exactly when some instance degenerates to independence.
pub fn shearer_sweep(spec: &RandomEnsembleSpec, instances: usize) -> Result<SweepReport> {
    check_partition_enum("shearer sweep", spec.vertices.1)?;
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut min: Option<Rational> = None;
    for k in 0..instances {
        let src = sample_instance(spec, k)?;
        for p in enumerate_partitions(src.vertex_count())? {
            let Ok(lam) = lambda_from_partition(&src, &p) else {
                continue;
            };
            let v = i_lambda(&src, &lam);
            checks += 1;
            if v.is_negative() {
                failures.push(artifact(
                    spec,
                    k,
                    &src,
                    format!("negative information measure at partition {}", p.describe(&src)),
                ));
            }
            if min.as_ref().is_none_or(|m| &v < m) {
                min = Some(v);
            }
        }
    }
    Ok(SweepReport {
        what: "shearer",
        instances,
        checks,
        min_observed: min,
        failures,
    })
}

fn rate_grid(cs: &Rational) -> Vec<Rational> {
    let mut grid = vec![Rational::zero()];
    if cs.is_positive() {
        for (p, q) in [(1i64, 4i64), (1, 2), (3, 4), (1, 1), (2, 1)] {
            grid.push(cs * rat(p, q));
        }
    }
    grid
}

/// Every budget on the grid must admit a reduced source that witnesses the
/// constrained capacity: same capacity, omniscience within the budget. The
/// postconditions are recomputed here from scratch rather than trusted.
pub fn achievability_sweep(spec: &RandomEnsembleSpec, instances: usize) -> Result<SweepReport> {
    let opts = CapacityOptions::default();
    let mut failures = Vec::new();
    let mut checks = 0;
    for k in 0..instances {
        let src = sample_instance(spec, k)?;
        let cs = cs_unconstrained(&src, &opts)?;
        for r in rate_grid(&cs) {
            let point = cs_at_rate(&src, &r, &opts)?;
            let reduced = src.reduce_for_adversaries()?.with_weights(&point.x)?;
            let reduced_cs = cs_unconstrained(&reduced, &opts)?;
            let (reduced_rco, _) = rco(&reduced, &opts)?;
            checks += 1;
            if reduced_cs != point.value {
                failures.push(artifact(
                    spec,
                    k,
                    &src,
                    format!("reduced capacity {reduced_cs} differs from the budgeted value at R = {r}"),
                ));
            }
            if reduced_rco > r || reduced_rco != point.attained_rate() {
                failures.push(artifact(
                    spec,
                    k,
                    &src,
                    format!("reduced omniscience rate {reduced_rco} breaks the budget R = {r}"),
                ));
            }
        }
    }
    Ok(SweepReport {
        what: "achievability",
        instances,
        checks,
        min_observed: None,
        failures,
    })
}

/// Exact value agreement between the lazy production solvers and the eager
/// full-enumeration programs, for omniscience and along the budget grid.
pub fn equivalence_sweep(spec: &RandomEnsembleSpec, instances: usize) -> Result<SweepReport> {
    let opts = CapacityOptions::default();
    let mut failures = Vec::new();
    let mut checks = 0;
    for k in 0..instances {
        let src = sample_instance(spec, k)?;
        let (lazy_rco, _) = rco(&src, &opts)?;
        let eager = eager_lp(&src, &ProgramId::Rco)?;
        checks += 1;
        if !eager.is_optimal() || eager.value.as_ref() != Some(&lazy_rco) {
            failures.push(artifact(spec, k, &src, "lazy and eager omniscience differ".into()));
        }
        let cs = cs_unconstrained(&src, &opts)?;
        for r in rate_grid(&cs) {
            let lazy = cs_at_rate(&src, &r, &opts)?;
            let eager = eager_lp(&src, &ProgramId::CsAtRate(r.clone()))?;
            checks += 1;
            if !eager.is_optimal() || eager.value.as_ref() != Some(&lazy.value) {
                failures.push(artifact(
                    spec,
                    k,
                    &src,
                    format!("lazy and eager budgeted capacity differ at R = {r}"),
                ));
            }
        }
    }
    Ok(SweepReport {
        what: "equivalence",
        instances,
        checks,
        min_observed: None,
        failures,
    })
}

/// All four sweeps with one spec; reports in a fixed order.
pub fn run_all(spec: &RandomEnsembleSpec, instances: usize) -> Result<Vec<SweepReport>> {
    Ok(vec![
        duality_sweep(spec, instances)?,
        shearer_sweep(spec, instances)?,
        achievability_sweep(spec, instances)?,
        equivalence_sweep(spec, instances)?,
    ])
}
