//! Finite linear sources over GF(2): every user observes a linear function
//! of independent uniform base bits, so all entropies are matrix ranks and
//! every quantity stays exact. Hosts the rank engine, the conversion from
//! hypergraphical sources with integer weights, the omniscience rate for
//! linear sources, the converse bound at an auxiliary linear function `W`,
//! the key-rate lower bound on the communication complexity, and the
//! five-user example separating that lower bound from the true complexity.
//!
//! Auxiliary variables are restricted to deterministic GF(2) linear
//! functions of the base bits; that subclass is enough for the separation
//! example, and no search procedure exists for general auxiliaries.

use crate::exactlp::{LinearProgram, LpStatus, Relation, Row, Sense};
use crate::model::{check_enum, key_subsets, HypergraphSource, SubsetMask, MAX_VERTICES};
use crate::rat::{format_rational, rint, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// Minimal field interface for the rank engine; only GF(2) is instantiated
/// but elimination is written generically.
pub trait Field: Copy + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    /// Multiplicative inverse; panics at zero.
    fn inv(self) -> Self;
    fn is_zero(self) -> bool;
}

/// The two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf2(pub bool);

impl Field for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn add(self, rhs: Self) -> Self {
        Gf2(self.0 ^ rhs.0)
    }
    fn sub(self, rhs: Self) -> Self {
        self.add(rhs)
    }
    fn mul(self, rhs: Self) -> Self {
        Gf2(self.0 & rhs.0)
    }
    fn inv(self) -> Self {
        assert!(self.0, "zero has no inverse");
        self
    }
    fn is_zero(self) -> bool {
        !self.0
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    cols: usize,
    rows: Vec<Vec<F>>,
}

pub type Gf2Matrix = Matrix<Gf2>;

/// An auxiliary variable: a linear function of the base bits, one row per
/// output bit. Rows may be dependent; ranks are computed, never assumed.
pub type AuxiliaryW = Gf2Matrix;

impl<F: Field> Matrix<F> {
    pub fn new(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(
                "matrix rows must all have the declared width".into(),
            ));
        }
        Ok(Matrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        Matrix { cols, rows: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        Matrix { cols: n, rows }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Vertical concatenation; all parts must share the width.
    pub fn stacked(parts: &[&Matrix<F>]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::InvalidArgument(
                "stacked matrices must share their width".into(),
            ));
        }
        Ok(Matrix {
            cols,
            rows: parts.iter().flat_map(|m| m.rows.iter().cloned()).collect(),
        })
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = a[rank][col].inv();
            for x in a[rank].iter_mut() {
                *x = x.mul(inv);
            }
            for r in 0..a.len() {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for c in col..self.cols {
                        let s = a[rank][c].mul(f);
                        a[r][c] = a[r][c].sub(s);
                    }
                }
            }
            rank += 1;
            if rank == a.len() {
                break;
            }
        }
        rank
    }
}

impl Gf2Matrix {
    /// Rows given as 0/1 bytes; anything nonzero counts as 1.
    pub fn from_bits(cols: usize, rows: &[&[u8]]) -> Result<Self> {
        Matrix::new(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&b| Gf2(b != 0)).collect())
                .collect(),
        )
    }
}

/// GF(2) rank of a vertical stack, in exact bits. Entropies of linear
/// sources are ranks; conditional entropies and mutual informations follow
/// by rank differences.
pub fn rank_entropy(stack: &[&Gf2Matrix]) -> Result<Rational> {
    Ok(rint(Gf2Matrix::stacked(stack)?.rank() as i64))
}

#[derive(Clone, Debug)]
pub struct LinearSource {
    base_bits: usize,
    labels: Vec<String>,
    observers: Vec<Gf2Matrix>,
    active: SubsetMask,
    wiretap: Option<Gf2Matrix>,
}

impl LinearSource {
    pub fn new(
        labels: Vec<String>,
        base_bits: usize,
        observers: Vec<Gf2Matrix>,
        active: SubsetMask,
        wiretap: Option<Gf2Matrix>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || observers.len() != n {
            return Err(Error::InvalidSource(
                "need one observation matrix per labeled user".into(),
            ));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidSource(format!(
                "at most {MAX_VERTICES} users are supported"
            )));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            if !labels.iter().all(|l| seen.insert(l)) {
                return Err(Error::InvalidSource("user labels must be unique".into()));
            }
        }
        if observers.iter().any(|m| m.cols() != base_bits) {
            return Err(Error::InvalidSource(
                "every observation matrix needs one column per base bit".into(),
            ));
        }
        if let Some(w) = &wiretap {
            if w.cols() != base_bits {
                return Err(Error::InvalidSource(
                    "the wiretap matrix needs one column per base bit".into(),
                ));
            }
        }
        if active.is_empty() || !active.is_subset_of(SubsetMask::full(n)) {
            return Err(Error::InvalidSource(
                "the active set must be a nonempty subset of the users".into(),
            ));
        }
        Ok(LinearSource {
            base_bits,
            labels,
            observers,
            active,
            wiretap,
        })
    }

    pub fn numbered(
        base_bits: usize,
        observers: Vec<Gf2Matrix>,
        active: SubsetMask,
    ) -> Result<Self> {
        let labels = (1..=observers.len()).map(|i| i.to_string()).collect();
        LinearSource::new(labels, base_bits, observers, active, None)
    }

    pub fn user_count(&self) -> usize {
        self.observers.len()
    }

    pub fn base_bits(&self) -> usize {
        self.base_bits
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn observer(&self, i: usize) -> &Gf2Matrix {
        &self.observers[i]
    }

    pub fn active(&self) -> SubsetMask {
        self.active
    }

    pub fn wiretap(&self) -> Option<&Gf2Matrix> {
        self.wiretap.as_ref()
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.user_count())
    }

    fn stack(&self, b: SubsetMask) -> Gf2Matrix {
        let parts: Vec<&Gf2Matrix> = b.iter().map(|i| &self.observers[i]).collect();
        if parts.is_empty() {
            return Gf2Matrix::empty(self.base_bits);
        }
        Gf2Matrix::stacked(&parts).unwrap()
    }

    pub fn entropy(&self, b: SubsetMask) -> Rational {
        rint(self.stack(b).rank() as i64)
    }

    pub fn total_entropy(&self) -> Rational {
        self.entropy(self.full_mask())
    }

    /// `H(Z_B | Z_{V\B})` by the rank difference.
    pub fn cond_entropy(&self, b: SubsetMask) -> Rational {
        self.total_entropy() - self.entropy(self.full_mask().minus(b))
    }

    /// `H(W | Z_S) = rank(W, Z_S) - rank(Z_S)`.
    pub fn cond_entropy_of(&self, w: &Gf2Matrix, given: SubsetMask) -> Result<Rational> {
        let zs = self.stack(given);
        let joint = Gf2Matrix::stacked(&[w, &zs])?;
        Ok(rint((joint.rank() - zs.rank()) as i64))
    }

    /// `I(W ∧ Z_B | Z_{V\B}) = H(W | Z_{V\B}) - H(W | Z_V)`.
    pub fn cmi_with(&self, w: &Gf2Matrix, b: SubsetMask) -> Result<Rational> {
        let rest = self.full_mask().minus(b);
        Ok(self.cond_entropy_of(w, rest)? - self.cond_entropy_of(w, self.full_mask())?)
    }

    /// `I(W ∧ Z_V) = H(W) - H(W | Z_V)`.
    pub fn mutual_with(&self, w: &Gf2Matrix) -> Result<Rational> {
        if w.cols() != self.base_bits {
            return Err(Error::InvalidArgument(
                "the auxiliary matrix needs one column per base bit".into(),
            ));
        }
        Ok(rint(w.rank() as i64) - self.cond_entropy_of(w, self.full_mask())?)
    }

    fn reject_wiretap(&self, what: &str) -> Result<()> {
        if self.wiretap.is_some() {
            return Err(Error::InvalidArgument(format!(
                "{what} is defined for sources without wiretapper side information"
            )));
        }
        Ok(())
    }
}

/// Converts a hypergraphical source with nonnegative integer weights into
/// an explicit linear source: each edge contributes its weight in fresh
/// base bits, copied to every incident user. Adversary reduction is applied
/// first, so the result is always plain.
pub fn hypergraph_to_linear(source: &HypergraphSource) -> Result<LinearSource> {
    let src = source.reduce_for_adversaries()?;
    let mut bit_counts = Vec::with_capacity(src.edge_count());
    for (e, edge) in src.edges().iter().enumerate() {
        if !edge.weight.is_integer() || edge.weight.is_negative() {
            return Err(Error::NonIntegerWeight {
                index: e,
                weight: format_rational(&edge.weight),
            });
        }
        let bits = usize::try_from(edge.weight.to_integer()).map_err(|_| {
            Error::InvalidArgument(format!("edge {e} carries too many bits to materialize"))
        })?;
        bit_counts.push(bits);
    }
    let m: usize = bit_counts.iter().sum();
    if m > 1 << 16 {
        return Err(Error::InvalidArgument(
            "the source carries too many bits to materialize".into(),
        ));
    }
    let mut starts = Vec::with_capacity(bit_counts.len());
    let mut acc = 0usize;
    for &b in &bit_counts {
        starts.push(acc);
        acc += b;
    }
    let observers = (0..src.vertex_count())
        .map(|i| {
            let mut rows = Vec::new();
            for (e, edge) in src.edges().iter().enumerate() {
                if edge.incidence.contains(i) {
                    for k in 0..bit_counts[e] {
                        let mut row = vec![Gf2::zero(); m];
                        row[starts[e] + k] = Gf2::one();
                        rows.push(row);
                    }
                }
            }
            Matrix { cols: m, rows }
        })
        .collect();
    LinearSource::new(
        src.labels().to_vec(),
        m,
        observers,
        src.active(),
        None,
    )
}

/// Shared rank-LP core: min `r(V)` over sign-free `r` with
/// `r(B) >= rhs(B)` for every `B` not covering the active set, plus
/// optional per-user caps. The full row family is materialized.
fn rank_lp(
    src: &LinearSource,
    rhs: impl Fn(SubsetMask) -> Result<Rational>,
    caps: Option<&[Option<Rational>]>,
    what: &'static str,
) -> Result<Rational> {
    let n = src.user_count();
    check_enum(what, n)?;
    let mut lp = LinearProgram::new(Sense::Min, n);
    lp.set_objective(vec![Rational::one(); n]);
    for j in 0..n {
        lp.set_free(j);
    }
    if src.active().len() == 1 {
        // No row touches the lone active user; pin its rate at zero to keep
        // the program bounded.
        let a = src.active().iter().next().unwrap();
        lp.set_lower(a, Some(Rational::zero()));
    }
    if let Some(caps) = caps {
        if caps.len() != n {
            return Err(Error::InvalidArgument(format!(
                "cap vector has length {}, the source has {n} users",
                caps.len()
            )));
        }
        for (j, cap) in caps.iter().enumerate() {
            lp.set_upper(j, cap.clone());
        }
    }
    for b in key_subsets(n, src.active()) {
        let mut coeffs = vec![Rational::zero(); n];
        for i in b.iter() {
            coeffs[i] = Rational::one();
        }
        lp.push_row(Row::new(coeffs, Relation::Ge, rhs(b)?));
    }
    let sol = lp.solve();
    match sol.status {
        LpStatus::Optimal => Ok(sol.value.unwrap()),
        LpStatus::Infeasible => Err(Error::InvalidArgument(
            "the rate caps make the rate region empty".into(),
        )),
        LpStatus::Unbounded => panic!("{what} rate program cannot be unbounded"),
    }
}

/// Smallest total omniscience rate for a linear source, with conditional
/// entropies computed as rank differences.
pub fn rco_linear(src: &LinearSource) -> Result<Rational> {
    src.reject_wiretap("the omniscience rate")?;
    rank_lp(
        src,
        |b| Ok(src.cond_entropy(b)),
        None,
        "linear omniscience row family",
    )
}

/// `rho(W)`: smallest total rate whose subsets cover the conditional
/// information the users hold about `W`.
pub fn rho_of_w(src: &LinearSource, w: &AuxiliaryW) -> Result<Rational> {
    src.reject_wiretap("the auxiliary rate requirement")?;
    if w.cols() != src.base_bits() {
        return Err(Error::InvalidArgument(
            "the auxiliary matrix needs one column per base bit".into(),
        ));
    }
    rank_lp(src, |b| src.cmi_with(w, b), None, "auxiliary row family")
}

/// Converse bound on the capacity under per-user rate caps, evaluated at
/// the auxiliary `W`: `I(W ∧ Z_V)` minus the cheapest capped rate vector
/// covering every subset's conditional information about `W`. Conflicting
/// caps (below the implied nonnegative rates) are an error.
pub fn theorem1_bound(
    src: &LinearSource,
    w: &AuxiliaryW,
    caps: &[Option<Rational>],
) -> Result<Rational> {
    src.reject_wiretap("the converse bound")?;
    let mutual = src.mutual_with(w)?;
    let spent = rank_lp(
        src,
        |b| src.cmi_with(w, b),
        Some(caps),
        "converse row family",
    )?;
    Ok(mutual - spent)
}

/// Lower bound on the communication complexity at key rate `r_k` through
/// the auxiliary `W`: feasible when `W` can still deliver the key rate
/// (`I(W ∧ Z_V) - rho(W) >= r_k`), in which case any scheme routed through
/// `W` talks at least `I(W ∧ Z_V) - r_k`. Returns `(false, 0)` otherwise.
pub fn rs_lower_bound_at_w(
    src: &LinearSource,
    w: &AuxiliaryW,
    r_k: &Rational,
) -> Result<(bool, Rational)> {
    if r_k.is_negative() {
        return Err(Error::InvalidArgument("the key rate must be nonnegative".into()));
    }
    let mutual = src.mutual_with(w)?;
    let rho = rho_of_w(src, w)?;
    if &(&mutual - &rho) >= r_k {
        Ok((true, mutual - r_k))
    } else {
        Ok((false, Rational::zero()))
    }
}

/// The five-user separating example: four base bits `a,b,c,d`; users see
/// `a`, `b`, `c`, `(a,b,d)` and `(a,b,c+d)`; everyone is active.
pub fn counterexample_source() -> LinearSource {
    let z1 = Gf2Matrix::from_bits(4, &[&[1, 0, 0, 0]]).unwrap();
    let z2 = Gf2Matrix::from_bits(4, &[&[0, 1, 0, 0]]).unwrap();
    let z3 = Gf2Matrix::from_bits(4, &[&[0, 0, 1, 0]]).unwrap();
    let z4 = Gf2Matrix::from_bits(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap();
    let z5 = Gf2Matrix::from_bits(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]]).unwrap();
    LinearSource::numbered(4, vec![z1, z2, z3, z4, z5], SubsetMask::full(5)).unwrap()
}

/// One auxiliary probed by the separation report.
#[derive(Clone, Debug)]
pub struct AuxiliaryProbe {
    pub label: String,
    pub w: AuxiliaryW,
    pub feasible: bool,
    pub value: Rational,
}

/// The separation demonstrated end to end on the five-user example.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub source: LinearSource,
    pub total_entropy: Rational,
    pub rco: Rational,
    pub capacity: Rational,
    /// The true communication complexity at full key rate. For this source
    /// it is known to equal the omniscience rate; it is not recomputed here
    /// (no general algorithm covers arbitrary linear sources).
    pub rs_stated: Rational,
    /// Key-rate lower bounds through each probed auxiliary, at the full key
    /// rate. The headline probe `(a, b, c)` stays strictly below
    /// `rs_stated`: no bound of this family can certify the complexity.
    pub probes: Vec<AuxiliaryProbe>,
    pub headline: usize,
}

impl CounterexampleReport {
    pub fn headline_probe(&self) -> &AuxiliaryProbe {
        &self.probes[self.headline]
    }

    /// `rs_stated` minus the headline bound; positive, that is the point.
    pub fn gap(&self) -> Rational {
        &self.rs_stated - &self.headline_probe().value
    }
}

/// Builds [`counterexample_source`], computes its omniscience rate and
/// capacity, probes the key-rate lower bound at several auxiliaries, and
/// asserts every number the example is known for.
pub fn counterexample_report() -> Result<CounterexampleReport> {
    let src = counterexample_source();
    let total = src.total_entropy();
    let rco = rco_linear(&src)?;
    let capacity = &total - &rco;
    let abc = Gf2Matrix::from_bits(
        4,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
    )
    .unwrap();
    let full = Gf2Matrix::identity(4);
    let zero = Gf2Matrix::empty(4);
    let mut probes = Vec::new();
    for (label, w) in [
        ("(a, b, c)".to_string(), abc),
        ("full base (a, b, c, d)".to_string(), full),
        ("empty".to_string(), zero),
    ] {
        let (feasible, value) = rs_lower_bound_at_w(&src, &w, &capacity)?;
        probes.push(AuxiliaryProbe {
            label,
            w,
            feasible,
            value,
        });
    }
    assert_eq!(total, rint(4));
    assert_eq!(rco, rint(3));
    assert_eq!(capacity, rint(1));
    assert!(probes[0].feasible);
    assert_eq!(probes[0].value, rint(2));
    let report = CounterexampleReport {
        source: src,
        total_entropy: total,
        rco: rco.clone(),
        capacity,
        rs_stated: rco,
        probes,
        headline: 0,
    };
    assert!(report.gap().is_positive(), "the separation must be strict");
    Ok(report)
}
