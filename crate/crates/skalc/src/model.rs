//! Hypergraphical source model.
//!
//! A source is a finite vertex set (users), a list of weighted hyperedges,
//! an active set `A` of at least one user (capacity operations need two), and
//! optional adversaries: a set `D` of untrusted users and a set of wiretapped
//! edge indices. Each edge carries an independent random variable whose
//! entropy is the edge weight; user `i` observes every edge containing `i`.
//!
//! Entropies are linear in the weights:
//! `H(Z_B) = sum of w_e over edges meeting B` and
//! `H(Z_B | Z_{V\B}) = sum of w_e over edges inside B`.

use crate::rat::Rational;
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

/// Hard cap imposed by the bitmask representation.
pub const MAX_VERTICES: usize = 63;

/// Default cap for operations that enumerate all vertex subsets.
pub const DEFAULT_ENUM_LIMIT: usize = 12;

/// Default cap for operations that enumerate set partitions.
pub const PARTITION_LIMIT: usize = 10;

/// Environment variable overriding [`DEFAULT_ENUM_LIMIT`].
pub const ENUM_LIMIT_ENV: &str = "SKALC_ENUM_LIMIT";

static ENUM_WARNING: AtomicBool = AtomicBool::new(false);

/// Current subset-enumeration limit. Reading an override emits a one-time
/// warning on stderr: the caller has asked for exponentially more work.
pub fn enum_limit() -> usize {
    match std::env::var(ENUM_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
    {
        Some(v) => {
            if !ENUM_WARNING.swap(true, Ordering::Relaxed) {
                eprintln!(
                    "warning: {ENUM_LIMIT_ENV}={v} overrides the default enumeration limit \
                     ({DEFAULT_ENUM_LIMIT}); subset enumeration is exponential in the vertex count"
                );
            }
            v.min(MAX_VERTICES)
        }
        None => DEFAULT_ENUM_LIMIT,
    }
}

pub(crate) fn check_enum(what: &'static str, n: usize) -> Result<()> {
    let limit = enum_limit();
    if n > limit {
        return Err(Error::SizeLimit {
            what,
            actual: n,
            limit,
        });
    }
    Ok(())
}

pub(crate) fn check_partition_enum(what: &'static str, n: usize) -> Result<()> {
    if n > PARTITION_LIMIT {
        return Err(Error::SizeLimit {
            what,
            actual: n,
            limit: PARTITION_LIMIT,
        });
    }
    Ok(())
}

/// A subset of vertices as a bitmask; vertex `i` is bit `i`. The derived
/// order is the numeric mask order, which tie-breaking rules rely on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SubsetMask((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_VERTICES);
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |m, i| m.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | Self::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !Self::singleton(i).0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset_of(self, other: Self) -> bool {
        other.is_subset_of(self)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All submasks of `self` in ascending numeric order, `EMPTY` included.
    pub fn submasks(self) -> impl Iterator<Item = SubsetMask> {
        let sup = self.0;
        (0..=sup).filter(move |m| m & !sup == 0).map(SubsetMask)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A hyperedge: the users observing its variable, and the variable's entropy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub incidence: SubsetMask,
    pub weight: Rational,
}

impl Edge {
    pub fn new(incidence: SubsetMask, weight: Rational) -> Self {
        Edge { incidence, weight }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphSource {
    labels: Vec<String>,
    edges: Vec<Edge>,
    active: SubsetMask,
    untrusted: SubsetMask,
    wiretap: BTreeSet<usize>,
}

impl HypergraphSource {
    /// Validating constructor. Requirements: unique nonempty labels, at most
    /// [`MAX_VERTICES`] of them; every edge nonempty and inside the vertex
    /// set with weight `>= 0` (zero weights are allowed); `A` nonempty and
    /// disjoint from `D`; wiretap indices in range.
    pub fn new(
        labels: Vec<String>,
        edges: Vec<Edge>,
        active: SubsetMask,
        untrusted: SubsetMask,
        wiretap: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSource("no vertices".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidSource(format!(
                "{n} vertices exceed the hard cap of {MAX_VERTICES}"
            )));
        }
        let full = SubsetMask::full(n);
        {
            let mut seen = BTreeSet::new();
            for l in &labels {
                if l.is_empty() {
                    return Err(Error::InvalidSource("empty vertex label".into()));
                }
                if !seen.insert(l.as_str()) {
                    return Err(Error::InvalidSource(format!("duplicate vertex label {l:?}")));
                }
            }
        }
        for (k, e) in edges.iter().enumerate() {
            if e.incidence.is_empty() {
                return Err(Error::InvalidSource(format!("edge {k} has empty incidence")));
            }
            if !e.incidence.is_subset_of(full) {
                return Err(Error::InvalidSource(format!(
                    "edge {k} mentions a vertex outside the vertex set"
                )));
            }
            if e.weight < Rational::zero() {
                return Err(Error::InvalidSource(format!("edge {k} has negative weight")));
            }
        }
        if active.is_empty() {
            return Err(Error::InvalidSource("active set is empty".into()));
        }
        if !active.is_subset_of(full) || !untrusted.is_subset_of(full) {
            return Err(Error::InvalidSource(
                "active or untrusted set mentions a vertex outside the vertex set".into(),
            ));
        }
        if active.intersects(untrusted) {
            return Err(Error::InvalidSource(
                "active and untrusted sets must be disjoint".into(),
            ));
        }
        let wiretap: BTreeSet<usize> = wiretap.into_iter().collect();
        if let Some(&bad) = wiretap.iter().find(|&&i| i >= edges.len()) {
            return Err(Error::InvalidSource(format!(
                "wiretap edge index {bad} out of range (have {} edges)",
                edges.len()
            )));
        }
        Ok(HypergraphSource {
            labels,
            edges,
            active,
            untrusted,
            wiretap,
        })
    }

    /// Source without adversaries.
    pub fn plain(labels: Vec<String>, edges: Vec<Edge>, active: SubsetMask) -> Result<Self> {
        Self::new(labels, edges, active, SubsetMask::EMPTY, [])
    }

    /// Source labeled `1..=n` without adversaries.
    pub fn numbered(n: usize, edges: Vec<Edge>, active: SubsetMask) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::plain(labels, edges, active)
    }

    /// Pairwise independent network: one unit-weight edge per listed pair,
    /// labeled `1..=n`, everyone active.
    pub fn numbered_pin(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(SubsetMask::from_indices([a, b]), Rational::from_integer(1.into())))
            .collect();
        Self::numbered(n, edges, SubsetMask::full(n))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn active(&self) -> SubsetMask {
        self.active
    }

    pub fn untrusted(&self) -> SubsetMask {
        self.untrusted
    }

    pub fn wiretap(&self) -> &BTreeSet<usize> {
        &self.wiretap
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.vertex_count())
    }

    pub fn is_plain(&self) -> bool {
        self.untrusted.is_empty() && self.wiretap.is_empty()
    }

    /// Renders a mask with the source's labels, `{1,3}` style.
    pub fn set_to_string(&self, b: SubsetMask) -> String {
        let items: Vec<&str> = b.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Indices of edges entirely inside `B` (the edges counted by
    /// `H(Z_B | Z_{V\B})`).
    pub fn edges_within(&self, b: SubsetMask) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.incidence.is_subset_of(b))
            .map(|(k, _)| k)
    }

    /// Indices of edges meeting `B` (the edges counted by `H(Z_B)`).
    pub fn edges_meeting(&self, b: SubsetMask) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.incidence.intersects(b))
            .map(|(k, _)| k)
    }

    /// `H(Z_B)`.
    pub fn entropy(&self, b: SubsetMask) -> Rational {
        self.edges_meeting(b).map(|k| &self.edges[k].weight).sum()
    }

    /// `H(Z_B | Z_{V\B})`.
    pub fn cond_entropy(&self, b: SubsetMask) -> Rational {
        self.sum_within(&self.weights(), b)
    }

    /// `H(Z_V)`.
    pub fn total_entropy(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.weight.clone()).collect()
    }

    /// `x(E(B))` for an arbitrary per-edge vector `x`.
    pub fn sum_within(&self, x: &[Rational], b: SubsetMask) -> Rational {
        debug_assert_eq!(x.len(), self.edges.len());
        self.edges_within(b).map(|k| &x[k]).sum()
    }

    /// Edges whose incidence covers the active set. Their variables are
    /// common knowledge among active users, hence available as key material
    /// without any discussion.
    pub fn spanning_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| self.edges[k].incidence.is_superset_of(self.active))
            .collect()
    }

    /// Complement of [`Self::spanning_edges`]: edges missed by at least one
    /// active user, the only ones that bound families have to control.
    pub fn noncritical_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| !self.edges[k].incidence.is_superset_of(self.active))
            .collect()
    }

    /// Same structure with new edge weights (used for decremental reductions).
    pub fn with_weights(&self, x: &[Rational]) -> Result<Self> {
        if x.len() != self.edges.len() {
            return Err(Error::InvalidArgument(format!(
                "weight vector has length {}, source has {} edges",
                x.len(),
                self.edges.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(x)
            .map(|(e, w)| Edge::new(e.incidence, w.clone()))
            .collect();
        Self::new(
            self.labels.clone(),
            edges,
            self.active,
            self.untrusted,
            self.wiretap.iter().copied(),
        )
    }

    /// Restriction to the vertices in `keep` with a new active set. Edge
    /// incidences are intersected with `keep`; edges that lose every vertex
    /// are dropped, the rest keep their weights. Vertices are renumbered in
    /// their original order. Adversary annotations are discarded: the result
    /// is a plain source.
    pub fn restrict(&self, keep: SubsetMask, new_active: SubsetMask) -> Result<Self> {
        let full = self.full_mask();
        if !keep.is_subset_of(full) || keep.is_empty() {
            return Err(Error::InvalidArgument(
                "restriction set must be a nonempty subset of the vertices".into(),
            ));
        }
        if new_active.is_empty() || !new_active.is_subset_of(keep) {
            return Err(Error::InvalidArgument(
                "new active set must be a nonempty subset of the kept vertices".into(),
            ));
        }
        let old_ids: Vec<usize> = keep.iter().collect();
        let remap = |b: SubsetMask| -> SubsetMask {
            SubsetMask::from_indices(
                old_ids
                    .iter()
                    .enumerate()
                    .filter(|&(_, &old)| b.contains(old))
                    .map(|(new, _)| new),
            )
        };
        let labels = old_ids.iter().map(|&i| self.labels[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.incidence.intersects(keep))
            .map(|e| Edge::new(remap(e.incidence.intersect(keep)), e.weight.clone()))
            .collect();
        Self::plain(labels, edges, remap(new_active))
    }

    /// Removes the wiretapped edges and every edge touching an untrusted
    /// user, then restricts to the trusted vertices. Idempotent; the identity
    /// on plain sources.
    pub fn reduce_for_adversaries(&self) -> Result<Self> {
        if self.is_plain() {
            return Ok(self.clone());
        }
        if self.active.is_subset_of(self.untrusted) {
            // Unreachable through the validating constructor; kept as a guard.
            return Err(Error::InvalidSource("no active users remain".into()));
        }
        let keep_edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, e)| !self.wiretap.contains(k) && !e.incidence.intersects(self.untrusted))
            .map(|(_, e)| e.clone())
            .collect();
        let filtered = Self::new(
            self.labels.clone(),
            keep_edges,
            self.active,
            SubsetMask::EMPTY,
            [],
        )?;
        filtered.restrict(self.full_mask().minus(self.untrusted), self.active)
    }
}

/// All nonempty `B` with `B` not containing `A`, ascending mask order. This
/// is the index family of the omniscience constraints.
pub fn key_subsets(n: usize, active: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let full = SubsetMask::full(n).0;
    (1..=full)
        .map(SubsetMask)
        .filter(move |b| b.0 & active.0 != active.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn triangle() -> HypergraphSource {
        HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn mask_basics() {
        let m = SubsetMask::from_indices([0, 2]);
        assert!(m.contains(0) && !m.contains(1) && m.contains(2));
        assert_eq!(m.len(), 2);
        assert_eq!(format!("{m:?}"), "{0,2}");
        assert!(m.is_subset_of(SubsetMask::full(3)));
        assert!(!SubsetMask::full(3).is_subset_of(m));
        assert_eq!(m.minus(SubsetMask::singleton(2)), SubsetMask::singleton(0));
        let subs: Vec<u64> = m.submasks().map(|s| s.0).collect();
        assert_eq!(subs, vec![0b000, 0b001, 0b100, 0b101]);
    }

    #[test]
    fn entropy_calculus_on_the_triangle() {
        let s = triangle();
        assert_eq!(s.total_entropy(), rint(3));
        assert_eq!(s.entropy(SubsetMask::singleton(0)), rint(2));
        assert_eq!(s.cond_entropy(SubsetMask::singleton(0)), rint(0));
        assert_eq!(s.cond_entropy(SubsetMask::from_indices([0, 1])), rint(1));
        assert_eq!(s.entropy(SubsetMask::from_indices([0, 1])), rint(3));
        assert_eq!(s.cond_entropy(s.full_mask()), rint(3));
        assert_eq!(s.entropy(SubsetMask::EMPTY), rint(0));
    }

    #[test]
    fn entropy_is_submodular_and_conditional_supermodular() {
        // Spot check on the triangle for all pairs of subsets.
        let s = triangle();
        let full = s.full_mask();
        for a in full.submasks() {
            for b in full.submasks() {
                let lhs = s.entropy(a) + s.entropy(b);
                let rhs = s.entropy(a.union(b)) + s.entropy(a.intersect(b));
                assert!(lhs >= rhs, "submodularity failed at {a:?},{b:?}");
                let lhs = s.cond_entropy(a) + s.cond_entropy(b);
                let rhs = s.cond_entropy(a.union(b)) + s.cond_entropy(a.intersect(b));
                assert!(lhs <= rhs, "supermodularity failed at {a:?},{b:?}");
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let e = |v: &[usize]| Edge::new(SubsetMask::from_indices(v.iter().copied()), rint(1));
        // Empty incidence.
        assert!(HypergraphSource::numbered(2, vec![Edge::new(SubsetMask::EMPTY, rint(1))], SubsetMask::full(2)).is_err());
        // Vertex out of range.
        assert!(HypergraphSource::numbered(2, vec![e(&[5])], SubsetMask::full(2)).is_err());
        // Negative weight.
        assert!(HypergraphSource::numbered(2, vec![Edge::new(SubsetMask::singleton(0), rat(-1, 2))], SubsetMask::full(2)).is_err());
        // Empty active set.
        assert!(HypergraphSource::numbered(2, vec![e(&[0, 1])], SubsetMask::EMPTY).is_err());
        // Active meets untrusted.
        assert!(HypergraphSource::new(
            vec!["1".into(), "2".into()],
            vec![e(&[0, 1])],
            SubsetMask::full(2),
            SubsetMask::singleton(1),
            [],
        )
        .is_err());
        // Wiretap index out of range.
        assert!(HypergraphSource::new(
            vec!["1".into(), "2".into()],
            vec![e(&[0, 1])],
            SubsetMask::singleton(0),
            SubsetMask::EMPTY,
            [3],
        )
        .is_err());
        // Duplicate labels.
        assert!(HypergraphSource::plain(
            vec!["1".into(), "1".into()],
            vec![e(&[0, 1])],
            SubsetMask::full(2),
        )
        .is_err());
        // Zero-weight edges and isolated vertices are fine.
        assert!(HypergraphSource::numbered(
            3,
            vec![Edge::new(SubsetMask::from_indices([0, 1]), rint(0))],
            SubsetMask::full(3),
        )
        .is_ok());
    }

    #[test]
    fn restriction_keeps_shrunk_edges() {
        // Triangle restricted to {0,1}: the two edges through vertex 2
        // survive as singletons, weights kept.
        let s = triangle();
        let r = s
            .restrict(SubsetMask::from_indices([0, 1]), SubsetMask::from_indices([0, 1]))
            .unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.edge_count(), 3);
        assert_eq!(r.labels(), &["1".to_string(), "2".to_string()]);
        assert_eq!(r.cond_entropy(SubsetMask::singleton(0)), rint(1));
        assert_eq!(r.cond_entropy(SubsetMask::singleton(1)), rint(1));
        assert_eq!(r.total_entropy(), rint(3));
    }

    #[test]
    fn adversary_reduction_drops_wiretaps_and_untrusted_edges() {
        // Square PIN with an untrusted vertex 3 and a wiretapped edge 0.
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
        let r = s.reduce_for_adversaries().unwrap();
        assert!(r.is_plain());
        assert_eq!(r.vertex_count(), 3);
        // Edge 0 wiretapped, edge 2 touches the untrusted vertex.
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.total_entropy(), rat(3, 2));
        // Idempotent.
        assert_eq!(r.reduce_for_adversaries().unwrap(), r);
    }

    #[test]
    fn key_subsets_family() {
        let a = SubsetMask::from_indices([0, 1]);
        let fam: Vec<u64> = key_subsets(3, a).map(|b| b.0).collect();
        // Everything nonempty except {0,1} and {0,1,2}.
        assert_eq!(fam, vec![0b001, 0b010, 0b100, 0b101, 0b110]);
    }

    #[test]
    fn edge_split_by_active_coverage() {
        let s = HypergraphSource::numbered(
            3,
            vec![
                Edge::new(SubsetMask::from_indices([0, 1, 2]), rint(2)),
                Edge::new(SubsetMask::from_indices([0, 1]), rint(1)),
            ],
            SubsetMask::from_indices([0, 1]),
        )
        .unwrap();
        assert_eq!(s.spanning_edges(), vec![0, 1]);
        assert!(s.noncritical_edges().is_empty());
        let t = triangle();
        assert_eq!(t.noncritical_edges(), vec![0, 1, 2]);
        assert!(t.spanning_edges().is_empty());
        let u = HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let v = HypergraphSource::numbered(3, u.edges().to_vec(), SubsetMask::from_indices([0, 1]))
            .unwrap();
        assert_eq!(v.noncritical_edges(), vec![1, 2]);
        assert_eq!(v.spanning_edges(), vec![0]);
    }
}
