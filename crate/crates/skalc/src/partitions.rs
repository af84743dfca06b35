//! Fractional covers, fractional partitions, the information measure they
//! induce, and set-partition enumeration.
//!
//! A fractional assignment puts nonnegative weight on subsets `B` with
//! `B` not containing the active set. It is a cover when every vertex is
//! covered with total weight at least one, a partition when the total is
//! exactly one. The induced measure
//! `I_lambda = H(Z_V) - sum lambda(B) H(Z_B | Z_{V\B})`
//! is nonnegative for every fractional partition (Shearer), and its minimum
//! over partitions equals the unconstrained secrecy capacity.

use crate::model::{check_partition_enum, HypergraphSource, SubsetMask};
use crate::rat::{rat, Rational};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssignmentKind {
    Cover,
    Partition,
}

/// Sparse nonnegative weights on subsets `B` with `B` not containing `A`.
/// Only positive entries are stored; colliding keys passed to the
/// constructor are summed (with two vertices, `{i}` and `V\{j}` coincide).
/// The constructor checks keys and signs; [`Self::validate`] checks the
/// kind's coverage condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalAssignment {
    kind: AssignmentKind,
    weights: BTreeMap<SubsetMask, Rational>,
}

impl FractionalAssignment {
    pub fn new(
        source: &HypergraphSource,
        kind: AssignmentKind,
        entries: impl IntoIterator<Item = (SubsetMask, Rational)>,
    ) -> Result<Self> {
        let full = source.full_mask();
        let active = source.active();
        let mut weights: BTreeMap<SubsetMask, Rational> = BTreeMap::new();
        for (b, w) in entries {
            if w < Rational::zero() {
                return Err(Error::InvalidAssignment(format!(
                    "negative weight on {}",
                    source.set_to_string(b)
                )));
            }
            if b.is_empty() || !b.is_subset_of(full) {
                return Err(Error::InvalidAssignment(
                    "keys must be nonempty vertex subsets".into(),
                ));
            }
            if b.is_superset_of(active) {
                return Err(Error::InvalidAssignment(format!(
                    "key {} contains the active set",
                    source.set_to_string(b)
                )));
            }
            if w.is_zero() {
                continue;
            }
            *weights.entry(b).or_insert_with(Rational::zero) += w;
        }
        Ok(FractionalAssignment { kind, weights })
    }

    pub fn partition(
        source: &HypergraphSource,
        entries: impl IntoIterator<Item = (SubsetMask, Rational)>,
    ) -> Result<Self> {
        Self::new(source, AssignmentKind::Partition, entries)
    }

    pub fn kind(&self) -> AssignmentKind {
        self.kind
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.weights.iter().map(|(b, w)| (*b, w))
    }

    pub fn get(&self, b: SubsetMask) -> Rational {
        self.weights.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Total weight covering vertex `i`.
    pub fn coverage(&self, i: usize) -> Rational {
        self.weights
            .iter()
            .filter(|(b, _)| b.contains(i))
            .map(|(_, w)| w)
            .sum()
    }

    /// Sum of all weights.
    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    /// Exact check of the kind's coverage condition at every vertex.
    pub fn validate(&self, source: &HypergraphSource) -> bool {
        let one = Rational::one();
        (0..source.vertex_count()).all(|i| {
            let c = self.coverage(i);
            match self.kind {
                AssignmentKind::Cover => c >= one,
                AssignmentKind::Partition => c == one,
            }
        })
    }
}

/// A partition of the vertex set into at least two blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<SubsetMask>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<SubsetMask>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::InvalidArgument(
                "a partition needs at least two blocks".into(),
            ));
        }
        let full = SubsetMask::full(n);
        let mut seen = SubsetMask::EMPTY;
        for b in &blocks {
            if b.is_empty() || !b.is_subset_of(full) {
                return Err(Error::InvalidArgument(
                    "blocks must be nonempty vertex subsets".into(),
                ));
            }
            if seen.intersects(*b) {
                return Err(Error::InvalidArgument("blocks must be disjoint".into()));
            }
            seen = seen.union(*b);
        }
        if seen != full {
            return Err(Error::InvalidArgument(
                "blocks must cover every vertex".into(),
            ));
        }
        Ok(SetPartition { n, blocks })
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn describe(&self, source: &HypergraphSource) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| source.set_to_string(*b))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Every partition of `{0, .., n-1}` with at least two blocks, exactly once,
/// in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_partition_enum("enumerate_partitions", n)?;
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    // Restricted growth strings: a[0] = 0 and a[i] <= max(a[..i]) + 1,
    // stepped in lexicographic order.
    let mut a = vec![0usize; n];
    loop {
        let nblocks = a.iter().copied().max().unwrap() + 1;
        if nblocks >= 2 {
            let mut blocks = vec![SubsetMask::EMPTY; nblocks];
            for (i, &g) in a.iter().enumerate() {
                blocks[g] = blocks[g].with(i);
            }
            out.push(SetPartition { n, blocks });
        }
        // Advance to the next string.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let cap = a[..i].iter().copied().max().unwrap() + 1;
            if a[i] < cap {
                a[i] += 1;
                for v in a[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// The fractional partition with `lambda(V\C) = 1/(|P|-1)` for each block
/// `C`. Defined only when every complemented block avoids containing the
/// active set, which is the same as every block meeting it.
pub fn lambda_from_partition(
    source: &HypergraphSource,
    p: &SetPartition,
) -> Result<FractionalAssignment> {
    if p.ground_size() != source.vertex_count() {
        return Err(Error::InvalidArgument(
            "partition ground set does not match the source".into(),
        ));
    }
    let full = source.full_mask();
    let w = rat(1, (p.len() - 1) as i64);
    let entries: Vec<(SubsetMask, Rational)> = p
        .blocks()
        .iter()
        .map(|c| (full.minus(*c), w.clone()))
        .collect();
    FractionalAssignment::partition(source, entries).map_err(|_| {
        Error::InvalidAssignment(
            "every block of the partition must meet the active set".into(),
        )
    })
}

/// The fractional partition putting weight `u_i / u(V)` on both `{i}` and
/// `V\{i}`. Needs at least two active vertices and `u` supported on the
/// active set, otherwise some key would contain it. Colliding keys (two
/// vertices) are summed.
pub fn lambda_from_weights(
    source: &HypergraphSource,
    u: &[Rational],
) -> Result<FractionalAssignment> {
    let n = source.vertex_count();
    if u.len() != n {
        return Err(Error::InvalidArgument(
            "weight vector length does not match the source".into(),
        ));
    }
    if source.active().len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two active vertices".into(),
        ));
    }
    if u.iter().any(|w| w < &Rational::zero()) {
        return Err(Error::InvalidAssignment("weights must be nonnegative".into()));
    }
    let total: Rational = u.iter().sum();
    if total.is_zero() {
        return Err(Error::InvalidAssignment("weights must not all vanish".into()));
    }
    if (0..n).any(|i| !u[i].is_zero() && !source.active().contains(i)) {
        return Err(Error::InvalidAssignment(
            "weights must be supported on the active set".into(),
        ));
    }
    let full = source.full_mask();
    let mut entries = Vec::new();
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        let w = &u[i] / &total;
        entries.push((SubsetMask::singleton(i), w.clone()));
        entries.push((full.without(i), w));
    }
    FractionalAssignment::partition(source, entries)
}

/// `I_lambda = H(Z_V) - sum lambda(B) H(Z_B | Z_{V\B})`.
pub fn i_lambda(source: &HypergraphSource, lambda: &FractionalAssignment) -> Rational {
    let mut v = source.total_entropy();
    for (b, w) in lambda.iter() {
        v -= w * &source.cond_entropy(b);
    }
    v
}

/// Multivariate mutual information: the minimum over partitions with at
/// least two blocks of `[sum_C H(Z_C) - H(Z_V)] / (|P|-1)`, with an
/// optimizer. Ties go to the first partition in enumeration order. Only
/// defined when every user is active.
pub fn mmi(source: &HypergraphSource) -> Result<(Rational, SetPartition)> {
    let n = source.vertex_count();
    if source.active() != source.full_mask() {
        return Err(Error::InvalidArgument(
            "multivariate mutual information needs every user active".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(
            "multivariate mutual information needs at least two users".into(),
        ));
    }
    let hv = source.total_entropy();
    let mut best: Option<(Rational, SetPartition)> = None;
    for p in enumerate_partitions(n)? {
        let sum: Rational = p.blocks().iter().map(|c| source.entropy(*c)).sum();
        let value = (sum - &hv) / rat((p.len() - 1) as i64, 1);
        match &best {
            Some((bv, _)) if &value >= bv => {}
            _ => best = Some((value, p)),
        }
    }
    Ok(best.expect("at least one partition exists for n >= 2"))
}
