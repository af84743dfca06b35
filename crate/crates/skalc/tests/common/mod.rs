//! Brute-force oracle for the acceptance suite: linear programs solved by
//! exhaustive vertex enumeration with an independent Gaussian elimination,
//! and conditional entropies recomputed from raw edge lists. Nothing here
//! touches the production solver; values frozen in the tests were derived
//! with this code first.

#![allow(dead_code)]

use num_traits::Zero;
use skalc::rat::Rational;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Le,
}

pub struct OracleRow {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

pub struct OracleLp {
    pub vars: usize,
    pub maximize: bool,
    pub objective: Vec<Rational>,
    pub rows: Vec<OracleRow>,
}

/// Solves a square rational system by plain Gaussian elimination; `None`
/// for singular systems.
fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let s = &m[col][c] * &f;
                    m[r][c] -= s;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance the rightmost index that can still move; done when none can
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl OracleLp {
    fn feasible(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|row| {
            let lhs: Rational = row
                .coeffs
                .iter()
                .zip(x)
                .map(|(c, v)| c * v)
                .fold(Rational::zero(), |a, b| a + b);
            match row.rel {
                Rel::Ge => lhs >= row.rhs,
                Rel::Le => lhs <= row.rhs,
            }
        })
    }

    fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Optimum by enumerating every basic point: all ways to pick `vars`
    /// rows, made tight and solved as equalities, filtered for feasibility.
    /// The optimum of a bounded feasible LP with a full-rank constraint set
    /// sits at such a point. Exponential; only for desk-size instances.
    pub fn best_vertex(&self) -> Option<(Rational, Vec<Rational>)> {
        let mut best: Option<(Rational, Vec<Rational>)> = None;
        combinations(self.rows.len(), self.vars, &mut |pick| {
            let a: Vec<Vec<Rational>> = pick.iter().map(|&i| self.rows[i].coeffs.clone()).collect();
            let b: Vec<Rational> = pick.iter().map(|&i| self.rows[i].rhs.clone()).collect();
            let Some(x) = solve_square(&a, &b) else {
                return;
            };
            if !self.feasible(&x) {
                return;
            }
            let v = self.objective_at(&x);
            let better = match &best {
                None => true,
                Some((bv, _)) => {
                    if self.maximize {
                        &v > bv
                    } else {
                        &v < bv
                    }
                }
            };
            if better {
                best = Some((v, x));
            }
        });
        best
    }
}

/// An edge as a raw (member list, weight) pair, independent of the library
/// source type.
pub type RawEdge = (Vec<usize>, Rational);

/// `H(Z_B | Z_{V \ B})`: total weight of the edges whose members all lie in
/// `b`, straight from the definition.
pub fn cond_entropy_direct(edges: &[RawEdge], b: &[usize]) -> Rational {
    edges
        .iter()
        .filter(|(members, _)| members.iter().all(|v| b.contains(v)))
        .map(|(_, w)| w.clone())
        .fold(Rational::zero(), |a, x| a + x)
}

pub fn total_entropy_direct(edges: &[RawEdge]) -> Rational {
    edges
        .iter()
        .map(|(_, w)| w.clone())
        .fold(Rational::zero(), |a, x| a + x)
}

/// Every subset of `0..n` that misses at least one member of `active`,
/// as index lists. These index the omniscience constraints.
pub fn key_subsets_direct(n: usize, active: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let b: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if active.iter().any(|a| !b.contains(a)) {
            out.push(b);
        }
    }
    out
}

/// Omniscience LP by vertex enumeration: minimize the total rate subject to
/// every key subset covering its conditional entropy. Rates are sign-free.
pub fn oracle_rco(n: usize, edges: &[RawEdge], active: &[usize]) -> (Rational, Vec<Rational>) {
    let rows: Vec<OracleRow> = key_subsets_direct(n, active)
        .into_iter()
        .map(|b| {
            let mut coeffs = vec![Rational::zero(); n];
            for &i in &b {
                coeffs[i] = Rational::from_integer(1.into());
            }
            OracleRow {
                coeffs,
                rel: Rel::Ge,
                rhs: cond_entropy_direct(edges, &b),
            }
        })
        .collect();
    let lp = OracleLp {
        vars: n,
        maximize: false,
        objective: vec![Rational::from_integer(1.into()); n],
        rows,
    };
    lp.best_vertex().expect("omniscience oracle must be feasible")
}

/// Budgeted capacity LP by vertex enumeration: maximize `x(E) - r(V)` with
/// `0 <= x <= w`, `r(V) <= rate`, and `r(B) >= x(E(B))` on key subsets.
pub fn oracle_cs_at(
    n: usize,
    edges: &[RawEdge],
    active: &[usize],
    rate: &Rational,
) -> Rational {
    let m = edges.len();
    let one = || Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for (e, (_, w)) in edges.iter().enumerate() {
        let mut lo = vec![Rational::zero(); m + n];
        lo[e] = one();
        rows.push(OracleRow {
            coeffs: lo.clone(),
            rel: Rel::Ge,
            rhs: Rational::zero(),
        });
        rows.push(OracleRow {
            coeffs: lo,
            rel: Rel::Le,
            rhs: w.clone(),
        });
    }
    let mut budget = vec![Rational::zero(); m];
    budget.extend(vec![one(); n]);
    rows.push(OracleRow {
        coeffs: budget,
        rel: Rel::Le,
        rhs: rate.clone(),
    });
    for b in key_subsets_direct(n, active) {
        let mut coeffs = vec![Rational::zero(); m + n];
        for (e, (members, _)) in edges.iter().enumerate() {
            if members.iter().all(|v| b.contains(v)) {
                coeffs[e] = -one();
            }
        }
        for &i in &b {
            coeffs[m + i] = one();
        }
        rows.push(OracleRow {
            coeffs,
            rel: Rel::Ge,
            rhs: Rational::zero(),
        });
    }
    let mut objective = vec![one(); m];
    objective.extend(vec![-one(); n]);
    let lp = OracleLp {
        vars: m + n,
        maximize: true,
        objective,
        rows,
    };
    lp.best_vertex().expect("budgeted oracle must be feasible").0
}
