//! Independent verification machinery: exact convex-hull membership,
//! vertex filtering, theorem-vs-oracle comparison for the dual ball of V1,
//! and signed-permutation isometry scans of truncated spaces.

mod simplex;

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use simplex::{lp_max, LpOutcome, LpProblem, Relation};

use crate::dualspace::{classify_extreme, enumerate_compatible, Verdict};
use crate::error::{Error, Result};
use crate::lorentz::{enumerate_lorentz_extremes, lorentz_norm, WeightSeq};
use crate::rational::Rational;
use crate::sparse::SparseVec;

/// Exact membership of p in the convex hull of V, decided by the
/// feasibility LP p = sum lambda_i v_i, lambda >= 0, sum lambda = 1.
pub fn in_convex_hull(p: &[Rational], v: &[Vec<Rational>]) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::invalid("hull of an empty point set"));
    }
    let dim = p.len();
    if v.iter().any(|pt| pt.len() != dim) {
        return Err(Error::invalid("inconsistent point dimensions"));
    }
    let k = v.len();
    let mut constraints = Vec::with_capacity(dim + 1);
    for coord in 0..dim {
        let row: Vec<Rational> = v.iter().map(|pt| pt[coord].clone()).collect();
        constraints.push((row, Relation::Eq, p[coord].clone()));
    }
    constraints.push((vec![Rational::one(); k], Relation::Eq, Rational::one()));
    let problem = LpProblem {
        objective: vec![Rational::zero(); k],
        constraints,
        nonneg: vec![true; k],
    };
    match lp_max(&problem)? {
        LpOutcome::Optimal { .. } => Ok(true),
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => Err(Error::Internal(
            "zero-objective feasibility LP reported unbounded".into(),
        )),
    }
}

/// Exactly the vertices of conv(V): the points not contained in the hull
/// of the remaining ones.
pub fn filter_vertices(v: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let mut unique: Vec<Vec<Rational>> = Vec::new();
    for pt in v {
        if !unique.contains(pt) {
            unique.push(pt.clone());
        }
    }
    if unique.len() == 1 {
        return Ok(unique);
    }
    let mut out = Vec::new();
    for (i, pt) in unique.iter().enumerate() {
        let rest: Vec<Vec<Rational>> = unique
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if !in_convex_hull(pt, &rest)? {
            out.push(pt.clone());
        }
    }
    Ok(out)
}

/// One classifier-vs-oracle mismatch; `oracle_vertex` is vertex-hood of the
/// functional in conv of the compatible slice.
#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub functional: SparseVec,
    pub theorem_verdict: Verdict,
    pub oracle_verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub bound: usize,
    pub window: usize,
    pub checked: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares the closed-form extreme-point classifier against vertex-hood in
/// conv of all compatible functionals with support in [1, bound], for every
/// functional with support inside [1, window]. The window margin leaves
/// room for the perturbation witnesses, which need indices just outside the
/// candidate's support.
pub fn compare_theorem_oracle(bound: usize, window: usize) -> Result<OracleReport> {
    if window == 0 {
        return Err(Error::invalid("window must be positive"));
    }
    if window + 2 > bound {
        return Err(Error::invalid(format!(
            "window must leave extension room: need window <= bound - 2, got window={window} bound={bound}"
        )));
    }
    let m = enumerate_compatible(bound)?;
    let points: Vec<Vec<Rational>> = m
        .iter()
        .map(|f| f.coords().to_dense(bound))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for (i, f) in m.iter().enumerate() {
        if f.support().max().expect("nonempty") > window {
            continue;
        }
        checked += 1;
        let rest: Vec<Vec<Rational>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let oracle_vertex = !in_convex_hull(&points[i], &rest)?;
        let verdict = classify_extreme(f.coords()).verdict;
        if verdict.is_extreme() == oracle_vertex {
            agreements += 1;
        } else {
            disagreements.push(Disagreement {
                functional: f.coords().clone(),
                theorem_verdict: verdict,
                oracle_verdict: oracle_vertex,
            });
        }
    }
    Ok(OracleReport {
        bound,
        window,
        checked,
        agreements,
        disagreements,
    })
}

/// A linear map e_i -> eps_i e_{pi(i)} on a finite window, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    /// pi[i-1] is the image of i.
    pub pi: Vec<usize>,
    pub eps: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(pi: Vec<usize>, eps: Vec<i8>) -> Result<Self> {
        let n = pi.len();
        if eps.len() != n {
            return Err(Error::invalid("sign vector length must match permutation length"));
        }
        let mut seen = vec![false; n + 1];
        for &img in &pi {
            if img == 0 || img > n || seen[img] {
                return Err(Error::invalid("pi is not a bijection of [1..n]"));
            }
            seen[img] = true;
        }
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::invalid("signs must be +1 or -1"));
        }
        Ok(SignedPermutation { pi, eps })
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            pi: (1..=n).collect(),
            eps: vec![1; n],
        }
    }

    pub fn negated(&self) -> Self {
        SignedPermutation {
            pi: self.pi.clone(),
            eps: self.eps.iter().map(|e| -e).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut pi = vec![0usize; n];
        let mut eps = vec![1i8; n];
        for i in 1..=n {
            let img = self.pi[i - 1];
            pi[img - 1] = i;
            eps[img - 1] = self.eps[i - 1];
        }
        SignedPermutation { pi, eps }
    }

    /// Composition self after other: (self.compose(other)).apply(x) equals
    /// self.apply(other.apply(x)).
    pub fn compose(&self, other: &SignedPermutation) -> Self {
        let n = self.n();
        assert_eq!(n, other.n());
        let mut pi = vec![0usize; n];
        let mut eps = vec![1i8; n];
        for i in 1..=n {
            let mid = self.pi[i - 1];
            pi[i - 1] = other.pi[mid - 1];
            eps[i - 1] = self.eps[i - 1] * other.eps[mid - 1];
        }
        SignedPermutation { pi, eps }
    }

    /// Applies the map to a vector on the window: coordinate i of the image
    /// is eps_i * x_{pi(i)}.
    pub fn apply(&self, x: &SparseVec) -> Result<SparseVec> {
        let n = self.n();
        if x.max_index() > n {
            return Err(Error::invalid(format!(
                "vector support reaches {} outside the window [1, {n}]",
                x.max_index()
            )));
        }
        let mut pairs = Vec::new();
        for i in 1..=n {
            let v = x.get(self.pi[i - 1]);
            if !v.is_zero() {
                let signed = if self.eps[i - 1] > 0 { v } else { -v };
                pairs.push((i, signed));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Same coordinate action on a dense point: result_i = eps_i * g_{pi(i)}.
    /// A signed permutation fixes a polytope exactly when this image of the
    /// vertex set equals the vertex set, which is also the condition for the
    /// polar polytopes to coincide.
    pub fn apply_dense(&self, g: &[Rational]) -> Vec<Rational> {
        (0..self.n())
            .map(|i| {
                let v = g[self.pi[i] - 1].clone();
                if self.eps[i] > 0 {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }
}

/// Which truncated space an isometry scan runs over.
#[derive(Debug, Clone)]
pub enum Space {
    V1,
    Lorentz(WeightSeq),
}

/// Enumerates signed permutations in deterministic order: permutations
/// lexicographically, sign vectors by binary counter with +1 first.
fn signed_permutations(n: usize) -> impl Iterator<Item = SignedPermutation> {
    (1..=n).permutations(n).flat_map(move |pi| {
        (0..1u32 << n).map(move |mask| {
            let eps = (0..n)
                .map(|i| if mask >> i & 1 == 0 { 1i8 } else { -1i8 })
                .collect();
            SignedPermutation { pi: pi.clone(), eps }
        })
    })
}

/// All signed permutations of [1..n] that are isometries of the truncated
/// space, decided exactly.
///
/// For V1 the dual unit ball of the truncation is conv of the compatible
/// functionals with support in [1, n]; a signed permutation is an isometry
/// exactly when its dual pullback permutes the vertex set of that polytope
/// (the polar polytopes then coincide). The vertex set comes from the
/// convex-hull oracle, not the classifier, so truncation-boundary vertices
/// are honored. For Lorentz spaces the primal extreme points are known in
/// closed form and the map and its inverse are checked to fix the unit
/// sphere on all of them.
pub fn signed_perm_isometry_scan(space: &Space, n: usize) -> Result<Vec<SignedPermutation>> {
    if !(2..=8).contains(&n) {
        return Err(Error::BudgetExceeded(format!(
            "scan budget is 2 <= n <= 8, got {n}"
        )));
    }
    match space {
        Space::V1 => {
            let m = enumerate_compatible(n)?;
            let points: Vec<Vec<Rational>> = m
                .iter()
                .map(|f| f.coords().to_dense(n))
                .collect::<Result<_>>()?;
            let vertices = filter_vertices(&points)?;
            let vset: HashSet<Vec<Rational>> = vertices.iter().cloned().collect();
            let mut out = Vec::new();
            for t in signed_permutations(n) {
                let preserves = vertices
                    .iter()
                    .all(|v| vset.contains(&t.apply_dense(v)));
                if preserves {
                    out.push(t);
                }
            }
            Ok(out)
        }
        Space::Lorentz(w) => {
            let extremes = enumerate_lorentz_extremes(n, w)?;
            let one = Rational::one();
            let mut out = Vec::new();
            for t in signed_permutations(n) {
                let inv = t.inverse();
                let mut ok = true;
                for x in &extremes {
                    if lorentz_norm(&t.apply(x)?, w)? != one || lorentz_norm(&inv.apply(x)?, w)? != one
                    {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    out.push(t);
                }
            }
            Ok(out)
        }
    }
}
