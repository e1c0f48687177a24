//! Compatible-functional calculus for the dual of V1.
//!
//! A nonzero finitely supported functional is compatible when its first
//! support coordinate is +-1, middle coordinates are +-2, the last is +-1
//! or +-2 (forced to +-1 when the support is permissible-maximal), the
//! support embeds in a permissible set, and consecutive nonzero
//! coordinates alternate in sign. These functionals form the norming set
//! of the V1 norm; the closed-form classifier below decides which of them
//! are extreme points of the dual unit ball.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};
use crate::schreier::is_permissible_maximal;
use crate::sparse::{IndexSet, SparseVec};

/// A compatible functional with its derived metadata. Recognition always
/// recomputes the metadata from the coordinates, so corrupted inputs are
/// caught instead of trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleFunctional {
    coords: SparseVec,
    support: IndexSet,
    last_abs: u8,
    global_sign: i8,
}

impl CompatibleFunctional {
    pub fn from_sparse(f: &SparseVec) -> Result<Self> {
        if !is_compatible(f) {
            return Err(Error::invalid("functional is not compatible"));
        }
        let support = f.support();
        let first = support.min().expect("nonzero");
        let last = support.max().expect("nonzero");
        let last_abs = if f.get(last).abs() == rat_int(2) { 2 } else { 1 };
        let global_sign = if f.get(first) > Rational::zero() { 1 } else { -1 };
        Ok(CompatibleFunctional {
            coords: f.clone(),
            support,
            last_abs,
            global_sign,
        })
    }

    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn support(&self) -> &IndexSet {
        &self.support
    }

    pub fn last_abs(&self) -> u8 {
        self.last_abs
    }

    pub fn global_sign(&self) -> i8 {
        self.global_sign
    }
}

pub fn is_compatible(f: &SparseVec) -> bool {
    if f.is_zero() {
        return false;
    }
    let support = f.support();
    let n1 = support.min().expect("nonzero");
    let size = support.len();
    // support embeds in a permissible set (or is a singleton)
    if size > n1 + 1 {
        return false;
    }
    let one = rat_int(1);
    let two = rat_int(2);
    let elems = support.elems();
    let mut prev_sign: Option<bool> = None;
    for (pos, &idx) in elems.iter().enumerate() {
        let v = f.get(idx);
        let a = v.abs();
        let expected_ok = if pos == 0 {
            a == one
        } else if pos + 1 == size {
            if size == n1 + 1 {
                a == one // maximal support forces last coefficient +-1
            } else {
                a == one || a == two
            }
        } else {
            a == two
        };
        if !expected_ok {
            return false;
        }
        let positive = v > Rational::zero();
        if let Some(p) = prev_sign {
            if p == positive {
                return false; // consecutive coordinates must alternate
            }
        }
        prev_sign = Some(positive);
    }
    true
}

/// All compatible functionals with support inside [1, bound], both global
/// signs, sorted by (support, last_abs, global_sign).
pub fn enumerate_compatible(bound: usize) -> Result<Vec<CompatibleFunctional>> {
    if bound < 1 {
        return Err(Error::invalid("bound must be a positive integer"));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for first in 1..=bound {
        prefix.push(first);
        emit_supports(&mut prefix, bound, first + 1, &mut out);
        prefix.pop();
    }
    Ok(out)
}

fn emit_supports(prefix: &mut Vec<usize>, bound: usize, from: usize, out: &mut Vec<CompatibleFunctional>) {
    let n1 = prefix[0];
    let support = IndexSet::new(prefix.clone()).expect("strictly increasing");
    let maximal = prefix.len() == n1 + 1;
    let last_options: &[u8] = if prefix.len() == 1 || maximal { &[1] } else { &[1, 2] };
    for &last_abs in last_options {
        for sign in [1i8, -1i8] {
            out.push(build(&support, last_abs, sign));
        }
    }
    if maximal {
        return;
    }
    for next in from..=bound {
        prefix.push(next);
        emit_supports(prefix, bound, next + 1, out);
        prefix.pop();
    }
}

fn build(support: &IndexSet, last_abs: u8, global_sign: i8) -> CompatibleFunctional {
    let size = support.len();
    let coords = SparseVec::from_pairs(support.elems().iter().enumerate().map(|(pos, &idx)| {
        let magnitude: i64 = if pos == 0 {
            1
        } else if pos + 1 == size {
            last_abs as i64
        } else {
            2
        };
        let sign = if pos % 2 == 0 { global_sign as i64 } else { -(global_sign as i64) };
        (idx, rat_int(sign * magnitude))
    }))
    .expect("valid coordinates");
    CompatibleFunctional {
        coords,
        support: support.clone(),
        last_abs,
        global_sign,
    }
}

/// Coordinate pairing sum f_i x_i over the common support.
pub fn evaluate(f: &SparseVec, x: &SparseVec) -> Rational {
    let mut sum = Rational::zero();
    for (i, v) in f.iter() {
        sum += v * x.get(i);
    }
    sum
}

/// Exact dual norm of f on the truncation supported in [1, bound - 1]:
/// max f(x) subject to |g(x)| <= 1 for every compatible g with support in
/// [1, bound]. Those g norm the truncated V1 norm, so the LP value is the
/// genuine operator norm there.
pub fn dual_norm(f: &SparseVec, bound: usize) -> Result<Rational> {
    if bound < 2 {
        return Err(Error::invalid("dual_norm needs bound >= 2"));
    }
    if f.max_index() > bound - 1 {
        return Err(Error::invalid(format!(
            "functional support reaches {} but must stay in [1, {}]",
            f.max_index(),
            bound - 1
        )));
    }
    let dim = bound - 1;
    let objective = f.to_dense(dim)?;
    let mut constraints = Vec::new();
    for g in enumerate_compatible(bound)? {
        // g may touch coordinate `bound`; only the first dim coordinates act
        // on the truncation.
        let mut row = vec![Rational::zero(); dim];
        for (i, v) in g.coords().iter() {
            if i <= dim {
                row[i - 1] = v.clone();
            }
        }
        constraints.push((row, crate::polytope::Relation::Le, rat_int(1)));
    }
    let problem = crate::polytope::LpProblem {
        objective,
        constraints,
        nonneg: vec![false; dim],
    };
    match crate::polytope::lp_max(&problem)? {
        crate::polytope::LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Internal(format!(
            "dual-norm LP must be bounded and feasible, got {other:?}"
        ))),
    }
}

/// Verdicts of the extreme-point classifier for the dual unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    NotCompatible,
    ExtremeSingleton,
    ExtremeMaxSupport,
    ExtremeLastTwo,
    NotExtreme,
}

impl Verdict {
    pub fn is_extreme(self) -> bool {
        matches!(
            self,
            Verdict::ExtremeSingleton | Verdict::ExtremeMaxSupport | Verdict::ExtremeLastTwo
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeClass {
    pub verdict: Verdict,
    pub reason: String,
}

/// Closed-form extreme-point classifier: a compatible functional is extreme
/// exactly when it is +-e_1* or +-e_2*, or its support is
/// permissible-maximal, or its last coefficient is +-2 and its support size
/// lies in [n_1 - 1, n_1].
pub fn classify_extreme(f: &SparseVec) -> ExtremeClass {
    if !is_compatible(f) {
        return ExtremeClass {
            verdict: Verdict::NotCompatible,
            reason: "not a compatible functional".to_string(),
        };
    }
    let support = f.support();
    let n1 = support.min().expect("nonzero");
    let size = support.len();
    if size == 1 {
        if n1 <= 2 {
            return ExtremeClass {
                verdict: Verdict::ExtremeSingleton,
                reason: format!("singleton +-e_{n1}* with index <= 2"),
            };
        }
        return ExtremeClass {
            verdict: Verdict::NotExtreme,
            reason: format!("singleton +-e_{n1}* with index >= 3"),
        };
    }
    let last = support.max().expect("nonzero");
    let last_two = f.get(last).abs() == rat_int(2);
    if !last_two {
        if is_permissible_maximal(&support).expect("nonempty") {
            return ExtremeClass {
                verdict: Verdict::ExtremeMaxSupport,
                reason: "last coefficient +-1 and support permissible-maximal".to_string(),
            };
        }
        return ExtremeClass {
            verdict: Verdict::NotExtreme,
            reason: format!(
                "last coefficient +-1 but support {support} is not permissible-maximal"
            ),
        };
    }
    if n1 - 1 <= size && size <= n1 {
        return ExtremeClass {
            verdict: Verdict::ExtremeLastTwo,
            reason: format!("last coefficient +-2 and |supp| = {size} within [{} , {n1}]", n1 - 1),
        };
    }
    ExtremeClass {
        verdict: Verdict::NotExtreme,
        reason: format!(
            "last coefficient +-2 but |supp| = {size} outside [{}, {n1}]",
            n1 - 1
        ),
    }
}

/// Exactly the compatible functionals with support in [1, bound] that the
/// classifier marks extreme.
pub fn enumerate_extreme(bound: usize) -> Result<Vec<CompatibleFunctional>> {
    Ok(enumerate_compatible(bound)?
        .into_iter()
        .filter(|f| classify_extreme(f.coords()).verdict.is_extreme())
        .collect())
}
