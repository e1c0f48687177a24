//! Dense exact-rational simplex with Bland's anti-cycling rule.
//!
//! Two-phase method over arbitrary-precision rationals; no floating point
//! touches any pivot decision, so feasibility and vertex-hood answers are
//! exact. Free variables are split into differences of nonnegative ones.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    /// Row of objective coefficients; the solver maximizes.
    pub objective: Vec<Rational>,
    pub constraints: Vec<(Vec<Rational>, Relation, Rational)>,
    /// Per-variable sign restriction; `false` means the variable is free.
    pub nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// rows[r] has width `cols + 1`; the last entry is the rhs.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row of the same width; last entry is minus the value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &inv;
        }
        let pivot_row = self.rows[row].clone();
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in self.rows[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: enter the lowest-index improving column, leave by the
    /// minimum ratio with the lowest basic index breaking ties.
    fn run(&mut self) -> SimplexEnd {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| self.obj[j] > Rational::zero()) else {
                return SimplexEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let coeff = &self.rows[r][enter];
                if *coeff <= Rational::zero() {
                    continue;
                }
                let ratio = &self.rows[r][self.cols] / coeff;
                match &leave {
                    None => leave = Some((r, ratio)),
                    Some((br, best)) => {
                        if ratio < *best || (ratio == *best && self.basis[r] < self.basis[*br]) {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return SimplexEnd::Unbounded;
            };
            self.pivot(row, enter);
        }
    }

    /// Installs a fresh objective and reduces it against the current basis.
    fn set_objective(&mut self, costs: &[Rational]) {
        self.obj = costs.to_vec();
        self.obj.push(Rational::zero());
        for r in 0..self.rows.len() {
            let c = self.obj[self.basis[r]].clone();
            if c.is_zero() {
                continue;
            }
            let row = self.rows[r].clone();
            for (v, p) in self.obj.iter_mut().zip(&row) {
                *v -= &c * p;
            }
        }
    }

    fn value(&self) -> Rational {
        -self.obj[self.cols].clone()
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

pub fn lp_max(p: &LpProblem) -> Result<LpOutcome> {
    let dim = p.objective.len();
    if p.nonneg.len() != dim {
        return Err(Error::invalid("nonneg mask length must match objective length"));
    }
    for (row, _, _) in &p.constraints {
        if row.len() != dim {
            return Err(Error::invalid(format!(
                "constraint row of length {} in a problem of dimension {dim}",
                row.len()
            )));
        }
    }

    // Column layout: for each variable one (or, if free, two opposite-sign)
    // columns, then one slack per inequality, then phase-1 artificials.
    let mut var_cols: Vec<(usize, i32)> = Vec::new(); // (original var, sign)
    for (j, &nn) in p.nonneg.iter().enumerate() {
        var_cols.push((j, 1));
        if !nn {
            var_cols.push((j, -1));
        }
    }
    let n_slack = p
        .constraints
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let m = p.constraints.len();
    let struct_cols = var_cols.len() + n_slack;
    let total_cols = struct_cols + m;

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut slack_seen = 0usize;
    for (row, rel, rhs) in &p.constraints {
        let mut coeffs = vec![Rational::zero(); total_cols + 1];
        let flip = *rel == Relation::Ge;
        for (c, &(j, sign)) in var_cols.iter().enumerate() {
            let mut v = &row[j] * Rational::from_integer(sign.into());
            if flip {
                v = -v;
            }
            coeffs[c] = v;
        }
        if *rel != Relation::Eq {
            coeffs[var_cols.len() + slack_seen] = Rational::one();
            slack_seen += 1;
        }
        let mut b = rhs.clone();
        if flip {
            b = -b;
        }
        coeffs[total_cols] = b;
        rows.push(coeffs);
    }
    // nonnegative rhs so the artificial basis is feasible
    for r in rows.iter_mut() {
        if r[total_cols] < Rational::zero() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let mut basis = Vec::with_capacity(m);
    for (r, row) in rows.iter_mut().enumerate() {
        row[struct_cols + r] = Rational::one();
        basis.push(struct_cols + r);
    }

    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        cols: total_cols,
    };

    // Phase 1: maximize minus the artificial sum.
    let mut phase1 = vec![Rational::zero(); total_cols];
    for v in phase1.iter_mut().skip(struct_cols) {
        *v = -Rational::one();
    }
    t.set_objective(&phase1);
    match t.run() {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded => {
            return Err(Error::Internal("phase-1 objective cannot be unbounded".into()))
        }
    }
    if t.value() < Rational::zero() {
        return Ok(LpOutcome::Infeasible);
    }

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are redundant and dropped.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= struct_cols {
            if let Some(j) = (0..struct_cols).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            } else {
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    // Forget the artificial columns.
    for row in t.rows.iter_mut() {
        let rhs = row[total_cols].clone();
        row.truncate(struct_cols);
        row.push(rhs);
    }
    t.cols = struct_cols;

    // Phase 2 with the real objective over the structural columns.
    let mut phase2 = vec![Rational::zero(); struct_cols];
    for (c, &(j, sign)) in var_cols.iter().enumerate() {
        phase2[c] = &p.objective[j] * Rational::from_integer(sign.into());
    }
    t.set_objective(&phase2);
    match t.run() {
        SimplexEnd::Unbounded => Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal => {
            let mut col_values = vec![Rational::zero(); struct_cols];
            for (r, &b) in t.basis.iter().enumerate() {
                col_values[b] = t.rows[r][t.cols].clone();
            }
            let mut point = vec![Rational::zero(); dim];
            for (c, &(j, sign)) in var_cols.iter().enumerate() {
                if sign > 0 {
                    point[j] += &col_values[c];
                } else {
                    point[j] -= &col_values[c];
                }
            }
            Ok(LpOutcome::Optimal {
                value: t.value(),
                point,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn r(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn box_corner() {
        // max x+y s.t. x <= 1, y <= 1, x >= -1, y >= -1
        let p = LpProblem {
            objective: vec![r(1), r(1)],
            constraints: vec![
                (vec![r(1), r(0)], Relation::Le, r(1)),
                (vec![r(0), r(1)], Relation::Le, r(1)),
                (vec![r(1), r(0)], Relation::Ge, r(-1)),
                (vec![r(0), r(1)], Relation::Ge, r(-1)),
            ],
            nonneg: vec![false, false],
        };
        match lp_max(&p).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(2));
                assert_eq!(point, vec![r(1), r(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible() {
        let p = LpProblem {
            objective: vec![r(1)],
            constraints: vec![
                (vec![r(1)], Relation::Le, r(0)),
                (vec![r(1)], Relation::Ge, r(1)),
            ],
            nonneg: vec![false],
        };
        assert_eq!(lp_max(&p).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded() {
        let p = LpProblem {
            objective: vec![r(1)],
            constraints: vec![],
            nonneg: vec![false],
        };
        assert_eq!(lp_max(&p).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y <= 1, x + 3y <= 1, x,y >= 0
        let p = LpProblem {
            objective: vec![r(1), r(1)],
            constraints: vec![
                (vec![r(2), r(1)], Relation::Le, r(1)),
                (vec![r(1), r(3)], Relation::Le, r(1)),
            ],
            nonneg: vec![true, true],
        };
        match lp_max(&p).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(3, 5));
                assert_eq!(point, vec![rat(2, 5), rat(1, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_constraints() {
        // max x s.t. x + y = 1, y >= 0, x >= 0
        let p = LpProblem {
            objective: vec![r(1), r(0)],
            constraints: vec![(vec![r(1), r(1)], Relation::Eq, r(1))],
            nonneg: vec![true, true],
        };
        match lp_max(&p).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(1));
                assert_eq!(point, vec![r(1), r(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_survive() {
        let p = LpProblem {
            objective: vec![r(1)],
            constraints: vec![
                (vec![r(1)], Relation::Eq, r(2)),
                (vec![r(2)], Relation::Eq, r(4)),
            ],
            nonneg: vec![true],
        };
        match lp_max(&p).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p = LpProblem {
            objective: vec![r(1), r(0)],
            constraints: vec![(vec![r(1)], Relation::Le, r(1))],
            nonneg: vec![false, false],
        };
        assert!(lp_max(&p).is_err());
    }
}
