//! Dense dual simplex for covering LPs `min c.x  s.t.  A x >= b, x >= 0`
//! with `c >= 0`.
//!
//! With surplus variables as the starting basis every reduced cost is
//! `c_j >= 0`, so the tableau starts dual feasible and no phase one is
//! needed. Pivots follow Bland's rule.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub x_star: Vec<S>,
    pub objective: S,
    /// Optimal dual prices, one per covering row.
    pub duals: Vec<S>,
    pub pivots: usize,
}

pub const MAX_PIVOTS: usize = 200_000;

/// `a` is row-major with one row per covering constraint.
pub fn solve_covering<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> Result<LpSolution<S>> {
    let t = a.len();
    let q = c.len();
    if b.len() != t || a.iter().any(|r| r.len() != q) {
        return Err(Error::Parameter("LP dimensions disagree".into()));
    }
    if c.iter().any(|x| x.is_negative_tol()) {
        return Err(Error::Parameter("covering LP needs nonnegative costs".into()));
    }
    let w = q + t;
    let mut tab: Vec<Vec<S>> = Vec::with_capacity(t);
    let mut rhs: Vec<S> = Vec::with_capacity(t);
    for i in 0..t {
        let mut row: Vec<S> = a[i].iter().map(|x| -x.clone()).collect();
        row.extend((0..t).map(|k| if k == i { S::one() } else { S::zero() }));
        tab.push(row);
        rhs.push(-b[i].clone());
    }
    let mut red: Vec<S> = c.to_vec();
    red.extend((0..t).map(|_| S::zero()));
    let mut basis: Vec<usize> = (q..w).collect();

    let mut pivots = 0;
    loop {
        // leaving: smallest basic variable index among infeasible rows
        let leave = (0..t)
            .filter(|&i| rhs[i].is_negative_tol())
            .min_by_key(|&i| basis[i]);
        let Some(r) = leave else { break };
        // entering: min ratio red_j / -tab[r][j] over tab[r][j] < 0, ties by index
        let mut enter: Option<(usize, S)> = None;
        for j in 0..w {
            if !tab[r][j].is_negative_tol() {
                continue;
            }
            let ratio = red[j].clone() / (-tab[r][j].clone());
            let better = match &enter {
                None => true,
                Some((_, best)) => ratio < best.clone() - S::tolerance(),
            };
            if better {
                enter = Some((j, ratio));
            }
        }
        let Some((e, _)) = enter else {
            return Err(Error::Infeasible(format!(
                "covering row {r} cannot be satisfied by any column"
            )));
        };
        pivot(&mut tab, &mut rhs, &mut red, r, e);
        basis[r] = e;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::Capacity(format!("simplex exceeded {MAX_PIVOTS} pivots")));
        }
    }

    let mut x_star = vec![S::zero(); q];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < q {
            let v = rhs[i].clone();
            x_star[bv] = if v.is_negative_tol() || v.is_zero_tol() { S::zero() } else { v };
        }
    }
    let objective = x_star
        .iter()
        .zip(c)
        .fold(S::zero(), |acc, (x, cj)| acc + x.clone() * cj.clone());
    let duals = (0..t)
        .map(|i| {
            let d = red[q + i].clone();
            if d.is_negative_tol() { S::zero() } else { d }
        })
        .collect();
    Ok(LpSolution {
        x_star,
        objective,
        duals,
        pivots,
    })
}

fn pivot<S: Scalar>(tab: &mut [Vec<S>], rhs: &mut [S], red: &mut [S], r: usize, e: usize) {
    let p = tab[r][e].clone();
    for v in tab[r].iter_mut() {
        *v = v.clone() / p.clone();
    }
    rhs[r] = rhs[r].clone() / p;
    let prow = tab[r].clone();
    let prhs = rhs[r].clone();
    for i in 0..tab.len() {
        if i == r {
            continue;
        }
        let f = tab[i][e].clone();
        if f.is_zero() {
            continue;
        }
        for (v, pv) in tab[i].iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        rhs[i] = rhs[i].clone() - f * prhs.clone();
    }
    let f = red[e].clone();
    if !f.is_zero() {
        for (v, pv) in red.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
}

/// Check primal feasibility, dual feasibility and equal objectives.
pub fn certify<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S], sol: &LpSolution<S>) -> bool {
    let tol = S::from_f64_lossy(1e-7);
    let exact = S::tolerance().is_zero();
    let slack = |x: S| if exact { x.is_zero() || x.is_positive() } else { x > -tol.clone() };
    let primal = a.iter().zip(b).all(|(row, bi)| {
        let lhs = row
            .iter()
            .zip(&sol.x_star)
            .fold(S::zero(), |acc, (aij, xj)| acc + aij.clone() * xj.clone());
        slack(lhs - bi.clone())
    });
    let dual = (0..c.len()).all(|j| {
        let lhs = a
            .iter()
            .zip(&sol.duals)
            .fold(S::zero(), |acc, (row, y)| acc + row[j].clone() * y.clone());
        slack(c[j].clone() - lhs)
    });
    let dual_obj = b
        .iter()
        .zip(&sol.duals)
        .fold(S::zero(), |acc, (bi, y)| acc + bi.clone() * y.clone());
    let gap = sol.objective.clone() - dual_obj;
    let scale = S::one() + sol.objective.abs();
    let close = if exact { gap.is_zero() } else { gap.abs() <= tol * scale };
    primal && dual && close
}
