//! Exact dense-tableau simplex for `max c·x  s.t.  A x <= b, x >= 0` with
//! `b >= 0`, using Bland's smallest-index rule so degenerate pivots cannot
//! cycle.

use crate::error::{precondition, Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    /// `(row, bound)` pairs meaning `row · x <= bound`.
    pub constraints: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: Rational,
    pub values: Vec<Rational>,
}

pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    if lp.constraints.iter().any(|(row, _)| row.len() != n) {
        return Err(precondition("constraint row length differs from variable count"));
    }
    if lp.constraints.iter().any(|(_, b)| b.is_negative()) {
        return Err(precondition("bounds must be nonnegative so that x = 0 is feasible"));
    }

    let width = n + m;
    let mut tableau: Vec<Vec<Rational>> = lp
        .constraints
        .iter()
        .enumerate()
        .map(|(i, (row, b))| {
            let mut t = row.clone();
            t.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            t.push(b.clone());
            t
        })
        .collect();
    // reduced costs, last entry is minus the current objective value
    let mut reduced: Vec<Rational> = lp.objective.clone();
    reduced.extend(std::iter::repeat_with(Rational::zero).take(m + 1));
    let mut basis: Vec<usize> = (n..width).collect();

    while let Some(enter) = (0..width).find(|&j| reduced[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let a = &tableau[i][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &tableau[i][width] / a;
            let better = match &leave {
                None => true,
                Some((k, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (row, _) = leave.ok_or(Error::Unbounded)?;

        let pivot = tableau[row][enter].clone();
        for x in tableau[row].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = tableau[row].clone();
        for (i, r) in tableau.iter_mut().enumerate() {
            if i == row || r[enter].is_zero() {
                continue;
            }
            let factor = r[enter].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        let factor = reduced[enter].clone();
        for (x, p) in reduced.iter_mut().zip(&pivot_row) {
            *x -= &factor * p;
        }
        basis[row] = enter;
    }

    let mut values = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            values[b] = tableau[i][width].clone();
        }
    }
    Ok(LpSolution {
        optimum: -&reduced[width],
        values,
    })
}
