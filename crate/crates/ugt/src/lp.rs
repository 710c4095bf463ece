//! Exact linear feasibility over the rationals.
//!
//! Phase-one simplex on a dense tableau with Bland's rule, so it always
//! terminates. Variables are implicitly non-negative.

use num_traits::{Signed, Zero};

use crate::num::Q;

/// Constraint sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    /// `a·x ≤ b`
    Le,
    /// `a·x ≥ b`
    Ge,
    /// `a·x = b`
    Eq,
}

/// One row `a·x (cmp) b`.
pub type Row = (Vec<Q>, Cmp, Q);

/// Returns some `x ≥ 0` satisfying every row, or `None`.
pub fn feasible(rows: &[Row], nvars: usize) -> Option<Vec<Q>> {
    let m = rows.len();
    if m == 0 {
        return Some(vec![Q::zero(); nvars]);
    }
    // Normalize to non-negative right-hand sides.
    let mut norm: Vec<(Vec<Q>, Cmp, Q)> = Vec::with_capacity(m);
    for (a, c, b) in rows {
        assert_eq!(a.len(), nvars, "row width");
        if b.is_negative() {
            let c = match c {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
            norm.push((a.iter().map(|x| -x).collect(), c, -b));
        } else {
            norm.push((a.clone(), *c, b.clone()));
        }
    }
    let nslack = norm.iter().filter(|r| r.1 != Cmp::Eq).count();
    let nart = norm.iter().filter(|r| r.1 != Cmp::Le).count();
    let width = nvars + nslack + nart;
    let first_art = nvars + nslack;

    let mut t: Vec<Vec<Q>> = vec![vec![Q::zero(); width + 1]; m];
    let mut basis = vec![0usize; m];
    let (mut s, mut a) = (nvars, first_art);
    for (r, (coef, c, b)) in norm.iter().enumerate() {
        t[r][..nvars].clone_from_slice(coef);
        t[r][width] = b.clone();
        match c {
            Cmp::Le => {
                t[r][s] = Q::from_integer(1.into());
                basis[r] = s;
                s += 1;
            }
            Cmp::Ge => {
                t[r][s] = Q::from_integer((-1).into());
                s += 1;
                t[r][a] = Q::from_integer(1.into());
                basis[r] = a;
                a += 1;
            }
            Cmp::Eq => {
                t[r][a] = Q::from_integer(1.into());
                basis[r] = a;
                a += 1;
            }
        }
    }

    // Objective: maximize -Σ artificials, kept as reduced costs `z`.
    let mut z = vec![Q::zero(); width + 1];
    for r in 0..m {
        if basis[r] >= first_art {
            for j in 0..=width {
                if j < first_art || j == width {
                    z[j] += &t[r][j];
                }
            }
        }
    }

    loop {
        let Some(e) = (0..width).find(|&j| z[j].is_positive()) else { break };
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..m {
            if t[r][e].is_positive() {
                let ratio = &t[r][width] / &t[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, lq)) => ratio < *lq || (ratio == *lq && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            // Unbounded direction on a bounded objective cannot happen.
            unreachable!("phase one is bounded")
        };
        pivot(&mut t, &mut z, p, e);
        basis[p] = e;
    }

    if !z[width].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); nvars];
    for r in 0..m {
        if basis[r] < nvars {
            x[basis[r]] = t[r][width].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], z: &mut [Q], p: usize, e: usize) {
    let piv = t[p][e].clone();
    for v in t[p].iter_mut() {
        *v /= &piv;
    }
    let prow = t[p].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == p || row[e].is_zero() {
            continue;
        }
        let f = row[e].clone();
        for (v, w) in row.iter_mut().zip(&prow) {
            if !w.is_zero() {
                *v -= &f * w;
            }
        }
    }
    if !z[e].is_zero() {
        let f = z[e].clone();
        for (v, w) in z.iter_mut().zip(&prow) {
            if !w.is_zero() {
                *v -= &f * w;
            }
        }
    }
}

/// Checks `x` against every row.
pub fn satisfies(rows: &[Row], x: &[Q]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && rows.iter().all(|(a, c, b)| {
            let lhs: Q = a.iter().zip(x).map(|(u, v)| u * v).sum();
            match c {
                Cmp::Le => lhs <= *b,
                Cmp::Ge => lhs >= *b,
                Cmp::Eq => lhs == *b,
            }
        })
}
