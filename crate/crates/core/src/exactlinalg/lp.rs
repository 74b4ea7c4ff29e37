//! Exact rational feasibility via phase-one simplex with Bland's rule.
//!
//! The only question asked here is emptiness of systems
//! `<a, x> >= 0` (closed), `<b, x> >= 1` (strict, after homogenization),
//! `<c, x> = 0` (equations) for a free vector `x`. Since all our systems are
//! homogeneous cones, a strict inequality `<b, x> > 0` has a solution iff
//! `<b, x> >= 1` does, so this single shape decides emptiness of half-open
//! cones exactly.

use crate::numeric::{Int, Rat};
use num::{One, Signed, Zero};

/// Witness for the system `closed >= 0`, `strict >= 1`; `None` when empty.
pub fn feasible_point(closed: &[Vec<Int>], strict: &[Vec<Int>]) -> Option<Vec<Rat>> {
    feasible_point_eq(closed, strict, &[])
}

/// Same with additional equations `<c, x> = 0`.
pub fn feasible_point_eq(
    closed: &[Vec<Int>],
    strict: &[Vec<Int>],
    equations: &[Vec<Int>],
) -> Option<Vec<Rat>> {
    let n = closed
        .iter()
        .chain(strict)
        .chain(equations)
        .map(|v| v.len())
        .next()
        .unwrap_or(0);
    if n == 0 {
        // empty-dimensional space: feasible iff there is no strict constraint
        // (a strict row of length 0 demands 0 >= 1)
        return if strict.is_empty() { Some(vec![]) } else { None };
    }
    for v in closed.iter().chain(strict).chain(equations) {
        assert_eq!(v.len(), n, "mixed dimensions in constraint system");
    }

    // Variables: x+ (n), x- (n), slack per inequality row, then artificials.
    // Rows: closed:   a.x+ - a.x- - s = 0
    //       strict:   b.x+ - b.x- - s = 1
    //       equation: c.x+ - c.x-     = 0
    let rows = closed.len() + strict.len() + equations.len();
    let slacks = closed.len() + strict.len();
    let structural = 2 * n + slacks;
    let total = structural + rows; // + artificials

    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Rat> = Vec::with_capacity(rows);
    let mut slack_idx = 0;
    for (kind, v) in closed
        .iter()
        .map(|v| (0u8, v))
        .chain(strict.iter().map(|v| (1u8, v)))
        .chain(equations.iter().map(|v| (2u8, v)))
    {
        let mut row = vec![Rat::zero(); total];
        for (j, a) in v.iter().enumerate() {
            row[j] = Rat::from_integer(a.clone());
            row[n + j] = Rat::from_integer(-a.clone());
        }
        if kind != 2 {
            row[2 * n + slack_idx] = -Rat::one();
            slack_idx += 1;
        }
        rhs.push(if kind == 1 { Rat::one() } else { Rat::zero() });
        tab.push(row);
    }
    // artificial columns (identity)
    for (i, row) in tab.iter_mut().enumerate() {
        row[structural + i] = Rat::one();
    }

    // objective: minimize sum of artificials. Work with reduced costs derived
    // from basis = artificials.
    let mut basis: Vec<usize> = (0..rows).map(|i| structural + i).collect();

    // cost row: c_j - z_j where c = 1 on artificials. z_j = sum over rows of tab.
    let mut cost = vec![Rat::zero(); total];
    let mut obj = Rat::zero();
    for j in 0..total {
        let mut z = Rat::zero();
        for row in tab.iter() {
            z += &row[j];
        }
        cost[j] = if j >= structural { Rat::one() } else { Rat::zero() } - z;
    }
    for b in &rhs {
        obj -= b;
    }

    loop {
        // Bland: entering variable = smallest index with negative reduced cost
        let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) else {
            break;
        };
        // ratio test with Bland tie-break on basis variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..rows {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            // unbounded phase-one objective cannot happen (bounded below by 0),
            // but guard anyway
            return None;
        };
        // pivot
        let piv = tab[li][enter].clone();
        let inv = piv.recip();
        for j in 0..total {
            let scaled = &tab[li][j] * &inv;
            tab[li][j] = scaled;
        }
        let scaled_rhs = &rhs[li] * &inv;
        rhs[li] = scaled_rhs;
        for i in 0..rows {
            if i != li && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for j in 0..total {
                    let delta = &f * &tab[li][j];
                    tab[i][j] = &tab[i][j] - &delta;
                }
                let delta = &f * &rhs[li];
                rhs[i] = &rhs[i] - &delta;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..total {
                let delta = &f * &tab[li][j];
                cost[j] = &cost[j] - &delta;
            }
            let delta = &f * &rhs[li];
            obj = &obj - &delta;
        }
        basis[li] = enter;
    }

    if !obj.is_zero() {
        return None; // infeasible: artificials cannot all vanish
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] += &rhs[i];
        } else if b < 2 * n {
            x[b - n] -= &rhs[i];
        }
    }
    // exact verification of the witness
    debug_assert!(check_witness(closed, strict, equations, &x));
    Some(x)
}

fn check_witness(
    closed: &[Vec<Int>],
    strict: &[Vec<Int>],
    equations: &[Vec<Int>],
    x: &[Rat],
) -> bool {
    let dot = |v: &[Int]| -> Rat {
        v.iter()
            .zip(x)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    };
    closed.iter().all(|v| !dot(v).is_negative())
        && strict.iter().all(|v| dot(v) >= Rat::one())
        && equations.iter().all(|v| dot(v).is_zero())
}
