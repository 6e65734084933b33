//! Exact phase-one simplex over the rationals, with Bland's rule so that it
//! terminates on degenerate problems.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A point `x ≥ 0` with `A x = b`, or `None` if there is none.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut r = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v.clone() } else { v.clone() };
        }
        r[n + i] = BigRational::from_integer(1.into());
        r[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        tab.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![BigRational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width - 1] / &tab[i][enter];
            leave = match leave {
                None => Some(i),
                Some(k) => {
                    let best = &tab[k][width - 1] / &tab[k][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[k]) {
                        Some(i)
                    } else {
                        Some(k)
                    }
                }
            };
        }
        // phase one is bounded below by zero, so a column always leaves
        let leave = leave.expect("phase-one objective is bounded");
        let piv = tab[leave][enter].clone();
        for v in tab[leave].iter_mut() {
            *v /= &piv;
        }
        let prow = tab[leave].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&prow) {
                *v -= &f * p;
            }
        }
        basis[leave] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = tab[i][width - 1].clone();
        }
    }
    Some(x)
}
