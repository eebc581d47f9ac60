//! Exact feasibility of `A x = b, x ≥ 0` by phase-one simplex with Bland's
//! rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub(crate) fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Q> = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Q::one() } else { Q::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cost = |j: usize| if j >= n { Q::one() } else { Q::zero() };
    loop {
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost(j);
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= n {
                    r -= &t[i][j];
                }
            }
            r.is_negative()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // the phase-one objective is bounded below, so some row limits the step
        let (p, _) = leave.expect("bounded phase-one problem");
        let pivot = t[p][j].clone();
        for v in t[p].iter_mut() {
            *v = &*v / &pivot;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &factor * pv;
            }
        }
        basis[p] = j;
    }
    basis.iter().enumerate().all(|(i, &bi)| bi < n || t[i][width - 1].is_zero())
}
