//! Exact expected cover time of the nearest-neighbor walk on Z_n.
//!
//! The covered set of a cycle walk is always a contiguous arc, so the walk
//! state reduces to (position inside the arc, arc length). Levels are solved
//! backward in arc length; each level is a tridiagonal system.

use crate::error::{Error, Result};

/// Expected cover time via dynamic programming over O(n²) arc states.
pub fn exact_cover_cycle(n: u64) -> Result<f64> {
    if !(2..=64).contains(&n) {
        return Err(Error::Validation(format!(
            "exact cycle cover time supports 2 <= n <= 64, got {n}"
        )));
    }
    let n = n as usize;
    // level[k][x] = expected remaining time with k covered, walker at arc
    // position x (0-indexed from the arc's left end). Level n is zero.
    let mut next: Vec<f64> = vec![0.0; n + 1];
    for k in (1..n).rev() {
        // T[x] - T[x±1]/2 = 1 (+ boundary terms from level k+1):
        //   x = 0:    left step extends to (0, k+1)
        //   x = k-1:  right step extends to (k, k+1)
        let mut rhs = vec![1.0; k];
        rhs[0] += 0.5 * next[0];
        rhs[k - 1] += 0.5 * next[k];
        next = solve_tridiagonal(k, &rhs);
    }
    Ok(next[0])
}

/// Thomas algorithm for the system T[x] - 0.5 T[x-1] - 0.5 T[x+1] = rhs[x]
/// with the off-diagonal terms dropped at the ends.
fn solve_tridiagonal(k: usize, rhs: &[f64]) -> Vec<f64> {
    let mut diag = vec![1.0; k];
    let mut r = rhs.to_vec();
    // forward elimination of the subdiagonal (-1/2)
    for x in 1..k {
        let w = -0.5 / diag[x - 1];
        diag[x] -= w * -0.5;
        r[x] -= w * r[x - 1];
    }
    let mut t = vec![0.0; k];
    t[k - 1] = r[k - 1] / diag[k - 1];
    for x in (0..k - 1).rev() {
        t[x] = (r[x] + 0.5 * t[x + 1]) / diag[x];
    }
    t
}
