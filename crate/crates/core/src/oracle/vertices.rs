//! Brute-force enumeration of the optimal vertices of the defender polyhedron.
//!
//! The polyhedron lives in `(beta, z)` space: `sum beta = 1`, `beta >= 0` and
//! `(Lambda beta)_i - z >= 0` for every level. A vertex is fixed by choosing
//! `n + 1` of the `2n + 1` inequalities as tight, so small games can be
//! enumerated exhaustively without any knowledge of the closed form.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::reduction::ReducedGame;
use crate::solver::{GameMatrices, VertexType};

/// Largest level count accepted by [`optimal_vertices`].
pub const VERTEX_ENUMERATION_LIMIT: usize = 12;

const SOLVE_TOL: f64 = 1e-9;
const CONDITION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedronVertex {
    pub beta: Vec<f64>,
    pub z: f64,
    /// `z - mu' beta`.
    pub objective: f64,
    /// 1-based levels whose inequality is tight.
    pub tight_rows: Vec<usize>,
}

/// Every optimal vertex of `max z - mu' beta` over the polyhedron.
pub fn optimal_vertices(m: &GameMatrices) -> Result<Vec<PolyhedronVertex>> {
    let n = m.levels();
    if n > VERTEX_ENUMERATION_LIMIT {
        return Err(Error::SizeLimit { what: "reward levels", size: n, limit: VERTEX_ENUMERATION_LIMIT });
    }
    let dim = n + 2;
    // Constraint c < n: row c of Lambda; constraint c >= n: beta_{c - n} >= 0.
    let constraint = |c: usize| -> Vec<f64> {
        let mut a = vec![0.0; dim];
        if c < n {
            for (j, x) in a.iter_mut().take(n + 1).enumerate() {
                *x = m.lambda[(c, j)];
            }
            a[n + 1] = -1.0;
        } else {
            a[c - n] = 1.0;
        }
        a
    };

    let mut vertices: Vec<PolyhedronVertex> = Vec::new();
    for chosen in (0..2 * n + 1).combinations(n + 1) {
        let mut a = DMatrix::zeros(dim, dim);
        let mut b = DVector::zeros(dim);
        for (r, &c) in chosen.iter().enumerate() {
            for (j, v) in constraint(c).into_iter().enumerate() {
                a[(r, j)] = v;
            }
        }
        for j in 0..=n {
            a[(n + 1, j)] = 1.0;
        }
        b[n + 1] = 1.0;

        let lu = a.full_piv_lu();
        let diag: Vec<f64> = lu.u().diagonal().iter().map(|x| x.abs()).collect();
        let max = diag.iter().copied().fold(0.0, f64::max);
        let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
        if max == 0.0 || min / max < CONDITION_TOL {
            continue;
        }
        let Some(x) = lu.solve(&b) else { continue };
        let beta: Vec<f64> = (0..=n).map(|j| x[j]).collect();
        let z = x[n + 1];
        if beta.iter().any(|&w| w < -SOLVE_TOL) {
            continue;
        }
        let rows: Vec<f64> = (0..n).map(|i| (0..=n).map(|j| m.lambda[(i, j)] * beta[j]).sum()).collect();
        if rows.iter().any(|&r| r - z < -SOLVE_TOL * (1.0 + z.abs())) {
            continue;
        }
        let beta: Vec<f64> = beta.into_iter().map(|w| w.max(0.0)).collect();
        if vertices.iter().any(|v| v.beta.iter().zip(&beta).all(|(p, q)| (p - q).abs() <= SOLVE_TOL)) {
            continue;
        }
        let penalty: f64 = m.mu.iter().zip(&beta).map(|(u, w)| u * w).sum();
        let tight_rows = rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| (r - z).abs() <= SOLVE_TOL * (1.0 + z.abs()))
            .map(|(i, _)| i + 1)
            .collect();
        vertices.push(PolyhedronVertex { beta, z, objective: z - penalty, tight_rows });
    }

    let best = vertices.iter().map(|v| v.objective).fold(f64::NEG_INFINITY, f64::max);
    vertices.retain(|v| (v.objective - best).abs() <= SOLVE_TOL * (1.0 + best.abs()));
    Ok(vertices)
}

/// True when the tight rows are exactly `k..=n` for some `k`.
pub fn is_contiguous_suffix(tight_rows: &[usize], n: usize) -> bool {
    match tight_rows.first() {
        Some(&k) => tight_rows.iter().copied().eq(k..=n),
        None => false,
    }
}

/// All `(s, type)` shapes that `beta` matches, derived directly from the rewards.
///
/// Shape `(s, I)`: zero below `s`, `(r_i - r_{i-1}) / c_d` on `s+1..=n`, the
/// rest on `s` and nothing on never-classify. Shape `(s, II)`: the same
/// interior, nothing on `s` and the rest on never-classify.
pub fn vertex_shapes(reduced: &ReducedGame, beta: &[f64], tol: f64) -> Vec<(usize, VertexType)> {
    let n = reduced.len();
    let r = reduced.rewards();
    let c_d = reduced.params().detection_cost;
    let mut out = Vec::new();
    for s in 1..=n {
        let interior_ok = (1..s).all(|i| beta[i - 1].abs() <= tol)
            && ((s + 1)..=n).all(|i| (beta[i - 1] - (r[i - 1] - r[i - 2]) / c_d).abs() <= tol);
        if !interior_ok {
            continue;
        }
        if beta[n].abs() <= tol {
            out.push((s, VertexType::TypeI));
        }
        if beta[s - 1].abs() <= tol {
            out.push((s, VertexType::TypeII));
        }
    }
    out
}
