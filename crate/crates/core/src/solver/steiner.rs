//! Placement of Steiner nodes for a fixed tree and fixed edge weights.
//!
//! The objective `Σ w_e |x_head − x_tail|` is convex in the free
//! coordinates. It is minimised by majorise-minimise steps on the smoothed
//! objective `Σ w_e sqrt(|Δ_e|² + ε²)` (a Weiszfeld iteration for trees),
//! with `ε` driven down geometrically.

use crate::geometry::{dist, norm, sub};
use crate::solver::topology::Topology;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryOptions {
    pub max_iterations: usize,
    /// Stop a smoothing level when no coordinate moves more than this,
    /// relative to the instance diameter.
    pub step_tol: f64,
}

impl Default for GeometryOptions {
    fn default() -> Self {
        GeometryOptions {
            max_iterations: 100_000,
            step_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryResult {
    /// Coordinates of every node, terminals first.
    pub positions: Vec<Vec<f64>>,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective at the end of each smoothing level.
    pub trace: Vec<f64>,
}

pub fn objective(topology: &Topology, weights: &[f64], positions: &[Vec<f64>]) -> f64 {
    topology
        .edges
        .iter()
        .zip(weights)
        .map(|(&(a, b), &w)| if w == 0.0 { 0.0 } else { w * dist(&positions[a], &positions[b]) })
        .sum()
}

/// Minimises the weighted length of `topology` over its Steiner nodes.
/// `weights[k]` is the per-length cost of edge `k`.
pub fn place_steiner_nodes(
    topology: &Topology,
    terminals: &[Vec<f64>],
    weights: &[f64],
    opts: &GeometryOptions,
) -> GeometryResult {
    let t = topology.terminals;
    let s = topology.steiner;
    let dim = terminals.first().map_or(0, |p| p.len());
    let scale = diameter(terminals).max(f64::MIN_POSITIVE);
    let mut pos: Vec<Vec<f64>> = terminals.to_vec();
    if s == 0 {
        let obj = objective(topology, weights, &pos);
        return GeometryResult {
            positions: pos,
            objective: obj,
            iterations: 0,
            converged: true,
            trace: vec![obj],
        };
    }
    // Start from the unit-weight harmonic placement, which puts each Steiner
    // node at the average of its neighbours.
    let unit = vec![1.0; topology.edges.len()];
    pos.extend(std::iter::repeat_n(vec![0.0; dim], s));
    let start = solve_step(topology, &unit, &pos, None, 0.0);
    pos = start;
    let mut iterations = 0;
    let mut converged = true;
    let mut trace = Vec::new();
    let mut eps = 1e-2 * scale;
    let floor = 1e-13 * scale;
    loop {
        let mut level_done = false;
        while iterations < opts.max_iterations {
            iterations += 1;
            let next = solve_step(topology, weights, &pos, Some(eps), 1e-12);
            let moved = (t..t + s).map(|v| dist(&next[v], &pos[v])).fold(0.0, f64::max);
            pos = next;
            if moved <= opts.step_tol * scale {
                level_done = true;
                break;
            }
        }
        trace.push(objective(topology, weights, &pos));
        if !level_done {
            converged = false;
            break;
        }
        if eps <= floor {
            break;
        }
        eps = (eps * 1e-2).max(floor);
    }
    GeometryResult {
        objective: objective(topology, weights, &pos),
        positions: pos,
        iterations,
        converged,
        trace,
    }
}

/// One majorise-minimise step: weights `w_e / d_e` turn the objective into
/// a quadratic whose minimiser solves a small Laplacian system. With
/// `eps = None` the weights are used as they are. `prox` adds a tiny pull
/// toward the current point so that nodes touching only zero-weight edges
/// stay put.
fn solve_step(topology: &Topology, weights: &[f64], pos: &[Vec<f64>], eps: Option<f64>, prox: f64) -> Vec<Vec<f64>> {
    let t = topology.terminals;
    let s = topology.steiner;
    let dim = pos[0].len();
    let mut a = vec![vec![0.0; s]; s];
    let mut b = vec![vec![0.0; dim]; s];
    let mut total = 0.0;
    let mut coef = Vec::with_capacity(topology.edges.len());
    for (&(u, v), &w) in topology.edges.iter().zip(weights) {
        let c = match eps {
            Some(e) => {
                let d = norm(&sub(&pos[u], &pos[v]));
                w / (d * d + e * e).sqrt()
            }
            None => w,
        };
        total += c;
        coef.push(c);
    }
    let mu = prox * total.max(1.0) + f64::MIN_POSITIVE;
    for v in 0..s {
        a[v][v] += mu;
        for k in 0..dim {
            b[v][k] += mu * pos[t + v][k];
        }
    }
    for (&(u, v), &c) in topology.edges.iter().zip(&coef) {
        // u < v, so a Steiner node is never paired with a smaller terminal
        // as its second endpoint.
        match (u >= t, v >= t) {
            (true, true) => {
                let (i, j) = (u - t, v - t);
                a[i][i] += c;
                a[j][j] += c;
                a[i][j] -= c;
                a[j][i] -= c;
            }
            (false, true) => {
                let j = v - t;
                a[j][j] += c;
                for k in 0..dim {
                    b[j][k] += c * pos[u][k];
                }
            }
            (true, false) => {
                let i = u - t;
                a[i][i] += c;
                for k in 0..dim {
                    b[i][k] += c * pos[v][k];
                }
            }
            (false, false) => {}
        }
    }
    let x = solve_dense(a, b);
    let mut out = pos.to_vec();
    for v in 0..s {
        out[t + v] = x[v].clone();
    }
    out
}

/// Gaussian elimination with partial pivoting for a symmetric positive
/// definite system with several right-hand sides.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        let piv = a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / piv;
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                for k in 0..b[r].len() {
                    b[r][k] -= f * b[col][k];
                }
            }
        }
    }
    let dim = b.first().map_or(0, |r| r.len());
    let mut x = vec![vec![0.0; dim]; n];
    for r in (0..n).rev() {
        for k in 0..dim {
            let mut acc = b[r][k];
            for c in r + 1..n {
                acc -= a[r][c] * x[c][k];
            }
            x[r][k] = acc / a[r][r];
        }
    }
    x
}

pub fn diameter(points: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(dist(p, q));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::topology::enumerate_topologies;

    #[test]
    fn fermat_point_of_equilateral_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let terms = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]];
        let star = &enumerate_topologies(3, 1).unwrap()[3];
        let r = place_steiner_nodes(star, &terms, &[1.0; 3], &GeometryOptions::default());
        assert!(r.converged);
        assert!(dist(&r.positions[3], &[0.5, h / 3.0]) < 1e-8);
        assert!((r.objective - 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn heavy_edge_pulls_node_onto_terminal() {
        // Weight 3 on one arm exceeds the other two combined.
        let terms = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let star = &enumerate_topologies(3, 1).unwrap()[3];
        let r = place_steiner_nodes(star, &terms, &[3.0, 1.0, 1.0], &GeometryOptions::default());
        assert!(dist(&r.positions[3], &terms[0]) < 1e-9, "{:?}", r.positions[3]);
        assert!((r.objective - 2.0).abs() < 1e-9);
    }
}
