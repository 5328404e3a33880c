//! Exhaustive search over networks drawn on a small square grid.
//!
//! Every label picks a simple path on the grid graph from its source to
//! its assigned sink; the superposition is scored directly. The oracle
//! scores material energy with the cost itself and never touches the norm;
//! `solve_grid` scores labeled mass with the norm and prunes partial
//! superpositions.

use std::collections::HashMap;

use crate::cost::MultiMaterialCost;
use crate::error::{invalid, Error, Result};
use crate::layout::{label_layout, LabelLayout, LabelPermutation};
use crate::lifting::project;
use crate::model::{Boundary, Edge, LabeledNetwork, Network};
use crate::norm::build_ball;

pub const MAX_GRID_SIDE: usize = 5;
pub const MAX_GRID_LABELS: usize = 4;
/// Cap on path combinations the oracle is willing to visit.
pub const MAX_GRID_COMBINATIONS: u64 = 20_000_000;

/// `nx × ny` nodes at `origin + (i, j) · spacing`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    pub origin: [f64; 2],
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, spacing: f64) -> Self {
        GridSpec {
            origin: [0.0, 0.0],
            spacing,
            nx,
            ny,
        }
    }

    pub fn point(&self, node: usize) -> Vec<f64> {
        let (i, j) = (node % self.nx, node / self.nx);
        vec![
            self.origin[0] + i as f64 * self.spacing,
            self.origin[1] + j as f64 * self.spacing,
        ]
    }

    /// The grid node at `p`, if any.
    pub fn node_at(&self, p: &[f64]) -> Option<usize> {
        if p.len() != 2 {
            return None;
        }
        let fi = (p[0] - self.origin[0]) / self.spacing;
        let fj = (p[1] - self.origin[1]) / self.spacing;
        let (i, j) = (fi.round(), fj.round());
        if (fi - i).abs() > 1e-9 || (fj - j).abs() > 1e-9 || i < 0.0 || j < 0.0 {
            return None;
        }
        let (i, j) = (i as usize, j as usize);
        (i < self.nx && j < self.ny).then_some(j * self.nx + i)
    }

    /// Undirected edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                let v = j * self.nx + i;
                if i + 1 < self.nx {
                    out.push((v, v + 1));
                }
                if j + 1 < self.ny {
                    out.push((v, v + self.nx));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct GridResult {
    pub value: f64,
    /// Material network of the best superposition.
    pub network: Network,
    /// Labeled network, when the search was done in label space.
    pub labeled: Option<LabeledNetwork>,
    pub sigma: LabelPermutation,
    /// Complete or partial superpositions visited.
    pub explored: u64,
}

type GridPath = Vec<(usize, i64)>;

struct GridGraph {
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize)>,
}

impl GridGraph {
    fn new(grid: &GridSpec) -> Self {
        let edges = grid.edges();
        let mut adj = vec![Vec::new(); grid.nx * grid.ny];
        for (k, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        GridGraph { adj, edges }
    }

    /// Every simple path from `from` to `to` as signed edge steps.
    fn simple_paths(&self, from: usize, to: usize) -> Vec<GridPath> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.adj.len()];
        let mut steps = Vec::new();
        self.extend(from, to, &mut on_path, &mut steps, &mut out);
        out
    }

    fn extend(&self, v: usize, to: usize, on_path: &mut [bool], steps: &mut GridPath, out: &mut Vec<GridPath>) {
        if v == to {
            out.push(steps.clone());
            return;
        }
        on_path[v] = true;
        for &(u, k) in &self.adj[v] {
            if !on_path[u] {
                let sign = if self.edges[k].0 == v { 1 } else { -1 };
                steps.push((k, sign));
                self.extend(u, to, on_path, steps, out);
                steps.pop();
            }
        }
        on_path[v] = false;
    }
}

struct Prepared {
    layout: LabelLayout,
    graph: GridGraph,
    nodes: Vec<usize>,
}

fn prepare(boundary: &Boundary, cost: &MultiMaterialCost, grid: &GridSpec) -> Result<Prepared> {
    if grid.nx > MAX_GRID_SIDE || grid.ny > MAX_GRID_SIDE {
        return Err(Error::Resource(format!("grids are limited to {MAX_GRID_SIDE}x{MAX_GRID_SIDE}")));
    }
    if grid.nx == 0 || grid.ny == 0 || !(grid.spacing > 0.0) {
        return invalid("empty grid");
    }
    if boundary.dim() != 2 {
        return invalid("grid search needs a planar boundary");
    }
    if boundary.coeffs() != cost.materials() {
        return invalid("boundary and cost disagree on the material count");
    }
    let layout = label_layout(boundary)?;
    if layout.total() > MAX_GRID_LABELS {
        return Err(Error::Resource(format!("grid search is limited to {MAX_GRID_LABELS} labels")));
    }
    let nodes = boundary
        .atoms()
        .iter()
        .map(|a| grid.node_at(&a.point).ok_or_else(|| Error::Invalid("boundary atom is not a grid node".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared {
        layout,
        graph: GridGraph::new(grid),
        nodes,
    })
}

/// Paths for every label under σ, sharing the enumeration per node pair.
fn label_paths(
    p: &Prepared,
    sigma: &LabelPermutation,
    cache: &mut HashMap<(usize, usize), std::rc::Rc<Vec<GridPath>>>,
) -> Vec<std::rc::Rc<Vec<GridPath>>> {
    (0..p.layout.total())
        .map(|j| {
            let a = p.nodes[p.layout.source_atom(j)];
            let b = p.nodes[p.layout.sink_atom(p.layout.apply(sigma, j))];
            cache
                .entry((a, b))
                .or_insert_with(|| std::rc::Rc::new(p.graph.simple_paths(a, b)))
                .clone()
        })
        .collect()
}

fn grid_network(grid: &GridSpec, edges: &[(usize, usize)], mult: &[Vec<i64>], coeffs: usize) -> Result<Network> {
    let vertices: Vec<Vec<f64>> = (0..grid.nx * grid.ny).map(|v| grid.point(v)).collect();
    let list = edges
        .iter()
        .zip(mult)
        .filter(|(_, m)| m.iter().any(|&x| x != 0))
        .map(|(&(a, b), m)| Edge::new(a, b, m.clone()))
        .collect();
    Network::normalized(2, coeffs, vertices, list)
}

/// Least material energy over all superpositions of simple grid paths,
/// over every σ.
pub fn grid_oracle(boundary: &Boundary, cost: &MultiMaterialCost, grid: &GridSpec) -> Result<GridResult> {
    let p = prepare(boundary, cost, grid)?;
    let m = cost.materials();
    let ne = p.graph.edges.len();
    let mut cache = HashMap::new();
    let sigmas: Vec<LabelPermutation> = p.layout.all_permutations().collect();
    let mut plans = Vec::with_capacity(sigmas.len());
    let mut total: u64 = 0;
    for sigma in &sigmas {
        let paths = label_paths(&p, sigma, &mut cache);
        let count = paths.iter().fold(1u64, |acc, ps| acc.saturating_mul(ps.len() as u64));
        total = total.saturating_add(count);
        plans.push(paths);
    }
    if total > MAX_GRID_COMBINATIONS {
        return Err(Error::Resource(format!("{total} path combinations exceed the oracle limit")));
    }
    let mut costs: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut best: Option<(f64, Vec<Vec<i64>>, usize)> = None;
    let mut explored = 0u64;
    for (si, paths) in plans.iter().enumerate() {
        let mut mult = vec![vec![0i64; m]; ne];
        let mut choice = vec![0usize; paths.len()];
        if paths.iter().any(|ps| ps.is_empty()) {
            continue;
        }
        // Odometer over one path per label.
        loop {
            for (j, &c) in choice.iter().enumerate() {
                let i = p.layout.material_of(j);
                for &(k, s) in &paths[j][c] {
                    mult[k][i] += s;
                }
            }
            explored += 1;
            let mut value = 0.0;
            for theta in &mult {
                if theta.iter().any(|&x| x != 0) {
                    let c = match costs.get(theta) {
                        Some(&c) => c,
                        None => {
                            let c = cost.evaluate(theta)?;
                            costs.insert(theta.clone(), c);
                            c
                        }
                    };
                    value += grid.spacing * c;
                }
            }
            if best.as_ref().is_none_or(|(b, ..)| value < b - 1e-12 * (1.0 + b.abs())) {
                best = Some((value, mult.clone(), si));
            }
            mult.iter_mut().for_each(|t| t.iter_mut().for_each(|x| *x = 0));
            let mut pos = choice.len();
            let done = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < paths[pos].len() {
                    break false;
                }
                choice[pos] = 0;
            };
            if done {
                break;
            }
        }
    }
    let Some((value, mult, si)) = best else {
        return Err(Error::Internal("no grid path combination".into()));
    };
    Ok(GridResult {
        value,
        network: grid_network(grid, &p.graph.edges, &mult, m)?,
        labeled: None,
        sigma: sigmas[si].clone(),
        explored,
    })
}

/// Least labeled mass over superpositions of simple grid paths, by
/// depth-first search with the partial mass as a bound. Adding a label to
/// an edge only grows the multiplicity along the partial order, so the
/// partial mass never decreases.
pub fn solve_grid(boundary: &Boundary, cost: &MultiMaterialCost, grid: &GridSpec) -> Result<GridResult> {
    let p = prepare(boundary, cost, grid)?;
    let ball = build_ball(cost, &p.layout)?;
    let n = p.layout.total();
    let ne = p.graph.edges.len();
    let mut cache = HashMap::new();
    let sigmas: Vec<LabelPermutation> = p.layout.all_permutations().collect();
    struct Search<'a> {
        paths: Vec<std::rc::Rc<Vec<GridPath>>>,
        mult: Vec<Vec<i64>>,
        gauges: HashMap<Vec<i64>, f64>,
        ball: &'a crate::norm::NormBall,
        h: f64,
        best: Option<(f64, Vec<Vec<i64>>, usize)>,
        sigma: usize,
        explored: u64,
    }
    impl Search<'_> {
        fn gauge(&mut self, k: usize) -> Result<f64> {
            let theta = &self.mult[k];
            if theta.iter().all(|&x| x == 0) {
                return Ok(0.0);
            }
            if let Some(&g) = self.gauges.get(theta) {
                return Ok(g);
            }
            let g = self.ball.gauge_int(theta)?;
            self.gauges.insert(theta.clone(), g);
            Ok(g)
        }

        fn go(&mut self, j: usize, partial: f64) -> Result<()> {
            self.explored += 1;
            if let Some((b, ..)) = &self.best {
                if partial >= b - 1e-12 * (1.0 + b.abs()) {
                    return Ok(());
                }
            }
            if j == self.paths.len() {
                self.best = Some((partial, self.mult.clone(), self.sigma));
                return Ok(());
            }
            let paths = self.paths[j].clone();
            for path in paths.iter() {
                let mut delta = 0.0;
                for &(k, s) in path {
                    let before = self.gauge(k)?;
                    self.mult[k][j] += s;
                    delta += self.h * (self.gauge(k)? - before);
                }
                self.go(j + 1, partial + delta)?;
                for &(k, s) in path {
                    self.mult[k][j] -= s;
                }
            }
            Ok(())
        }
    }
    let mut search = Search {
        paths: Vec::new(),
        mult: vec![vec![0i64; n]; ne],
        gauges: HashMap::new(),
        ball: &ball,
        h: grid.spacing,
        best: None,
        sigma: 0,
        explored: 0,
    };
    for (si, sigma) in sigmas.iter().enumerate() {
        search.paths = label_paths(&p, sigma, &mut cache);
        search.sigma = si;
        search.go(0, 0.0)?;
    }
    let Some((value, mult, si)) = search.best else {
        return Err(Error::Internal("no grid path combination".into()));
    };
    let labeled = LabeledNetwork::from_network(grid_network(grid, &p.graph.edges, &mult, n)?);
    let network = project(&labeled, &p.layout)?;
    Ok(GridResult {
        value,
        network,
        labeled: Some(labeled),
        sigma: sigmas[si].clone(),
        explored: search.explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{gilbert_steiner, steiner};
    use crate::model::Atom;

    #[test]
    fn adjacent_nodes() {
        let b = Boundary::new(2, 1, vec![Atom::new(vec![0.0, 0.0], vec![-1]), Atom::new(vec![1.0, 0.0], vec![1])]).unwrap();
        let g = GridSpec::new(3, 3, 1.0);
        let r = grid_oracle(&b, &steiner(), &g).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        let s = solve_grid(&b, &steiner(), &g).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn corner_paths_counted() {
        let g = GridGraph::new(&GridSpec::new(3, 3, 1.0));
        assert_eq!(g.simple_paths(0, 8).len(), 12);
    }

    #[test]
    fn rejects_off_grid_atoms() {
        let b = Boundary::new(2, 1, vec![Atom::new(vec![0.5, 0.0], vec![-1]), Atom::new(vec![1.0, 0.0], vec![1])]).unwrap();
        assert!(grid_oracle(&b, &gilbert_steiner(0.5).unwrap(), &GridSpec::new(3, 3, 1.0)).is_err());
        assert!(matches!(
            grid_oracle(&b, &steiner(), &GridSpec::new(6, 3, 1.0)),
            Err(Error::Resource(_))
        ));
    }
}
