//! Small-instance solver working on the labeled problem.
//!
//! For every label permutation σ and every tree over the boundary atoms
//! (plus up to `max_steiner` free nodes), each label is routed along the
//! unique tree path from its source to its assigned sink. That fixes the
//! labeled multiplicity and hence the gauge on every edge, and the Steiner
//! nodes are then placed by convex minimisation. The candidate is projected
//! back to materials and scored by its energy. Results are the best within
//! this enumerated class.

pub mod grid;
pub mod steiner;
pub mod topology;

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::MultiMaterialCost;
use crate::error::{invalid, Error, Result};
use crate::geometry::dist;
use crate::layout::{label_layout, LabelLayout, LabelPermutation};
use crate::lifting::{lift, project};
use crate::model::{energy, mass, Boundary, Edge, LabeledNetwork, Network};
use crate::norm::{build_ball, NormBall};

pub use grid::{grid_oracle, solve_grid, GridResult, GridSpec, MAX_GRID_COMBINATIONS};
pub use steiner::{place_steiner_nodes, GeometryOptions, GeometryResult};
pub use topology::{enumerate_topologies, Topology};

/// Edges shorter than this fraction of the instance diameter are contracted.
pub const CONTRACT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub max_steiner: usize,
    /// Above this many permutations, σ is sampled instead of enumerated.
    pub max_perms: u128,
    pub seed: u64,
    /// Only try the identity permutation.
    pub irrigation: bool,
    pub tol: f64,
    pub geometry: GeometryOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_steiner: 2,
            max_perms: 10_000,
            seed: 0,
            irrigation: false,
            tol: 1e-9,
            geometry: GeometryOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub permutations: usize,
    pub sampled: bool,
    pub topologies: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceSummary {
    pub total_iterations: usize,
    pub nonconverged: usize,
    pub best_iterations: usize,
    pub best_converged: bool,
    /// Weighted tree length before contraction and projection.
    pub best_objective: f64,
    pub best_levels: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    /// The material network; its energy is `energy`.
    pub network: Network,
    /// A lift of `network`; its mass equals `energy`.
    pub labeled: LabeledNetwork,
    pub sigma: LabelPermutation,
    pub energy: f64,
    pub mass: f64,
    /// Winning tree and the permutation it was routed with.
    pub topology: Option<Topology>,
    pub routed_sigma: Option<LabelPermutation>,
    /// Vertices of `network` that are not boundary atoms.
    pub steiner_points: Vec<Vec<f64>>,
    pub stats: SolveStats,
    pub trace: TraceSummary,
}

/// Label multiplicities on each tree edge when label `j` runs from its
/// source atom to the sink atom assigned by σ.
pub fn route(topology: &Topology, layout: &LabelLayout, sigma: &LabelPermutation) -> Vec<Vec<i64>> {
    let n = layout.total();
    let mut mult = vec![vec![0i64; n]; topology.edges.len()];
    for j in 0..n {
        let src = layout.source_atom(j);
        let dst = layout.sink_atom(layout.apply(sigma, j));
        for (k, s) in topology.path(src, dst) {
            mult[k][j] += s;
        }
    }
    mult
}

/// Places the Steiner nodes of `topology` for fixed labeled multiplicities
/// and returns the resulting labeled network, with short edges contracted.
pub fn optimize_geometry(
    topology: &Topology,
    multiplicities: &[Vec<i64>],
    ball: &NormBall,
    terminals: &[Vec<f64>],
    opts: &GeometryOptions,
) -> Result<(LabeledNetwork, GeometryResult)> {
    if terminals.len() != topology.terminals || multiplicities.len() != topology.edges.len() {
        return invalid("topology, terminals and multiplicities do not match");
    }
    let mut weights = Vec::with_capacity(multiplicities.len());
    for m in multiplicities {
        weights.push(if m.iter().all(|&v| v == 0) { 0.0 } else { ball.gauge_int(m)? });
    }
    let g = place_steiner_nodes(topology, terminals, &weights, opts);
    let net = assemble(topology, multiplicities, &g.positions, ball.dim())?;
    Ok((LabeledNetwork::from_network(net), g))
}

/// Builds a network from placed tree nodes. Steiner nodes closer than the
/// contraction tolerance to another node are merged into it, terminals
/// first.
fn assemble(topology: &Topology, mult: &[Vec<i64>], positions: &[Vec<f64>], coeffs: usize) -> Result<Network> {
    let t = topology.terminals;
    let scale = steiner::diameter(&positions[..t]).max(1e-300);
    let n = topology.nodes();
    let mut rep: Vec<usize> = (0..n).collect();
    for v in t..n {
        if let Some(u) = (0..v).find(|&u| rep[u] == u && dist(&positions[u], &positions[v]) < CONTRACT_TOL * scale) {
            rep[v] = u;
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for v in 0..n {
        if rep[v] == v {
            index[v] = vertices.len();
            vertices.push(positions[v].clone());
        }
    }
    let find = |mut v: usize| {
        while rep[v] != v {
            v = rep[v];
        }
        index[v]
    };
    let edges: Vec<Edge> = topology
        .edges
        .iter()
        .zip(mult)
        .filter(|(_, m)| m.iter().any(|&x| x != 0))
        .map(|(&(a, b), m)| (find(a), find(b), m))
        .filter(|(a, b, _)| a != b)
        .map(|(a, b, m)| Edge::new(a, b, m.clone()))
        .collect();
    let dim = positions.first().map_or(0, |p| p.len());
    Network::normalized(dim, coeffs, vertices, edges)
}

/// Permutations to try: all of them when few enough, otherwise a seeded
/// sample; always in lexicographic order.
fn permutations(layout: &LabelLayout, opts: &SolveOptions) -> (Vec<LabelPermutation>, bool) {
    if opts.irrigation {
        return (vec![LabelPermutation::identity(layout.counts())], false);
    }
    let count = layout.permutation_count();
    if count <= opts.max_perms {
        return (layout.all_permutations().collect(), false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut set = BTreeSet::new();
    set.insert(LabelPermutation::identity(layout.counts()));
    let target = opts.max_perms.max(1) as usize;
    let mut attempts = 0usize;
    while set.len() < target && attempts < 20 * target {
        set.insert(layout.random_permutation(&mut rng));
        attempts += 1;
    }
    (set.into_iter().collect(), true)
}

/// Finds the least-energy network within the enumerated class.
pub fn solve_mmtp(boundary: &Boundary, cost: &MultiMaterialCost, opts: &SolveOptions) -> Result<SolveResult> {
    if boundary.coeffs() != cost.materials() {
        return invalid("boundary and cost disagree on the material count");
    }
    let layout = label_layout(boundary)?;
    let ball = build_ball(cost, &layout)?;
    let dim = boundary.dim();
    if boundary.is_empty() {
        let net = Network::empty(dim, cost.materials());
        let labeled = LabeledNetwork::from_network(Network::empty(dim, 0));
        return Ok(SolveResult {
            network: net,
            labeled,
            sigma: LabelPermutation::identity(layout.counts()),
            energy: 0.0,
            mass: 0.0,
            topology: None,
            routed_sigma: None,
            steiner_points: Vec::new(),
            stats: SolveStats::default(),
            trace: TraceSummary {
                best_converged: true,
                ..Default::default()
            },
        });
    }
    let terminals: Vec<Vec<f64>> = boundary.atoms().iter().map(|a| a.point.clone()).collect();
    let topologies = enumerate_topologies(terminals.len(), opts.max_steiner)?;
    let (sigmas, sampled) = permutations(&layout, opts);
    let mut gauge_cache: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut stats = SolveStats {
        permutations: sigmas.len(),
        sampled,
        topologies: topologies.len(),
        candidates: 0,
    };
    let mut trace = TraceSummary::default();
    let mut best: Option<(f64, Network, usize, usize, GeometryResult)> = None;
    for (si, sigma) in sigmas.iter().enumerate() {
        for topo in &topologies {
            let mult = route(topo, &layout, sigma);
            // A Steiner node whose edges all carry nothing is pointless.
            let adj = topo.adjacency();
            let idle = (topo.terminals..topo.nodes())
                .any(|v| adj[v].iter().filter(|&&(_, k)| mult[k].iter().any(|&x| x != 0)).count() < 3);
            if idle {
                continue;
            }
            let mut weights = Vec::with_capacity(mult.len());
            for m in &mult {
                let w = if m.iter().all(|&x| x == 0) {
                    0.0
                } else if let Some(&w) = gauge_cache.get(m) {
                    w
                } else {
                    let w = ball.gauge_int(m)?;
                    gauge_cache.insert(m.clone(), w);
                    w
                };
                weights.push(w);
            }
            let g = place_steiner_nodes(topo, &terminals, &weights, &opts.geometry);
            stats.candidates += 1;
            trace.total_iterations += g.iterations;
            if !g.converged {
                trace.nonconverged += 1;
            }
            let labeled = assemble(topo, &mult, &g.positions, layout.total())?;
            let material = project(&LabeledNetwork::from_network(labeled), &layout)?;
            let e = energy(&material, cost)?;
            let better = match &best {
                None => true,
                Some((b, ..)) => e < b - 1e-12 * (1.0 + b.abs()),
            };
            if better {
                best = Some((e, material, si, topo.id, g));
            }
        }
    }
    let Some((e, network, si, tid, g)) = best else {
        return Err(Error::Internal("no candidate network was produced".into()));
    };
    let (labeled, sigma) = lift(&network, &layout)?;
    let m = mass(&labeled, &ball)?;
    if (m - e).abs() > 1e-8 * (1.0 + e.abs()) {
        return Err(Error::Internal(format!("lifted mass {m} differs from energy {e}")));
    }
    trace.best_iterations = g.iterations;
    trace.best_converged = g.converged;
    trace.best_objective = g.objective;
    trace.best_levels = g.trace;
    let steiner_points = network
        .vertices()
        .iter()
        .filter(|p| boundary.atom_at(p).is_none())
        .cloned()
        .collect();
    Ok(SolveResult {
        network,
        labeled,
        sigma,
        energy: e,
        mass: m,
        topology: Some(topologies[tid].clone()),
        routed_sigma: Some(sigmas[si].clone()),
        steiner_points,
        stats,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{mailing, steiner};
    use crate::model::Atom;

    #[test]
    fn two_points_single_label() {
        let b = Boundary::new(
            2,
            1,
            vec![Atom::new(vec![0.0, 0.0], vec![-1]), Atom::new(vec![3.0, 4.0], vec![1])],
        )
        .unwrap();
        let r = solve_mmtp(&b, &steiner(), &SolveOptions::default()).unwrap();
        assert!((r.energy - 5.0).abs() < 1e-12);
        assert_eq!(r.network.edges().len(), 1);
        assert!(r.steiner_points.is_empty());
    }

    #[test]
    fn y_instance_has_a_junction() {
        let b = Boundary::new(
            2,
            2,
            vec![
                Atom::new(vec![0.0, 0.0], vec![-1, -1]),
                Atom::new(vec![2.0, 1.0], vec![1, 0]),
                Atom::new(vec![2.0, -1.0], vec![0, 1]),
            ],
        )
        .unwrap();
        let cost = mailing(2, 0.0).unwrap();
        let r = solve_mmtp(&b, &cost, &SolveOptions::default()).unwrap();
        assert_eq!(r.steiner_points.len(), 1);
        assert!((r.energy - r.mass).abs() < 1e-12);
        let v = energy(&r.network, &cost).unwrap();
        assert!(v < 5f64.sqrt() * 2.0);
    }
}
