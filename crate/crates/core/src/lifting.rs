//! Integer flow decomposition and the two conversions between material
//! networks (`Z^m`) and labeled networks (`Z^N`).

use crate::error::{invalid, Error, Result};
use crate::layout::{LabelLayout, LabelPermutation};
use crate::model::{boundary_of, Edge, LabeledNetwork, Network};

/// A simple path or cycle in the support of one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowPath {
    /// Visited vertices; a cycle repeats its first vertex at the end.
    pub vertices: Vec<usize>,
    /// Traversed edges with `+1` when walked from tail to head.
    pub steps: Vec<(usize, i8)>,
}

impl FlowPath {
    pub fn length(&self, net: &Network) -> f64 {
        self.steps.iter().map(|&(e, _)| net.edge_length(e)).sum()
    }
}

/// Unit paths and unit cycles whose superposition is one coordinate of a
/// network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub coordinate: usize,
    pub paths: Vec<FlowPath>,
    pub cycles: Vec<FlowPath>,
}

impl Decomposition {
    /// Re-superposes the paths (and cycles, if asked) onto the edges.
    pub fn superpose(&self, edges: usize, with_cycles: bool) -> Vec<i64> {
        let mut out = vec![0i64; edges];
        let all = self.paths.iter().chain(self.cycles.iter().filter(|_| with_cycles));
        for p in all {
            for &(e, s) in &p.steps {
                out[e] += s as i64;
            }
        }
        out
    }
}

/// Decomposes coordinate `coord` into unit source-to-sink paths, then unit
/// cycles. Sources are taken in vertex order; each walk follows the
/// lowest-index edge that still carries flow out of the current vertex.
pub fn flow_decompose(net: &Network, coord: usize) -> Result<Decomposition> {
    if coord >= net.coeffs() {
        return invalid(format!("coordinate {coord} out of range"));
    }
    let supply = vertex_supply(net, coord);
    let sources: Vec<usize> = supply
        .iter()
        .enumerate()
        .flat_map(|(v, &s)| std::iter::repeat_n(v, if s < 0 { s.unsigned_abs() as usize } else { 0 }))
        .collect();
    decompose_with_sources(net, coord, &sources)
}

/// Net inflow at every vertex for one coordinate.
fn vertex_supply(net: &Network, coord: usize) -> Vec<i64> {
    let mut w = vec![0i64; net.vertices().len()];
    for e in net.edges() {
        w[e.head] += e.multiplicity[coord];
        w[e.tail] -= e.multiplicity[coord];
    }
    w
}

/// Decomposition with an explicit list of path start vertices, one entry
/// per unit. The list must match the coordinate's negative boundary.
fn decompose_with_sources(net: &Network, coord: usize, sources: &[usize]) -> Result<Decomposition> {
    let nv = net.vertices().len();
    let mut residual: Vec<i64> = net.edges().iter().map(|e| e.multiplicity[coord]).collect();
    let mut demand: Vec<i64> = vertex_supply(net, coord).into_iter().map(|w| w.max(0)).collect();
    let mut supply_left: Vec<i64> = vertex_supply(net, coord).into_iter().map(|w| (-w).max(0)).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (k, e) in net.edges().iter().enumerate() {
        incident[e.tail].push(k);
        incident[e.head].push(k);
    }
    let edges = net.edges();
    let step_from = |residual: &[i64], v: usize| -> Option<(usize, i8, usize)> {
        incident[v].iter().find_map(|&k| {
            let e = &edges[k];
            if e.tail == v && residual[k] > 0 {
                Some((k, 1, e.head))
            } else if e.head == v && residual[k] < 0 {
                Some((k, -1, e.tail))
            } else {
                None
            }
        })
    };
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    // Walks from `start`, consuming one unit per step, until `stop` says so.
    // Loops closed along the way are cut out and recorded as cycles.
    let walk = |residual: &mut Vec<i64>,
                    cycles: &mut Vec<FlowPath>,
                    start: usize,
                    stop: &mut dyn FnMut(usize) -> bool|
     -> Result<FlowPath> {
        let mut path = FlowPath {
            vertices: vec![start],
            steps: Vec::new(),
        };
        loop {
            let v = *path.vertices.last().unwrap();
            let Some((k, s, u)) = step_from(residual, v) else {
                return Err(Error::Invalid("coordinate flow is inconsistent with its boundary".into()));
            };
            residual[k] -= s as i64;
            path.steps.push((k, s));
            if let Some(pos) = path.vertices.iter().position(|&w| w == u) {
                let mut cyc_vertices = path.vertices.split_off(pos);
                cyc_vertices.push(u);
                let cyc_steps = path.steps.split_off(pos);
                path.vertices.push(u);
                let closed = stop(u);
                cycles.push(FlowPath {
                    vertices: cyc_vertices,
                    steps: cyc_steps,
                });
                if closed {
                    return Ok(path);
                }
            } else {
                path.vertices.push(u);
                if stop(u) {
                    return Ok(path);
                }
            }
        }
    };
    for &src in sources {
        if src >= nv || supply_left[src] == 0 {
            return invalid("path source list does not match the boundary");
        }
        supply_left[src] -= 1;
        let mut stop = |u: usize| {
            if demand[u] > 0 {
                demand[u] -= 1;
                true
            } else {
                false
            }
        };
        let p = walk(&mut residual, &mut cycles, src, &mut stop)?;
        paths.push(p);
    }
    // What remains is a circulation.
    while let Some(k) = residual.iter().position(|&r| r != 0) {
        let start = if residual[k] > 0 { edges[k].tail } else { edges[k].head };
        let mut stop = |u: usize| u == start;
        let p = walk(&mut residual, &mut cycles, start, &mut stop)?;
        if !p.steps.is_empty() {
            cycles.push(p);
        }
    }
    Ok(Decomposition {
        coordinate: coord,
        paths,
        cycles,
    })
}

/// Drops every cycle of every coordinate, repeating until the network's
/// decompositions contain no cycles at all.
pub fn remove_cycles(net: &Network) -> Result<Network> {
    let mut current = net.clone();
    loop {
        let mut found = false;
        let mut columns = Vec::with_capacity(current.coeffs());
        for i in 0..current.coeffs() {
            let d = flow_decompose(&current, i)?;
            found |= !d.cycles.is_empty();
            columns.push(d.superpose(current.edges().len(), false));
        }
        if !found {
            return Ok(current);
        }
        current = rebuild(&current, &columns)?;
    }
}

fn rebuild(net: &Network, columns: &[Vec<i64>]) -> Result<Network> {
    let edges = net
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| Edge::new(e.tail, e.head, columns.iter().map(|c| c[k]).collect()))
        .collect();
    Network::from_segments(net.dim(), columns.len(), net.vertices().to_vec(), edges)
}

/// Turns a material network into a labeled one: cycles are removed, the
/// `N_i` units of material `i` are traced as paths starting at the label
/// sources in label order, and the `k`-th path becomes label
/// `offset(i) + k`. The permutation records which sink slot each label
/// reaches.
pub fn lift(net: &Network, layout: &LabelLayout) -> Result<(LabeledNetwork, LabelPermutation)> {
    if net.coeffs() != layout.materials() {
        return invalid("network and layout disagree on the material count");
    }
    if !boundary_of(net).same_as(layout.boundary()) {
        return invalid("network boundary differs from the layout boundary");
    }
    let acyclic = remove_cycles(net)?;
    let n = layout.total();
    let mut columns = vec![vec![0i64; acyclic.edges().len()]; n];
    let mut per_material = Vec::with_capacity(layout.materials());
    let atoms = layout.boundary();
    for i in 0..layout.materials() {
        let group = layout.group(i);
        let mut sources = Vec::with_capacity(group.len());
        for j in group.clone() {
            let v = acyclic
                .vertex_at(layout.source_point(j))
                .ok_or_else(|| Error::Internal("label source is not a vertex".into()))?;
            sources.push(v);
        }
        let d = decompose_with_sources(&acyclic, i, &sources)?;
        let mut taken = vec![false; group.len()];
        let mut sigma = vec![0usize; group.len()];
        for (k, p) in d.paths.iter().enumerate() {
            let end = *p.vertices.last().unwrap();
            let atom = atoms
                .atom_at(&acyclic.vertices()[end])
                .ok_or_else(|| Error::Internal("path ends away from the boundary".into()))?;
            let slot = (0..group.len())
                .find(|&s| !taken[s] && layout.sink_atom(group.start + s) == atom)
                .ok_or_else(|| Error::Internal("no free sink slot".into()))?;
            taken[slot] = true;
            sigma[k] = slot;
            for &(e, s) in &p.steps {
                columns[group.start + k][e] += s as i64;
            }
        }
        per_material.push(sigma);
    }
    let labeled = rebuild(&acyclic, &columns)?;
    Ok((LabeledNetwork::from_network(labeled), LabelPermutation::new(per_material)?))
}

/// The permutation σ for which `boundary_of(lnet)` equals `B_σ`.
pub fn boundary_permutation(lnet: &LabeledNetwork, layout: &LabelLayout) -> Result<LabelPermutation> {
    if lnet.labels() != layout.total() {
        return invalid("labeled network and layout disagree on the label count");
    }
    let b = boundary_of(lnet.as_network());
    let atoms = layout.boundary();
    let mut per_material = Vec::with_capacity(layout.materials());
    for i in 0..layout.materials() {
        let group = layout.group(i);
        let mut taken = vec![false; group.len()];
        let mut sigma = vec![0usize; group.len()];
        for j in group.clone() {
            let mut src = None;
            let mut dst = None;
            for a in b.atoms() {
                match a.weight[j] {
                    0 => {}
                    -1 if src.is_none() => src = Some(a),
                    1 if dst.is_none() => dst = Some(a),
                    _ => return invalid(format!("label {j} is not a unit source-sink pair")),
                }
            }
            let (Some(src), Some(dst)) = (src, dst) else {
                return invalid(format!("label {j} is not a unit source-sink pair"));
            };
            if atoms.atom_at(&src.point) != Some(layout.source_atom(j)) {
                return invalid(format!("label {j} does not start at its source"));
            }
            let atom = atoms.atom_at(&dst.point);
            let slot = (0..group.len())
                .find(|&s| !taken[s] && Some(layout.sink_atom(group.start + s)) == atom)
                .ok_or_else(|| Error::Invalid(format!("label {j} does not end at a sink of its material")))?;
            taken[slot] = true;
            sigma[j - group.start] = slot;
        }
        per_material.push(sigma);
    }
    let sigma = LabelPermutation::new(per_material)?;
    if !layout.boundary_sigma(&sigma)?.same_as(&b) {
        return invalid("labeled boundary is not of the permuted form");
    }
    Ok(sigma)
}

/// Turns a labeled network back into a material network: each label's
/// cycles are dropped and the labels of each material are summed.
pub fn project(lnet: &LabeledNetwork, layout: &LabelLayout) -> Result<Network> {
    boundary_permutation(lnet, layout)?;
    let net = lnet.as_network();
    let mut columns = vec![vec![0i64; net.edges().len()]; layout.materials()];
    for j in 0..lnet.labels() {
        let d = flow_decompose(net, j)?;
        let col = d.superpose(net.edges().len(), false);
        let i = layout.material_of(j);
        for (c, v) in columns[i].iter_mut().zip(col) {
            *c += v;
        }
    }
    rebuild(net, &columns)
}

/// For each coordinate, whether its support contains no cycle.
pub fn is_forest_per_component(net: &Network) -> Vec<bool> {
    (0..net.coeffs())
        .map(|i| {
            let mut parent: Vec<usize> = (0..net.vertices().len()).collect();
            fn find(p: &mut [usize], mut v: usize) -> usize {
                while p[v] != v {
                    p[v] = p[p[v]];
                    v = p[v];
                }
                v
            }
            for e in net.edges() {
                if e.multiplicity[i] == 0 {
                    continue;
                }
                let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
            true
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::label_layout;

    fn triangle(coeffs: usize, mult: Vec<i64>) -> Network {
        Network::new(
            2,
            coeffs,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![
                Edge::new(0, 1, mult.clone()),
                Edge::new(1, 2, mult.clone()),
                Edge::new(2, 0, mult),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_edge_two_units() {
        let net = Network::new(1, 1, vec![vec![0.0], vec![1.0]], vec![Edge::new(0, 1, vec![2])]).unwrap();
        let d = flow_decompose(&net, 0).unwrap();
        assert_eq!(d.paths.len(), 2);
        assert!(d.cycles.is_empty());
        let (l, sigma) = lift(&net, &label_layout(&boundary_of(&net)).unwrap()).unwrap();
        assert_eq!(l.edges()[0].multiplicity, vec![1, 1]);
        assert!(sigma.is_identity());
    }

    #[test]
    fn triangle_is_one_cycle() {
        let net = triangle(1, vec![1]);
        let d = flow_decompose(&net, 0).unwrap();
        assert!(d.paths.is_empty());
        assert_eq!(d.cycles.len(), 1);
        assert_eq!(d.cycles[0].vertices, vec![0, 1, 2, 0]);
        assert!(remove_cycles(&net).unwrap().is_empty());
        assert_eq!(is_forest_per_component(&net), vec![false]);
    }

    #[test]
    fn cycle_only_lifts_to_nothing() {
        let net = triangle(1, vec![1]);
        let layout = label_layout(&boundary_of(&net)).unwrap();
        let (l, sigma) = lift(&net, &layout).unwrap();
        assert!(l.is_empty());
        assert!(sigma.is_identity());
    }

    #[test]
    fn path_through_loop_splits_off_cycle() {
        // 0 -> 1 -> 2 -> 3 -> 1 -> 4 carries one unit; the loop 1-2-3 is a cycle.
        let v = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 1.0], vec![1.0, 1.0], vec![2.0, 0.0]];
        let net = Network::new(
            2,
            1,
            v,
            vec![
                Edge::new(0, 1, vec![1]),
                Edge::new(1, 2, vec![1]),
                Edge::new(2, 3, vec![1]),
                Edge::new(3, 1, vec![1]),
                Edge::new(1, 4, vec![1]),
            ],
        )
        .unwrap();
        let d = flow_decompose(&net, 0).unwrap();
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.cycles.len(), 1);
        let total: f64 = d.paths.iter().chain(&d.cycles).map(|p| p.length(&net)).sum();
        let mass: f64 = (0..5).map(|e| net.edge_length(e)).sum();
        assert!((total - mass).abs() < 1e-12);
        assert_eq!(remove_cycles(&net).unwrap().edges().len(), 2);
    }

    #[test]
    fn project_rejects_foreign_boundaries() {
        let net = Network::new(1, 1, vec![vec![0.0], vec![1.0]], vec![Edge::new(0, 1, vec![2])]).unwrap();
        let layout = label_layout(&boundary_of(&net)).unwrap();
        let wrong = LabeledNetwork::new(1, 2, vec![vec![0.0], vec![1.0]], vec![Edge::new(1, 0, vec![1, 1])]).unwrap();
        assert!(project(&wrong, &layout).is_err());
        let (l, _) = lift(&net, &layout).unwrap();
        let back = project(&l, &layout).unwrap();
        assert_eq!(back.edges()[0].multiplicity, vec![2]);
    }
}
