//! Boundaries, networks with integer vector multiplicities, and the
//! energy and mass functionals.

use std::collections::BTreeMap;
use std::ops::Deref;

use crate::cost::MultiMaterialCost;
use crate::error::{invalid, Result};
use crate::geometry::{self, GEOM_TOL};
use crate::norm::NormBall;

/// A point mass `weight · δ_point`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub point: Vec<f64>,
    pub weight: Vec<i64>,
}

impl Atom {
    pub fn new(point: Vec<f64>, weight: Vec<i64>) -> Self {
        Atom { point, weight }
    }
}

/// A finite sum of atoms with total weight zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    dim: usize,
    coeffs: usize,
    atoms: Vec<Atom>,
}

impl Boundary {
    pub fn new(dim: usize, coeffs: usize, atoms: Vec<Atom>) -> Result<Self> {
        let mut total = vec![0i64; coeffs];
        for (k, a) in atoms.iter().enumerate() {
            if a.point.len() != dim {
                return invalid(format!("atom {k}: point has {} coordinates, expected {dim}", a.point.len()));
            }
            if a.point.iter().any(|c| !c.is_finite()) {
                return invalid(format!("atom {k}: non-finite coordinate"));
            }
            if a.weight.len() != coeffs {
                return invalid(format!("atom {k}: weight has {} entries, expected {coeffs}", a.weight.len()));
            }
            if a.weight.iter().all(|&w| w == 0) {
                return invalid(format!("atom {k}: zero weight"));
            }
            for (t, w) in total.iter_mut().zip(&a.weight) {
                *t += w;
            }
            for (l, b) in atoms[..k].iter().enumerate() {
                if geometry::dist(&a.point, &b.point) <= GEOM_TOL {
                    return invalid(format!("atoms {l} and {k} share a point"));
                }
            }
        }
        if total.iter().any(|&t| t != 0) {
            return invalid(format!("weights sum to {total:?}, not zero"));
        }
        Ok(Boundary { dim, coeffs, atoms })
    }

    pub fn empty(dim: usize, coeffs: usize) -> Self {
        Boundary {
            dim,
            coeffs,
            atoms: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of each weight vector (m for material boundaries, N for labeled ones).
    pub fn coeffs(&self) -> usize {
        self.coeffs
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Index of the atom located at `p`, if any.
    pub fn atom_at(&self, p: &[f64]) -> Option<usize> {
        self.atoms
            .iter()
            .position(|a| geometry::dist(&a.point, p) <= GEOM_TOL)
    }

    /// Same atoms up to ordering, with points matched within tolerance.
    pub fn same_as(&self, other: &Boundary) -> bool {
        if self.coeffs != other.coeffs || self.atoms.len() != other.atoms.len() {
            return false;
        }
        self.atoms.iter().all(|a| {
            other
                .atom_at(&a.point)
                .is_some_and(|k| other.atoms[k].weight == a.weight)
        })
    }

    pub fn scaled(&self, factor: f64) -> Boundary {
        Boundary {
            dim: self.dim,
            coeffs: self.coeffs,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom::new(a.point.iter().map(|c| c * factor).collect(), a.weight.clone()))
                .collect(),
        }
    }
}

/// A boundary with `Z^N` weights in which every label leaves one atom with
/// weight −1 and reaches another with weight +1.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledBoundary(Boundary);

impl LabeledBoundary {
    pub fn new(boundary: Boundary) -> Result<Self> {
        for j in 0..boundary.coeffs {
            let (mut neg, mut pos) = (0, 0);
            for a in &boundary.atoms {
                match a.weight[j] {
                    0 => {}
                    -1 => neg += 1,
                    1 => pos += 1,
                    w => return invalid(format!("label {j} has weight {w} at an atom")),
                }
            }
            if neg != 1 || pos != 1 {
                return invalid(format!("label {j} is not a unit source-sink pair"));
            }
        }
        Ok(LabeledBoundary(boundary))
    }

    pub fn as_boundary(&self) -> &Boundary {
        &self.0
    }
}

impl Deref for LabeledBoundary {
    type Target = Boundary;
    fn deref(&self) -> &Boundary {
        &self.0
    }
}

/// An oriented segment from `tail` to `head` carrying `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub multiplicity: Vec<i64>,
}

impl Edge {
    pub fn new(tail: usize, head: usize, multiplicity: Vec<i64>) -> Self {
        Edge {
            tail,
            head,
            multiplicity,
        }
    }

    /// The same current with orientation and sign both flipped.
    pub fn reversed(&self) -> Edge {
        Edge {
            tail: self.head,
            head: self.tail,
            multiplicity: self.multiplicity.iter().map(|v| -v).collect(),
        }
    }
}

/// A polyhedral 1-current: straight oriented edges with integer vector
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    dim: usize,
    coeffs: usize,
    vertices: Vec<Vec<f64>>,
    edges: Vec<Edge>,
}

impl Network {
    /// Validates and builds a network. Parallel edges, zero multiplicities,
    /// coincident vertices and touching segments are all rejected.
    pub fn new(dim: usize, coeffs: usize, vertices: Vec<Vec<f64>>, edges: Vec<Edge>) -> Result<Self> {
        for (k, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return invalid(format!("vertex {k} has {} coordinates, expected {dim}", v.len()));
            }
            if v.iter().any(|c| !c.is_finite()) {
                return invalid(format!("vertex {k} has a non-finite coordinate"));
            }
            for (l, w) in vertices[..k].iter().enumerate() {
                if geometry::dist(v, w) <= GEOM_TOL {
                    return invalid(format!("vertices {l} and {k} coincide"));
                }
            }
        }
        let mut pairs = BTreeMap::new();
        for (k, e) in edges.iter().enumerate() {
            if e.tail >= vertices.len() || e.head >= vertices.len() {
                return invalid(format!("edge {k} references a missing vertex"));
            }
            if e.tail == e.head {
                return invalid(format!("edge {k} is a loop"));
            }
            if e.multiplicity.len() != coeffs {
                return invalid(format!(
                    "edge {k} multiplicity has {} entries, expected {coeffs}",
                    e.multiplicity.len()
                ));
            }
            if e.multiplicity.iter().all(|&v| v == 0) {
                return invalid(format!("edge {k} has zero multiplicity"));
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if let Some(prev) = pairs.insert(key, k) {
                return invalid(format!("edges {prev} and {k} are parallel"));
            }
        }
        let net = Network {
            dim,
            coeffs,
            vertices,
            edges,
        };
        if let Some((a, b)) = net.first_contact() {
            return invalid(format!("edges {a} and {b} overlap or touch away from a shared vertex"));
        }
        Ok(net)
    }

    pub fn empty(dim: usize, coeffs: usize) -> Self {
        Network {
            dim,
            coeffs,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Sums parallel edges (orienting each pair like its first occurrence)
    /// and drops edges whose total is zero, then validates.
    pub fn from_segments(dim: usize, coeffs: usize, vertices: Vec<Vec<f64>>, edges: Vec<Edge>) -> Result<Self> {
        let merged = merge_parallel(coeffs, edges)?;
        Network::new(dim, coeffs, vertices, merged)
    }

    /// Builds a network from an arbitrary superposition of segments:
    /// coincident vertices are merged, segments are split where they cross
    /// or pass through vertices, and the pieces are summed.
    pub fn normalized(dim: usize, coeffs: usize, vertices: Vec<Vec<f64>>, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.tail >= vertices.len() || e.head >= vertices.len() || e.multiplicity.len() != coeffs {
                return invalid("malformed edge in segment list");
            }
        }
        // Merge coincident vertices onto the lowest index.
        let mut rep: Vec<usize> = (0..vertices.len()).collect();
        for k in 0..vertices.len() {
            for l in 0..k {
                if rep[l] == l && geometry::dist(&vertices[k], &vertices[l]) <= GEOM_TOL {
                    rep[k] = l;
                    break;
                }
            }
        }
        let mut verts = vertices.clone();
        let mut segs: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge::new(rep[e.tail], rep[e.head], e.multiplicity))
            .filter(|e| e.tail != e.head && e.multiplicity.iter().any(|&v| v != 0))
            .collect();

        // Insert crossing points until no two pieces touch in their interiors.
        loop {
            let mut changed = false;
            'outer: for a in 0..segs.len() {
                for b in (a + 1)..segs.len() {
                    let (ea, eb) = (&segs[a], &segs[b]);
                    let shared = [ea.tail, ea.head].iter().any(|v| *v == eb.tail || *v == eb.head);
                    if shared {
                        continue;
                    }
                    let (s, t, d) = geometry::segment_closest(
                        &verts[ea.tail],
                        &verts[ea.head],
                        &verts[eb.tail],
                        &verts[eb.head],
                    );
                    if d <= GEOM_TOL {
                        let p = geometry::lerp(&verts[ea.tail], &verts[ea.head], s);
                        let q = geometry::lerp(&verts[eb.tail], &verts[eb.head], t);
                        let mid = geometry::lerp(&p, &q, 0.5);
                        let ends = [ea.tail, ea.head, eb.tail, eb.head];
                        if ends.iter().any(|&v| geometry::dist(&verts[v], &mid) <= GEOM_TOL) {
                            // Contact at an endpoint: handled by the vertex split below.
                            continue;
                        }
                        verts.push(mid);
                        changed = true;
                        break 'outer;
                    }
                }
            }
            // Split every piece at vertices lying in its interior.
            let mut next = Vec::with_capacity(segs.len());
            for e in segs.drain(..) {
                let (p, q) = (&verts[e.tail], &verts[e.head]);
                let mut inner: Vec<(f64, usize)> = (0..verts.len())
                    .filter(|&v| v != e.tail && v != e.head && rep.get(v).is_none_or(|r| *r == v))
                    .filter(|&v| geometry::point_segment_distance(&verts[v], p, q) <= GEOM_TOL)
                    .map(|v| (geometry::project_param(&verts[v], p, q), v))
                    .filter(|(t, v)| {
                        geometry::dist(&verts[*v], p) > GEOM_TOL && geometry::dist(&verts[*v], q) > GEOM_TOL && *t > 0.0
                    })
                    .collect();
                if !inner.is_empty() {
                    changed = true;
                }
                inner.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
                let mut prev = e.tail;
                for (_, v) in inner {
                    next.push(Edge::new(prev, v, e.multiplicity.clone()));
                    prev = v;
                }
                next.push(Edge::new(prev, e.head, e.multiplicity));
            }
            segs = next;
            if !changed {
                break;
            }
        }

        let merged = merge_parallel(coeffs, segs)?;
        // Drop unused vertices, keeping the relative order of the rest.
        let mut used = vec![false; verts.len()];
        for e in &merged {
            used[e.tail] = true;
            used[e.head] = true;
        }
        let mut index = vec![usize::MAX; verts.len()];
        let mut kept = Vec::new();
        for (v, p) in verts.into_iter().enumerate() {
            if used[v] {
                index[v] = kept.len();
                kept.push(p);
            }
        }
        let edges = merged
            .into_iter()
            .map(|e| Edge::new(index[e.tail], index[e.head], e.multiplicity))
            .collect();
        Network::new(dim, coeffs, kept, edges)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of each multiplicity vector.
    pub fn coeffs(&self) -> usize {
        self.coeffs
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let edge = &self.edges[e];
        geometry::dist(&self.vertices[edge.tail], &self.vertices[edge.head])
    }

    /// Unit tangent `(head − tail)/|head − tail|`.
    pub fn tangent(&self, e: usize) -> Vec<f64> {
        let edge = &self.edges[e];
        let d = geometry::sub(&self.vertices[edge.head], &self.vertices[edge.tail]);
        let n = geometry::norm(&d);
        d.into_iter().map(|c| c / n).collect()
    }

    /// The network obtained by flipping edge `e` and negating its multiplicity.
    pub fn with_edge_reversed(&self, e: usize) -> Network {
        let mut out = self.clone();
        out.edges[e] = self.edges[e].reversed();
        out
    }

    /// Inserts a vertex at parameter `t` of edge `e`, splitting it in two.
    pub fn subdivided(&self, e: usize, t: f64) -> Result<Network> {
        let edge = &self.edges[e];
        let p = geometry::lerp(&self.vertices[edge.tail], &self.vertices[edge.head], t);
        let mut vertices = self.vertices.clone();
        vertices.push(p);
        let mid = vertices.len() - 1;
        let mut edges = self.edges.clone();
        edges[e] = Edge::new(edge.tail, mid, edge.multiplicity.clone());
        edges.push(Edge::new(mid, edge.head, edge.multiplicity.clone()));
        Network::new(self.dim, self.coeffs, vertices, edges)
    }

    /// All vertex coordinates multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Network {
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            v.iter_mut().for_each(|c| *c *= factor);
        }
        out
    }

    /// Index of the vertex at `p`, if any.
    pub fn vertex_at(&self, p: &[f64]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| geometry::dist(v, p) <= GEOM_TOL)
    }

    fn first_contact(&self) -> Option<(usize, usize)> {
        for a in 0..self.edges.len() {
            for b in (a + 1)..self.edges.len() {
                if self.segments_touch(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn segments_touch(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.edges[a], &self.edges[b]);
        let v = &self.vertices;
        let shared = if ea.tail == eb.tail || ea.tail == eb.head {
            Some(ea.tail)
        } else if ea.head == eb.tail || ea.head == eb.head {
            Some(ea.head)
        } else {
            None
        };
        match shared {
            Some(s) => {
                let oa = if ea.tail == s { ea.head } else { ea.tail };
                let ob = if eb.tail == s { eb.head } else { eb.tail };
                geometry::point_segment_distance(&v[oa], &v[s], &v[ob]) <= GEOM_TOL
                    || geometry::point_segment_distance(&v[ob], &v[s], &v[oa]) <= GEOM_TOL
            }
            None => {
                let (_, _, d) = geometry::segment_closest(&v[ea.tail], &v[ea.head], &v[eb.tail], &v[eb.head]);
                d <= GEOM_TOL
            }
        }
    }
}

fn merge_parallel(coeffs: usize, edges: Vec<Edge>) -> Result<Vec<Edge>> {
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut acc: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
    for e in edges {
        if e.multiplicity.len() != coeffs {
            return invalid("multiplicity length mismatch");
        }
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        match acc.get_mut(&key) {
            Some(existing) => {
                let sign = if existing.tail == e.tail { 1 } else { -1 };
                for (x, y) in existing.multiplicity.iter_mut().zip(&e.multiplicity) {
                    *x += sign * y;
                }
            }
            None => {
                order.push(key);
                acc.insert(key, e);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|k| acc.remove(&k).unwrap())
        .filter(|e| e.multiplicity.iter().any(|&v| v != 0))
        .collect())
}

/// A network whose multiplicities live in `Z^N`, one coordinate per label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledNetwork(Network);

impl LabeledNetwork {
    pub fn new(dim: usize, labels: usize, vertices: Vec<Vec<f64>>, edges: Vec<Edge>) -> Result<Self> {
        Network::new(dim, labels, vertices, edges).map(LabeledNetwork)
    }

    pub fn from_network(net: Network) -> Self {
        LabeledNetwork(net)
    }

    pub fn as_network(&self) -> &Network {
        &self.0
    }

    pub fn into_network(self) -> Network {
        self.0
    }

    pub fn labels(&self) -> usize {
        self.0.coeffs
    }
}

impl Deref for LabeledNetwork {
    type Target = Network;
    fn deref(&self) -> &Network {
        &self.0
    }
}

/// The divergence of the network: at each vertex, incoming minus outgoing
/// multiplicity. Vertices with zero net weight are omitted.
pub fn boundary_of(net: &Network) -> Boundary {
    let mut weights = vec![vec![0i64; net.coeffs]; net.vertices.len()];
    for e in &net.edges {
        for (k, &v) in e.multiplicity.iter().enumerate() {
            weights[e.head][k] += v;
            weights[e.tail][k] -= v;
        }
    }
    let atoms = net
        .vertices
        .iter()
        .zip(weights)
        .filter(|(_, w)| w.iter().any(|&x| x != 0))
        .map(|(p, w)| Atom::new(p.clone(), w))
        .collect();
    Boundary {
        dim: net.dim,
        coeffs: net.coeffs,
        atoms,
    }
}

/// `Σ length · C(θ)` over all edges.
pub fn energy(net: &Network, cost: &MultiMaterialCost) -> Result<f64> {
    if net.coeffs != cost.materials() {
        return invalid(format!(
            "network has {} materials, cost has {}",
            net.coeffs,
            cost.materials()
        ));
    }
    let mut total = 0.0;
    for (k, e) in net.edges.iter().enumerate() {
        total += net.edge_length(k) * cost.evaluate(&e.multiplicity)?;
    }
    Ok(total)
}

/// `Σ length · ‖θ̄‖` over all edges, with the norm given by `ball`.
pub fn mass(net: &LabeledNetwork, ball: &NormBall) -> Result<f64> {
    if net.labels() != ball.dim() {
        return invalid(format!("network has {} labels, ball has dimension {}", net.labels(), ball.dim()));
    }
    let mut total = 0.0;
    for (k, e) in net.edges().iter().enumerate() {
        let x: Vec<f64> = e.multiplicity.iter().map(|&v| v as f64).collect();
        total += net.edge_length(k) * ball.gauge(&x)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Vec<f64> {
        vec![x, y]
    }

    #[test]
    fn single_edge_boundary() {
        let net = Network::new(2, 2, vec![pt(0.0, 0.0), pt(1.0, 0.0)], vec![Edge::new(0, 1, vec![2, -1])]).unwrap();
        let b = boundary_of(&net);
        assert_eq!(b.atoms()[0].weight, vec![-2, 1]);
        assert_eq!(b.atoms()[1].weight, vec![2, -1]);
    }

    #[test]
    fn cycle_has_empty_boundary() {
        let net = Network::new(
            2,
            1,
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)],
            vec![Edge::new(0, 1, vec![1]), Edge::new(1, 2, vec![1]), Edge::new(2, 0, vec![1])],
        )
        .unwrap();
        assert!(boundary_of(&net).is_empty());
    }

    #[test]
    fn validation_rejects_bad_networks() {
        let v = vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0)];
        // overlapping collinear segments 0-1 and 2-? through the middle
        assert!(Network::new(2, 1, v.clone(), vec![Edge::new(0, 1, vec![1]), Edge::new(2, 3, vec![1])]).is_err());
        assert!(Network::new(2, 1, v.clone(), vec![Edge::new(0, 0, vec![1])]).is_err());
        assert!(Network::new(2, 1, v.clone(), vec![Edge::new(0, 3, vec![0])]).is_err());
        assert!(Network::new(2, 1, v.clone(), vec![Edge::new(0, 3, vec![1]), Edge::new(3, 0, vec![1])]).is_err());
        assert!(Network::new(2, 1, vec![pt(0.0, 0.0), pt(0.0, 0.0)], vec![]).is_err());
        // crossing diagonals
        let sq = vec![pt(0.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0), pt(1.0, 0.0)];
        assert!(Network::new(2, 1, sq, vec![Edge::new(0, 1, vec![1]), Edge::new(2, 3, vec![1])]).is_err());
    }

    #[test]
    fn collinear_edges_through_shared_vertex_are_fine() {
        let v = vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)];
        assert!(Network::new(2, 1, v.clone(), vec![Edge::new(0, 1, vec![1]), Edge::new(1, 2, vec![1])]).is_ok());
        // but folding back onto the same ray is an overlap
        assert!(Network::new(2, 1, v, vec![Edge::new(0, 1, vec![1]), Edge::new(0, 2, vec![1])]).is_err());
    }

    #[test]
    fn parallel_edges_merge() {
        let v = vec![pt(0.0, 0.0), pt(1.0, 0.0)];
        let net = Network::from_segments(2, 2, v.clone(), vec![Edge::new(0, 1, vec![1, 0]), Edge::new(1, 0, vec![0, 1])]).unwrap();
        assert_eq!(net.edges(), &[Edge::new(0, 1, vec![1, -1])]);
        let net = Network::from_segments(2, 1, v, vec![Edge::new(0, 1, vec![1]), Edge::new(1, 0, vec![1])]).unwrap();
        assert!(net.is_empty());
    }

    #[test]
    fn normalization_splits_overlaps_and_crossings() {
        // Two long segments crossing at (1,1) plus one passing through vertex 4.
        let v = vec![pt(0.0, 0.0), pt(2.0, 2.0), pt(0.0, 2.0), pt(2.0, 0.0), pt(1.0, 0.0)];
        let net = Network::normalized(
            2,
            1,
            v,
            vec![Edge::new(0, 1, vec![1]), Edge::new(2, 3, vec![1]), Edge::new(0, 3, vec![2]), Edge::new(4, 3, vec![-2])],
        )
        .unwrap();
        let b = boundary_of(&net);
        assert_eq!(b.atoms().len(), 5);
        assert!(net.vertex_at(&[1.0, 1.0]).is_some());
        // Segment 0→3 minus 4→3 leaves only 0→4.
        let total_len: f64 = (0..net.edges().len()).map(|e| net.edge_length(e)).sum();
        assert!((total_len - (4.0 * 2f64.sqrt() + 1.0)).abs() < 1e-12);
    }
}
