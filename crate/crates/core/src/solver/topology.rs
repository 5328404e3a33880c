//! Trees on the boundary atoms plus a few free Steiner nodes.

use std::collections::HashSet;

use crate::error::{Error, Result};

pub const MAX_STEINER: usize = 3;
pub const MAX_TERMINALS: usize = 8;
/// Hard cap on the number of distinct trees returned.
pub const MAX_TOPOLOGIES: usize = 100_000;

/// A tree whose nodes `0..terminals` are boundary atoms and whose nodes
/// `terminals..terminals + steiner` are free points of degree at least 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Topology {
    pub id: usize,
    pub terminals: usize,
    pub steiner: usize,
    /// Edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Topology {
    pub fn nodes(&self) -> usize {
        self.terminals + self.steiner
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        adj
    }

    /// The unique path from `from` to `to` as `(edge, +1 if walked a→b)`.
    pub fn path(&self, from: usize, to: usize) -> Vec<(usize, i64)> {
        let adj = self.adjacency();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.nodes()];
        let mut seen = vec![false; self.nodes()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &(u, k) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, k));
                    stack.push(u);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = to;
        while v != from {
            let (p, k) = parent[v].expect("tree is connected");
            let sign = if self.edges[k] == (p, v) { 1 } else { -1 };
            out.push((k, sign));
            v = p;
        }
        out.reverse();
        out
    }
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    edges
}

/// Smallest edge list over all relabelings of the Steiner nodes.
fn canonical(edges: &[(usize, usize)], terminals: usize, steiner: usize) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..steiner).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let map = |v: usize| if v < terminals { v } else { terminals + perm[v - terminals] };
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (map(a), map(b));
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All trees on `terminals` atoms with at most `max_steiner` Steiner nodes,
/// up to relabeling of the Steiner nodes. Ordered by Steiner count, then by
/// Prüfer sequence; `id` is the position in that order.
pub fn enumerate_topologies(terminals: usize, max_steiner: usize) -> Result<Vec<Topology>> {
    if max_steiner > MAX_STEINER {
        return Err(Error::Resource(format!("at most {MAX_STEINER} Steiner nodes are supported")));
    }
    if terminals > MAX_TERMINALS {
        return Err(Error::Resource(format!("at most {MAX_TERMINALS} terminals are supported")));
    }
    let mut out = Vec::new();
    if terminals < 2 {
        return Ok(out);
    }
    for s in 0..=max_steiner {
        let n = terminals + s;
        let mut seen = HashSet::new();
        let mut seq = Vec::with_capacity(n - 2);
        let mut counts = vec![0usize; s];
        let mut found = Vec::new();
        let mut raw = 0usize;
        generate(&mut seq, &mut counts, n, terminals, &mut |seq| {
            raw += 1;
            if raw > 6 * MAX_TOPOLOGIES {
                return false;
            }
            let edges = canonical(&prufer_decode(seq, n), terminals, s);
            if seen.insert(edges.clone()) {
                found.push(edges);
            }
            true
        });
        if raw > 6 * MAX_TOPOLOGIES || out.len() + found.len() > MAX_TOPOLOGIES {
            return Err(Error::Resource("too many candidate topologies".into()));
        }
        for edges in found {
            out.push(Topology {
                id: out.len(),
                terminals,
                steiner: s,
                edges,
            });
        }
    }
    Ok(out)
}

/// Prüfer sequences in which every Steiner symbol appears at least twice
/// (degree at least 3). Returns false once `visit` asks to stop.
fn generate(
    seq: &mut Vec<usize>,
    counts: &mut [usize],
    n: usize,
    terminals: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let len = n - 2;
    let deficit: usize = counts.iter().map(|&c| 2usize.saturating_sub(c)).sum();
    if len - seq.len() < deficit {
        return true;
    }
    if seq.len() == len {
        return visit(seq);
    }
    for v in 0..n {
        if v >= terminals {
            counts[v - terminals] += 1;
        }
        seq.push(v);
        let go_on = generate(seq, counts, n, terminals, visit);
        seq.pop();
        if v >= terminals {
            counts[v - terminals] -= 1;
        }
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_topologies(2, 0).unwrap().len(), 1);
        let t3 = enumerate_topologies(3, 1).unwrap();
        assert_eq!(t3.len(), 4);
        assert_eq!(t3[3].edges, vec![(0, 3), (1, 3), (2, 3)]);
        // 16 labeled trees, 13 with one Steiner node, 3 full Steiner trees.
        let t4 = enumerate_topologies(4, 2).unwrap();
        assert_eq!(t4.len(), 32);
        assert_eq!(t4.iter().filter(|t| t.steiner == 2).count(), 3);
        assert!(enumerate_topologies(3, 4).is_err());
        assert!(enumerate_topologies(9, 0).is_err());
    }

    #[test]
    fn steiner_degrees() {
        for t in enumerate_topologies(5, 3).unwrap() {
            let adj = t.adjacency();
            assert!((t.terminals..t.nodes()).all(|v| adj[v].len() >= 3));
            assert_eq!(t.edges.len(), t.nodes() - 1);
        }
    }

    #[test]
    fn tree_paths() {
        let t = &enumerate_topologies(3, 1).unwrap()[3];
        assert_eq!(t.path(0, 1), vec![(0, 1), (1, -1)]);
        assert!(t.path(2, 2).is_empty());
    }
}
