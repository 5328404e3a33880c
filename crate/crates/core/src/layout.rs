//! Unit labels for the produced copies of each material, their sources and
//! sinks, per-material permutations, and the permuted labeled boundary.
//!
//! Labels are 0-based throughout: label `j` belongs to material
//! `material_of(j)` and sits at position `j - offset(material_of(j))` in its
//! group.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::model::{Atom, Boundary, LabeledBoundary};

#[derive(Debug, Clone, PartialEq)]
pub struct LabelLayout {
    boundary: Boundary,
    counts: Vec<usize>,
    offsets: Vec<usize>,
    material_of: Vec<usize>,
    source: Vec<usize>,
    sink: Vec<usize>,
}

/// Builds the layout of a material boundary. The sources of the labels of
/// material `i` are assigned by running through the atoms in listed order
/// and handing out one label per unit of negative weight; sinks likewise
/// with positive weight.
pub fn label_layout(boundary: &Boundary) -> Result<LabelLayout> {
    let m = boundary.coeffs();
    let mut counts = Vec::with_capacity(m);
    for i in 0..m {
        let total: u64 = boundary.atoms().iter().map(|a| a.weight[i].unsigned_abs()).sum();
        if total % 2 != 0 {
            return invalid(format!("material {i}: total weight {total} is odd"));
        }
        counts.push((total / 2) as usize);
    }
    let mut offsets = Vec::with_capacity(m);
    let mut acc = 0;
    for &c in &counts {
        offsets.push(acc);
        acc += c;
    }
    let mut material_of = Vec::with_capacity(acc);
    let mut source = Vec::with_capacity(acc);
    let mut sink = Vec::with_capacity(acc);
    for (i, &c) in counts.iter().enumerate() {
        let mut srcs = Vec::with_capacity(c);
        let mut dsts = Vec::with_capacity(c);
        for (l, a) in boundary.atoms().iter().enumerate() {
            let w = a.weight[i];
            let slots = if w < 0 { &mut srcs } else { &mut dsts };
            slots.extend(std::iter::repeat_n(l, w.unsigned_abs() as usize));
        }
        if srcs.len() != c || dsts.len() != c {
            return invalid(format!("material {i}: production and demand differ"));
        }
        material_of.extend(std::iter::repeat_n(i, c));
        source.extend(srcs);
        sink.extend(dsts);
    }
    Ok(LabelLayout {
        boundary: boundary.clone(),
        counts,
        offsets,
        material_of,
        source,
        sink,
    })
}

impl LabelLayout {
    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn materials(&self) -> usize {
        self.counts.len()
    }

    /// `N_i` for each material.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `N = Σ N_i`.
    pub fn total(&self) -> usize {
        self.material_of.len()
    }

    /// First label of material `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn material_of(&self, j: usize) -> usize {
        self.material_of[j]
    }

    /// Index of the atom where label `j` is produced.
    pub fn source_atom(&self, j: usize) -> usize {
        self.source[j]
    }

    /// Index of the atom that label `j` is assigned to under the identity.
    pub fn sink_atom(&self, j: usize) -> usize {
        self.sink[j]
    }

    pub fn source_point(&self, j: usize) -> &[f64] {
        &self.boundary.atoms()[self.source[j]].point
    }

    pub fn sink_point(&self, j: usize) -> &[f64] {
        &self.boundary.atoms()[self.sink[j]].point
    }

    /// Labels of material `i`.
    pub fn group(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.counts[i]
    }

    /// Sums label coordinates into material coordinates.
    pub fn collapse(&self, labeled: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.materials()];
        for (j, v) in labeled.iter().enumerate() {
            out[self.material_of[j]] += v;
        }
        out
    }

    /// The label vector `Σ_i sign(θ_i) Σ_{k < |θ_i|} e_{σ(offset_i + k)}`
    /// whose norm must equal `C(θ)`.
    pub fn label_pattern(&self, theta: &[i64], sigma: &LabelPermutation) -> Result<Vec<i64>> {
        if theta.len() != self.materials() {
            return invalid("θ has the wrong number of materials");
        }
        self.check_permutation(sigma)?;
        let mut out = vec![0; self.total()];
        for (i, &t) in theta.iter().enumerate() {
            if t.unsigned_abs() as usize > self.counts[i] {
                return Err(Error::Domain(format!("|θ_{i}| = {} exceeds N_{i} = {}", t.abs(), self.counts[i])));
            }
            for k in 0..t.unsigned_abs() as usize {
                out[self.offsets[i] + sigma.per_material[i][k]] = t.signum();
            }
        }
        Ok(out)
    }

    pub fn check_permutation(&self, sigma: &LabelPermutation) -> Result<()> {
        if sigma.per_material.len() != self.materials()
            || sigma.per_material.iter().zip(&self.counts).any(|(p, &c)| p.len() != c)
        {
            return invalid("permutation sizes do not match the label counts");
        }
        Ok(())
    }

    /// Number of elements of `S_{N_1} × … × S_{N_m}`, saturating.
    pub fn permutation_count(&self) -> u128 {
        let mut total: u128 = 1;
        for &c in &self.counts {
            for k in 2..=c as u128 {
                total = total.saturating_mul(k);
            }
        }
        total
    }

    pub fn all_permutations(&self) -> PermutationIter {
        PermutationIter {
            current: Some(LabelPermutation::identity(&self.counts)),
        }
    }

    /// Uniformly random element of the permutation group.
    pub fn random_permutation<R: Rng>(&self, rng: &mut R) -> LabelPermutation {
        let per_material = self
            .counts
            .iter()
            .map(|&c| {
                let mut p: Vec<usize> = (0..c).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        LabelPermutation { per_material }
    }

    /// `0 ≤ j < N ↦ σ(j)`.
    pub fn apply(&self, sigma: &LabelPermutation, j: usize) -> usize {
        let i = self.material_of[j];
        self.offsets[i] + sigma.per_material[i][j - self.offsets[i]]
    }

    /// The labeled boundary `−Σ e_j δ_{P(j)} + Σ e_j δ_{D(σ(j))}`.
    pub fn boundary_sigma(&self, sigma: &LabelPermutation) -> Result<LabeledBoundary> {
        self.check_permutation(sigma)?;
        let n = self.total();
        let mut weights = vec![vec![0i64; n]; self.boundary.atoms().len()];
        for j in 0..n {
            weights[self.source[j]][j] -= 1;
            weights[self.sink[self.apply(sigma, j)]][j] += 1;
        }
        let atoms = self
            .boundary
            .atoms()
            .iter()
            .zip(weights)
            .filter(|(_, w)| w.iter().any(|&v| v != 0))
            .map(|(a, w)| Atom::new(a.point.clone(), w))
            .collect();
        LabeledBoundary::new(Boundary::new(self.boundary.dim(), n, atoms)?)
    }
}

/// `(σ_1, …, σ_m)`, each a permutation of its group's positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelPermutation {
    pub per_material: Vec<Vec<usize>>,
}

impl LabelPermutation {
    pub fn identity(counts: &[usize]) -> Self {
        LabelPermutation {
            per_material: counts.iter().map(|&c| (0..c).collect()).collect(),
        }
    }

    pub fn new(per_material: Vec<Vec<usize>>) -> Result<Self> {
        for p in &per_material {
            let mut seen = vec![false; p.len()];
            for &v in p {
                if v >= p.len() || seen[v] {
                    return invalid(format!("{p:?} is not a permutation"));
                }
                seen[v] = true;
            }
        }
        Ok(LabelPermutation { per_material })
    }

    pub fn is_identity(&self) -> bool {
        self.per_material
            .iter()
            .all(|p| p.iter().enumerate().all(|(k, &v)| k == v))
    }
}

/// Lexicographic enumeration of `S_{N_1} × … × S_{N_m}`, last factor fastest.
pub struct PermutationIter {
    current: Option<LabelPermutation>,
}

impl Iterator for PermutationIter {
    type Item = LabelPermutation;
    fn next(&mut self) -> Option<LabelPermutation> {
        let cur = self.current.take()?;
        let mut n = cur.clone();
        let mut k = n.per_material.len();
        while k > 0 {
            k -= 1;
            if next_permutation(&mut n.per_material[k]) {
                self.current = Some(n);
                break;
            }
            n.per_material[k].sort_unstable();
        }
        Some(cur)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y_boundary() -> Boundary {
        Boundary::new(
            2,
            2,
            vec![
                Atom::new(vec![0.0, 0.0], vec![-1, -1]),
                Atom::new(vec![2.0, 1.0], vec![1, 0]),
                Atom::new(vec![2.0, -1.0], vec![0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_atoms_single_material() {
        let b = Boundary::new(
            1,
            1,
            vec![Atom::new(vec![0.0], vec![-2]), Atom::new(vec![1.0], vec![2])],
        )
        .unwrap();
        let l = label_layout(&b).unwrap();
        assert_eq!(l.total(), 2);
        assert_eq!((l.source_atom(0), l.source_atom(1)), (0, 0));
        assert_eq!((l.sink_atom(0), l.sink_atom(1)), (1, 1));
        let swap = LabelPermutation::new(vec![vec![1, 0]]).unwrap();
        assert_eq!(l.apply(&swap, 0), 1);
        assert_eq!(l.permutation_count(), 2);
        assert_eq!(l.all_permutations().count(), 2);
    }

    #[test]
    fn y_layout() {
        let l = label_layout(&y_boundary()).unwrap();
        assert_eq!(l.counts(), &[1, 1]);
        assert_eq!(l.source_atom(0), 0);
        assert_eq!(l.source_atom(1), 0);
        assert_eq!(l.sink_atom(0), 1);
        assert_eq!(l.sink_atom(1), 2);
        let bs = l.boundary_sigma(&LabelPermutation::identity(l.counts())).unwrap();
        assert_eq!(bs.atoms()[0].weight, vec![-1, -1]);
        assert_eq!(bs.atoms()[1].weight, vec![1, 0]);
        assert_eq!(bs.atoms()[2].weight, vec![0, 1]);
    }

    #[test]
    fn empty_and_malformed() {
        let l = label_layout(&Boundary::empty(2, 3)).unwrap();
        assert_eq!(l.total(), 0);
        assert_eq!(l.permutation_count(), 1);
        // Can't build an odd boundary through Boundary::new since weights sum
        // to zero, so odd totals never arise from valid input.
    }

    #[test]
    fn permutation_enumeration_is_exhaustive() {
        let b = Boundary::new(
            1,
            2,
            vec![
                Atom::new(vec![0.0], vec![-3, -2]),
                Atom::new(vec![1.0], vec![2, 1]),
                Atom::new(vec![2.0], vec![1, 1]),
            ],
        )
        .unwrap();
        let l = label_layout(&b).unwrap();
        let all: Vec<_> = l.all_permutations().collect();
        assert_eq!(all.len(), 12);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 12);
        let p = l.label_pattern(&[-2, 1], &all[5]).unwrap();
        assert_eq!(p.iter().filter(|&&v| v == -1).count(), 2);
        assert_eq!(p[3..].iter().sum::<i64>(), 1);
    }
}
