//! The monotone norm on R^N whose value on label patterns reproduces the
//! cost, stored as a vertex description with LP-based gauge evaluation.
//!
//! For a cost that only depends on coordinate magnitudes the unit ball is
//! `conv{q_D}` with `q_D = D / C(group sums of |D|)` over all nonzero
//! `D ∈ {−1, 0, 1}^N`. Otherwise, for every orthant `O` of R^m, the same
//! hull `B_O` is built from `C_O(x) = C(s_O ∘ |x|)`, cut down to its part
//! `A_O` in the label orthant `H_O`, and widened to
//! `C_O = {p : ∃q ∈ A_O, τ_j (p_j − q_j) ≤ 0}`. The ball is `∩ C_O`, so its
//! gauge is the largest of the per-orthant gauges.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{check_axioms_within, symmetrize_for_orthant, MultiMaterialCost};
use crate::error::{invalid, Error, Result};
use crate::layout::{LabelLayout, LabelPermutation};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// Largest label count accepted by the builder (3^10 − 1 candidate vertices).
pub const MAX_LABELS: usize = 10;

/// Tolerance used when testing whether a point lies on or inside the ball.
pub const BALL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: Vec<f64>,
    /// The sign pattern `D` this vertex came from, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<i8>>,
    /// `c_D`, the cost assigned to the pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

/// The data of one orthant `O` of R^m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthantPiece {
    /// `s_O ∈ {±1}^m`.
    pub signs: Vec<i8>,
    /// `τ_O ∈ {±1}^N`: `s_O` repeated across each label group.
    pub tau: Vec<i8>,
    /// Vertices `q_D` of `B_O`.
    pub vertices: Vec<Vertex>,
}

impl OrthantPiece {
    /// Whether `x` lies in the closed label orthant `H_O`.
    pub fn in_cone(&self, x: &[f64]) -> bool {
        x.iter().zip(&self.tau).all(|(v, &t)| t as f64 * v >= -BALL_TOL)
    }

    /// Gauge of `B_O = conv{q_D}`.
    pub fn hull_gauge(&self, x: &[f64]) -> Result<f64> {
        hull_gauge(&self.vertices, x)
    }

    /// Gauge of `C_O`: the least `t` such that some `q ∈ t·B_O ∩ H_O`
    /// dominates `x` along `τ_O`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        let rhs: Vec<f64> = x.iter().zip(&self.tau).map(|(v, &t)| (t as f64 * v).max(0.0)).collect();
        if rhs.iter().all(|&b| b == 0.0) {
            return Ok(0.0);
        }
        let n = x.len();
        let k = self.vertices.len();
        let mut lp = LinearProgram::minimize(vec![1.0; k]);
        for j in 0..n {
            let t = self.tau[j] as f64;
            let row = self.vertices.iter().map(|v| t * v.point[j]).collect();
            lp.constrain(row, Relation::Ge, rhs[j]);
        }
        match lp.solve()? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            other => Err(Error::Internal(format!("orthant gauge LP: {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Hull(Vec<Vertex>),
    Orthants(Vec<OrthantPiece>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormBall {
    dim: usize,
    repr: Repr,
}

/// Builds the ball for `cost` and `layout` after checking that the cost is
/// even, positive and increasing on the relevant box and that (iii′) is
/// not known to fail.
pub fn build_ball(cost: &MultiMaterialCost, layout: &LabelLayout) -> Result<NormBall> {
    build(cost, layout, true)
}

/// The same construction without the axiom gate, for exploring what goes
/// wrong with inadmissible costs.
pub fn build_ball_unchecked(cost: &MultiMaterialCost, layout: &LabelLayout) -> Result<NormBall> {
    build(cost, layout, false)
}

fn build(cost: &MultiMaterialCost, layout: &LabelLayout, checked: bool) -> Result<NormBall> {
    let n = layout.total();
    if n > MAX_LABELS {
        return Err(Error::Resource(format!("{n} labels exceed the limit of {MAX_LABELS}")));
    }
    if cost.materials() != layout.materials() {
        return invalid(format!(
            "cost has {} materials, boundary has {}",
            cost.materials(),
            layout.materials()
        ));
    }
    let bounds: Vec<i64> = layout.counts().iter().map(|&c| c as i64).collect();
    let report = check_axioms_within(cost, &bounds)?;
    if checked {
        if !report.even_and_positive {
            return Err(Error::Precondition("cost is not even and positive".into()));
        }
        if !report.increasing {
            return Err(Error::Precondition("cost is not increasing".into()));
        }
        if report.sublinear_iii_prime == Some(false) {
            return Err(Error::Precondition("cost violates (iii′) for the declared norm".into()));
        }
    }
    if n == 0 {
        return Ok(NormBall {
            dim: 0,
            repr: Repr::Hull(Vec::new()),
        });
    }
    let patterns = sign_patterns(n);
    if report.supersymmetric {
        let vertices = hull_vertices(cost, layout, &patterns)?;
        return Ok(NormBall {
            dim: n,
            repr: Repr::Hull(vertices),
        });
    }
    let m = layout.materials();
    let mut pieces: Vec<OrthantPiece> = Vec::new();
    for code in 0..(1usize << m) {
        let signs: Vec<i8> = (0..m).map(|i| if code >> i & 1 == 0 { 1 } else { -1 }).collect();
        let tau: Vec<i8> = (0..n).map(|j| signs[layout.material_of(j)]).collect();
        let orthant_cost = symmetrize_for_orthant(cost, &signs)?;
        let vertices = hull_vertices(&orthant_cost, layout, &patterns)?;
        // Materials without labels give repeated pieces.
        if pieces.iter().any(|p| p.tau == tau && p.vertices == vertices) {
            continue;
        }
        pieces.push(OrthantPiece { signs, tau, vertices });
    }
    Ok(NormBall {
        dim: n,
        repr: Repr::Orthants(pieces),
    })
}

fn sign_patterns(n: usize) -> Vec<Vec<i8>> {
    let total = 3usize.pow(n as u32);
    (1..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % 3;
                    code /= 3;
                    match d {
                        0 => 0,
                        1 => 1,
                        _ => -1,
                    }
                })
                .collect()
        })
        .collect()
}

fn hull_vertices(
    cost: &MultiMaterialCost,
    layout: &LabelLayout,
    patterns: &[Vec<i8>],
) -> Result<Vec<Vertex>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(patterns.len());
    for d in patterns {
        let mut sums = vec![0i64; layout.materials()];
        for (j, &v) in d.iter().enumerate() {
            sums[layout.material_of(j)] += (v as i64).abs();
        }
        let c = cost.evaluate(&sums)?;
        if !(c > 0.0) {
            return Err(Error::Precondition(format!("C({sums:?}) = {c} is not positive")));
        }
        let point: Vec<f64> = d.iter().map(|&v| v as f64 / c).collect();
        let key: Vec<u64> = point.iter().map(|v| v.to_bits()).collect();
        if seen.insert(key) {
            out.push(Vertex {
                point,
                pattern: Some(d.clone()),
                c: Some(c),
            });
        }
    }
    Ok(out)
}

fn hull_gauge(vertices: &[Vertex], x: &[f64]) -> Result<f64> {
    if x.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let mut lp = LinearProgram::minimize(vec![1.0; vertices.len()]);
    for j in 0..x.len() {
        lp.constrain(vertices.iter().map(|v| v.point[j]).collect(), Relation::Eq, x[j]);
    }
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Internal("point outside the span of the ball".into())),
        LpOutcome::Unbounded => Err(Error::Internal("unbounded gauge LP".into())),
    }
}

impl NormBall {
    /// The symmetric polytope `conv{±v}` for the given points, which must
    /// span R^N.
    pub fn from_vertices(points: Vec<Vec<f64>>) -> Result<NormBall> {
        let Some(first) = points.first() else {
            return invalid("a ball needs at least one vertex");
        };
        let dim = first.len();
        let mut vertices: Vec<Vertex> = Vec::new();
        for p in &points {
            if p.len() != dim || p.iter().any(|v| !v.is_finite()) || p.iter().all(|&v| v == 0.0) {
                return invalid("ball vertices must be finite, nonzero and of equal length");
            }
            for q in [p.clone(), p.iter().map(|v| -v).collect::<Vec<f64>>()] {
                if !vertices.iter().any(|v| v.point == q) {
                    vertices.push(Vertex {
                        point: q,
                        pattern: None,
                        c: None,
                    });
                }
            }
        }
        for j in 0..dim {
            let mut e = vec![0.0; dim];
            e[j] = 1.0;
            if hull_gauge(&vertices, &e).is_err() {
                return invalid("ball vertices do not span the space");
            }
        }
        Ok(NormBall {
            dim,
            repr: Repr::Hull(vertices),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when the ball is a single convex hull (the supersymmetric
    /// construction or an explicit vertex list).
    pub fn is_hull(&self) -> bool {
        matches!(self.repr, Repr::Hull(_))
    }

    /// Hull vertices, when the ball is a single hull.
    pub fn hull(&self) -> Option<&[Vertex]> {
        match &self.repr {
            Repr::Hull(v) => Some(v),
            Repr::Orthants(_) => None,
        }
    }

    /// Orthant pieces of the general construction.
    pub fn pieces(&self) -> Option<&[OrthantPiece]> {
        match &self.repr {
            Repr::Hull(_) => None,
            Repr::Orthants(p) => Some(p),
        }
    }

    /// All stored `q_D` (or explicit) vertices.
    pub fn stored_vertices(&self) -> Vec<&Vertex> {
        match &self.repr {
            Repr::Hull(v) => v.iter().collect(),
            Repr::Orthants(p) => p.iter().flat_map(|p| p.vertices.iter()).collect(),
        }
    }

    /// The gauge (Minkowski functional) of the ball at `x`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return invalid(format!("vector of length {} for a ball in dimension {}", x.len(), self.dim));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return invalid("non-finite vector");
        }
        match &self.repr {
            Repr::Hull(v) => hull_gauge(v, x),
            Repr::Orthants(pieces) => {
                let mut best: f64 = 0.0;
                for p in pieces {
                    best = best.max(p.gauge(x)?);
                }
                Ok(best)
            }
        }
    }

    pub fn gauge_int(&self, x: &[i64]) -> Result<f64> {
        let y: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        self.gauge(&y)
    }

    /// Extreme points of the ball.
    pub fn extreme_points(&self) -> Result<Vec<Vec<f64>>> {
        match &self.repr {
            Repr::Hull(v) => {
                let pts: Vec<Vec<f64>> = v.iter().map(|v| v.point.clone()).collect();
                filter_extreme(pts)
            }
            Repr::Orthants(pieces) => self.general_extreme_points(pieces),
        }
    }

    fn general_extreme_points(&self, pieces: &[OrthantPiece]) -> Result<Vec<Vec<f64>>> {
        let n = self.dim;
        let mut cands: Vec<Vec<f64>> = Vec::new();
        let push = |c: &mut Vec<Vec<f64>>, p: Vec<f64>| {
            if !c.iter().any(|q| close(q, &p, 1e-7)) {
                c.push(p);
            }
        };
        for v in pieces.iter().flat_map(|p| p.vertices.iter()) {
            if self.gauge(&v.point)? <= 1.0 + BALL_TOL {
                push(&mut cands, v.point.clone());
            }
        }
        // Vertices of an intersection need not be vertices of any piece, so
        // add maximisers of linear functionals over the ball as well.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut directions: Vec<Vec<f64>> = Vec::new();
        if n <= 4 {
            for d in sign_patterns(n) {
                directions.push(d.iter().map(|&v| v as f64 + rng.gen_range(-1e-3..1e-3)).collect());
            }
        }
        for _ in 0..(16 * n).max(32) {
            directions.push(random_direction(&mut rng, n));
        }
        for y in &directions {
            let (g, _) = self.support_point(pieces, y)?;
            let snapped = cands.iter().find(|q| close(q, &g, 1e-7)).cloned();
            if snapped.is_none() {
                push(&mut cands, g);
            }
        }
        let mut ext = filter_extreme(cands)?;
        // Completeness check on fresh directions.
        for _round in 0..4 {
            let mut added = false;
            for _ in 0..(8 * n).max(16) {
                let y = random_direction(&mut rng, n);
                let (g, h) = self.support_point(pieces, &y)?;
                let best = ext.iter().map(|v| dot(v, &y)).fold(f64::NEG_INFINITY, f64::max);
                if h > best + 1e-8 {
                    ext.push(g);
                    added = true;
                }
            }
            if !added {
                break;
            }
            ext = filter_extreme(ext)?;
        }
        Ok(ext)
    }

    /// A maximiser of `y·g` over the ball and the maximum value.
    fn support_point(&self, pieces: &[OrthantPiece], y: &[f64]) -> Result<(Vec<f64>, f64)> {
        let n = self.dim;
        let total: usize = pieces.iter().map(|p| p.vertices.len()).sum();
        let cols = 2 * n + total;
        let mut obj = vec![0.0; cols];
        for j in 0..n {
            obj[j] = -y[j];
            obj[n + j] = y[j];
        }
        let mut lp = LinearProgram::minimize(obj);
        let mut offset = 2 * n;
        for p in pieces {
            let k = p.vertices.len();
            let mut row = vec![0.0; cols];
            row[offset..offset + k].iter_mut().for_each(|c| *c = 1.0);
            lp.constrain(row, Relation::Le, 1.0);
            for j in 0..n {
                let t = p.tau[j] as f64;
                let mut row = vec![0.0; cols];
                for (i, v) in p.vertices.iter().enumerate() {
                    row[offset + i] = t * v.point[j];
                }
                let mut dom = row.clone();
                dom[j] = -t;
                dom[n + j] = t;
                lp.constrain(dom, Relation::Ge, 0.0);
                lp.constrain(row, Relation::Ge, 0.0);
            }
            offset += k;
        }
        match lp.solve()? {
            LpOutcome::Optimal { x, value } => {
                let g: Vec<f64> = (0..n).map(|j| x[j] - x[n + j]).collect();
                Ok((g, -value))
            }
            other => Err(Error::Internal(format!("support LP: {other:?}"))),
        }
    }

    /// A serialisable description of the ball.
    pub fn export(&self) -> BallExport {
        match &self.repr {
            Repr::Hull(v) => BallExport {
                dim: self.dim,
                construction: "hull".into(),
                pieces: vec![OrthantPiece {
                    signs: Vec::new(),
                    tau: vec![1; self.dim],
                    vertices: v.clone(),
                }],
            },
            Repr::Orthants(p) => BallExport {
                dim: self.dim,
                construction: "orthants".into(),
                pieces: p.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallExport {
    pub dim: usize,
    pub construction: String,
    pub pieces: Vec<OrthantPiece>,
}

fn random_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = dot(&v, &v);
        if s > 1e-6 && s <= 1.0 {
            return v;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Keeps the points that are not in the symmetric hull of the others.
fn filter_extreme(mut pts: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    // Symmetrise and deduplicate first.
    let mut all: Vec<Vec<f64>> = Vec::new();
    for p in pts.drain(..) {
        for q in [p.clone(), p.iter().map(|v| -v).collect::<Vec<f64>>()] {
            if !all.iter().any(|r| close(r, &q, 1e-9)) {
                all.push(q);
            }
        }
    }
    let mut keep = Vec::new();
    for (k, p) in all.iter().enumerate() {
        let others: Vec<Vertex> = all
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, q)| Vertex {
                point: q.clone(),
                pattern: None,
                c: None,
            })
            .collect();
        let extreme = match hull_gauge(&others, p) {
            // On the boundary of the others' hull means not extreme.
            Ok(g) => g > 1.0 + BALL_TOL,
            Err(Error::Internal(_)) => true,
            Err(e) => return Err(e),
        };
        if extreme {
            keep.push(p.clone());
        }
    }
    Ok(keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqnWitness {
    pub theta: Vec<i64>,
    pub sigma: Vec<Vec<usize>>,
    pub pattern: Vec<i64>,
    pub cost: f64,
    pub gauge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqnReport {
    pub holds: bool,
    pub max_residual: f64,
    pub mode: SearchMode,
    pub permutations_checked: usize,
    pub evaluations: usize,
    pub witness: Option<EqnWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqnOptions {
    pub tol: f64,
    /// Above this many permutations a uniform sample of this size is used.
    pub max_perms: usize,
    pub seed: u64,
}

impl Default for EqnOptions {
    fn default() -> Self {
        EqnOptions {
            tol: 1e-9,
            max_perms: 10_000,
            seed: 0,
        }
    }
}

/// Checks `C(θ) = ‖label pattern of θ under σ‖` over the whole box
/// `∏[−N_i, N_i]` and all (or sampled) permutations σ. The witness is the
/// case with the largest residual.
pub fn verify_eqn_main(
    cost: &MultiMaterialCost,
    ball: &NormBall,
    layout: &LabelLayout,
    opts: &EqnOptions,
) -> Result<EqnReport> {
    if ball.dim() != layout.total() {
        return invalid("ball dimension differs from the label count");
    }
    let exhaustive = layout.permutation_count() <= opts.max_perms as u128;
    let perms: Vec<LabelPermutation> = if exhaustive {
        layout.all_permutations().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.max_perms).map(|_| layout.random_permutation(&mut rng)).collect()
    };
    let bounds: Vec<i64> = layout.counts().iter().map(|&c| c as i64).collect();
    let thetas: Vec<Vec<i64>> = crate::cost::BoxPoints::new(&bounds).collect();
    let mut cache: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    let mut evaluations = 0;
    for sigma in &perms {
        for theta in &thetas {
            let c = cost.evaluate(theta)?;
            let pattern = layout.label_pattern(theta, sigma)?;
            let g = match cache.get(&pattern) {
                Some(&g) => g,
                None => {
                    let g = ball.gauge_int(&pattern)?;
                    cache.insert(pattern.clone(), g);
                    evaluations += 1;
                    g
                }
            };
            let r = (c - g).abs();
            if r > max_residual {
                max_residual = r;
                witness = Some(EqnWitness {
                    theta: theta.clone(),
                    sigma: sigma.per_material.clone(),
                    pattern: pattern.clone(),
                    cost: c,
                    gauge: g,
                });
            }
        }
    }
    let holds = max_residual <= opts.tol;
    Ok(EqnReport {
        holds,
        max_residual,
        mode: if exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::Sampled
        },
        permutations_checked: perms.len(),
        evaluations,
        witness: if holds { None } else { witness },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub absolute: bool,
    pub monotone: bool,
    pub samples: usize,
    pub max_absolute_gap: f64,
    pub max_monotone_violation: f64,
    /// A point with `‖x‖ ≠ ‖|x|‖`.
    pub absolute_witness: Option<Vec<f64>>,
    /// A pair `(x, y)` with `y ≼ x` and `‖y‖ > ‖x‖`.
    pub monotone_witness: Option<(Vec<f64>, Vec<f64>)>,
}

/// Samples `x` uniformly in `[−2, 2]^N` and tests absoluteness and
/// monotonicity under shrinking one coordinate towards zero.
pub fn check_monotone_absolute(ball: &NormBall, samples: usize, seed: u64) -> Result<MonotoneReport> {
    let n = ball.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MonotoneReport {
        absolute: true,
        monotone: true,
        samples,
        max_absolute_gap: 0.0,
        max_monotone_violation: 0.0,
        absolute_witness: None,
        monotone_witness: None,
    };
    if n == 0 {
        return Ok(report);
    }
    for s in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let gx = ball.gauge(&x)?;
        let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        let gap = (gx - ball.gauge(&abs)?).abs();
        if gap > report.max_absolute_gap {
            report.max_absolute_gap = gap;
            if gap > BALL_TOL {
                report.absolute = false;
                report.absolute_witness = Some(x.clone());
            }
        }
        let mut y = x.clone();
        y[s % n] *= rng.gen_range(0.0..1.0);
        let violation = ball.gauge(&y)? - gx;
        if violation > report.max_monotone_violation {
            report.max_monotone_violation = violation;
            if violation > BALL_TOL {
                report.monotone = false;
                report.monotone_witness = Some((x.clone(), y));
            }
        }
    }
    Ok(report)
}

/// `true` when the LP residual of a stored vertex is below the tolerance.
pub fn on_boundary(ball: &NormBall, x: &[f64]) -> Result<bool> {
    Ok((ball.gauge(x)? - 1.0).abs() <= BALL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{gilbert_steiner, mailing, steiner};
    use crate::layout::label_layout;
    use crate::model::{Atom, Boundary};

    fn line_layout(n: i64) -> LabelLayout {
        let b = Boundary::new(1, 1, vec![Atom::new(vec![0.0], vec![-n]), Atom::new(vec![1.0], vec![n])]).unwrap();
        label_layout(&b).unwrap()
    }

    pub(crate) fn y_layout() -> LabelLayout {
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
        label_layout(&b).unwrap()
    }

    fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        for p in v.iter_mut() {
            for c in p.iter_mut() {
                *c = (*c * 1e9).round() / 1e9;
            }
        }
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn steiner_gives_sup_norm() {
        let ball = build_ball(&steiner(), &line_layout(2)).unwrap();
        assert!(ball.is_hull());
        assert!((ball.gauge(&[0.3, -0.7]).unwrap() - 0.7).abs() < 1e-12);
        let ext = sorted(ball.extreme_points().unwrap());
        assert_eq!(ext, vec![vec![-1.0, -1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn gilbert_steiner_octagon() {
        let ball = build_ball(&gilbert_steiner(0.5).unwrap(), &line_layout(2)).unwrap();
        assert!((ball.gauge(&[1.0, 1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((ball.gauge(&[1.0, -1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(ball.extreme_points().unwrap().len(), 8);
    }

    #[test]
    fn hexagon_from_mailing_steiner() {
        let cost = mailing(2, 0.0).unwrap();
        let ball = build_ball(&cost, &y_layout()).unwrap();
        assert!(!ball.is_hull());
        assert!((ball.gauge(&[1.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((ball.gauge(&[1.0, -1.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!((ball.gauge(&[-1.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
        let ext = sorted(ball.extreme_points().unwrap());
        assert_eq!(
            ext,
            vec![
                vec![-1.0, -1.0],
                vec![-1.0, 0.0],
                vec![0.0, -1.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );
        let r = check_monotone_absolute(&ball, 200, 1).unwrap();
        assert!(!r.absolute && r.monotone);
    }

    #[test]
    fn eqn_main_small_cases() {
        let cost = gilbert_steiner(0.5).unwrap();
        let layout = line_layout(2);
        let ball = build_ball(&cost, &layout).unwrap();
        let r = verify_eqn_main(&cost, &ball, &layout, &EqnOptions::default()).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.mode, SearchMode::Exhaustive);
        let cost = mailing(2, 0.0).unwrap();
        let layout = y_layout();
        let ball = build_ball(&cost, &layout).unwrap();
        assert!(verify_eqn_main(&cost, &ball, &layout, &EqnOptions::default()).unwrap().holds);
    }

    #[test]
    fn explicit_ball() {
        let ball = NormBall::from_vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0 / 3.0, 2.0 / 3.0]]).unwrap();
        assert_eq!(ball.extreme_points().unwrap().len(), 6);
        assert!((ball.gauge(&[1.0, 1.0]).unwrap() - 1.5).abs() < 1e-12);
        assert!(NormBall::from_vertices(vec![vec![1.0, 0.0]]).is_err());
    }
}
