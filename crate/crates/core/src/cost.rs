//! Multi-material costs `C: Z^m → [0, ∞)` on a finite box, the builtin
//! families, axiom verification, the rectangle extension and the orthant
//! symmetrisation used by the norm construction.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Comparison tolerance for axiom checks.
pub const AXIOM_TOL: f64 = 1e-12;

/// Default per-coordinate bound for builtin costs.
pub const DEFAULT_BOUND: i64 = 4;

/// `z^α` with the convention `0^0 = 0`.
pub fn pow0(z: f64, alpha: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        z.powf(alpha)
    }
}

/// A monotone norm on R^k, used as the comparison norm in axiom (iii′) and
/// as the combiner of composite costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StarNorm {
    L1,
    LInf,
    Lp { p: f64 },
    /// `base(w ∘ x)` with nonnegative weights.
    Weighted { weights: Vec<f64>, base: Box<StarNorm> },
}

impl StarNorm {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            StarNorm::L1 => x.iter().map(|v| v.abs()).sum(),
            StarNorm::LInf => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            StarNorm::Lp { p } => {
                if p.is_infinite() {
                    return StarNorm::LInf.eval(x);
                }
                x.iter().map(|v| v.abs().powf(*p)).sum::<f64>().powf(1.0 / p)
            }
            StarNorm::Weighted { weights, base } => {
                let y: Vec<f64> = x.iter().zip(weights).map(|(v, w)| v * w).collect();
                base.eval(&y)
            }
        }
    }

    fn validate(&self, len: usize) -> Result<()> {
        match self {
            StarNorm::Lp { p } if !(*p >= 1.0) => invalid(format!("ℓ^p norm needs p >= 1, got {p}")),
            StarNorm::Weighted { weights, base } => {
                if weights.len() != len {
                    return invalid("weighted norm: weight count mismatch");
                }
                if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
                    return invalid("weighted norm: weights must be finite and nonnegative");
                }
                base.validate(len)
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub lambda: f64,
    pub alpha: f64,
}

/// The formula behind a cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CostKind {
    /// `1` off the origin.
    Steiner,
    /// `|z|^α`.
    GilbertSteiner { alpha: f64 },
    /// `Σ λ_k |z|^{α_k}`.
    LinearCombination { terms: Vec<PowerTerm> },
    /// Pointwise maximum of costs with the same material count.
    MaxOf { parts: Vec<MultiMaterialCost> },
    /// `max{λ₁|z₁|^{α₁}, λ₂|z₂|^{α₂}}`.
    Plc { lambda1: f64, lambda2: f64, alpha1: f64, alpha2: f64 },
    /// `|(C₁(z₁), …, C_m(z_m))|_⋆` for single-material costs `C_i`.
    Composite { combiner: StarNorm, singles: Vec<MultiMaterialCost> },
    /// `(Σ_{z_i ≥ 0} z_i)^α + |Σ_{z_i < 0} z_i|^α`.
    Mailing { alpha: f64 },
    /// `min{a|z|, |z| + b}`.
    Urban { a: f64, b: f64 },
    /// `‖z‖` for a monotone norm.
    Norm { norm: StarNorm },
    /// Dense values over the box, row-major with the last coordinate
    /// varying fastest.
    Table { values: Vec<f64> },
    /// `max{C(y) : y ≼ z, y in the base box}`.
    Extension { base: Box<MultiMaterialCost> },
    /// `C(s ∘ |z|)`.
    Orthant { base: Box<MultiMaterialCost>, signs: Vec<i8> },
}

/// A cost function on the integer points of `∏[−a_i, a_i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiMaterialCost {
    pub materials: usize,
    #[serde(rename = "box")]
    pub bounds: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_norm: Option<StarNorm>,
    #[serde(flatten)]
    pub kind: CostKind,
}

impl MultiMaterialCost {
    /// Builds a cost and checks its parameters, box and the basic
    /// invariants `C(0) = 0`, `C(x) > 0` off the origin.
    pub fn new(materials: usize, bounds: Vec<i64>, kind: CostKind, star_norm: Option<StarNorm>) -> Result<Self> {
        let cost = MultiMaterialCost {
            materials,
            bounds,
            star_norm,
            kind,
        };
        cost.validate()?;
        Ok(cost)
    }

    /// Re-runs all construction checks; used after deserialisation.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(true)
    }

    /// A building block for `max_of` that may vanish off the origin, such
    /// as a seminorm on a subset of the coordinates.
    pub fn part(materials: usize, bounds: Vec<i64>, kind: CostKind) -> Result<Self> {
        let cost = MultiMaterialCost {
            materials,
            bounds,
            star_norm: None,
            kind,
        };
        cost.validate_with(false)?;
        Ok(cost)
    }

    fn validate_with(&self, positive: bool) -> Result<()> {
        let m = self.materials;
        if m == 0 {
            return invalid("a cost needs at least one material");
        }
        if self.bounds.len() != m || self.bounds.iter().any(|&a| a < 0) {
            return invalid(format!("box must list {m} nonnegative bounds"));
        }
        if let Some(s) = &self.star_norm {
            s.validate(m)?;
        }
        let finite = |v: f64, what: &str| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                invalid(format!("{what} must be finite"))
            }
        };
        match &self.kind {
            CostKind::Steiner | CostKind::GilbertSteiner { .. } | CostKind::LinearCombination { .. } | CostKind::Urban { .. }
                if m != 1 =>
            {
                return invalid("this cost family is single-material");
            }
            CostKind::Plc { .. } if m != 2 => return invalid("the PLC cost has two materials"),
            _ => {}
        }
        match &self.kind {
            CostKind::GilbertSteiner { alpha } | CostKind::Mailing { alpha } => {
                if !(0.0..=1.0).contains(alpha) {
                    return invalid(format!("exponent must lie in [0, 1], got {alpha}"));
                }
            }
            CostKind::LinearCombination { terms } => {
                if terms.is_empty() {
                    return invalid("linear combination needs at least one term");
                }
                for t in terms {
                    finite(t.lambda, "λ")?;
                    if !(t.lambda > 0.0) || !(0.0..=1.0).contains(&t.alpha) {
                        return invalid("linear combination needs λ > 0 and α in [0, 1]");
                    }
                }
            }
            CostKind::MaxOf { parts } => {
                if parts.is_empty() {
                    return invalid("max_of needs at least one part");
                }
                for p in parts {
                    p.validate_with(false)?;
                    if p.materials != m || p.bounds.iter().zip(&self.bounds).any(|(a, b)| a < b) {
                        return invalid("max_of parts must share the material count and cover the box");
                    }
                }
            }
            CostKind::Plc {
                lambda1,
                lambda2,
                alpha1,
                alpha2,
            } => {
                finite(*lambda1, "λ₁")?;
                finite(*lambda2, "λ₂")?;
                if !(*lambda1 > 0.0 && *lambda2 > 0.0) || !(0.0..=1.0).contains(alpha1) || !(0.0..=1.0).contains(alpha2) {
                    return invalid("PLC needs λ > 0 and α in [0, 1]");
                }
            }
            CostKind::Composite { combiner, singles } => {
                combiner.validate(m)?;
                if singles.len() != m {
                    return invalid("composite cost needs one single-material cost per material");
                }
                for (i, s) in singles.iter().enumerate() {
                    s.validate()?;
                    if s.materials != 1 || s.bounds[0] < self.bounds[i] {
                        return invalid("composite parts must be single-material and cover the box");
                    }
                }
            }
            CostKind::Urban { a, b } => {
                finite(*a, "a")?;
                finite(*b, "b")?;
                if !(*a > 0.0 && *b >= 0.0) {
                    return invalid("urban cost needs a > 0 and b >= 0");
                }
            }
            CostKind::Norm { norm } => norm.validate(m)?,
            CostKind::Table { values } => {
                if values.len() != box_size(&self.bounds) {
                    return invalid(format!(
                        "table has {} values, box has {} points",
                        values.len(),
                        box_size(&self.bounds)
                    ));
                }
                if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return invalid("table values must be finite and nonnegative");
                }
            }
            CostKind::Extension { base } => {
                base.validate()?;
                if base.materials != m || base.bounds.iter().zip(&self.bounds).any(|(a, b)| a > b) {
                    return invalid("extension box must contain the base box");
                }
            }
            CostKind::Orthant { base, signs } => {
                base.validate()?;
                if base.materials != m || base.bounds != self.bounds {
                    return invalid("orthant cost shares the base box");
                }
                if signs.len() != m || signs.iter().any(|s| *s != 1 && *s != -1) {
                    return invalid("orthant signs must be ±1, one per material");
                }
            }
            _ => {}
        }
        // C(0) = 0 and C(x) > 0 elsewhere on the box.
        for x in BoxPoints::new(&self.bounds) {
            if !positive && x.iter().any(|&c| c != 0) {
                continue;
            }
            let v = self.evaluate(&x)?;
            let zero = x.iter().all(|&c| c == 0);
            if zero && v.abs() > AXIOM_TOL {
                return invalid(format!("C(0) = {v}, expected 0"));
            }
            if !zero && !(v > AXIOM_TOL) {
                return invalid(format!("C({x:?}) = {v}, expected a positive value"));
            }
        }
        Ok(())
    }

    pub fn materials(&self) -> usize {
        self.materials
    }

    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    pub fn in_box(&self, x: &[i64]) -> bool {
        x.len() == self.materials && x.iter().zip(&self.bounds).all(|(v, a)| v.abs() <= *a)
    }

    /// `C(x)`; points outside the box are a domain error.
    pub fn evaluate(&self, x: &[i64]) -> Result<f64> {
        if !self.in_box(x) {
            return Err(Error::Domain(format!("{x:?} lies outside the box {:?}", self.bounds)));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[i64]) -> f64 {
        let abs = |v: i64| v.unsigned_abs() as f64;
        let zero = x.iter().all(|&c| c == 0);
        match &self.kind {
            CostKind::Steiner => {
                if zero {
                    0.0
                } else {
                    1.0
                }
            }
            CostKind::GilbertSteiner { alpha } => pow0(abs(x[0]), *alpha),
            CostKind::LinearCombination { terms } => terms.iter().map(|t| t.lambda * pow0(abs(x[0]), t.alpha)).sum(),
            CostKind::MaxOf { parts } => parts.iter().map(|p| p.eval_unchecked(x)).fold(0.0, f64::max),
            CostKind::Plc {
                lambda1,
                lambda2,
                alpha1,
                alpha2,
            } => (lambda1 * pow0(abs(x[0]), *alpha1)).max(lambda2 * pow0(abs(x[1]), *alpha2)),
            CostKind::Composite { combiner, singles } => {
                let parts: Vec<f64> = singles.iter().zip(x).map(|(c, &v)| c.eval_unchecked(&[v])).collect();
                combiner.eval(&parts)
            }
            CostKind::Mailing { alpha } => {
                let pos: i64 = x.iter().filter(|&&v| v > 0).sum();
                let neg: i64 = x.iter().filter(|&&v| v < 0).sum();
                pow0(pos as f64, *alpha) + pow0(neg.unsigned_abs() as f64, *alpha)
            }
            CostKind::Urban { a, b } => {
                let z = abs(x[0]);
                if z == 0.0 {
                    0.0
                } else {
                    (a * z).min(z + b)
                }
            }
            CostKind::Norm { norm } => {
                let y: Vec<f64> = x.iter().map(|&v| v as f64).collect();
                norm.eval(&y)
            }
            CostKind::Table { values } => values[box_index(&self.bounds, x)],
            CostKind::Extension { base } => {
                // y ≼ x inside the base box: each y_i runs from 0 towards x_i.
                let caps: Vec<i64> = x
                    .iter()
                    .zip(&base.bounds)
                    .map(|(&v, &a)| v.signum() * v.abs().min(a))
                    .collect();
                let mut best: f64 = 0.0;
                for y in DownSet::new(&caps) {
                    best = best.max(base.eval_unchecked(&y));
                }
                best
            }
            CostKind::Orthant { base, signs } => {
                let y: Vec<i64> = x.iter().zip(signs).map(|(&v, &s)| s as i64 * v.abs()).collect();
                base.eval_unchecked(&y)
            }
        }
    }

    /// The same formula on a different box.
    pub fn with_bounds(&self, bounds: Vec<i64>) -> Result<Self> {
        if matches!(self.kind, CostKind::Table { .. }) {
            return invalid("a tabulated cost cannot change its box; extend it instead");
        }
        let mut c = self.clone();
        c.bounds = bounds.clone();
        match &mut c.kind {
            CostKind::MaxOf { parts } => {
                for p in parts.iter_mut() {
                    if p.bounds.iter().zip(&bounds).any(|(a, b)| a < b) {
                        *p = p.with_bounds(bounds.clone())?;
                    }
                }
            }
            CostKind::Composite { singles, .. } => {
                for (s, &b) in singles.iter_mut().zip(&bounds) {
                    if s.bounds[0] < b {
                        *s = s.with_bounds(vec![b])?;
                    }
                }
            }
            CostKind::Orthant { base, .. } => **base = base.with_bounds(bounds.clone())?,
            _ => {}
        }
        c.validate()?;
        Ok(c)
    }

    /// Tabulates `f` over the box.
    pub fn from_fn(
        materials: usize,
        bounds: Vec<i64>,
        star_norm: Option<StarNorm>,
        f: impl Fn(&[i64]) -> f64,
    ) -> Result<Self> {
        if bounds.len() != materials {
            return invalid("bound count must equal the material count");
        }
        let values = BoxPoints::new(&bounds).map(|x| f(&x)).collect();
        MultiMaterialCost::new(materials, bounds, CostKind::Table { values }, star_norm)
    }
}

fn single(kind: CostKind) -> MultiMaterialCost {
    MultiMaterialCost::new(1, vec![DEFAULT_BOUND], kind, Some(StarNorm::L1)).expect("valid builtin")
}

/// The Steiner cost: 1 for every nonzero multiplicity.
pub fn steiner() -> MultiMaterialCost {
    single(CostKind::Steiner)
}

/// `|z|^α`, `0 ≤ α ≤ 1`.
pub fn gilbert_steiner(alpha: f64) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(1, vec![DEFAULT_BOUND], CostKind::GilbertSteiner { alpha }, Some(StarNorm::L1))
}

/// `Σ λ_k |z|^{α_k}` from `(λ_k, α_k)` pairs.
pub fn linear_combination(terms: &[(f64, f64)]) -> Result<MultiMaterialCost> {
    let terms = terms.iter().map(|&(lambda, alpha)| PowerTerm { lambda, alpha }).collect();
    MultiMaterialCost::new(1, vec![DEFAULT_BOUND], CostKind::LinearCombination { terms }, Some(StarNorm::L1))
}

/// Pointwise maximum; the box is the intersection of the parts' boxes.
pub fn max_of(parts: Vec<MultiMaterialCost>) -> Result<MultiMaterialCost> {
    let Some(first) = parts.first() else {
        return invalid("max_of needs at least one part");
    };
    let m = first.materials;
    let mut bounds = first.bounds.clone();
    for p in &parts {
        if p.materials != m {
            return invalid("max_of parts must share the material count");
        }
        for (b, a) in bounds.iter_mut().zip(&p.bounds) {
            *b = (*b).min(*a);
        }
    }
    let star = if m == 1 { Some(StarNorm::L1) } else { None };
    MultiMaterialCost::new(m, bounds, CostKind::MaxOf { parts }, star)
}

pub fn plc(lambda1: f64, lambda2: f64, alpha1: f64, alpha2: f64) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(
        2,
        vec![DEFAULT_BOUND; 2],
        CostKind::Plc {
            lambda1,
            lambda2,
            alpha1,
            alpha2,
        },
        None,
    )
}

pub fn composite(combiner: StarNorm, singles: Vec<MultiMaterialCost>) -> Result<MultiMaterialCost> {
    let m = singles.len();
    let bounds = singles.iter().map(|s| s.bounds.first().copied().unwrap_or(0)).collect();
    MultiMaterialCost::new(m, bounds, CostKind::Composite { combiner, singles }, None)
}

/// The mailing cost on `m` materials.
pub fn mailing(m: usize, alpha: f64) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(m, vec![DEFAULT_BOUND; m], CostKind::Mailing { alpha }, None)
}

/// `min{a|z|, |z| + b}`.
pub fn urban(a: f64, b: f64) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(1, vec![DEFAULT_BOUND], CostKind::Urban { a, b }, Some(StarNorm::L1))
}

/// `C(z) = ‖z‖`, which satisfies (iii′) with the norm itself.
pub fn norm_cost(m: usize, norm: StarNorm) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(m, vec![DEFAULT_BOUND; m], CostKind::Norm { norm: norm.clone() }, Some(norm))
}

/// `C̄(x) = max{C(y) : y ≼ x, y in the rectangle of `cost`}` on `bounds`.
pub fn extend_from_rectangle(cost: &MultiMaterialCost, bounds: Vec<i64>) -> Result<MultiMaterialCost> {
    if bounds.len() != cost.materials || bounds.iter().zip(&cost.bounds).any(|(b, a)| b < a) {
        return invalid("the extended box must contain the original rectangle");
    }
    MultiMaterialCost::new(
        cost.materials,
        bounds,
        CostKind::Extension {
            base: Box::new(cost.clone()),
        },
        cost.star_norm.clone(),
    )
}

/// `C_O(x) = C(s ∘ |x|)`: equal to `C` on the orthant of `s` and invariant
/// under coordinate sign flips.
pub fn symmetrize_for_orthant(cost: &MultiMaterialCost, signs: &[i8]) -> Result<MultiMaterialCost> {
    MultiMaterialCost::new(
        cost.materials,
        cost.bounds.clone(),
        CostKind::Orthant {
            base: Box::new(cost.clone()),
            signs: signs.to_vec(),
        },
        cost.star_norm.clone(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    EvenAndPositive,
    Increasing,
    Subadditive,
    SublinearIiiPrime,
    Supersymmetric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub points: Vec<Vec<i64>>,
    pub values: Vec<f64>,
}

/// Outcome of the exhaustive axiom checks on the box. `sublinear_iii_prime`
/// is `None` when no comparison norm was declared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub even_and_positive: bool,
    pub increasing: bool,
    pub subadditive: bool,
    pub sublinear_iii_prime: Option<bool>,
    pub supersymmetric: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    /// (i), (ii) hold and (iii′) is not known to fail.
    pub fn admissible(&self) -> bool {
        self.even_and_positive && self.increasing && self.sublinear_iii_prime != Some(false)
    }

    pub fn counterexample(&self, axiom: Axiom) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| c.axiom == axiom)
    }
}

/// Largest box for which pairwise checks are attempted.
pub const MAX_AXIOM_BOX: usize = 20_000;

pub fn check_axioms(cost: &MultiMaterialCost) -> Result<AxiomReport> {
    check_axioms_within(cost, &cost.bounds)
}

/// The same checks restricted to the sub-box `∏[−b_i, b_i]` of the cost's box.
pub fn check_axioms_within(cost: &MultiMaterialCost, bounds: &[i64]) -> Result<AxiomReport> {
    if bounds.len() != cost.materials || bounds.iter().zip(&cost.bounds).any(|(b, a)| b > a || *b < 0) {
        return Err(Error::Domain(format!("{bounds:?} is not a sub-box of {:?}", cost.bounds)));
    }
    let size = box_size(bounds);
    if size > MAX_AXIOM_BOX {
        return Err(Error::Resource(format!("box has {size} points, limit is {MAX_AXIOM_BOX}")));
    }
    let points: Vec<Vec<i64>> = BoxPoints::new(bounds).collect();
    let values: Vec<f64> = points.iter().map(|x| cost.eval_unchecked(x)).collect();
    let at = |x: &[i64]| values[box_index(bounds, x)];
    let mut counterexamples = Vec::new();
    let mut record = |axiom: Axiom, pts: Vec<Vec<i64>>, vals: Vec<f64>| {
        if !counterexamples.iter().any(|c: &Counterexample| c.axiom == axiom) {
            counterexamples.push(Counterexample {
                axiom,
                points: pts,
                values: vals,
            });
        }
    };

    let (mut even, mut inc, mut sub, mut sup) = (true, true, true, true);
    let star = cost.star_norm.as_ref();
    let mut sublin = star.map(|_| true);
    for (x, &cx) in points.iter().zip(&values) {
        let zero = x.iter().all(|&v| v == 0);
        let neg: Vec<i64> = x.iter().map(|v| -v).collect();
        let cn = at(&neg);
        if (cx - cn).abs() > AXIOM_TOL || (zero && cx.abs() > AXIOM_TOL) || (!zero && cx <= AXIOM_TOL) {
            even = false;
            record(Axiom::EvenAndPositive, vec![x.clone(), neg], vec![cx, cn]);
        }
        let bar: Vec<i64> = x.iter().map(|v| v.abs()).collect();
        let cb = at(&bar);
        if (cx - cb).abs() > AXIOM_TOL {
            sup = false;
            record(Axiom::Supersymmetric, vec![x.clone(), bar], vec![cx, cb]);
        }
        // Covering pairs x ≼ y generate the order, so monotonicity and the
        // (iii′) ratio condition only need single-step comparisons.
        for i in 0..x.len() {
            for step in [-1i64, 1] {
                if x[i] * step < 0 || (x[i] + step).abs() > bounds[i] {
                    continue;
                }
                let mut y = x.clone();
                y[i] += step;
                let cy = at(&y);
                if cx > cy + AXIOM_TOL {
                    inc = false;
                    record(Axiom::Increasing, vec![x.clone(), y.clone()], vec![cx, cy]);
                }
                if let Some(n) = star {
                    if !zero {
                        let fx: Vec<f64> = x.iter().map(|&v| v as f64).collect();
                        let fy: Vec<f64> = y.iter().map(|&v| v as f64).collect();
                        let (rx, ry) = (cx / n.eval(&fx), cy / n.eval(&fy));
                        if ry > rx + AXIOM_TOL {
                            sublin = Some(false);
                            record(Axiom::SublinearIiiPrime, vec![y.clone(), x.clone()], vec![cy, cx]);
                        }
                    }
                }
            }
        }
    }
    for (a, &ca) in points.iter().zip(&values) {
        for (b, &cb) in points.iter().zip(&values) {
            let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
            if s.iter().zip(bounds).any(|(v, r)| v.abs() > *r) {
                continue;
            }
            let cs = at(&s);
            if cs > ca + cb + AXIOM_TOL {
                sub = false;
                record(Axiom::Subadditive, vec![a.clone(), b.clone(), s], vec![ca, cb, cs]);
            }
        }
    }
    Ok(AxiomReport {
        even_and_positive: even,
        increasing: inc,
        subadditive: sub,
        sublinear_iii_prime: sublin,
        supersymmetric: sup,
        counterexamples,
    })
}

pub(crate) fn box_size(bounds: &[i64]) -> usize {
    bounds.iter().map(|&a| (2 * a + 1) as usize).product()
}

pub(crate) fn box_index(bounds: &[i64], x: &[i64]) -> usize {
    let mut idx = 0usize;
    for (v, a) in x.iter().zip(bounds) {
        idx = idx * (2 * *a + 1) as usize + (v + a) as usize;
    }
    idx
}

/// Integer points of `∏[−a_i, a_i]` in row-major order.
pub struct BoxPoints {
    bounds: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl BoxPoints {
    pub fn new(bounds: &[i64]) -> Self {
        BoxPoints {
            bounds: bounds.to_vec(),
            next: Some(bounds.iter().map(|a| -a).collect()),
        }
    }
}

impl Iterator for BoxPoints {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.next.take()?;
        let mut n = cur.clone();
        let mut k = n.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if n[k] < self.bounds[k] {
                n[k] += 1;
                self.next = Some(n);
                break;
            }
            n[k] = -self.bounds[k];
        }
        Some(cur)
    }
}

/// All `y ≼ x` for an integer vector `x`.
struct DownSet {
    cap: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl DownSet {
    fn new(cap: &[i64]) -> Self {
        DownSet {
            cap: cap.to_vec(),
            next: Some(vec![0; cap.len()]),
        }
    }
}

impl Iterator for DownSet {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.next.take()?;
        let mut n = cur.clone();
        let mut k = n.len();
        while k > 0 {
            k -= 1;
            if n[k].abs() < self.cap[k].abs() {
                n[k] += self.cap[k].signum();
                self.next = Some(n);
                break;
            }
            n[k] = 0;
        }
        Some(cur)
    }
}
