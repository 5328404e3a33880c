//! Constant calibrations: a matrix `ω` with one row `α_j ∈ R^d` per label,
//! paired with an oriented edge as `⟨ω; τ, θ⟩ = Σ_j (α_j·τ) θ_j`.
//!
//! A constant form is closed, so only the pointwise conditions need
//! checking: equality with the gauge along the network, and comass at most
//! one. The comass sup is linear in the coefficient, so it is attained at
//! an extreme point of the unit ball.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geometry::{dot, norm};
use crate::lifting::boundary_permutation;
use crate::model::{boundary_of, LabeledNetwork};
use crate::norm::NormBall;

/// Default tolerance for both calibration conditions.
pub const CALIBRATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantForm {
    pub rows: Vec<Vec<f64>>,
}

impl ConstantForm {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != d) {
            return invalid("form rows have different lengths");
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return invalid("form entries must be finite");
        }
        Ok(ConstantForm { rows })
    }

    pub fn zero(labels: usize, dim: usize) -> Self {
        ConstantForm {
            rows: vec![vec![0.0; dim]; labels],
        }
    }

    pub fn labels(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        self.rows.first().map(|r| r.len())
    }

    /// `⟨ω; τ, θ⟩`.
    pub fn pair(&self, tau: &[f64], theta: &[f64]) -> f64 {
        self.rows.iter().zip(theta).map(|(r, t)| dot(r, tau) * t).sum()
    }

    /// The covector `Σ_j g_j α_j`.
    pub fn covector(&self, g: &[f64]) -> Vec<f64> {
        let d = self.ambient_dim().unwrap_or(0);
        let mut out = vec![0.0; d];
        for (r, &gj) in self.rows.iter().zip(g) {
            for (o, v) in out.iter_mut().zip(r) {
                *o += gj * v;
            }
        }
        out
    }

    /// `∫_T ω = Σ_e length · ⟨ω; τ_e, θ_e⟩`.
    pub fn integrate(&self, lnet: &LabeledNetwork) -> f64 {
        (0..lnet.edges().len())
            .map(|e| {
                let theta: Vec<f64> = lnet.edges()[e].multiplicity.iter().map(|&v| v as f64).collect();
                lnet.edge_length(e) * self.pair(&lnet.tangent(e), &theta)
            })
            .sum()
    }

    fn check_against(&self, lnet: &LabeledNetwork, ball: &NormBall) -> Result<()> {
        if self.labels() != ball.dim() {
            return invalid(format!("form has {} rows, ball dimension is {}", self.labels(), ball.dim()));
        }
        if lnet.labels() != ball.dim() {
            return invalid(format!("network has {} labels, ball dimension is {}", lnet.labels(), ball.dim()));
        }
        if self.labels() > 0 && !lnet.is_empty() && self.ambient_dim() != Some(lnet.dim()) {
            return invalid("form and network live in different ambient dimensions");
        }
        Ok(())
    }
}

/// An edge where the pairing and the gauge disagree the most.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub edge: usize,
    pub tangent: Vec<f64>,
    pub multiplicity: Vec<i64>,
    /// Signed `⟨ω; τ, θ⟩`; its magnitude is what gets compared when the
    /// orientation of the edge is in doubt.
    pub pairing: f64,
    pub gauge: f64,
}

/// The extreme point with the largest comass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComassWitness {
    pub extreme_point: Vec<f64>,
    pub covector: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub cond_i_max_residual: f64,
    pub cond_ii: bool,
    pub cond_iii_max_value: f64,
    pub verdict: bool,
    pub tol: f64,
    pub edge_witness: Option<EdgeWitness>,
    pub comass_witness: Option<ComassWitness>,
}

/// Checks that `form` calibrates `lnet` for the mass of `ball`.
pub fn verify_calibration(
    form: &ConstantForm,
    lnet: &LabeledNetwork,
    ball: &NormBall,
    tol: f64,
) -> Result<CalibrationReport> {
    form.check_against(lnet, ball)?;
    let mut residual = 0.0;
    let mut edge_witness = None;
    for (k, e) in lnet.edges().iter().enumerate() {
        let tau = lnet.tangent(k);
        let theta: Vec<f64> = e.multiplicity.iter().map(|&v| v as f64).collect();
        let pairing = form.pair(&tau, &theta);
        let gauge = ball.gauge(&theta)?;
        let r = (pairing - gauge).abs();
        if edge_witness.is_none() || r > residual {
            residual = r;
            edge_witness = Some(EdgeWitness {
                edge: k,
                tangent: tau,
                multiplicity: e.multiplicity.clone(),
                pairing,
                gauge,
            });
        }
    }
    let mut comass = 0.0;
    let mut comass_witness = None;
    if form.labels() > 0 {
        for g in ball.extreme_points()? {
            let c = form.covector(&g);
            let v = norm(&c);
            if comass_witness.is_none() || v > comass {
                comass = v;
                comass_witness = Some(ComassWitness {
                    extreme_point: g,
                    covector: c,
                    value: v,
                });
            }
        }
    }
    Ok(CalibrationReport {
        cond_i_max_residual: residual,
        cond_ii: true,
        cond_iii_max_value: comass,
        verdict: residual <= tol && comass <= 1.0 + tol,
        tol,
        edge_witness,
        comass_witness,
    })
}

/// The chain `M(T) = T(ω) = T'(ω) ≤ M(T')`, evaluated numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassGapReport {
    pub calibrated: bool,
    pub mass: f64,
    pub form_on_network: f64,
    pub form_on_competitor: f64,
    pub competitor_mass: f64,
    /// `competitor_mass - mass`.
    pub gap: f64,
    pub stokes_residual: f64,
    /// Every link of the chain holds within `tol`.
    pub holds: bool,
}

pub fn mass_gap_certificate(
    form: &ConstantForm,
    lnet: &LabeledNetwork,
    competitor: &LabeledNetwork,
    ball: &NormBall,
    tol: f64,
) -> Result<MassGapReport> {
    if !boundary_of(lnet.as_network()).same_as(&boundary_of(competitor.as_network())) {
        return invalid("networks have different boundaries");
    }
    form.check_against(competitor, ball)?;
    let report = verify_calibration(form, lnet, ball, tol)?;
    let mass = crate::model::mass(lnet, ball)?;
    let competitor_mass = crate::model::mass(competitor, ball)?;
    let on_net = form.integrate(lnet);
    let on_comp = form.integrate(competitor);
    let stokes = (on_net - on_comp).abs();
    let holds = report.verdict
        && (mass - on_net).abs() <= tol * (1.0 + mass.abs())
        && stokes <= tol * (1.0 + on_net.abs())
        && on_comp <= competitor_mass + tol * (1.0 + competitor_mass.abs());
    Ok(MassGapReport {
        calibrated: report.verdict,
        mass,
        form_on_network: on_net,
        form_on_competitor: on_comp,
        competitor_mass,
        gap: competitor_mass - mass,
        stokes_residual: stokes,
        holds,
    })
}

/// Whether both networks realise the same permuted boundary for `layout`;
/// competitors routed under another σ are not comparable by Stokes.
pub fn same_labeled_boundary(a: &LabeledNetwork, b: &LabeledNetwork, layout: &crate::layout::LabelLayout) -> Result<bool> {
    Ok(boundary_permutation(a, layout)? == boundary_permutation(b, layout)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Edge;

    fn hexagon() -> NormBall {
        NormBall::from_vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap()
    }

    fn omega1() -> ConstantForm {
        let h = 3f64.sqrt() / 2.0;
        ConstantForm::new(vec![vec![0.5, h], vec![0.5, -h]]).unwrap()
    }

    #[test]
    fn zero_form_on_empty_network() {
        let ball = hexagon();
        let empty = LabeledNetwork::from_network(crate::model::Network::empty(2, 2));
        let r = verify_calibration(&ConstantForm::zero(2, 2), &empty, &ball, CALIBRATION_TOL).unwrap();
        assert!(r.verdict);
        assert_eq!(r.cond_iii_max_value, 0.0);
        assert!(r.edge_witness.is_none());
    }

    #[test]
    fn pairing_values() {
        let w = omega1();
        let h = 3f64.sqrt() / 2.0;
        assert!((w.pair(&[0.5, h], &[1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((w.pair(&[1.0, 0.0], &[1.0, 1.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let ball = hexagon();
        let l = LabeledNetwork::new(2, 2, vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![Edge::new(0, 1, vec![1, 0])]).unwrap();
        let w = ConstantForm::new(vec![vec![1.0, 0.0]]).unwrap();
        assert!(verify_calibration(&w, &l, &ball, CALIBRATION_TOL).is_err());
    }
}
