//! Worked instances shared by the integration tests. Geometry is written
//! out by hand so that expected values can be computed independently.
#![allow(dead_code)]

use multimat::calibration::ConstantForm;
use multimat::cost::{self, StarNorm};
use multimat::{Atom, Boundary, CostKind, Edge, LabeledNetwork, MultiMaterialCost, Network, NormBall};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

pub fn p1() -> Vec<f64> {
    vec![2.0, 1.0]
}
pub fn p2() -> Vec<f64> {
    vec![2.0, -1.0]
}
pub fn p3() -> Vec<f64> {
    vec![0.0, 0.0]
}

/// `(−1,−1)δ_{p3} + (1,0)δ_{p1} + (0,1)δ_{p2}`.
pub fn y_boundary() -> Boundary {
    Boundary::new(
        2,
        2,
        vec![
            Atom::new(p3(), vec![-1, -1]),
            Atom::new(p1(), vec![1, 0]),
            Atom::new(p2(), vec![0, 1]),
        ],
    )
    .unwrap()
}

/// Junction on the axis where both branches leave at ±60°.
pub fn y_junction() -> Vec<f64> {
    vec![2.0 - 1.0 / SQRT3, 0.0]
}

pub fn y_labeled() -> LabeledNetwork {
    LabeledNetwork::new(
        2,
        2,
        vec![p3(), p1(), p2(), y_junction()],
        vec![Edge::new(0, 3, vec![1, 1]), Edge::new(3, 1, vec![1, 0]), Edge::new(3, 2, vec![0, 1])],
    )
    .unwrap()
}

/// Both labels travel straight from p3.
pub fn v_labeled() -> LabeledNetwork {
    LabeledNetwork::new(
        2,
        2,
        vec![p3(), p1(), p2()],
        vec![Edge::new(0, 1, vec![1, 0]), Edge::new(0, 2, vec![0, 1])],
    )
    .unwrap()
}

pub fn hexagon() -> NormBall {
    NormBall::from_vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap()
}

pub fn mailing_steiner() -> MultiMaterialCost {
    cost::mailing(2, 0.0).unwrap()
}

pub fn omega1() -> ConstantForm {
    ConstantForm::new(vec![vec![0.5, SQRT3 / 2.0], vec![0.5, -SQRT3 / 2.0]]).unwrap()
}

/// `(1,−1)δ_{p3} + (−1,0)δ_{p1} + (0,1)δ_{p2}`.
pub fn bprime_boundary() -> Boundary {
    Boundary::new(
        2,
        2,
        vec![
            Atom::new(p3(), vec![1, -1]),
            Atom::new(p1(), vec![-1, 0]),
            Atom::new(p2(), vec![0, 1]),
        ],
    )
    .unwrap()
}

pub fn bprime_labeled() -> LabeledNetwork {
    LabeledNetwork::new(
        2,
        2,
        vec![p3(), p1(), p2()],
        vec![Edge::new(1, 0, vec![1, 0]), Edge::new(0, 2, vec![0, 1])],
    )
    .unwrap()
}

/// Rows `(−cos θ, −sin θ)` and `(cos θ, −sin θ)` with θ the angle of p3p1.
pub fn omega2() -> ConstantForm {
    let (c, s) = (2.0 / 5f64.sqrt(), 1.0 / 5f64.sqrt());
    ConstantForm::new(vec![vec![-c, -s], vec![c, -s]]).unwrap()
}

/// Square `q1=(0,1), q2=(1,1), q3=(1,0), q4=(0,0)` with
/// `(0,−1)δ_{q1} + (1,0)δ_{q2} + (0,1)δ_{q3} + (−1,0)δ_{q4}`.
pub fn square_boundary() -> Boundary {
    Boundary::new(
        2,
        2,
        vec![
            Atom::new(vec![0.0, 1.0], vec![0, -1]),
            Atom::new(vec![1.0, 1.0], vec![1, 0]),
            Atom::new(vec![1.0, 0.0], vec![0, 1]),
            Atom::new(vec![0.0, 0.0], vec![-1, 0]),
        ],
    )
    .unwrap()
}

const SQ: f64 = 0.288_675_134_594_812_9; // 1 / (2√3)

/// Horizontal Steiner tree: both materials share the middle segment.
pub fn square_sigma1() -> LabeledNetwork {
    LabeledNetwork::new(
        2,
        2,
        vec![
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![SQ, 0.5],
            vec![1.0 - SQ, 0.5],
        ],
        vec![
            Edge::new(0, 4, vec![0, 1]),
            Edge::new(3, 4, vec![1, 0]),
            Edge::new(4, 5, vec![1, 1]),
            Edge::new(5, 1, vec![1, 0]),
            Edge::new(5, 2, vec![0, 1]),
        ],
    )
    .unwrap()
}

/// The rotated tree: the materials cross the vertical middle segment in
/// opposite directions.
pub fn square_sigma2() -> LabeledNetwork {
    LabeledNetwork::new(
        2,
        2,
        vec![
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.5, 1.0 - SQ],
            vec![0.5, SQ],
        ],
        vec![
            Edge::new(3, 5, vec![1, 0]),
            Edge::new(0, 4, vec![0, 1]),
            Edge::new(5, 4, vec![1, -1]),
            Edge::new(4, 1, vec![1, 0]),
            Edge::new(5, 2, vec![0, 1]),
        ],
    )
    .unwrap()
}

/// Mailing with `C(z) = |z|₂`: `(2,0)δ_{r1} + (0,1)δ_{r2} + (−2,−1)δ_{r3}`.
pub fn gs_points() -> [Vec<f64>; 3] {
    let r = 5f64.sqrt();
    [vec![0.0, 1.0], vec![1.0, 0.0], vec![-1.0 / r, -2.0 / r]]
}

pub fn gs_boundary() -> Boundary {
    let [r1, r2, r3] = gs_points();
    Boundary::new(
        2,
        2,
        vec![
            Atom::new(r1, vec![2, 0]),
            Atom::new(r2, vec![0, 1]),
            Atom::new(r3, vec![-2, -1]),
        ],
    )
    .unwrap()
}

pub fn gs_cost() -> MultiMaterialCost {
    cost::norm_cost(2, StarNorm::Lp { p: 2.0 }).unwrap()
}

pub fn gs_labeled() -> LabeledNetwork {
    let [r1, r2, r3] = gs_points();
    LabeledNetwork::new(
        2,
        3,
        vec![r1, r2, r3, vec![0.0, 0.0]],
        vec![
            Edge::new(2, 3, vec![1, 1, 1]),
            Edge::new(3, 0, vec![1, 1, 0]),
            Edge::new(3, 1, vec![0, 0, 1]),
        ],
    )
    .unwrap()
}

pub fn gs_form() -> ConstantForm {
    ConstantForm::new(vec![vec![0.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
}

/// Irrigation from p3 (weight 2) to p1, p2 with `C(z) = λ1|z|^0 + λ2|z|`.
pub fn irrigation_boundary() -> Boundary {
    Boundary::new(
        2,
        1,
        vec![Atom::new(p3(), vec![-2]), Atom::new(p1(), vec![1]), Atom::new(p2(), vec![1])],
    )
    .unwrap()
}

pub fn irrigation_cost(lambda2: f64) -> MultiMaterialCost {
    cost::linear_combination(&[(1.0 - lambda2, 0.0), (lambda2, 1.0)]).unwrap()
}

pub fn irrigation_angle(lambda2: f64) -> f64 {
    ((1.0 + lambda2) / 2.0).acos()
}

pub fn irrigation_labeled(lambda2: f64) -> LabeledNetwork {
    let t = irrigation_angle(lambda2);
    let junction = vec![2.0 - 1.0 / t.tan(), 0.0];
    LabeledNetwork::new(
        2,
        2,
        vec![p3(), p1(), p2(), junction],
        vec![Edge::new(0, 3, vec![1, 1]), Edge::new(3, 1, vec![1, 0]), Edge::new(3, 2, vec![0, 1])],
    )
    .unwrap()
}

/// The ball with extreme points `±(1,0), ±(0,1), ±(1,1)/(1+λ2)`.
pub fn irrigation_ball(lambda2: f64) -> NormBall {
    let v = 1.0 / (1.0 + lambda2);
    NormBall::from_vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![v, v]]).unwrap()
}

pub fn irrigation_form(lambda2: f64) -> ConstantForm {
    let c = (1.0 + lambda2) / 2.0;
    let s = (1.0 - c * c).sqrt();
    ConstantForm::new(vec![vec![c, s], vec![c, -s]]).unwrap()
}

/// `max{|θ1|+|θ2|+|θ3|, |θ4|}`.
pub fn cycle_cost() -> MultiMaterialCost {
    let part = |w: Vec<f64>| {
        MultiMaterialCost::part(
            4,
            vec![4; 4],
            CostKind::Norm {
                norm: StarNorm::Weighted {
                    weights: w,
                    base: Box::new(StarNorm::L1),
                },
            },
        )
        .unwrap()
    };
    cost::max_of(vec![part(vec![1.0, 1.0, 1.0, 0.0]), part(vec![0.0, 0.0, 0.0, 1.0])]).unwrap()
}

pub fn triangle_points() -> [Vec<f64>; 3] {
    [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.4, 0.8]]
}

/// `T = (T1, T2, T3, 0)` around the triangle x1 → x2 → x3 → x1.
pub fn triangle_t() -> Network {
    let [a, b, c] = triangle_points();
    Network::new(
        2,
        4,
        vec![a, b, c],
        vec![
            Edge::new(0, 1, vec![1, 0, 0, 0]),
            Edge::new(1, 2, vec![0, 1, 0, 0]),
            Edge::new(2, 0, vec![0, 0, 1, 0]),
        ],
    )
    .unwrap()
}

/// `T′ = (T1, T2, T3, T1 + T2 + T3)`.
pub fn triangle_t_prime() -> Network {
    let [a, b, c] = triangle_points();
    Network::new(
        2,
        4,
        vec![a, b, c],
        vec![
            Edge::new(0, 1, vec![1, 0, 0, 1]),
            Edge::new(1, 2, vec![0, 1, 0, 1]),
            Edge::new(2, 0, vec![0, 0, 1, 1]),
        ],
    )
    .unwrap()
}

/// Minimal boundary with the given label counts: every material moves
/// from one common point to another.
pub fn layout_boundary(counts: &[i64]) -> Boundary {
    let src: Vec<i64> = counts.iter().map(|&c| -c).collect();
    Boundary::new(
        2,
        counts.len(),
        vec![Atom::new(vec![0.0, 0.0], src), Atom::new(vec![1.0, 0.0], counts.to_vec())],
    )
    .unwrap()
}

/// Angle in degrees between two vectors.
pub fn angle_deg(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).clamp(-1.0, 1.0).acos().to_degrees()
}
