//! Small vector helpers for points in R^d.

/// Absolute tolerance for vertex coincidence and segment contact.
pub const GEOM_TOL: f64 = 1e-9;

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Parameter of the closest point of segment `ab` to `p`, clamped to [0, 1].
pub fn project_param(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(&ab, &ab);
    if len2 == 0.0 {
        return 0.0;
    }
    (dot(&sub(p, a), &ab) / len2).clamp(0.0, 1.0)
}

pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let t = project_param(p, a, b);
    dist(p, &lerp(a, b, t))
}

/// Closest points between segments `p0p1` and `q0q1`, returned as the
/// parameters `(s, t)` on each segment together with the distance.
pub fn segment_closest(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64]) -> (f64, f64, f64) {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let (mut s, mut t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return (0.0, 0.0, dist(p0, q0));
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(&d1, &r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(&d1, &d2);
            let denom = a * e - b * b;
            s = if denom > 1e-14 * a * e {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
        }
    }
    let cp = lerp(p0, p1, s);
    let cq = lerp(q0, q1, t);
    // Parallel segments: the parameter choice above may miss the true
    // minimum, so also try every endpoint against the other segment.
    let mut best = (s, t, dist(&cp, &cq));
    for (pt, on_p, fixed) in [(p0, false, 0.0), (p1, false, 1.0), (q0, true, 0.0), (q1, true, 1.0)] {
        let cand = if on_p {
            let u = project_param(pt, p0, p1);
            (u, fixed, dist(&lerp(p0, p1, u), pt))
        } else {
            let u = project_param(pt, q0, q1);
            (fixed, u, dist(&lerp(q0, q1, u), pt))
        };
        if cand.2 < best.2 - 1e-15 {
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_segments() {
        let (s, t, d) = segment_closest(&[0.0, 0.0], &[2.0, 2.0], &[0.0, 2.0], &[2.0, 0.0]);
        assert!(d < 1e-12);
        assert!((s - 0.5).abs() < 1e-12 && (t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parallel_overlap_detected() {
        let (_, _, d) = segment_closest(&[0.0, 0.0], &[2.0, 0.0], &[1.0, 0.0], &[3.0, 0.0]);
        assert!(d < 1e-12);
        let (_, _, d) = segment_closest(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn skew_in_three_dimensions() {
        let (_, _, d) = segment_closest(
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.5, -1.0, 1.0],
            &[0.5, 1.0, 1.0],
        );
        assert!((d - 1.0).abs() < 1e-12);
    }
}
