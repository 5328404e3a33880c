//! Plain SVG pictures of planar networks and two-dimensional unit balls.
//! Output depends only on the input, so equal inputs give equal bytes.

use std::fmt::Write;

use crate::error::{invalid, Result};
use crate::model::{boundary_of, Network};
use crate::norm::NormBall;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    /// Width and height of the picture in pixels.
    pub size: f64,
    pub margin: f64,
    pub stroke: String,
    pub fill: String,
    pub show_labels: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            size: 400.0,
            margin: 40.0,
            stroke: "#1f3b73".into(),
            fill: "#c8d3e8".into(),
            show_labels: true,
        }
    }
}

/// Maps world coordinates into the picture, y pointing up.
struct Frame {
    min: [f64; 2],
    scale: f64,
    size: f64,
    margin: f64,
}

impl Frame {
    fn fit(points: &[[f64; 2]], style: &SvgStyle) -> Frame {
        let (mut lo, mut hi) = ([-1.0f64, -1.0f64], [1.0f64, 1.0f64]);
        if !points.is_empty() {
            lo = [f64::INFINITY; 2];
            hi = [f64::NEG_INFINITY; 2];
            for p in points {
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let inner = style.size - 2.0 * style.margin;
        // Centre the shorter side.
        let min = [
            (lo[0] + hi[0]) / 2.0 - span / 2.0,
            (lo[1] + hi[1]) / 2.0 - span / 2.0,
        ];
        Frame {
            min,
            scale: inner / span,
            size: style.size,
            margin: style.margin,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let x = self.margin + (p[0] - self.min[0]) * self.scale;
        let y = self.size - self.margin - (p[1] - self.min[1]) * self.scale;
        (x, y)
    }

    fn world_span(&self) -> ([f64; 2], [f64; 2]) {
        let pad = self.margin / self.scale;
        let span = (self.size - 2.0 * self.margin) / self.scale;
        (
            [self.min[0] - pad, self.min[1] - pad],
            [self.min[0] + span + pad, self.min[1] + span + pad],
        )
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn vector_label(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn header(out: &mut String, style: &SvgStyle) {
    let s = num(style.size);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#);
}

/// Axis lines through the world origin, clipped to the picture.
fn axes(out: &mut String, frame: &Frame) {
    let (lo, hi) = frame.world_span();
    let y0 = 0.0f64.clamp(lo[1], hi[1]);
    let x0 = 0.0f64.clamp(lo[0], hi[0]);
    let (ax, ay) = frame.map([lo[0], y0]);
    let (bx, by) = frame.map([hi[0], y0]);
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="1"/>"##,
        num(ax),
        num(ay),
        num(bx),
        num(by)
    );
    let (ax, ay) = frame.map([x0, lo[1]]);
    let (bx, by) = frame.map([x0, hi[1]]);
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="1"/>"##,
        num(ax),
        num(ay),
        num(bx),
        num(by)
    );
}

/// Draws a planar network: edges with their multiplicities and boundary
/// atoms with their weights.
pub fn render_network(net: &Network, style: &SvgStyle) -> Result<String> {
    if net.dim() != 2 && !(net.is_empty() && net.vertices().is_empty()) {
        return invalid(format!("cannot draw a network in dimension {}", net.dim()));
    }
    let pts: Vec<[f64; 2]> = net.vertices().iter().map(|p| [p[0], p[1]]).collect();
    let frame = Frame::fit(&pts, style);
    let mut out = String::new();
    header(&mut out, style);
    axes(&mut out, &frame);
    for (k, e) in net.edges().iter().enumerate() {
        let (x1, y1) = frame.map(pts[e.tail]);
        let (x2, y2) = frame.map(pts[e.head]);
        let _ = writeln!(
            out,
            r#"<line class="edge" data-edge="{k}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            style.stroke
        );
        if style.show_labels {
            let _ = writeln!(
                out,
                r#"<text class="multiplicity" x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
                num((x1 + x2) / 2.0),
                num((y1 + y2) / 2.0 - 4.0),
                vector_label(&e.multiplicity)
            );
        }
    }
    let boundary = boundary_of(net);
    for a in boundary.atoms() {
        let (x, y) = frame.map([a.point[0], a.point[1]]);
        let _ = writeln!(
            out,
            r#"<circle class="atom" cx="{}" cy="{}" r="4" fill="{}"/>"#,
            num(x),
            num(y),
            style.stroke
        );
        if style.show_labels {
            let _ = writeln!(
                out,
                r#"<text class="weight" x="{}" y="{}" font-size="12">{}</text>"#,
                num(x + 6.0),
                num(y + 14.0),
                vector_label(&a.weight)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The boundary polygon of a two-dimensional ball, counter-clockwise from
/// the positive x axis.
pub fn ball_polygon(ball: &NormBall) -> Result<Vec<[f64; 2]>> {
    if ball.dim() != 2 {
        return invalid(format!("cannot draw a ball in dimension {}", ball.dim()));
    }
    let mut pts: Vec<[f64; 2]> = ball.extreme_points()?.into_iter().map(|p| [p[0], p[1]]).collect();
    let angle = |p: &[f64; 2]| {
        let a = p[1].atan2(p[0]);
        if a < -1e-12 {
            a + std::f64::consts::TAU
        } else {
            a.max(0.0)
        }
    };
    pts.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    Ok(pts)
}

pub fn render_ball(ball: &NormBall, style: &SvgStyle) -> Result<String> {
    let poly = ball_polygon(ball)?;
    let frame = Frame::fit(&poly, style);
    let mut out = String::new();
    header(&mut out, style);
    axes(&mut out, &frame);
    let points: Vec<String> = poly
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon class="ball" points="{}" fill="{}" fill-opacity="0.6" stroke="{}" stroke-width="2"/>"#,
        points.join(" "),
        style.fill,
        style.stroke
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Edge;

    #[test]
    fn empty_network_has_only_axes() {
        let svg = render_network(&Network::empty(2, 1), &SvgStyle::default()).unwrap();
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
        assert!(!svg.contains("class=\"edge\""));
    }

    #[test]
    fn hexagon_polygon() {
        let ball = NormBall::from_vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let poly = ball_polygon(&ball).unwrap();
        let expect = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [-1.0, 0.0], [-1.0, -1.0], [0.0, -1.0]];
        assert_eq!(poly.len(), 6);
        for (p, q) in poly.iter().zip(expect) {
            assert!((p[0] - q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9, "{poly:?}");
        }
        let a = render_ball(&ball, &SvgStyle::default()).unwrap();
        assert_eq!(a, render_ball(&ball, &SvgStyle::default()).unwrap());
    }

    #[test]
    fn labels_on_edges() {
        let net = Network::new(2, 2, vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![Edge::new(0, 1, vec![1, 1])]).unwrap();
        let svg = render_network(&net, &SvgStyle::default()).unwrap();
        assert!(svg.contains(">(1,1)</text>"));
        assert!(svg.contains(">(-1,-1)</text>"));
    }
}
