//! The JSON instance format read and written by the command-line tool.
//!
//! A document holds one boundary plus whatever the subcommands need: a
//! cost, networks, a calibration matrix, an explicit ball, solver and grid
//! settings. Costs may omit `materials`, `box` and `star_norm`; the
//! defaults are the document's material count, a box just large enough for
//! the boundary and networks, and the comparison norm of the builtin.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::calibration::ConstantForm;
use crate::cost::{CostKind, MultiMaterialCost, StarNorm};
use crate::error::{invalid, Error, Result};
use crate::model::{Atom, Boundary, Edge, LabeledNetwork, Network};
use crate::norm::NormBall;
use crate::solver::{GridSpec, SolveOptions};

pub const FORMAT_VERSION: u32 = 1;

/// Significant digits kept by [`InstanceDocument::to_canonical_string`].
pub const CANONICAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub point: Vec<f64>,
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub tail: usize,
    pub head: usize,
    pub multiplicity: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub vertices: Vec<Vec<f64>>,
    pub edges: Vec<EdgeDoc>,
    /// Multiplicities are per label rather than per material.
    #[serde(default)]
    pub labeled: bool,
}

impl NetworkDoc {
    pub fn from_network(net: &Network, labeled: bool) -> Self {
        NetworkDoc {
            vertices: net.vertices().to_vec(),
            edges: net
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    tail: e.tail,
                    head: e.head,
                    multiplicity: e.multiplicity.clone(),
                })
                .collect(),
            labeled,
        }
    }

    fn coeffs(&self) -> Option<usize> {
        self.edges.first().map(|e| e.multiplicity.len())
    }

    fn build(&self, dim: usize, coeffs: usize) -> Result<Network> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.tail, e.head, e.multiplicity.clone()))
            .collect();
        Network::new(dim, coeffs, self.vertices.clone(), edges)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steiner: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_perms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub irrigation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDoc {
    /// One representative of each pair `±v` of vertices.
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub version: u32,
    pub dim: usize,
    pub materials: usize,
    pub boundary: Vec<AtomDoc>,
    /// A cost descriptor; see [`InstanceDocument::cost`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkDoc>,
    /// A second network with the same boundary, for comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub competitor: Option<NetworkDoc>,
    /// Rows of a constant form, one per label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration: Option<Vec<Vec<f64>>>,
    /// An explicit ball that replaces the one built from the cost.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl InstanceDocument {
    /// A document with only a boundary.
    pub fn from_boundary(boundary: &Boundary) -> Self {
        InstanceDocument {
            version: FORMAT_VERSION,
            dim: boundary.dim(),
            materials: boundary.coeffs(),
            boundary: boundary
                .atoms()
                .iter()
                .map(|a| AtomDoc {
                    point: a.point.clone(),
                    weight: a.weight.clone(),
                })
                .collect(),
            cost: None,
            network: None,
            competitor: None,
            calibration: None,
            ball: None,
            solve: None,
            grid: None,
        }
    }

    /// Parses a document and checks the parts every subcommand relies on.
    /// Syntax and type errors carry the line and column of the problem.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InstanceDocument =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("line {} column {}: {e}", e.line(), e.column())))?;
        if doc.version != FORMAT_VERSION {
            return invalid(format!("unsupported format version {}", doc.version));
        }
        doc.boundary()?;
        if doc.cost.is_some() {
            doc.cost()?;
        }
        Ok(doc)
    }

    pub fn boundary(&self) -> Result<Boundary> {
        let atoms = self
            .boundary
            .iter()
            .map(|a| Atom::new(a.point.clone(), a.weight.clone()))
            .collect();
        Boundary::new(self.dim, self.materials, atoms).map_err(|e| context("boundary", e))
    }

    /// The cost: the object form of [`MultiMaterialCost`] with optional
    /// `materials`, `box` and `star_norm`.
    pub fn cost(&self) -> Result<MultiMaterialCost> {
        let Some(value) = &self.cost else {
            return invalid("the document has no cost");
        };
        let Value::Object(map) = value else {
            return invalid("cost: expected an object");
        };
        let mut map = map.clone();
        let materials = match map.remove("materials") {
            Some(v) => serde_json::from_value::<usize>(v).map_err(|e| Error::Invalid(format!("cost.materials: {e}")))?,
            None => self.materials,
        };
        let bounds = match map.remove("box") {
            Some(v) => Some(serde_json::from_value::<Vec<i64>>(v).map_err(|e| Error::Invalid(format!("cost.box: {e}")))?),
            None => None,
        };
        let star = match map.remove("star_norm") {
            Some(Value::Null) => Some(None),
            Some(v) => Some(Some(
                serde_json::from_value::<StarNorm>(v).map_err(|e| Error::Invalid(format!("cost.star_norm: {e}")))?,
            )),
            None => None,
        };
        let kind: CostKind =
            serde_json::from_value(Value::Object(map)).map_err(|e| Error::Invalid(format!("cost: {e}")))?;
        let bounds = bounds.unwrap_or_else(|| self.default_box(materials));
        let star = star.unwrap_or_else(|| default_star(&kind, materials));
        MultiMaterialCost::new(materials, bounds, kind, star).map_err(|e| context("cost", e))
    }

    /// `max(1, N_i, largest |multiplicity| in the material networks)`.
    fn default_box(&self, materials: usize) -> Vec<i64> {
        let mut b = vec![1i64; materials];
        // N_i is the total positive weight of material i.
        let mut produced = vec![0i64; materials];
        for a in &self.boundary {
            for (i, w) in a.weight.iter().enumerate().take(materials) {
                produced[i] += w.max(&0);
            }
        }
        for (bi, p) in b.iter_mut().zip(&produced) {
            *bi = (*bi).max(*p);
        }
        for net in [&self.network, &self.competitor].into_iter().flatten() {
            if net.labeled {
                continue;
            }
            for e in &net.edges {
                for (i, x) in e.multiplicity.iter().enumerate().take(materials) {
                    b[i] = b[i].max(x.abs());
                }
            }
        }
        b
    }

    /// The named network as a material network.
    pub fn material_network(&self, which: Which) -> Result<Network> {
        let doc = self.network_doc(which)?;
        if doc.labeled {
            return invalid(format!("{}: expected a material network, found a labeled one", which.name()));
        }
        doc.build(self.dim, self.materials).map_err(|e| context(which.name(), e))
    }

    /// The named network as a labeled network; the label count is taken
    /// from its edges or, for an empty network, from the boundary.
    pub fn labeled_network(&self, which: Which, labels: usize) -> Result<LabeledNetwork> {
        let doc = self.network_doc(which)?;
        if !doc.labeled {
            return invalid(format!("{}: expected a labeled network", which.name()));
        }
        let n = doc.coeffs().unwrap_or(labels);
        if n != labels {
            return invalid(format!("{}: {n} labels on edges but the boundary has {labels}", which.name()));
        }
        doc.build(self.dim, n)
            .map(LabeledNetwork::from_network)
            .map_err(|e| context(which.name(), e))
    }

    pub fn network_doc(&self, which: Which) -> Result<&NetworkDoc> {
        let doc = match which {
            Which::Network => &self.network,
            Which::Competitor => &self.competitor,
        };
        doc.as_ref().ok_or_else(|| Error::Invalid(format!("the document has no {}", which.name())))
    }

    pub fn form(&self) -> Result<ConstantForm> {
        let Some(rows) = &self.calibration else {
            return invalid("the document has no calibration");
        };
        ConstantForm::new(rows.clone()).map_err(|e| context("calibration", e))
    }

    pub fn explicit_ball(&self) -> Result<Option<NormBall>> {
        match &self.ball {
            None => Ok(None),
            Some(b) => NormBall::from_vertices(b.vertices.clone()).map(Some).map_err(|e| context("ball", e)),
        }
    }

    pub fn solve_options(&self) -> SolveOptions {
        let mut opts = SolveOptions::default();
        if let Some(s) = &self.solve {
            if let Some(v) = s.max_steiner {
                opts.max_steiner = v;
            }
            if let Some(v) = s.max_perms {
                opts.max_perms = v as u128;
            }
            if let Some(v) = s.seed {
                opts.seed = v;
            }
            opts.irrigation = s.irrigation;
        }
        opts
    }

    /// Replaces the cost descriptor by the fully explicit form.
    pub fn set_cost(&mut self, cost: &MultiMaterialCost) -> Result<()> {
        self.cost = Some(serde_json::to_value(cost).map_err(|e| Error::Internal(e.to_string()))?);
        Ok(())
    }

    /// Sorted keys, two-space indentation, floats rounded to
    /// [`CANONICAL_DIGITS`] significant digits. Writing the result of
    /// parsing this output reproduces it byte for byte.
    pub fn to_canonical_string(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Internal(e.to_string()))?;
        let mut out = serde_json::to_string_pretty(&canonical(value)).map_err(|e| Error::Internal(e.to_string()))?;
        out.push('\n');
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Network,
    Competitor,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Network => "network",
            Which::Competitor => "competitor",
        }
    }
}

fn context(what: &str, e: Error) -> Error {
    match e {
        Error::Invalid(m) => Error::Invalid(format!("{what}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{what}: {m}")),
        Error::Precondition(m) => Error::Precondition(format!("{what}: {m}")),
        other => other,
    }
}

fn default_star(kind: &CostKind, materials: usize) -> Option<StarNorm> {
    match kind {
        CostKind::Norm { norm } => Some(norm.clone()),
        _ if materials == 1 => Some(StarNorm::L1),
        _ => None,
    }
}

/// Rounds a float to [`CANONICAL_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", CANONICAL_DIGITS - 1, x).parse().unwrap_or(x)
}

fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let x = round_significant(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Y: &str = r#"{
        "version": 1, "dim": 2, "materials": 2,
        "boundary": [
            {"point": [0, 0], "weight": [-1, -1]},
            {"point": [2, 1], "weight": [1, 0]},
            {"point": [2, -1], "weight": [0, 1]}
        ],
        "cost": {"kind": "mailing", "alpha": 0}
    }"#;

    #[test]
    fn defaults_fill_the_cost() {
        let doc = InstanceDocument::parse(Y).unwrap();
        let c = doc.cost().unwrap();
        assert_eq!(c.materials(), 2);
        assert_eq!(c.bounds(), &[1, 1]);
        assert_eq!(c.evaluate(&[1, -1]).unwrap(), 2.0);
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let mut doc = InstanceDocument::parse(Y).unwrap();
        doc.boundary[1].point = vec![2.0 / 3.0, 1.0 / 7.0];
        doc.calibration = Some(vec![vec![0.5, 3f64.sqrt() / 2.0], vec![0.5, -3f64.sqrt() / 2.0]]);
        let once = doc.to_canonical_string().unwrap();
        let twice = InstanceDocument::parse(&once).unwrap().to_canonical_string().unwrap();
        assert_eq!(once, twice);
        assert!(once.contains("0.866025403784"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = InstanceDocument::parse("{\n  \"version\": 1,\n  \"dim\": x\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let bad = Y.replace("[-1, -1]", "[-1, 0]");
        assert!(InstanceDocument::parse(&bad).unwrap_err().to_string().contains("boundary"));
    }
}
