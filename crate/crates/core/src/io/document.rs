//! JSON documents for instances, drawings and partitions.
//!
//! ```json
//! {"kind":"points2d","points":[[0,0],[1,0]]}
//! {"kind":"matrix","dist":[[0,7],[7,0]]}
//! {"kind":"graph","n":3,"edges":[[0,1],[1,2]]}
//! {"kind":"planar-orthogonal","vertices":[[0,0],[1,0]],"edges":[[[0,0],[1,0]]]}
//! {"m":2,"assignment":[0,1,null],"radius":1.0,"verified":true}
//! ```
//!
//! Reals are written rounded to 12 significant digits, so writing a parsed
//! document reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Graph, HopGraph, Instance, Point2D};
use crate::reductions::PlanarOrthogonalGraph;
use crate::verify::Partition;

/// Optional provenance carried alongside an instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct PointsBody {
    points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Metadata>,
}

#[derive(Serialize, Deserialize)]
struct MatrixBody {
    dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Metadata>,
}

#[derive(Serialize, Deserialize)]
struct GraphBody {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Metadata>,
}

#[derive(Serialize, Deserialize)]
struct PlanarBody {
    vertices: Vec<[i64; 2]>,
    edges: Vec<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Metadata>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Raw {
    Points2d(PointsBody),
    Matrix(MatrixBody),
    Graph(GraphBody),
    PlanarOrthogonal(PlanarBody),
}

const KINDS: [&str; 4] = ["points2d", "matrix", "graph", "planar-orthogonal"];

#[derive(Deserialize)]
struct Tag {
    kind: String,
}

// Bodies are decoded straight from the text so errors keep line numbers.
fn decode_raw(text: &str) -> Result<Raw> {
    let tag: Tag = serde_json::from_str(text).map_err(json_error)?;
    Ok(match tag.kind.as_str() {
        "points2d" => Raw::Points2d(serde_json::from_str(text).map_err(json_error)?),
        "matrix" => Raw::Matrix(serde_json::from_str(text).map_err(json_error)?),
        "graph" => Raw::Graph(serde_json::from_str(text).map_err(json_error)?),
        "planar-orthogonal" => {
            Raw::PlanarOrthogonal(serde_json::from_str(text).map_err(json_error)?)
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown variant `{other}`, expected one of {}",
                KINDS.map(|k| format!("`{k}`")).join(", ")
            )))
        }
    })
}

/// Payload of an instance document.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Instance(Instance),
    /// A `graph` document. Kept as a plain graph because it may be
    /// disconnected; [`Document::into_instance`] builds its hop metric.
    Graph(Graph),
    Planar(PlanarOrthogonalGraph),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Instance(Instance::Points2D(_)) => "points2d",
            Document::Instance(Instance::ExplicitMetric(_)) => "matrix",
            Document::Instance(Instance::HopGraph(_)) | Document::Graph(_) => "graph",
            Document::Planar(_) => "planar-orthogonal",
        }
    }

    /// The metric space described by this document.
    pub fn into_instance(self) -> Result<Instance> {
        match self {
            Document::Instance(inst) => Ok(inst),
            Document::Graph(g) => HopGraph::new(g).map(Instance::HopGraph),
            Document::Planar(_) => Err(Error::InvalidInstance(
                "a planar-orthogonal drawing is not a metric instance; reduce it with the gadget first"
                    .into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub document: Document,
    pub meta: Option<Metadata>,
}

impl InstanceFile {
    pub fn new(document: Document) -> Self {
        Self {
            document,
            meta: None,
        }
    }

    pub fn with_meta(mut self, meta: Metadata) -> Self {
        self.meta = Some(meta);
        self
    }
}

impl From<Instance> for InstanceFile {
    fn from(inst: Instance) -> Self {
        Self::new(Document::Instance(inst))
    }
}

/// Rounds to 12 significant digits.
pub fn canonical(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let raw = decode_raw(text)?;
    let (document, meta) = match raw {
        Raw::Points2d(PointsBody { points, meta }) => {
            let pts = points
                .into_iter()
                .map(|[x, y]| Point2D::new(x, y))
                .collect();
            (Document::Instance(Instance::points(pts)?), meta)
        }
        Raw::Matrix(MatrixBody { dist, meta }) => {
            (Document::Instance(Instance::matrix(dist)?), meta)
        }
        Raw::Graph(GraphBody { n, edges, meta }) => (
            Document::Graph(Graph::new(n, edges.into_iter().map(|[a, b]| (a, b)))?),
            meta,
        ),
        Raw::PlanarOrthogonal(PlanarBody {
            vertices,
            edges,
            meta,
        }) => {
            let vertices = vertices.into_iter().map(|[x, y]| (x, y)).collect();
            let edges = edges
                .into_iter()
                .map(|path| path.into_iter().map(|[x, y]| (x, y)).collect())
                .collect();
            (
                Document::Planar(PlanarOrthogonalGraph::new(vertices, edges)?),
                meta,
            )
        }
    };
    Ok(InstanceFile { document, meta })
}

fn graph_raw(g: &Graph, meta: Option<Metadata>) -> Raw {
    Raw::Graph(GraphBody {
        n: g.n(),
        edges: g.edges().map(|(a, b)| [a, b]).collect(),
        meta,
    })
}

/// Pretty-printed canonical JSON, newline-terminated.
pub fn write_instance(file: &InstanceFile) -> String {
    let meta = file.meta.clone();
    let raw = match &file.document {
        Document::Instance(Instance::Points2D(p)) => Raw::Points2d(PointsBody {
            points: p
                .as_slice()
                .iter()
                .map(|p| [canonical(p.x), canonical(p.y)])
                .collect(),
            meta,
        }),
        Document::Instance(Instance::ExplicitMetric(m)) => Raw::Matrix(MatrixBody {
            dist: m
                .rows()
                .iter()
                .map(|row| row.iter().map(|&d| canonical(d)).collect())
                .collect(),
            meta,
        }),
        Document::Instance(Instance::HopGraph(h)) => graph_raw(h.graph(), meta),
        Document::Graph(g) => graph_raw(g, meta),
        Document::Planar(g) => Raw::PlanarOrthogonal(PlanarBody {
            vertices: g.vertices().iter().map(|&(x, y)| [x, y]).collect(),
            edges: g
                .paths()
                .iter()
                .map(|path| path.iter().map(|&(x, y)| [x, y]).collect())
                .collect(),
            meta,
        }),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("documents serialize");
    text.push('\n');
    text
}

/// A partition document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub m: usize,
    pub assignment: Vec<Option<usize>>,
    #[serde(default)]
    pub radius: Option<f64>,
    /// Set only after the checker accepted the partition at `radius`.
    #[serde(default)]
    pub verified: bool,
}

impl PartitionFile {
    /// An unverified document for `p`.
    pub fn new(p: &Partition, radius: Option<f64>) -> Self {
        Self {
            m: p.m(),
            assignment: p.assignment().to_vec(),
            radius: radius.map(canonical),
            verified: false,
        }
    }

    pub fn to_partition(&self) -> Result<Partition> {
        Partition::new(self.m, self.assignment.clone())
    }

    /// Partition checked against the size of `inst`.
    pub fn partition_for(&self, inst: &Instance) -> Result<Partition> {
        let p = self.to_partition()?;
        p.check_size(inst)?;
        Ok(p)
    }
}

pub fn parse_partition(text: &str) -> Result<PartitionFile> {
    let file: PartitionFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_partition()?;
    if let Some(r) = file.radius {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidRadius(r));
        }
    }
    Ok(file)
}

pub fn write_partition(file: &PartitionFile) -> String {
    let mut text = serde_json::to_string(file).expect("partitions serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::planar::fixtures;

    #[test]
    fn parse_examples() {
        let sq =
            parse_instance(r#"{"kind":"points2d","points":[[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
        let inst = sq.document.into_instance().unwrap();
        assert_eq!(
            inst,
            Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap()
        );
        let m = parse_instance(r#"{"kind":"matrix","dist":[[0,7],[7,0]]}"#).unwrap();
        assert_eq!(m.document.into_instance().unwrap().dist(0, 1), 7.0);
        let err = parse_instance(r#"{"kind":"matrix","dist":[[0,1],[2,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("asymmetric"), "{err}");
    }

    #[test]
    fn schema_errors_carry_positions() {
        let err = parse_instance("{\n  \"kind\": \"points2d\",\n  \"points\": [[0, \"a\"]]\n}")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_instance(r#"{"kind":"circle"}"#).unwrap_err();
        assert!(err.to_string().contains("unknown variant"), "{err}");
        let err = parse_instance(r#"{"kind":"graph","n":2}"#).unwrap_err();
        assert!(err.to_string().contains("edges"), "{err}");
    }

    #[test]
    fn graph_documents() {
        let doc = parse_instance(r#"{"kind":"graph","n":3,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(doc.document.kind(), "graph");
        // disconnected graphs parse but have no hop metric
        assert!(doc.document.into_instance().is_err());
        let doc = parse_instance(r#"{"kind":"graph","n":3,"edges":[[1,0],[1,2]]}"#).unwrap();
        assert_eq!(doc.document.into_instance().unwrap().dist(0, 2), 2.0);
        assert!(parse_instance(r#"{"kind":"graph","n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn planar_document_round_trip() {
        let file = InstanceFile::new(Document::Planar(fixtures::triangle()));
        let text = write_instance(&file);
        assert!(text.contains("\"kind\": \"planar-orthogonal\""));
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(write_instance(&back), text);
        assert!(parse_instance(
            r#"{"kind":"planar-orthogonal","vertices":[[0,0],[2,0]],"edges":[[[0,0],[2,0]]]}"#
        )
        .is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(canonical(1.0 / 3.0), 0.333333333333);
        assert_eq!(canonical(2.0 / 7.0), 0.285714285714);
        assert_eq!(canonical(-0.0).to_bits(), 0.0f64.to_bits());
        let inst = Instance::from_xy(&[(1.0 / 3.0, 2.0), (0.0, 1e-20)]).unwrap();
        let text = write_instance(&InstanceFile::from(inst));
        assert!(text.contains("0.333333333333"));
        assert_eq!(write_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn metadata_round_trip() {
        let inst = Instance::from_xy(&[(0.0, 0.0)]).unwrap();
        let file = InstanceFile::from(inst).with_meta(Metadata {
            name: Some("single".into()),
            seed: Some(4),
            generator: Some(serde_json::json!({"kind": "random", "n": 1})),
        });
        let text = write_instance(&file);
        assert_eq!(parse_instance(&text).unwrap(), file);
    }

    #[test]
    fn partition_documents() {
        let file =
            parse_partition(r#"{"m":2,"assignment":[0,1,null],"radius":1.0,"verified":true}"#)
                .unwrap();
        assert_eq!(
            file.to_partition().unwrap().assignment(),
            &[Some(0), Some(1), None]
        );
        assert!(parse_partition(r#"{"m":2,"assignment":[2]}"#).is_err());
        assert!(parse_partition(r#"{"m":1,"assignment":[0],"radius":-1}"#).is_err());
        let sq = Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!(file.partition_for(&sq).is_err());
        let text = write_partition(&file);
        assert_eq!(parse_partition(&text).unwrap(), file);
        assert_eq!(
            text,
            "{\"m\":2,\"assignment\":[0,1,null],\"radius\":1.0,\"verified\":true}\n"
        );
    }
}
