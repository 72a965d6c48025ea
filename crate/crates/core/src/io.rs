//! JSON parameter and polytope files, analysis reports and exports.
//!
//! Rationals are written as `"p/q"` strings (`"p"` for integers) so every
//! document round-trips exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    extract_facets, face_correspondence, parallel_pairs_of, special_profile, EquivalenceReport,
    FacetDescriptor,
};
use crate::cluster::{default_support_values, AlmostPositiveRoot, SupportValues};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational, RationalVector};
use crate::minkowski::{build_minkowski, SimplexWeights};
use crate::polygon::{Diagonal, PolygonSize, Triangulation};
use crate::polytope::{ConstructionTag, LabeledPolytope, LabeledVertex};
use crate::secondary::{build_secondary, PolygonGeometry};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    coords: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportJson {
    n: usize,
    h: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsJson {
    n: usize,
    a: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ParamsJson {
    Geometry(GeometryJson),
    Support(SupportJson),
    Weights(WeightsJson),
}

/// Parameters of one of the three constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionParams {
    Secondary(PolygonGeometry),
    Cluster(SupportValues),
    Minkowski(SimplexWeights),
}

impl ConstructionParams {
    /// Parabola geometry, default support values, or unit weights.
    pub fn default_for(tag: ConstructionTag, n: usize) -> Result<Self> {
        Ok(match tag {
            ConstructionTag::Secondary => ConstructionParams::Secondary(PolygonGeometry::parabola(n)),
            ConstructionTag::Cluster => ConstructionParams::Cluster(default_support_values(n)?),
            ConstructionTag::Minkowski => ConstructionParams::Minkowski(SimplexWeights::ones(n)),
        })
    }

    pub fn tag(&self) -> ConstructionTag {
        match self {
            ConstructionParams::Secondary(_) => ConstructionTag::Secondary,
            ConstructionParams::Cluster(_) => ConstructionTag::Cluster,
            ConstructionParams::Minkowski(_) => ConstructionTag::Minkowski,
        }
    }

    pub fn n(&self) -> Result<usize> {
        match self {
            ConstructionParams::Secondary(g) => Ok(g.size()?.n),
            ConstructionParams::Cluster(h) => Ok(h.n()),
            ConstructionParams::Minkowski(a) => Ok(a.n()),
        }
    }

    pub fn build(&self) -> Result<LabeledPolytope> {
        match self {
            ConstructionParams::Secondary(g) => build_secondary(g),
            ConstructionParams::Cluster(h) => crate::cluster::build_cluster_polytope(h, h.n()),
            ConstructionParams::Minkowski(a) => build_minkowski(a, a.n()),
        }
    }

    fn to_json(&self) -> ParamsJson {
        match self {
            ConstructionParams::Secondary(g) => ParamsJson::Geometry(GeometryJson {
                n: g.n(),
                coords: g
                    .coords()
                    .iter()
                    .map(|(x, y)| [format_rational(x), format_rational(y)])
                    .collect(),
            }),
            ConstructionParams::Cluster(h) => ParamsJson::Support(SupportJson {
                n: h.n(),
                h: h.values()
                    .iter()
                    .map(|(r, v)| (r.to_string(), format_rational(v)))
                    .collect(),
            }),
            ConstructionParams::Minkowski(a) => ParamsJson::Weights(WeightsJson {
                n: a.n(),
                a: a.weights()
                    .iter()
                    .map(|((i, j), v)| (format!("{i},{j}"), format_rational(v)))
                    .collect(),
            }),
        }
    }

    fn from_json(p: ParamsJson) -> Result<Self> {
        match p {
            ParamsJson::Geometry(g) => {
                let coords = g
                    .coords
                    .iter()
                    .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
                    .collect::<Result<Vec<_>>>()?;
                let geometry = PolygonGeometry::new(coords);
                if let Some(n) = g.n {
                    if geometry.n() != Some(n) {
                        return Err(Error::InvalidGeometry(format!(
                            "n = {n} needs {} points, got {}",
                            n + 3,
                            geometry.coords().len()
                        )));
                    }
                }
                geometry.validate()?;
                Ok(ConstructionParams::Secondary(geometry))
            }
            ParamsJson::Support(s) => {
                let h = s
                    .h
                    .iter()
                    .map(|(k, v)| Ok((AlmostPositiveRoot::from_str(k)?, parse_rational(v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(ConstructionParams::Cluster(SupportValues::new(s.n, h)?))
            }
            ParamsJson::Weights(w) => {
                let a = w
                    .a
                    .iter()
                    .map(|(k, v)| {
                        let bad = || Error::Parse(format!("weight key {k:?} is not \"i,j\""));
                        let (i, j) = k.split_once(',').ok_or_else(bad)?;
                        let i: usize = i.trim().parse().map_err(|_| bad())?;
                        let j: usize = j.trim().parse().map_err(|_| bad())?;
                        Ok(((i, j), parse_rational(v)?))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(ConstructionParams::Minkowski(SimplexWeights::new(w.n, a)?))
            }
        }
    }

    /// Parses a parameter document for the construction `tag`.
    pub fn parse(tag: ConstructionTag, text: &str) -> Result<Self> {
        let raw: ParamsJson = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "not a {tag} parameter file ({e}); expected {}",
                match tag {
                    ConstructionTag::Secondary => r#"{"coords": [["x", "y"], ...]}"#,
                    ConstructionTag::Cluster => r#"{"n": n, "h": {"-a1": "1", ...}}"#,
                    ConstructionTag::Minkowski => r#"{"n": n, "a": {"1,1": "1", ...}}"#,
                }
            ))
        })?;
        let params = Self::from_json(raw)?;
        if params.tag() != tag {
            return Err(Error::Parse(format!(
                "parameters are for the {} construction, not {tag}",
                params.tag()
            )));
        }
        Ok(params)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    coords: Vec<String>,
    triangulation: Vec<Diagonal>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeJson {
    construction: ConstructionTag,
    n: usize,
    params: ParamsJson,
    vertices: Vec<VertexJson>,
}

/// A built polytope together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub params: ConstructionParams,
    pub polytope: LabeledPolytope,
}

impl PolytopeFile {
    pub fn build(params: ConstructionParams) -> Result<Self> {
        let polytope = params.build()?;
        Ok(PolytopeFile { params, polytope })
    }

    pub fn to_json_string(&self) -> String {
        let doc = PolytopeJson {
            construction: self.polytope.tag(),
            n: self.polytope.n(),
            params: self.params.to_json(),
            vertices: self
                .polytope
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    coords: v.coords.to_strings(),
                    triangulation: v.label.diagonals().to_vec(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    /// Every failure, including an invalid vertex set, is a parse error.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let parse = |e: Error| match e {
            Error::Parse(_) => e,
            other => Error::Parse(other.to_string()),
        };
        let doc: PolytopeJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("polytope file: {e}")))?;
        let params = ConstructionParams::from_json(doc.params).map_err(parse)?;
        if params.tag() != doc.construction {
            return Err(Error::Parse(format!(
                "construction is {} but params are for {}",
                doc.construction,
                params.tag()
            )));
        }
        if params.n().map_err(parse)? != doc.n {
            return Err(Error::Parse("n disagrees with the parameters".into()));
        }
        let size = PolygonSize::new(doc.n);
        let vertices = doc
            .vertices
            .into_iter()
            .map(|v| {
                Ok(LabeledVertex {
                    coords: RationalVector::from_strings(&v.coords)?,
                    label: Triangulation::new(v.triangulation, size)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(parse)?;
        let polytope = LabeledPolytope::new(doc.construction, doc.n, vertices).map_err(parse)?;
        Ok(PolytopeFile { params, polytope })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

fn rationals(v: &RationalVector) -> Value {
    Value::from(v.to_strings())
}

fn facet_json(f: &FacetDescriptor) -> Value {
    let (normal, offset) = f.inequality();
    json!({
        "diagonal": f.diagonal,
        "vertices": f.vertex_indices,
        "normal": rationals(&normal),
        "offset": format_rational(&offset),
        "direction_dim": f.direction.dim(),
    })
}

/// Facets with their outward inequalities, parallel pairs, special profile
/// and the face-lattice check.
pub fn analysis_report(p: &LabeledPolytope) -> Result<Value> {
    let facets = extract_facets(p)?;
    let pairs = parallel_pairs_of(&facets);
    let profile = special_profile(&facets, &pairs)?;
    let corr = face_correspondence(p)?;
    Ok(json!({
        "construction": p.tag(),
        "n": p.n(),
        "vertices": p.vertices().len(),
        "facets": facets.iter().map(facet_json).collect::<Vec<_>>(),
        "parallel_pairs": pairs,
        "special_profile": profile
            .iter()
            .map(|(d, c)| json!({"diagonal": d, "count": c}))
            .collect::<Vec<_>>(),
        "face_lattice": {
            "f_vector": corr.f_vector,
            "edges": corr.edges,
            "subdivision_counts": corr.subdivision_counts,
            "failures": corr.failures,
        },
    }))
}

pub fn equivalence_json(r: &EquivalenceReport) -> Value {
    json!({
        "pair": [r.pair.0, r.pair.1],
        "n": r.n,
        "obstructions": r.obstructions.iter().map(|o| json!({
            "name": o.name,
            "left": o.left,
            "right": o.right,
            "fires": o.fires,
        })).collect::<Vec<_>>(),
        "relabelings_tried": r.relabelings_tried,
        "witness": r.witness.as_ref().map(|w| json!({
            "relabeling": w.relabeling.to_string(),
            "matrix": w.map.matrix().rows().iter().map(rationals).collect::<Vec<_>>(),
            "translation": rationals(w.map.translation()),
        })),
        "verdict": r.verdict.as_str(),
        "note": r.note,
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
    Off,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            "off" => Ok(ExportFormat::Off),
            other => Err(Error::Parse(format!(
                "unknown export format {other:?} (expected json, csv or off)"
            ))),
        }
    }
}

pub fn export(file: &PolytopeFile, format: ExportFormat) -> Result<String> {
    match format {
        ExportFormat::Json => Ok(file.to_json_string()),
        ExportFormat::Csv => Ok(to_csv(&file.polytope)),
        ExportFormat::Off => to_off(&file.polytope),
    }
}

fn label_field(t: &Triangulation) -> String {
    t.diagonals()
        .iter()
        .map(|d| format!("{}-{}", d.a(), d.b()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One row per vertex: index, triangulation, exact coordinates.
pub fn to_csv(p: &LabeledPolytope) -> String {
    let mut out = String::from("vertex,triangulation");
    for k in 0..p.ambient_dim() {
        let _ = write!(out, ",x{k}");
    }
    out.push('\n');
    for (i, v) in p.vertices().iter().enumerate() {
        let _ = write!(out, "{i},{}", label_field(&v.label));
        for c in v.coords.iter() {
            let _ = write!(out, ",{}", format_rational(c));
        }
        out.push('\n');
    }
    out
}

type Point = Vec<f64>;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Orthonormal basis of the span of `vectors` (Gram-Schmidt).
fn orthonormal(vectors: &[Point], want: usize) -> Vec<Point> {
    let mut basis: Vec<Point> = Vec::new();
    for v in vectors {
        if basis.len() == want {
            break;
        }
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            w = w.iter().zip(b).map(|(x, y)| x - c * y).collect();
        }
        let norm = dot(&w, &w).sqrt();
        if norm > 1e-9 * (1.0 + dot(v, v).sqrt()) {
            basis.push(w.iter().map(|x| x / norm).collect());
        }
    }
    basis
}

fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Geomview OFF of the first three intrinsic coordinates.
///
/// Coordinates are rounded to six decimals; the file is for viewers, not for
/// verification. Faces are the facets, cyclically ordered when `n = 3`.
pub fn to_off(p: &LabeledPolytope) -> Result<String> {
    let facets = extract_facets(p)?;
    let pts: Vec<Point> = p
        .vertices()
        .iter()
        .map(|v| v.coords.iter().map(to_f64).collect())
        .collect();
    let origin = pts[0].clone();
    let diffs: Vec<Point> = pts.iter().map(|q| sub(q, &origin)).collect();
    let basis = orthonormal(&diffs, p.n().min(3));
    let local: Vec<[f64; 3]> = diffs
        .iter()
        .map(|d| {
            let mut c = [0.0; 3];
            for (k, b) in basis.iter().enumerate() {
                c[k] = dot(d, b);
            }
            c
        })
        .collect();
    let center: Point = (0..3)
        .map(|k| local.iter().map(|c| c[k]).sum::<f64>() / local.len() as f64)
        .collect();

    let edges = {
        let labels: Vec<&Triangulation> = p.vertices().iter().map(|v| &v.label).collect();
        let mut count = 0;
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if labels[i].common_diagonals(labels[j]) + 1 == p.n() {
                    count += 1;
                }
            }
        }
        count
    };

    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", pts.len(), facets.len(), edges);
    for c in &local {
        let _ = writeln!(out, "{} {} {}", fixed(c[0]), fixed(c[1]), fixed(c[2]));
    }
    for f in &facets {
        let mut idx = f.vertex_indices.clone();
        if p.n() == 3 {
            order_cyclically(&mut idx, &local, &center);
        }
        let _ = write!(out, "{}", idx.len());
        for i in idx {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Sorts a planar facet's vertices by angle, counterclockwise seen from outside.
fn order_cyclically(idx: &mut [usize], local: &[[f64; 3]], center: &[f64]) {
    let pts: Vec<Point> = idx.iter().map(|&i| local[i].to_vec()).collect();
    let n = pts.len() as f64;
    let mid: Point = (0..3).map(|k| pts.iter().map(|q| q[k]).sum::<f64>() / n).collect();
    let spokes: Vec<Point> = pts.iter().map(|q| sub(q, &mid)).collect();
    let plane = orthonormal(&spokes, 2);
    if plane.len() < 2 {
        return;
    }
    let (u, v) = (&plane[0], &plane[1]);
    let normal = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let outward = sub(&mid, center);
    let flip = if dot(&normal, &outward) < 0.0 { -1.0 } else { 1.0 };
    let mut keyed: Vec<(f64, usize)> = idx
        .iter()
        .zip(&spokes)
        .map(|(&i, s)| ((flip * dot(s, v)).atan2(dot(s, u)), i))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (slot, (_, i)) in idx.iter_mut().zip(keyed) {
        *slot = i;
    }
}
