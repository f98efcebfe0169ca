//! JSON instance files. All numbers are exact rational strings.

use serde::{Deserialize, Serialize};

use crate::algebra::Cardinal;
use crate::error::{Error, Result};
use crate::interval::{AffinePiece, Endpoint, Interval, IntervalSet, PiecewiseAffineMap};
use crate::scalar::{format_rational, parse_rational};
use crate::topograph::{DiscreteGraphPresentation, GraphPresentation, IntervalGraphPresentation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CountField {
    Finite(u64),
    Omega(OmegaTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaTag {
    Omega,
}

impl From<Cardinal> for CountField {
    fn from(c: Cardinal) -> Self {
        match c {
            Cardinal::Finite(n) => CountField::Finite(n),
            Cardinal::Omega => CountField::Omega(OmegaTag::Omega),
        }
    }
}

impl From<CountField> for Cardinal {
    fn from(c: CountField) -> Self {
        match c {
            CountField::Finite(n) => Cardinal::Finite(n),
            CountField::Omega(_) => Cardinal::Omega,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub name: String,
    pub count: CountField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub name: String,
    pub source: String,
    pub range: String,
    pub mult: CountField,
}

/// `[lo, hi, "closed"|"open", "closed"|"open"]`; infinite ends are `"-inf"` and `"inf"`.
pub type IntervalEntry = [String; 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    pub dom: IntervalEntry,
    pub slope: String,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub pieces: Vec<PieceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Discrete {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<u32>,
        vertices: Vec<VertexEntry>,
        edges: Vec<EdgeEntry>,
    },
    Interval {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<u32>,
        #[serde(rename = "G0")]
        g0: Vec<IntervalEntry>,
        #[serde(rename = "G1")]
        g1: Vec<IntervalEntry>,
        r: MapEntry,
        s: MapEntry,
    },
}

fn parse_end(s: &str) -> Result<Endpoint> {
    match s.trim() {
        "-inf" => Ok(Endpoint::NegInf),
        "inf" | "+inf" => Ok(Endpoint::PosInf),
        t => Ok(Endpoint::Finite(parse_rational(t)?)),
    }
}

fn parse_closed(s: &str) -> Result<bool> {
    match s {
        "closed" => Ok(true),
        "open" => Ok(false),
        other => Err(Error::Malformed(format!("expected \"closed\" or \"open\", got {other:?}"))),
    }
}

fn parse_interval(e: &IntervalEntry) -> Result<Interval> {
    Interval::new(parse_end(&e[0])?, parse_closed(&e[2])?, parse_end(&e[1])?, parse_closed(&e[3])?)?
        .ok_or_else(|| Error::Malformed(format!("empty interval {e:?}")))
}

fn emit_interval(i: &Interval) -> IntervalEntry {
    let c = |b: bool| if b { "closed" } else { "open" }.to_string();
    [i.lo().to_string(), i.hi().to_string(), c(i.lo_closed()), c(i.hi_closed())]
}

fn parse_set(es: &[IntervalEntry]) -> Result<IntervalSet> {
    Ok(IntervalSet::normalize(es.iter().map(parse_interval).collect::<Result<Vec<_>>>()?))
}

fn parse_map(m: &MapEntry, source: &IntervalSet, target: &IntervalSet) -> Result<PiecewiseAffineMap> {
    let pieces = m
        .pieces
        .iter()
        .map(|p| Ok(AffinePiece::new(parse_interval(&p.dom)?, parse_rational(&p.slope)?, parse_rational(&p.offset)?)))
        .collect::<Result<Vec<_>>>()?;
    PiecewiseAffineMap::new(pieces, source.clone(), target.clone())
}

fn emit_map(m: &PiecewiseAffineMap) -> MapEntry {
    MapEntry {
        pieces: m
            .pieces()
            .iter()
            .map(|p| PieceEntry {
                dom: emit_interval(&p.domain),
                slope: format_rational(&p.slope),
                offset: format_rational(&p.offset),
            })
            .collect(),
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("instance file: {e}")))?;
        let schema = match &file {
            InstanceFile::Discrete { schema, .. } | InstanceFile::Interval { schema, .. } => *schema,
        };
        if let Some(v) = schema.filter(|v| *v != SCHEMA_VERSION) {
            return Err(Error::Malformed(format!("unsupported schema version {v}")));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    pub fn to_presentation(&self) -> Result<GraphPresentation> {
        match self {
            InstanceFile::Discrete { vertices, edges, .. } => Ok(GraphPresentation::Discrete(DiscreteGraphPresentation::new(
                vertices.iter().map(|v| (v.name.clone(), v.count.into())).collect(),
                edges.iter().map(|e| (e.name.clone(), e.source.clone(), e.range.clone(), e.mult.into())).collect(),
            )?)),
            InstanceFile::Interval { g0, g1, r, s, .. } => {
                let (g0, g1) = (parse_set(g0)?, parse_set(g1)?);
                let (r, s) = (parse_map(r, &g1, &g0)?, parse_map(s, &g1, &g0)?);
                Ok(GraphPresentation::Interval(IntervalGraphPresentation::new(g0, g1, r, s)?))
            }
        }
    }

    pub fn from_presentation(g: &GraphPresentation) -> Self {
        match g {
            GraphPresentation::Discrete(d) => {
                let vs = d.vertices();
                InstanceFile::Discrete {
                    schema: Some(SCHEMA_VERSION),
                    vertices: vs
                        .classes()
                        .map(|(_, name, count)| VertexEntry { name: name.to_string(), count: count.into() })
                        .collect(),
                    edges: d
                        .edges()
                        .iter()
                        .map(|e| EdgeEntry {
                            name: e.name.clone(),
                            source: vs.name(e.source).to_string(),
                            range: vs.name(e.range).to_string(),
                            mult: e.mult.into(),
                        })
                        .collect(),
                }
            }
            GraphPresentation::Interval(i) => InstanceFile::Interval {
                schema: Some(SCHEMA_VERSION),
                g0: i.g0().pieces().iter().map(emit_interval).collect(),
                g1: i.g1().pieces().iter().map(emit_interval).collect(),
                r: emit_map(i.r()),
                s: emit_map(i.s()),
            },
        }
    }
}

pub fn parse_instance(text: &str) -> Result<GraphPresentation> {
    InstanceFile::from_json(text)?.to_presentation()
}
