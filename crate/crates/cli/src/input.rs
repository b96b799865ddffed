//! Input documents.

use pdt_core::divisor::{SupportedElement, WeilDivisor};
use pdt_core::fan::{projective_fan, Fan};
use pdt_core::semimodule::AffineSemimodule;
use pdt_core::{Error, SearchBounds, ZxMatrix, ZxVector};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub kind: Kind,
    pub payload: Value,
    #[serde(default)]
    pub bounds: Option<PartialBounds>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Points,
    Semimodule,
    Fan,
    DivisorQuery,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialBounds {
    pub max_deg: Option<usize>,
    pub coeff_box: Option<u32>,
}

impl PartialBounds {
    /// Fields of `self` win over `other`.
    pub fn or(self, other: PartialBounds) -> PartialBounds {
        PartialBounds {
            max_deg: self.max_deg.or(other.max_deg),
            coeff_box: self.coeff_box.or(other.coeff_box),
        }
    }

    pub fn resolve(self, fallback: SearchBounds) -> SearchBounds {
        SearchBounds::new(
            self.max_deg.unwrap_or(fallback.max_deg),
            self.coeff_box.unwrap_or(fallback.coeff_box),
        )
    }

    /// `PDT_DEFAULT_BOUNDS` as `deg,box`.
    pub fn parse_env(s: &str) -> Result<PartialBounds, String> {
        let (d, b) = s
            .split_once(',')
            .ok_or_else(|| format!("PDT_DEFAULT_BOUNDS must be `deg,box`, got {s:?}"))?;
        let max_deg = d
            .trim()
            .parse()
            .map_err(|e| format!("PDT_DEFAULT_BOUNDS degree: {e}"))?;
        let coeff_box = b
            .trim()
            .parse()
            .map_err(|e| format!("PDT_DEFAULT_BOUNDS box: {e}"))?;
        Ok(PartialBounds {
            max_deg: Some(max_deg),
            coeff_box: Some(coeff_box),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsPayload {
    pub points: Vec<ZxVector>,
    #[serde(default)]
    pub ambient: Option<usize>,
    #[serde(default)]
    pub projective: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Morphism {
    pub target: SemimoduleData,
    pub images: Vec<ZxVector>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemimoduleData {
    pub ambient: usize,
    pub generators: Vec<ZxVector>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemimodulePayload {
    pub ambient: usize,
    pub generators: Vec<ZxVector>,
    #[serde(default)]
    pub morphism: Option<Morphism>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorQuery {
    #[serde(default)]
    pub fan: Option<Value>,
    #[serde(default)]
    pub semimodule: Option<SemimoduleData>,
    #[serde(default)]
    pub points: Option<Vec<ZxVector>>,
    #[serde(default)]
    pub character: Option<ZxVector>,
    #[serde(default)]
    pub element: Option<SupportedElement>,
    #[serde(default)]
    pub divisor: Option<WeilDivisor>,
}

/// A failure attributable to the input rather than to the computation.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(format!(
            "schema error at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub fn parse_document(text: &str) -> Result<Document, InputError> {
    Ok(serde_json::from_str(text)?)
}

fn from_payload<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, InputError> {
    serde_json::from_value(v.clone())
        .map_err(|e| InputError(format!("schema error in payload: {e}")))
}

pub fn semimodule(data: SemimoduleData) -> Result<AffineSemimodule, InputError> {
    Ok(AffineSemimodule::new(data.ambient, data.generators)?)
}

pub fn points_matrix(points: &[ZxVector], ambient: Option<usize>) -> Result<ZxMatrix, InputError> {
    let n = ambient
        .or_else(|| points.first().map(Vec::len))
        .unwrap_or(0);
    Ok(ZxMatrix::from_columns(points, n)?)
}

impl Document {
    pub fn points(&self) -> Result<PointsPayload, InputError> {
        from_payload(&self.payload)
    }

    pub fn semimodule(&self) -> Result<SemimodulePayload, InputError> {
        from_payload(&self.payload)
    }

    pub fn divisor_query(&self) -> Result<DivisorQuery, InputError> {
        from_payload(&self.payload)
    }

    /// Default bounds from the largest polynomial degree in the payload.
    pub fn default_bounds(&self) -> SearchBounds {
        fn degree(v: &Value) -> usize {
            match v {
                Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_i64) => {
                    items.len() - 1
                }
                Value::Array(items) => items.iter().map(degree).max().unwrap_or(0),
                Value::Object(map) => map.values().map(degree).max().unwrap_or(0),
                _ => 0,
            }
        }
        SearchBounds::new(
            (2 * degree(&self.payload)).max(2),
            SearchBounds::DEFAULT_BOX,
        )
    }
}

/// The fan described by a document: a fan payload, the projective fan of a
/// point payload, or the single cone of a semimodule payload.
pub fn fan_of(doc: &Document, bounds: SearchBounds) -> Result<Fan, InputError> {
    match doc.kind {
        Kind::Fan => from_payload(&doc.payload),
        Kind::Points => Ok(projective_fan(&doc.points()?.points, bounds)?),
        Kind::Semimodule => {
            let p = doc.semimodule()?;
            Ok(Fan::single(AffineSemimodule::new(p.ambient, p.generators)?))
        }
        Kind::DivisorQuery => {
            let q = doc.divisor_query()?;
            query_fan(&q, bounds)
        }
    }
}

pub fn query_fan(q: &DivisorQuery, bounds: SearchBounds) -> Result<Fan, InputError> {
    match (&q.fan, &q.semimodule, &q.points) {
        (Some(f), None, None) => from_payload(f),
        (None, Some(s), None) => Ok(Fan::single(AffineSemimodule::new(
            s.ambient,
            s.generators.clone(),
        )?)),
        (None, None, Some(p)) => Ok(projective_fan(p, bounds)?),
        _ => Err(InputError(
            "a divisor query names exactly one of fan, semimodule, points".into(),
        )),
    }
}
