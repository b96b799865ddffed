//! Command dispatch.

use clap::ValueEnum;
use pdt_core::divisor::{standard_normal_vector, DivisorContext};
use pdt_core::ideal::{is_homogeneous, sigma_dimension, toric_ideal_from_points};
use pdt_core::{Error, SearchBounds, ZxMatrix};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, fan_of, points_matrix, query_fan, Document, InputError, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Faces,
    Facets,
    Pointed,
    Compact,
    Smooth,
    ToricIdeal,
    Homogeneous,
    SigmaDim,
    ProjectiveFan,
    FanCheck,
    Classify,
    NormalVectors,
    DivChar,
    DivPrincipal,
    ClassModule,
    Cartier,
    Pic,
    FaceSaturation,
    MorphismCheck,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("results serialize")
}

fn wrong_kind(cmd: Command, kind: Kind) -> InputError {
    InputError(format!(
        "command `{}` does not accept a {kind:?} document",
        cmd.name()
    ))
}

/// Undecided faces become an unknown result rather than an error.
fn settle(r: Result<Value, Error>) -> Result<Value, InputError> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::UnresolvedFaces(subsets)) => Ok(json!({ "unresolved_faces": subsets })),
        Err(e) => Err(e.into()),
    }
}

fn matrix_of(doc: &Document, cmd: Command) -> Result<(ZxMatrix, bool), InputError> {
    match doc.kind {
        Kind::Points => {
            let p = doc.points()?;
            Ok((points_matrix(&p.points, p.ambient)?, p.projective))
        }
        Kind::Semimodule => {
            let s = doc.semimodule()?;
            Ok((points_matrix(&s.generators, Some(s.ambient))?, false))
        }
        k => Err(wrong_kind(cmd, k)),
    }
}

pub fn run(cmd: Command, doc: &Document, bounds: SearchBounds) -> Result<Value, InputError> {
    use Command::*;
    match cmd {
        ToricIdeal => {
            let (u, _) = matrix_of(doc, cmd)?;
            Ok(to_value(&toric_ideal_from_points(&u)?))
        }
        Homogeneous => {
            let (u, _) = matrix_of(doc, cmd)?;
            Ok(to_value(&is_homogeneous(&u)?))
        }
        SigmaDim => {
            let (u, projective) = matrix_of(doc, cmd)?;
            Ok(
                json!({ "projective": projective, "sigma_dimension": sigma_dimension(&u, projective) }),
            )
        }
        Faces | Facets | Pointed | Compact | FaceSaturation | MorphismCheck => {
            semimodule_command(cmd, doc, bounds)
        }
        Smooth if doc.kind == Kind::Semimodule => semimodule_command(cmd, doc, bounds),
        NormalVectors if doc.kind == Kind::Semimodule => semimodule_command(cmd, doc, bounds),
        ProjectiveFan => {
            if doc.kind != Kind::Points {
                return Err(wrong_kind(cmd, doc.kind));
            }
            let fan = fan_of(doc, bounds)?;
            let check = fan.check_fan(bounds)?;
            Ok(json!({ "fan": to_value(&fan), "check": to_value(&check) }))
        }
        FanCheck => Ok(to_value(&fan_of(doc, bounds)?.check_fan(bounds)?)),
        Classify => settle(
            fan_of(doc, bounds)?
                .classify_faces(bounds)
                .map(|c| to_value(&c)),
        ),
        Smooth | NormalVectors | ClassModule | Pic => {
            let fan = fan_of(doc, bounds)?;
            settle(DivisorContext::new(&fan, bounds).and_then(|ctx| match cmd {
                Smooth => Ok(to_value(&ctx.is_smooth_variety(bounds)?)),
                NormalVectors => Ok(to_value(&ctx.primes())),
                ClassModule => Ok(to_value(&ctx.class_module()?)),
                _ => Ok(to_value(&ctx.pic_module()?)),
            }))
        }
        DivChar | DivPrincipal | Cartier => {
            if doc.kind != Kind::DivisorQuery {
                return Err(wrong_kind(cmd, doc.kind));
            }
            let q = doc.divisor_query()?;
            let fan = query_fan(&q, bounds)?;
            let missing =
                |what: &str| InputError(format!("command `{}` needs a `{what}` field", cmd.name()));
            let ctx = match DivisorContext::new(&fan, bounds) {
                Err(Error::UnresolvedFaces(s)) => return Ok(json!({ "unresolved_faces": s })),
                other => other?,
            };
            match cmd {
                DivChar => {
                    let u = q.character.ok_or_else(|| missing("character"))?;
                    let d = ctx.div_character(&u)?;
                    Ok(json!({ "divisor": to_value(&d), "display": d.to_string() }))
                }
                DivPrincipal => {
                    let f = q.element.ok_or_else(|| missing("element"))?;
                    let d = ctx.div_principal(&f)?;
                    Ok(json!({ "divisor": to_value(&d), "display": d.to_string() }))
                }
                _ => {
                    let d = q.divisor.ok_or_else(|| missing("divisor"))?;
                    Ok(to_value(&ctx.is_cartier(&d)?))
                }
            }
        }
    }
}

fn semimodule_command(
    cmd: Command,
    doc: &Document,
    bounds: SearchBounds,
) -> Result<Value, InputError> {
    if doc.kind != Kind::Semimodule {
        return Err(wrong_kind(cmd, doc.kind));
    }
    let p = doc.semimodule()?;
    let morphism = p.morphism;
    let s = input::semimodule(input::SemimoduleData {
        ambient: p.ambient,
        generators: p.generators,
    })?;
    match cmd {
        Command::Faces => Ok(to_value(&s.enumerate_faces(bounds)?)),
        Command::Facets => settle(s.facets(bounds).map(|f| to_value(&f))),
        Command::Pointed => Ok(to_value(&s.is_pointed(bounds)?)),
        Command::Compact => settle(s.is_compact(bounds).map(|c| json!({ "compact": c }))),
        Command::Smooth => settle(s.is_smooth_semimodule(bounds).map(|v| to_value(&v))),
        Command::FaceSaturation => settle(s.face_saturation_check(bounds).map(|r| to_value(&r))),
        Command::NormalVectors => settle(s.facets(bounds).and_then(|facets| {
            let nvs = facets
                .iter()
                .map(|f| standard_normal_vector(&s, f))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(to_value(&nvs))
        })),
        Command::MorphismCheck => {
            let m = morphism
                .ok_or_else(|| InputError("morphism-check needs a `morphism` field".into()))?;
            let target = input::semimodule(m.target)?;
            Ok(to_value(&s.check_morphism(&target, &m.images, bounds)?))
        }
        _ => unreachable!("dispatched above"),
    }
}

/// Yes/No/Unknown counts over every verdict in a result, with undecided
/// face subsets counted as unknown.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub yes: usize,
    pub no: usize,
    pub unknown: usize,
}

pub fn tally(v: &Value) -> Tally {
    fn walk(v: &Value, t: &mut Tally) {
        match v {
            Value::Object(map) => {
                match map.get("verdict").and_then(Value::as_str) {
                    Some("yes") => t.yes += 1,
                    Some("no") => t.no += 1,
                    Some("unknown") => t.unknown += 1,
                    _ => {}
                }
                for key in ["unresolved", "unresolved_faces"] {
                    if let Some(Value::Array(a)) = map.get(key) {
                        t.unknown += a.len();
                    }
                }
                map.values().for_each(|x| walk(x, t));
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, t)),
            _ => {}
        }
    }
    let mut t = Tally::default();
    walk(v, &mut t);
    t
}
