use std::io::Read;
use std::path::Path;

use newform_core::gl_ring::SupercuspidalLabel;
use newform_core::so_params::{DiscreteLParameter, Summand};
use newform_core::{Error, HalfInt, UnitSign};
use serde::Deserialize;

/// A label given either in full or as `"chi"` / `"chi'"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum LabelInput {
    Short(String),
    Full(SupercuspidalLabel),
}

impl LabelInput {
    fn resolve(self) -> Result<SupercuspidalLabel, Error> {
        match self {
            LabelInput::Full(l) => Ok(l),
            LabelInput::Short(s) => match s.as_str() {
                "chi" => Ok(SupercuspidalLabel::chi()),
                "chi'" => Ok(SupercuspidalLabel::chi_prime()),
                other => Err(Error::Parse(format!("unknown label shorthand {other:?}; use \"chi\", \"chi'\" or a full record"))),
            },
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandInput {
    label: LabelInput,
    kappa: HalfInt,
    #[serde(default)]
    epsilon: Option<UnitSign>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParameterInput {
    #[serde(default)]
    n: Option<i64>,
    summands: Vec<SummandInput>,
    #[serde(default)]
    gl_conductors: Vec<i64>,
}

pub struct ParameterDoc {
    pub phi: DiscreteLParameter,
    pub gl_conductors: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeInput {
    pub r: usize,
    #[serde(default)]
    pub factors: Vec<(UnitSign, HalfInt)>,
}

pub fn read_source(path: Option<&Path>) -> Result<String, Error> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// Parses a parameter document. When `n` is omitted it is inferred from the dimension.
pub fn parse_parameter(text: &str) -> Result<ParameterDoc, Error> {
    let raw: ParameterInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut summands = Vec::with_capacity(raw.summands.len());
    for s in raw.summands {
        summands.push(Summand { label: s.label.resolve()?, kappa: s.kappa, epsilon: s.epsilon });
    }
    let mut phi = DiscreteLParameter::from_summands(summands);
    if let Some(n) = raw.n {
        phi.n = n;
    }
    Ok(ParameterDoc { phi, gl_conductors: raw.gl_conductors })
}

pub fn parse_hecke(text: &str) -> Result<HeckeInput, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
