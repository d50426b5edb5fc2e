//! JSON documents. Rationals are written as strings, `"p/q"` or `"p"`.
//!
//! A cone document looks like
//!
//! ```json
//! {"dim": 2, "generators": [["1", "0"], ["1", "1"]]}
//! ```
//!
//! with `generators`, `inequalities` or both. Lineality directions appear as
//! the pair `v`, `-v`. Field order is alphabetical, so serializing with
//! `serde_json` yields sorted keys.

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, RatMat, RatVec};

pub fn vec_to_strings(v: &[crate::exact::Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn vecs_to_strings(vs: &[RatVec]) -> Vec<Vec<String>> {
    vs.iter().map(|v| vec_to_strings(v)).collect()
}

pub fn parse_vec(v: &[String]) -> Result<RatVec> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn parse_vecs(vs: &[Vec<String>]) -> Result<Vec<RatVec>> {
    vs.iter().map(|v| parse_vec(v)).collect()
}

pub fn mat_to_strings(m: &RatMat) -> Vec<Vec<String>> {
    vecs_to_strings(&m.row_vecs())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl ConeDocument {
    /// Writes whichever descriptions the cone currently holds.
    pub fn from_cone(cone: &Cone) -> Self {
        Self {
            dim: cone.ambient_dim(),
            generators: cone
                .has_generators()
                .then(|| vecs_to_strings(&cone.generators().signed_list())),
            inequalities: cone
                .has_inequalities()
                .then(|| vecs_to_strings(&cone.inequalities().signed_list())),
            metadata: None,
        }
    }

    /// Writes both descriptions, computing the missing one.
    pub fn complete(cone: &Cone) -> Self {
        Self {
            dim: cone.ambient_dim(),
            generators: Some(vecs_to_strings(&cone.generators().signed_list())),
            inequalities: Some(vecs_to_strings(&cone.inequalities().signed_list())),
            metadata: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.metadata.get_or_insert_with(Metadata::default).name = Some(name.into());
        self
    }

    pub fn to_cone(&self) -> Result<Cone> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let gens = self.generators.as_deref().map(parse_vecs).transpose()?;
        let ineqs = self.inequalities.as_deref().map(parse_vecs).transpose()?;
        match (gens, ineqs) {
            (Some(g), Some(h)) => Cone::from_both(self.dim, g, h),
            (Some(g), None) => Cone::from_generators(self.dim, g),
            (None, Some(h)) => Cone::from_inequalities(self.dim, h),
            (None, None) => Err(Error::Parse(
                "cone document needs generators or inequalities".into(),
            )),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Parses a JSON list of vectors such as `[["-1","1","1"], ["1","0","0"]]`.
pub fn parse_vector_list(text: &str) -> Result<Vec<RatVec>> {
    let raw: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parse_vecs(&raw)
}
