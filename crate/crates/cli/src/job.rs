//! Job files: a versioned JSON object naming a command, the parahoric datum
//! and the command's parameters.

use std::collections::BTreeMap;

use parahoric_core::alcove::MarkedPoint;
use parahoric_core::picard::StackLineBundle;
use parahoric_core::{ParahoricDatum, RootDatum, TypeLetter, Weight};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParahoricSpec {
    #[serde(rename = "type")]
    pub letter: TypeLetter,
    pub rank: usize,
    #[serde(default)]
    pub genus: u32,
    #[serde(default = "default_level")]
    pub level: u32,
    #[serde(default)]
    pub points: Vec<MarkedPoint>,
}

fn default_level() -> u32 {
    1
}

impl ParahoricSpec {
    pub fn datum(&self) -> Result<RootDatum, CliError> {
        Ok(RootDatum::new(self.letter, self.rank)?)
    }

    pub fn build(&self) -> Result<ParahoricDatum, CliError> {
        Ok(ParahoricDatum::new(
            self.datum()?,
            self.genus,
            self.points.clone(),
            self.level,
        )?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Job {
    RootData {
        parahoric: ParahoricSpec,
    },
    Facets {
        parahoric: ParahoricSpec,
    },
    Levels {
        parahoric: ParahoricSpec,
    },
    Weights {
        parahoric: ParahoricSpec,
        #[serde(default)]
        c: Option<u32>,
        #[serde(default)]
        facet: Option<Vec<usize>>,
    },
    Picard {
        parahoric: ParahoricSpec,
        #[serde(default)]
        bundle: Option<StackLineBundle>,
    },
    Descend {
        parahoric: ParahoricSpec,
        tuple: BTreeMap<String, Vec<i64>>,
    },
    Fusion {
        parahoric: ParahoricSpec,
        lambda: Weight,
        mu: Weight,
    },
    Verlinde {
        parahoric: ParahoricSpec,
        #[serde(default)]
        insertions: BTreeMap<String, Weight>,
        #[serde(default)]
        oracle: bool,
    },
    Bwb {
        parahoric: ParahoricSpec,
        weights: BTreeMap<String, Weight>,
        #[serde(default)]
        twist: u32,
        #[serde(default)]
        boundary: BTreeMap<String, Weight>,
    },
}

impl Job {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut value: Value = serde_json::from_str(text)?;
        let obj = value
            .as_object_mut()
            .ok_or_else(|| CliError::Schema("top level must be a JSON object".into()))?;
        match obj.remove("schema_version") {
            Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
            Some(other) => {
                return Err(CliError::Schema(format!(
                    "unsupported schema_version {other}, expected {SCHEMA_VERSION}"
                )))
            }
            None => return Err(CliError::Schema("missing schema_version".into())),
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Job::RootData { .. } => "root-data",
            Job::Facets { .. } => "facets",
            Job::Levels { .. } => "levels",
            Job::Weights { .. } => "weights",
            Job::Picard { .. } => "picard",
            Job::Descend { .. } => "descend",
            Job::Fusion { .. } => "fusion",
            Job::Verlinde { .. } => "verlinde",
            Job::Bwb { .. } => "bwb",
        }
    }

    pub fn parahoric(&self) -> &ParahoricSpec {
        match self {
            Job::RootData { parahoric }
            | Job::Facets { parahoric }
            | Job::Levels { parahoric }
            | Job::Weights { parahoric, .. }
            | Job::Picard { parahoric, .. }
            | Job::Descend { parahoric, .. }
            | Job::Fusion { parahoric, .. }
            | Job::Verlinde { parahoric, .. }
            | Job::Bwb { parahoric, .. } => parahoric,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_job() {
        let job = Job::parse(
            r#"{"schema_version": 1, "command": "verlinde",
                "parahoric": {"type": "A", "rank": 1, "genus": 2}}"#,
        )
        .unwrap();
        assert_eq!(job.name(), "verlinde");
        assert_eq!(job.parahoric().level, 1);
        assert!(matches!(job, Job::Verlinde { oracle: false, .. }));
    }

    #[test]
    fn rejects_unknown_fields() {
        for text in [
            r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1}, "extra": 3}"#,
            r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1, "colour": 3}}"#,
            r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1,
                "points": [{"label": "x", "facet": [0], "weight": [1]}]}}"#,
        ] {
            assert!(matches!(Job::parse(text), Err(CliError::Json(_))), "{text}");
        }
    }

    #[test]
    fn rejects_bad_versions_and_commands() {
        assert!(matches!(
            Job::parse(r#"{"command": "levels", "parahoric": {"type": "A", "rank": 1}}"#),
            Err(CliError::Schema(_))
        ));
        assert!(matches!(
            Job::parse(
                r#"{"schema_version": 2, "command": "levels", "parahoric": {"type": "A", "rank": 1}}"#
            ),
            Err(CliError::Schema(_))
        ));
        assert!(Job::parse(
            r#"{"schema_version": 1, "command": "dance", "parahoric": {"type": "A", "rank": 1}}"#
        )
        .is_err());
        assert!(Job::parse(r#"[1]"#).is_err());
    }

    #[test]
    fn facets_validate_on_parse() {
        assert!(Job::parse(
            r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1,
                "points": [{"label": "x", "facet": []}]}}"#
        )
        .is_err());
    }
}
