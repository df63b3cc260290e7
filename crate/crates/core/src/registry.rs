//! Builtin groups and named number systems.
//!
//! The name → assignment mapping lives in `data/systems.toml` so that it can
//! be reviewed and diffed on its own.

use std::sync::{Arc, OnceLock};

use serde::Deserialize;

use crate::algebra::NumberSystem;
use crate::error::{Error, Result};
use crate::group::{make_cyclic, make_klein, GroupSpec};
use crate::rational::{parse_rational, Rational};
use crate::ruleset::{build_pattern, ParamAssignment, RulePattern};

const REGISTRY_TOML: &str = include_str!("../data/systems.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct SystemEntry {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub tag: Option<String>,
    pub group: String,
    pub values: Vec<String>,
    pub source: String,
}

#[derive(Deserialize)]
struct RegistryFile {
    system: Vec<SystemEntry>,
}

pub fn entries() -> &'static [SystemEntry] {
    static ENTRIES: OnceLock<Vec<SystemEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        toml::from_str::<RegistryFile>(REGISTRY_TOML).expect("bundled registry parses").system
    })
}

pub const BUILTIN_GROUPS: [&str; 4] = ["c2", "c3", "c4", "klein4"];

pub fn builtin_group(name: &str) -> Result<GroupSpec> {
    match name.to_ascii_lowercase().as_str() {
        "c2" => make_cyclic(2),
        "c3" => make_cyclic(3),
        "c4" => make_cyclic(4),
        "klein4" | "klein" | "v4" => Ok(make_klein()),
        other => Err(Error::UnknownGroup(other.to_string())),
    }
}

pub fn builtin_pattern(name: &str) -> Result<RulePattern> {
    build_pattern(&builtin_group(name)?)
}

pub fn entry(name: &str) -> Result<&'static SystemEntry> {
    let wanted = name.trim().to_ascii_lowercase();
    entries()
        .iter()
        .find(|e| e.name == wanted || e.aliases.contains(&wanted))
        .ok_or_else(|| Error::UnknownSystem(name.trim().to_string()))
}

impl SystemEntry {
    pub fn pattern(&self) -> Result<RulePattern> {
        builtin_pattern(&self.group)
    }

    pub fn values(&self) -> Result<Vec<Rational>> {
        self.values.iter().map(|v| parse_rational(v)).collect()
    }

    pub fn assignment(&self) -> Result<ParamAssignment> {
        let pattern = self.pattern()?;
        let values = self.values()?;
        if values.len() != pattern.param_count() {
            return Err(Error::Registry(format!(
                "{} lists {} values, {} pattern has {} slots",
                self.name,
                values.len(),
                self.group,
                pattern.param_count()
            )));
        }
        Ok(ParamAssignment::from_values(values).with_label(self.tag.clone().unwrap_or_else(|| self.name.clone())))
    }

    pub fn system(&self) -> Result<Arc<NumberSystem>> {
        NumberSystem::new(self.name.clone(), self.pattern()?, self.assignment()?)
    }
}

pub fn builtin_system(name: &str) -> Result<Arc<NumberSystem>> {
    entry(name)?.system()
}

/// The registry entry whose pattern kind and values match, if any.
pub fn lookup(pattern: &RulePattern, values: &[Rational]) -> Option<&'static SystemEntry> {
    entries().iter().find(|e| {
        e.pattern().is_ok_and(|p| p.kind() == pattern.kind()) && e.values().is_ok_and(|v| v == values)
    })
}

/// Short table label for an assignment, when it names a known system.
pub fn tag_for(pattern: &RulePattern, values: &[Rational]) -> Option<&'static str> {
    lookup(pattern, values).and_then(|e| e.tag.as_deref())
}
