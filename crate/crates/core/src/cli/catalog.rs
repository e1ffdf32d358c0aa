//! Built-in scenarios, embedded at compile time.

use super::scenario::{parse_scenario, ScenarioError, ScenarioFile};

const ENTRIES: [(&str, &str); 5] = [
    ("hultgren-c", include_str!("catalog/hultgren-c.json")),
    ("hultgren-c-unit-weight", include_str!("catalog/hultgren-c-unit-weight.json")),
    ("hultgren-c-corrupt", include_str!("catalog/hultgren-c-corrupt.json")),
    ("cp1", include_str!("catalog/cp1.json")),
    ("cp1-coupled", include_str!("catalog/cp1-coupled.json")),
];

pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(name, _)| *name).collect()
}

pub fn catalog_source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load_catalog(name: &str) -> Result<ScenarioFile, ScenarioError> {
    let text = catalog_source(name).ok_or_else(|| ScenarioError::Field {
        field: "catalog".into(),
        message: format!("unknown scenario `{name}`; available: {}", catalog_names().join(", ")),
    })?;
    parse_scenario(text)
}
