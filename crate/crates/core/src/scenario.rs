//! User inputs: budget, farm size, crop, and applications.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{
    line_of, required_compute_kinds, ApplicationProfile, ComponentCatalog, CropClass, CropProfile, EdgeServer,
};
use crate::constraints::select_comm;
use crate::fleet::CommChoice;
use crate::money::Money;

/// Minimum drone flight time in hours.
pub const MIN_FLIGHT_HOURS: f64 = 0.2;

/// Scenario file contents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub budget: Money,
    pub farm_size_m2: i64,
    pub crop: CropClass,
    pub applications: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comm_override: Option<String>,
}

/// Scenario resolved against a catalog.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub budget: Money,
    pub farm_size_m2: i64,
    pub crop: CropProfile,
    pub apps: Vec<ApplicationProfile>,
    pub comm: Option<CommChoice>,
    pub edge_server: Option<EdgeServer>,
    pub min_flight_hours: f64,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}{}: schema error: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Schema { origin: String, line: Option<usize>, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl Scenario {
    /// Scenario without communication or edge costs, for direct construction.
    pub fn new(budget: Money, farm_size_m2: i64, crop: CropProfile, apps: Vec<ApplicationProfile>) -> Self {
        Scenario {
            name: "custom".to_string(),
            budget,
            farm_size_m2,
            crop,
            apps,
            comm: None,
            edge_server: None,
            min_flight_hours: MIN_FLIGHT_HOURS,
        }
    }

    pub fn resolve(file: &ScenarioFile, catalog: &ComponentCatalog) -> Result<Self, ScenarioError> {
        if file.budget.cents() <= 0 {
            return Err(ScenarioError::Invalid(format!("budget must be positive, got {}", file.budget)));
        }
        if file.farm_size_m2 <= 0 {
            return Err(ScenarioError::Invalid(format!("farm_size_m2 must be positive, got {}", file.farm_size_m2)));
        }
        if file.applications.is_empty() {
            return Err(ScenarioError::Invalid("scenario lists no applications".to_string()));
        }
        let crop = catalog.crop(file.crop).cloned().unwrap_or_else(|| CropProfile::recommended(file.crop));
        let apps = file
            .applications
            .iter()
            .map(|name| {
                catalog
                    .application(name)
                    .cloned()
                    .or_else(|| ApplicationProfile::standard(name))
                    .ok_or_else(|| ScenarioError::Invalid(format!("unknown application `{name}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let comm = match &file.comm_override {
            Some(id) => {
                let method = catalog
                    .comm_method(id)
                    .ok_or_else(|| ScenarioError::Invalid(format!("unknown comm method `{id}`")))?;
                Some(crate::constraints::comm_choice(file.farm_size_m2, method))
            }
            None => select_comm(&catalog.comm, file.farm_size_m2),
        };
        let (_, needs_edge) = required_compute_kinds(&apps);
        let edge_server = if needs_edge {
            Some(catalog.cheapest_edge_server().cloned().ok_or_else(|| {
                ScenarioError::Invalid("offboard applications need an edge server but the catalog lists none".to_string())
            })?)
        } else {
            None
        };
        Ok(Scenario {
            name: file.name.clone().unwrap_or_else(|| "scenario".to_string()),
            budget: file.budget,
            farm_size_m2: file.farm_size_m2,
            crop,
            apps,
            comm,
            edge_server,
            min_flight_hours: MIN_FLIGHT_HOURS,
        })
    }

    pub fn needs_edge_server(&self) -> bool {
        required_compute_kinds(&self.apps).1
    }

    /// Edge and communication costs every fleet in this scenario pays.
    pub fn fixed_cost(&self) -> Money {
        self.edge_server.as_ref().map_or(Money::ZERO, |e| e.cost) + self.comm.as_ref().map_or(Money::ZERO, |c| c.cost)
    }
}

pub fn parse_scenario(text: &str, origin: &str) -> Result<ScenarioFile, ScenarioError> {
    toml::from_str(text).map_err(|e| ScenarioError::Schema {
        origin: origin.to_string(),
        line: e.span().map(|s| line_of(text, s.start)),
        message: e.message().to_string(),
    })
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioFile, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
    parse_scenario(&text, &path.display().to_string())
}

const CASE_STUDY_1: &str = include_str!("../data/case_study_1.toml");
const CASE_STUDY_2: &str = include_str!("../data/case_study_2.toml");

/// Bundled scenarios by name.
pub fn bundled_scenario(name: &str) -> Option<ScenarioFile> {
    let text = match name {
        "case_study_1" => CASE_STUDY_1,
        "case_study_2" => CASE_STUDY_2,
        _ => return None,
    };
    Some(parse_scenario(text, name).expect("bundled scenario is valid"))
}
