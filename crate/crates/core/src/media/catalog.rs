//! Built-in materials catalog, parsed once from `data/materials.toml`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::MediumSegment;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    #[serde(skip_deserializing)]
    pub label: String,
    /// fs/cm
    pub alpha: f64,
    /// fs²/cm
    pub beta: f64,
    pub source: String,
}

impl Material {
    /// A segment of this material `length` cm long.
    pub fn segment(&self, length: f64) -> Result<MediumSegment> {
        MediumSegment::new(self.label.clone(), self.alpha, self.beta, length)
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub version: u32,
    materials: BTreeMap<String, Material>,
}

impl Catalog {
    /// Parses a catalog in the bundled format: a top-level `version` and one
    /// table per material with `alpha`, `beta` and `source` keys.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: toml::Table =
            toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let version = match table.remove("version") {
            Some(toml::Value::Integer(v)) if v >= 0 => v as u32,
            _ => return Err(Error::Catalog("missing integer `version`".into())),
        };
        let mut materials = BTreeMap::new();
        for (label, value) in table {
            let mut material: Material = value
                .try_into()
                .map_err(|e| Error::Catalog(format!("entry `{label}`: {e}")))?;
            if !material.alpha.is_finite() || !material.beta.is_finite() {
                return Err(Error::Catalog(format!(
                    "entry `{label}`: non-finite coefficient"
                )));
            }
            material.label = label.clone();
            materials.insert(label, material);
        }
        Ok(Self { version, materials })
    }

    pub fn get(&self, label: &str) -> Result<&Material> {
        self.materials
            .get(label)
            .ok_or_else(|| Error::UnknownMaterial(label.to_string()))
    }

    pub fn materials(&self) -> impl Iterator<Item = &Material> {
        self.materials.values()
    }
}

/// The bundled catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        Catalog::parse(include_str!("../../data/materials.toml"))
            .expect("bundled materials.toml is valid")
    })
}

/// Fused silica from the bundled catalog.
pub fn fused_silica() -> &'static Material {
    catalog()
        .get("fused_silica")
        .expect("fused_silica is in the bundled catalog")
}
