//! Versioned JSON model files.
//!
//! Floats are written as shortest round-trip decimals and parsed back with
//! correct rounding, so a saved model reloads bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::any::{AnyNetwork, AnySfam};
use crate::engine::{Learner, ModelKind};
use crate::error::ArtError;
use crate::preprocess::NormalizationRanges;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum PersistError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported model file: {0}")]
    Version(String),
    #[error("malformed model file: {0}")]
    Schema(String),
    #[error("inconsistent model state: {0}")]
    Invalid(#[from] ArtError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SavedModel {
    Unsupervised(AnyNetwork),
    Supervised(AnySfam),
}

impl SavedModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            SavedModel::Unsupervised(n) => n.kind(),
            SavedModel::Supervised(s) => s.kind(),
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            SavedModel::Unsupervised(n) => n.input_dim(),
            SavedModel::Supervised(s) => s.input_dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: u64,
    pub model_kind: ModelKind,
    pub input_dim: usize,
    pub complement_coded: bool,
    /// Min-max ranges fitted on the training data; absent for raw binary input.
    pub normalization: Option<NormalizationRanges>,
    /// Class names indexed by class id (supervised models only).
    pub class_labels: Option<Vec<String>>,
    pub model: SavedModel,
}

impl ModelFile {
    pub fn new(
        model: SavedModel,
        normalization: Option<NormalizationRanges>,
        class_labels: Option<Vec<String>>,
    ) -> Self {
        let kind = model.kind();
        ModelFile {
            format_version: FORMAT_VERSION,
            model_kind: kind,
            input_dim: model.input_dim(),
            complement_coded: kind.complement_coded(),
            normalization,
            class_labels,
            model,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("model state serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, PersistError> {
        let value: Value = serde_json::from_str(text).map_err(|e| PersistError::Schema(e.to_string()))?;
        match value.get("format_version") {
            None => return Err(PersistError::Schema("missing field `format_version`".into())),
            Some(v) if v.as_u64() == Some(FORMAT_VERSION) => {}
            Some(v) => {
                return Err(PersistError::Version(format!(
                    "format_version {v}, expected {FORMAT_VERSION}"
                )))
            }
        }
        let file: ModelFile = serde_json::from_value(value).map_err(|e| {
            let msg = e.to_string();
            if msg.starts_with("unknown field") {
                PersistError::Version(msg)
            } else {
                PersistError::Schema(msg)
            }
        })?;
        file.check()?;
        Ok(file)
    }

    fn check(&self) -> Result<(), PersistError> {
        let kind = self.model.kind();
        if kind != self.model_kind {
            return Err(PersistError::Schema(format!(
                "model_kind {} but state is {kind}",
                self.model_kind
            )));
        }
        if self.input_dim != self.model.input_dim() {
            return Err(PersistError::Schema("input_dim disagrees with model state".into()));
        }
        if self.complement_coded != kind.complement_coded() {
            return Err(PersistError::Schema(
                "complement_coded disagrees with model kind".into(),
            ));
        }
        if let Some(ranges) = &self.normalization {
            if ranges.min.len() != self.input_dim || ranges.max.len() != self.input_dim {
                return Err(PersistError::Schema(
                    "normalization ranges disagree with input_dim".into(),
                ));
            }
        }
        match &self.model {
            SavedModel::Unsupervised(n) => n.validate_state()?,
            SavedModel::Supervised(s) => {
                s.validate_state()?;
                let classes = self.class_labels.as_ref().map_or(0, Vec::len);
                if s.map().iter().any(|&c| c >= classes) {
                    return Err(PersistError::Schema("map field refers to an unknown class".into()));
                }
            }
        }
        Ok(())
    }
}

pub fn save(file: &ModelFile, path: &Path) -> Result<(), PersistError> {
    fs::write(path, file.to_json()).map_err(|source| PersistError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<ModelFile, PersistError> {
    let text = fs::read_to_string(path).map_err(|source| PersistError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ModelFile::from_json(&text)
}
