//! Run configuration shared by the command-line tool and the examples.
//!
//! Values come from three layers: built-in defaults, an optional JSON file, and
//! explicit overrides applied by the caller. Missing file keys keep their
//! defaults; unknown keys are rejected.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::backends::{
    ModelBinarizer, OracleBinarizer, OtsuBinarizer, PatchBinarizer, Polarity, SauvolaBinarizer, SauvolaParams,
};
use crate::error::{Error, Result};
use crate::imgcore::BinaryMask;
use crate::inference::InferenceConfig;
use crate::patching::{DilationConfig, SamplingConfig};

/// Environment variable naming the default model file.
pub const MODEL_ENV: &str = "GLYPHPATCH_MODEL";

/// Which patch predictor drives inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BackendChoice {
    Otsu,
    Sauvola,
    /// Reads ground truth instead of pixels; for pipeline testing.
    Oracle,
    /// ONNX model; `None` means "use the environment default".
    Model(Option<PathBuf>),
}

impl Default for BackendChoice {
    fn default() -> Self {
        BackendChoice::Model(None)
    }
}

impl fmt::Display for BackendChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendChoice::Otsu => f.write_str("otsu"),
            BackendChoice::Sauvola => f.write_str("sauvola"),
            BackendChoice::Oracle => f.write_str("oracle"),
            BackendChoice::Model(None) => f.write_str("model"),
            BackendChoice::Model(Some(p)) => write!(f, "model:{}", p.display()),
        }
    }
}

impl FromStr for BackendChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "otsu" => Ok(BackendChoice::Otsu),
            "sauvola" => Ok(BackendChoice::Sauvola),
            "oracle" => Ok(BackendChoice::Oracle),
            "model" => Ok(BackendChoice::Model(None)),
            _ => match s.strip_prefix("model:") {
                Some(p) if !p.is_empty() => Ok(BackendChoice::Model(Some(p.into()))),
                _ => Err(Error::UnknownMethod(s.to_string())),
            },
        }
    }
}

impl TryFrom<String> for BackendChoice {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BackendChoice> for String {
    fn from(b: BackendChoice) -> String {
        b.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub backend: BackendChoice,
    pub polarity: Polarity,
    pub dilation: DilationConfig,
    pub sampling: SamplingConfig,
    pub inference: InferenceConfig,
    pub sauvola: SauvolaParams,
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::json(path, e))
    }

    /// Defaults, or the file's values when a path is given.
    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    pub fn validate(&self) -> Result<()> {
        self.dilation.validate()?;
        self.sampling.validate()?;
        self.inference.validate()?;
        self.sauvola.validate()
    }

    /// Model file for `Model(None)`: `fallback` first, then [`MODEL_ENV`].
    pub fn model_path(&self, fallback: Option<&Path>) -> Option<PathBuf> {
        match &self.backend {
            BackendChoice::Model(Some(p)) => Some(p.clone()),
            BackendChoice::Model(None) => fallback
                .map(Path::to_path_buf)
                .or_else(|| std::env::var_os(MODEL_ENV).map(PathBuf::from)),
            _ => None,
        }
    }

    /// Instantiates the selected backend. `gt` is only consulted by the oracle.
    pub fn build_backend(&self, gt: Option<BinaryMask>) -> Result<Box<dyn PatchBinarizer>> {
        Ok(match &self.backend {
            BackendChoice::Otsu => Box::new(OtsuBinarizer { polarity: self.polarity }),
            BackendChoice::Sauvola => Box::new(SauvolaBinarizer {
                params: self.sauvola,
                polarity: self.polarity,
            }),
            BackendChoice::Oracle => Box::new(OracleBinarizer::from_optional(gt)?),
            BackendChoice::Model(_) => {
                let path = self.model_path(None).ok_or_else(|| Error::ModelLoad {
                    path: PathBuf::new(),
                    reason: format!("no model path given and {MODEL_ENV} is unset"),
                })?;
                Box::new(ModelBinarizer::load(path)?)
            }
        })
    }
}
