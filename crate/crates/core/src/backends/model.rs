//! ONNX network backend.
//!
//! Export contract: opset 13, a single float32 input named `input` of shape
//! `1x1x512x512` holding intensities in `[0, 1]`, and a single float32 output
//! named `prob` of the same shape holding sigmoid-activated probabilities.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use tract_onnx::prelude::*;

use crate::error::{Error, Result};
use crate::imgcore::ProbabilityMap;

use super::{Patch, PatchBinarizer};

pub const MODEL_INPUT: &str = "input";
pub const MODEL_OUTPUT: &str = "prob";
pub const MODEL_SIDE: usize = 512;

type Plan = Arc<TypedRunnableModel>;

/// A loaded network. `predict` is safe to call from many threads at once.
#[derive(Clone)]
pub struct ModelBinarizer {
    path: PathBuf,
    plan: Plan,
}

impl std::fmt::Debug for ModelBinarizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModelBinarizer").field("path", &self.path).finish()
    }
}

fn expected_shape() -> [usize; 4] {
    [1, 1, MODEL_SIDE, MODEL_SIDE]
}

fn check_signature(model: &TypedModel) -> Result<()> {
    let inputs = model.input_outlets().map_err(|e| Error::SignatureMismatch(e.to_string()))?;
    let outputs = model.output_outlets().map_err(|e| Error::SignatureMismatch(e.to_string()))?;
    if inputs.len() != 1 || outputs.len() != 1 {
        return Err(Error::SignatureMismatch(format!(
            "expected one input and one output, found {} and {}",
            inputs.len(),
            outputs.len()
        )));
    }

    let input_name = &model.node(inputs[0].node).name;
    if input_name != MODEL_INPUT {
        return Err(Error::SignatureMismatch(format!(
            "input tensor is `{input_name}`, expected `{MODEL_INPUT}`"
        )));
    }
    let output_name = model
        .outlet_label(outputs[0])
        .unwrap_or(&model.node(outputs[0].node).name);
    if output_name != MODEL_OUTPUT {
        return Err(Error::SignatureMismatch(format!(
            "output tensor is `{output_name}`, expected `{MODEL_OUTPUT}`"
        )));
    }

    for (what, fact) in [
        ("input", model.input_fact(0)),
        ("output", model.output_fact(0)),
    ] {
        let fact = fact.map_err(|e| Error::SignatureMismatch(e.to_string()))?;
        if fact.datum_type != f32::datum_type() {
            return Err(Error::SignatureMismatch(format!(
                "{what} has type {:?}, expected f32",
                fact.datum_type
            )));
        }
        match fact.shape.as_concrete() {
            Some(shape) if shape == expected_shape() => {}
            other => {
                return Err(Error::SignatureMismatch(format!(
                    "{what} shape is {:?}, expected {:?}",
                    other.map(|s| s.to_vec()),
                    expected_shape()
                )))
            }
        }
    }
    Ok(())
}

impl ModelBinarizer {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let load_err = |e: TractError| Error::ModelLoad {
            path: path.clone(),
            reason: e.to_string(),
        };
        if !path.is_file() {
            return Err(Error::ModelLoad {
                path,
                reason: "no such file".into(),
            });
        }
        let typed = tract_onnx::onnx()
            .model_for_path(&path)
            .and_then(|m| m.into_typed())
            .map_err(load_err)?;
        check_signature(&typed)?;
        let plan = typed
            .into_optimized()
            .and_then(|m| m.into_runnable())
            .map_err(load_err)?;
        Ok(Self { path, plan })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl PatchBinarizer for ModelBinarizer {
    fn name(&self) -> &str {
        "model"
    }

    fn input_side(&self) -> Option<usize> {
        Some(MODEL_SIDE)
    }

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap> {
        let (w, h) = patch.image.dims();
        if (w, h) != (MODEL_SIDE, MODEL_SIDE) {
            return Err(Error::DimMismatch {
                expected: (MODEL_SIDE, MODEL_SIDE),
                actual: (w, h),
            });
        }
        let input = tract_ndarray::Array4::from_shape_vec((1, 1, h, w), patch.image.normalized())
            .map_err(|e| Error::Inference(e.to_string()))?;
        let outputs = self
            .plan
            .run(tvec!(Tensor::from(input).into()))
            .map_err(|e| Error::Inference(e.to_string()))?;
        let view = outputs[0]
            .to_plain_array_view::<f32>()
            .map_err(|e| Error::Inference(e.to_string()))?;
        if view.shape() != expected_shape() {
            return Err(Error::Inference(format!("model returned shape {:?}", view.shape())));
        }
        let data: Vec<f32> = view.iter().copied().collect();
        if let Some(bad) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Inference(format!("model emitted {bad}, outside [0, 1]")));
        }
        ProbabilityMap::new(w, h, data)
    }
}
