//! Two-stage self-refining inference.
//!
//! Stage 1 slides windows of several sizes over the image, averages overlapping
//! predictions within a size and keeps the per-pixel maximum across sizes. Its
//! thresholded output serves as a pseudo ground truth for stage 2, which
//! estimates the character height from it, tiles the text-context region with
//! windows proportional to that height, and averages the overlapping
//! predictions as `A / (C + eps)`.
//!
//! Window predictions run on the current rayon pool. Accumulation always
//! happens in window order on one thread, so the output does not depend on the
//! pool size.

mod accumulate;
mod pipeline;
mod window;

pub use crate::imgcore::ProbabilityMap;
pub use accumulate::{merge_patch_pred, Accumulator, DEFAULT_EPSILON};
pub use pipeline::{
    binarize, binarize_traced, coarse_predict, refine, refinement_tiles, CoarseResult, InferenceConfig,
    InferenceTrace, RefineResult,
};
pub use window::{predict_window, predict_windows, sliding_window, window_rects};
