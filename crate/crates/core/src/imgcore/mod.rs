//! Raster primitives shared by every other module.

mod components;
mod io;
mod morph;
mod raster;
mod resize;

pub use components::{connected_components, label_components, Component};
pub use io::{image_dims, load_gray, load_mask, save_gray, save_mask, save_overlay};
pub use morph::{dilate, nearest_odd, StructuringElement};
pub use raster::{BinaryMask, GrayImage, ProbabilityMap, Rect};
pub use resize::{resize_gray, resize_mask, resize_probability};
