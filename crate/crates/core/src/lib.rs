//! Link-budget and channel simulation for terahertz and optical wireless
//! links, indoor and outdoor.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod indoor_owc;
pub mod indoor_thz;
pub mod mathkit;
pub mod network;
pub mod outdoor;
pub mod scenario;
pub mod units;

pub use error::{Error, Result};
