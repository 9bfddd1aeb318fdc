// Negated comparisons are used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod basis;
pub mod c0_patch;
pub mod curve_network;
pub mod dd;
pub mod error;
pub mod jet;
pub mod mesh;
pub mod nielson;
pub mod pipeline;
pub mod quadrature;
pub mod tables;

pub use error::{Error, Result};
