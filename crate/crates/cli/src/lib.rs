//! Library side of the `critline` command: sweep configuration, cached
//! crossing and zero tables, CSV/JSON writers and the verify suite.

// `!(x >= a)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cache;
pub mod format;
pub mod records;
pub mod sweep;
pub mod verify;

pub use records::OutFormat;
pub use sweep::{Extent, SweepConfig};
pub use verify::{Check, Suite, Verifier};
