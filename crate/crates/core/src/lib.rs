//! Cycle-accurate simulator of a memristor sort-in-memory system.
//!
//! Numbers are stored bit-wise in a simulated 1T1R array and sorted without
//! comparators: each cycle reads one digit column of the still-valid rows and
//! excludes rows from the current min/max search. [`engine`] holds the
//! bit-traversal baseline and tree-node skipping, [`crossarray`] the
//! multi-bank, bit-slice and multi-level strategies, [`device`] the
//! write-verify and error model, [`apps`] two application drivers and
//! [`bench`] dataset generation and benchmark reports.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
pub mod bench;
pub mod crossarray;
pub mod datatypes;
pub mod device;
pub mod engine;
pub mod error;
pub mod rowset;

pub use datatypes::{Direction, EncodedDataset, FormatKind, NumberFormat, Value};
pub use error::{Error, Result};
pub use rowset::RowSet;
