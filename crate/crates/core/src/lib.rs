//! Exact dimensions of Ext groups between Weyl and simple modules for SL2 in
//! positive characteristic, computed with Parker's recursions, together with
//! the string combinatorics that count them and the closed-form description
//! of second cohomology for `p > 3`.

pub mod engine;
pub mod error;
pub mod golden;
pub mod h2;
pub mod strings;
pub mod trace;
pub mod verify;
pub mod weights;

pub use engine::{
    cohomology_dim, ext_dim, table_r_twist, table_self_twist, wall_reduce_sl3, DimCount, ExtEngine,
    ExtQuery, Memo, MemoStore, SharedMemoStore, Sl3Weight, TableRow,
};
pub use error::{Error, Result};
pub use trace::{expand_trace, LeafStatus, LeafTrace};
pub use weights::{Characteristic, DigitCase, DigitExpansion, Weight};
