//! The design grid carrier, its file format and the class verifiers.

pub mod fixtures;
pub mod grid;
pub mod io;
pub mod promote;
pub mod report;
pub mod verify;

pub use grid::{int_labels, Cell, DesignGrid, DesignKind, Hole};
pub use io::{from_json, to_json, to_value};
pub use promote::promote_coloring;
pub use report::{Condition, VerifyReport, Witnesses};
pub use verify::*;
