//! Recursive constructions: composing verified designs into larger ones.

mod fill;
mod frame;
mod td;
mod tripling;

pub use fill::{demote_special, fill_hole, frame_fill, FinalFill};
pub use frame::{fundamental, inflate, IngredientRegistry};
pub use td::{build_td, delete_block_points, drtd_from_td, truncate_td};
pub use tripling::tripling;

use crate::designs::VerifyReport;
use crate::error::{Error, Result};

pub(crate) fn require(rep: VerifyReport, what: &str) -> Result<()> {
    if rep.pass {
        Ok(())
    } else {
        Err(Error::NotVerified(format!("{what}: {}", rep.failed().join(", "))))
    }
}
