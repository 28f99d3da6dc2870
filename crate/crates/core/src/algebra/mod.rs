//! Groups, fields, point labels and difference lists.

pub mod diff;
pub mod field;
pub mod group;
pub mod label;

pub use diff::{difference_list, make_block, translate_block, Block, DiffMode};
pub use field::{gf_build, gf_build_capped, Field};
pub use group::AbelianGroup;
pub use label::{pl, PointLabel};
