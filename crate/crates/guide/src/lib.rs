//! The chapters of `book/` as modules, so that `cargo test --doc` runs every
//! snippet against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/rings.md")]
pub mod rings {}
#[doc = include_str!("../../../book/src/dg_categories.md")]
pub mod dg_categories {}
#[doc = include_str!("../../../book/src/twisting.md")]
pub mod twisting {}
#[doc = include_str!("../../../book/src/nerve.md")]
pub mod nerve {}
#[doc = include_str!("../../../book/src/horns.md")]
pub mod horns {}
#[doc = include_str!("../../../book/src/lifting.md")]
pub mod lifting {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
