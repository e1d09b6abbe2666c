//! The chapters of the guide in `book/src`, one module each, so that
//! `cargo test --doc` runs every listing.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/kernel.md")]
pub mod kernel {}
#[doc = include_str!("../../book/src/sequences.md")]
pub mod sequences {}
#[doc = include_str!("../../book/src/riordan.md")]
pub mod riordan {}
#[doc = include_str!("../../book/src/recursive.md")]
pub mod recursive {}
#[doc = include_str!("../../book/src/realroots.md")]
pub mod realroots {}
#[doc = include_str!("../../book/src/positivity.md")]
pub mod positivity {}
#[doc = include_str!("../../book/src/structure.md")]
pub mod structure {}
#[doc = include_str!("../../book/src/limits.md")]
pub mod limits {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../README.md")]
pub mod readme {}
