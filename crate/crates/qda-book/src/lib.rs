//! Doc-test shim for the guide under `book/`.
//!
//! mdbook renders the chapters but cannot run their code. Including each
//! chapter as the doc comment of an empty module makes `cargo test --doc`
//! compile and execute every Rust fence, so a snippet that drifts from the
//! real API fails the build. One module per chapter keeps test failures
//! attributable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/input-files.md")]
pub mod input_files {}

#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}

#[doc = include_str!("../../../book/src/bigraded.md")]
pub mod bigraded {}

#[doc = include_str!("../../../book/src/koszul.md")]
pub mod koszul {}

#[doc = include_str!("../../../book/src/comparison.md")]
pub mod comparison {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
