//! Runs every Rust snippet of the user guide (`book/`) as a documentation
//! test.
//!
//! Each chapter file becomes the documentation of an empty module, so
//! `cargo test` compiles and executes the guide's examples and fails the
//! build whenever a chapter drifts out of sync with the library. The whole
//! module only exists under `cfg(doctest)` and adds nothing to the built
//! crate.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

#[doc = include_str!("../../../README.md")]
pub mod readme {}

chapter!(introduction, "introduction.md");
chapter!(data_model, "data-model.md");
chapter!(multiplication, "multiplication.md");
chapter!(collaboration, "collaboration.md");
chapter!(citations, "citations.md");
chapter!(cores, "cores.md");
chapter!(formats, "formats.md");
chapter!(cli, "cli.md");
