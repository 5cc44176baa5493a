//! Command-line front end for the zeta engine: JSON input formats, the
//! analysis pipeline, and report rendering.

pub mod analysis;
pub mod input;
pub mod report;
