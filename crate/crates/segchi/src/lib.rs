//! File formats, figures and the command-line front end for `segchi-core`.

pub mod budget;
pub mod cli;
pub mod family;
pub mod svg;

pub use budget::Deadline;
pub use family::{emit_family, parse_family, FamilyError};
pub use svg::{render_svg, RenderOptions};
