//! File formats, the `rosetta` command line and string-diagram export.

pub mod diagram;
pub mod model_file;
pub mod run;

pub use diagram::{export_diagram, render, DiagramGraph, Format};
pub use model_file::{load_model, parse_model_doc, LoadError, ModelDoc};
pub use run::{run_command, RunReport};
