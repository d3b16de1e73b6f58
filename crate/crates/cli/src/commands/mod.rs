pub mod bcfw;
pub mod movegraph;
pub mod structure;
pub mod topology;
