pub mod cli;
pub mod dgcat;
pub mod fixtures;
pub mod glin;
pub mod horn;
pub mod json;
pub mod laws;
pub mod mc;
pub mod nerve;
pub mod rings;
pub mod sample;
