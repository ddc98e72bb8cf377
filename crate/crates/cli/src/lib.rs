//! Files, reports and the verification driver around `flagkneser-core`.

pub mod budget;
pub mod checks;
pub mod commands;
pub mod formats;
pub mod objects;
pub mod report;
