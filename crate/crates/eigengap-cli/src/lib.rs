//! Command-line front end binding the spectra, inequality, and conjecture
//! layers into reproducible runs: domain-string parsing, report rendering
//! in JSON, CSV, and table form, and the `paper` verification suite with
//! its mutation hooks.

pub mod domain;
pub mod output;
pub mod suite;
