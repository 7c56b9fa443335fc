//! Command-line benchmark harness and file formats for the snbo-core
//! optimizer: JSON configs, suite execution with shared initial plans,
//! percentile bands, CSV/JSON artifacts, and a subprocess objective
//! adapter.

pub mod config;
pub mod external;
pub mod report;
pub mod suite;
