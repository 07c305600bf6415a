//! File formats, seeded generators, check suites and reports on top of
//! [`cosurf_core`].

pub mod fixtures;
pub mod formats;
pub mod random;
pub mod report;
pub mod suites;

pub use report::{Case, Report, Row, Table, REPORT_SCHEMA};
