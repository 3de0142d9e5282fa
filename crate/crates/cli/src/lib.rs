//! Library half of the `towerlab` binary: the built-in group catalog, the
//! verification suites, and the report types they produce. Kept as a library
//! so integration tests can drive the suites directly.

pub mod entries;
pub mod report;
pub mod suites;
