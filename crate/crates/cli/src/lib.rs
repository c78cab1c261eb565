//! Report plumbing shared by the `qosc` binary and its tests.

pub mod report;
