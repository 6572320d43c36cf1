//! Holds the acceptance suite (`tests/acceptance.rs`). It lives in its own
//! package so that the suite runs after every other test target in the
//! workspace.
