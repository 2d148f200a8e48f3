//! Test support shared by the kgatlas test suites.
//!
//! Everything here is deliberately independent of the code under test: the
//! oracles scan triples linearly and re-derive the display rules from first
//! principles instead of calling into the facet engine.

pub mod corpus;
pub mod dot_tokens;
pub mod fixtures;
pub mod multipart;
pub mod negative;
pub mod oracle;
