//! Conditional sentence splitting for process documentation.
//!
//! The crate recognizes conditional sentences in procedural text ("If the
//! customer is not satisfied, offer a refund."), splits them into a
//! condition clause and a resultant clause, and categorizes the resultant
//! as an action (something a process participant does) or a consequence
//! (something that happens). Around that core sit corpus I/O for span
//! annotations, span-level evaluation, and process-graph export.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod eval;
pub mod graph;
pub mod linguistics;
pub mod model;
pub mod splitter;
