//! Gauss diagrams of ordered virtual links, the moves acting on them, their
//! linking invariants, and constructive arc shift unknotting.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod codec;
pub mod diagram;
pub mod families;
pub mod invariants;
pub mod moves;
pub mod planner;
pub mod search;

pub use codec::{parse, parse_script, serialize, serialize_script, ParseError};
pub use diagram::{CanonicalKey, ChordId, Endpoint, GaussDiagram, Role, Sign};
pub use invariants::{InvariantReport, ParityMatrix};
pub use moves::{apply, MoveInstance, MoveKind, MoveScript};
pub use planner::{equivalent, replay, unknot};
pub use search::{bracket, Bracket, SearchBudget};
