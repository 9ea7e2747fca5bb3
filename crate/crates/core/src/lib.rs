//! Uniquely restricted and acyclic matchings in graphs of bounded degree.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs, graph6 and edge-list formats, structural
//!   queries and generators (including the `G_k` gadget family);
//! * [`matching`]: matchings, the uniquely restricted and acyclic
//!   predicates with witnesses, and acyclic partitions;
//! * [`solvers`]: exact `ν`, `ν_ur` and `ν_ac` with witness matchings;
//! * [`constructive`]: reduction-based constructions of uniquely restricted
//!   matchings that meet the degree/order/size lower bounds, with replayable
//!   traces;
//! * [`audit`]: corpus-level bound checking and conjecture scans.

pub mod audit;
mod augment;
pub mod constructive;
pub mod graph;
pub mod matching;
pub mod solvers;

pub use num_rational::Rational64;
