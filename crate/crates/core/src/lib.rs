//! Exact construction and certification of triangle-free families of line
//! segments whose intersection graphs have large chromatic number.
//!
//! - [`rational`] and [`geometry`]: exact scalars and planar predicates.
//! - [`construction`]: the recursive family with its probes, and the
//!   augmented critical family.
//! - [`graph`]: intersection graphs, triangle checks, exact colouring.
//! - [`verify`]: independent checks of every structural property.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod construction;
pub mod geometry;
pub mod graph;
pub mod rational;
pub mod verify;

pub use construction::{augment_tilde, build, sizes, Construction, ConstructionError, SizeTable};
pub use geometry::{Point, Probe, ProbeKind, Rect, Role, Segment};
pub use graph::{intersection_graph, Budget, Chromatic, Colorability, IntersectionGraph, NodeLimit, Unlimited};
pub use rational::Rational;
pub use verify::VerificationReport;
