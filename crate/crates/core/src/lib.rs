//! Construction and complete subloop-lattice analysis of the smallest
//! nonassociative simple Moufang loop.
//!
//! The loop is built exactly from the 120 unit-determinant Zorn vector
//! matrices over F2. On top of it the crate enumerates every subloop,
//! classifies the isomorphism types, computes the automorphism group and
//! its orbits on subloops, and evaluates the three Hasse-style counting
//! constants together with the identities relating them. A `verify`
//! frontend re-checks every structural count against pinned expected
//! values.

pub mod autgroup;
pub mod chein;
pub mod hasse;
pub mod lattice;
pub mod loopcore;
pub mod paige;
pub mod pipeline;
pub mod verify;
pub mod zorn;
