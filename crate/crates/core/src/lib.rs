#![no_std]
//! Exact algebra for p-DG zigzag modules and their braid actions.

extern crate alloc;

pub mod arith;
pub mod linalg;
pub mod pcomplex;
pub mod zigzag;
pub mod pdgmod;
pub mod resolve;
pub mod functors;
pub mod ktheory;
pub mod quantum;
