//! Desk-scale class-group isogeny machinery and an exact classical simulator
//! of a polynomial-space abelian hidden-shift sieve.

pub mod arith;
pub mod classgroup;
