//! Exact algebra kernel: coefficient fields, sparse polynomials, Gröbner
//! bases and the residue/obstruction bookkeeping for cyclic algebras over
//! projective 3-space.
#![no_std]
extern crate alloc;

pub mod coeff;
pub mod expr;
pub mod localmodel;
pub mod obstruction;
pub mod ideal;
pub mod poly;
pub mod residue;
