//! Classification of irreducible *-representations of graded *-algebras by
//! inducing from the partial dynamical system on the spectrum of the
//! degree-zero subalgebra.

pub mod algebras;
pub mod cli;
pub mod induce;
pub mod ncpoly;
pub mod numeric;
pub mod pds;
pub mod scalar;
pub mod spectrum;
pub mod verify;
