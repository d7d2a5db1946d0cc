//! Exact arithmetic for the polynomial Pell-Abel equation `A^2 - D B^2 = 1`,
//! the Chebyshev structure of its powers, and the permutation side: monodromy
//! tuples of the covers `A^2`, their block systems, and the census of
//! conjugacy classes of special 4-tuples for `deg D = 4`.

pub mod census;
pub mod cli;
pub mod hurwitz;
pub mod pell;
pub mod perm;
pub mod poly;
