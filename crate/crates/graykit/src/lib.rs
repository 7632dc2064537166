//! Tools for symmetric chain decompositions (SCDs) of the hypercube, cycle
//! factors and Hamilton cycles in its middle levels, and Gray codes on the
//! chains themselves.
//!
//! The hypercube Q_n has vertex set {0,1}^n with edges between words at
//! Hamming distance 1. The Greene-Kleitman parenthesis matching splits Q_n
//! into symmetric chains; this crate builds that decomposition explicitly,
//! derives a 2-factor on the middle 2l levels of odd-dimensional cubes from
//! three families of lexical matchings, joins the factor's cycles into a
//! single Hamilton cycle via edge-disjoint 4-cycles and 6-cycles, and
//! generates the chains of the decomposition in a cyclic Gray order in which
//! consecutive chains differ in at most three positions, with a loopless
//! (worst-case O(1) writes per step) successor algorithm.

pub mod assembly;
pub mod chaingray;
pub mod cli;
pub mod factor;
pub mod flipping;
pub mod lexical;
pub mod scd;
pub mod words;
