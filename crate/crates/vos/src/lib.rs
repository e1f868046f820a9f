//! Computational toolkit for *very odd* binary sequences.
//!
//! A 0/1 sequence a_1..a_n is very odd when every aperiodic autocorrelation
//! A_k = sum a_i * a_{i+k}, 0 <= k <= n-1, is odd.  Whether such sequences
//! exist for a given length, and how many there are, is controlled by the
//! factorization of X^(2n-1) + 1 over GF(2), hence by the multiplicative
//! order of 2 modulo 2n-1.  The crate follows that chain end to end:
//!
//! * [`arith`] - integer factorization, multiplicative orders, residual
//!   indices, irreducible-factor counts of X^n - 1 over F_q, and the level
//!   (Stufe) of cyclotomic fields;
//! * [`gf2poly`] - dense GF(2) polynomials and the complete factorization of
//!   X^m + 1 grouped by divisor;
//! * [`sequences`] - autocorrelation profiles, the very-odd test, exact
//!   counts, enumeration, brute-force cross-checks, and the tensor product;
//! * [`codes`] - the induced [2n, n] self-dual codes (the binary Golay code
//!   at n = 12) and cyclic difference-set conversions;
//! * [`primes`] - classification of primes by the order of 2 (odd-order
//!   classes, Wieferich exceptions) and constrained prime searches;
//! * [`tableaux`] - the tableau calculus that inverts the count map: which
//!   exponents h admit S(n) = 2^h, with realizing integers;
//! * [`census`] - sieved counts of very odd lengths against their predicted
//!   densities, and the analytic constants behind the predictions;
//! * [`cli`] - the `vos` command-line front end over all of the above.
//!
//! The `examples/` directory exercises one capability per file and is the
//! quickest tour; `cargo run --example tableau_chain` is a good start.

pub mod arith;
pub mod census;
pub mod cli;
pub mod codes;
pub mod error;
pub mod gf2poly;
pub mod primes;
pub mod sequences;
pub mod tableaux;

pub use error::{Error, Result};
