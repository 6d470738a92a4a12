//! Exact combinatorics on the wreath product `C_l ≀ S_n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`qpoly`]: sparse integer polynomials in `q` and `x`, q-integers and
//!   Gaussian binomials.
//! - [`wreath`]: colored permutations, their linear order and the
//!   statistics `des`, `maj`, `exc`, `col`, `fix`, `maf`, `fmaj`, `fmaf`.
//! - [`insertion`]: fixed-point insertion into slots, green/red slot
//!   colouring, slot values and the bijection `Psi`.
//! - [`shuffle`]: words with zeros, `ZDer`, the maps `Phi` and `F`
//!   and the factorisation of `Psi` through them.
//! - [`table`]: the colored q-Euler difference table, its closed forms and
//!   distribution polynomials obtained by enumeration.
//! - [`cli`]: the `qeuler` command-line front end and verification harness.

pub mod cli;
pub mod error;
pub mod insertion;
pub mod qpoly;
pub mod shuffle;
pub mod table;
pub mod wreath;

pub use error::{Error, Result};
pub use qpoly::QXPoly;
pub use wreath::{ColoredLetter, ColoredPermutation};
