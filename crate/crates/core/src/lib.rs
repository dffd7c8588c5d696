//! Exact verification of binomial-coefficient congruences over prime and
//! prime-power sweeps. Left sides are evaluated with valuation-tracked
//! p-adic arithmetic mod `p^K`; right sides come from residue arithmetic
//! and the special sequences (Euler numbers and polynomials, harmonic
//! numbers, Fermat quotients, Jacobi symbols). A separate module checks the
//! exact rational identities with arbitrary-precision arithmetic.

pub mod identities;
pub mod modring;
pub mod padic;
pub mod primes;
pub mod runner;
pub mod sequences;
pub mod sums;
pub mod verify;

pub use modring::Residue;
pub use padic::{FactorialTable, Padic};
pub use runner::{Format, RunConfig};
pub use sums::{DualSum, Family, SumSpec, Weight};
pub use verify::CongruenceResult;
