//! Exact computational kernel for a small laboratory of Banach-space
//! quantities: subset selection for complex sums, norm models over finite
//! sequence spaces, Lipschitz-free norms over finite metric spaces, staged
//! sequence quantities, and direct-sum constructions, all backed by exact
//! rational optimization oracles.
//!
//! The crate is `no_std` + `alloc`: every operation is a deterministic pure
//! function over arbitrary-precision rationals. IO, file formats and the CLI
//! live in the companion `normlab-cli` crate.

#![cfg_attr(not(test), no_std)]
// Dense tableau and matrix code walks parallel arrays by index throughout.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod free;
pub mod num;
pub mod optim;
pub mod quantities;
pub mod spaces;
pub mod subset;
pub mod sums;
