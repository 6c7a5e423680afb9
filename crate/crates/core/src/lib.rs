//! Capped-precision p-adic numbers and truncated q-series with the
//! derivations delta_q and delta_p, classical q-expansions, symbolic modular
//! forms, and the delta-characters Psi_q and Psi_p together with their
//! solution families. Needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod convection;
pub mod error;
pub mod exact;
pub mod instability;
pub mod modforms;
pub mod padic;
pub mod series;
pub mod solutions;
pub mod symforms;

pub use error::{Error, Result};
