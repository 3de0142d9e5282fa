//! Desk-scale workbench for finite centerless groups.
//!
//! Everything here operates on explicit Cayley tables: automorphism groups
//! and their towers, normalizer chains, quantifier-free type equivalence
//! over a parameter set, arithmetic encodings of words, first-order orbit
//! structures, and kernel-based reconstruction of automorphisms.
//!
//! Sizes are deliberately small — the point is exact verification, not
//! asymptotics. Operations that would grow past the desk-scale order cap
//! refuse with [`Error::CapExceeded`] instead of approximating.

pub mod aut;
pub mod catalog;
pub mod encode;
pub mod error;
pub mod group;
pub mod kernel;
pub mod oracle;
pub mod special;
pub mod structure;
pub mod tower;
pub mod word;

pub use error::Error;

/// Default bound on group orders for the expensive operations.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// Current order cap: `TOWERLAB_CAP` overrides the default of 200.
pub fn order_cap() -> usize {
    std::env::var("TOWERLAB_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}
