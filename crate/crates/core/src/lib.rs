pub mod channels;
pub mod disentangle;
pub mod error;
pub mod json;
pub mod qstate;
pub mod rng;
pub mod suites;
pub mod teleport;
pub mod tol;

pub use error::{Error, Result};

// The guide's chapters, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/pauli-maps.md")]
    mod pauli_maps {}
    #[doc = include_str!("../../../book/src/teleportation.md")]
    mod teleportation {}
    #[doc = include_str!("../../../book/src/universal.md")]
    mod universal {}
    #[doc = include_str!("../../../book/src/equatorial.md")]
    mod equatorial {}
    #[doc = include_str!("../../../book/src/exact-protocol.md")]
    mod exact_protocol {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
