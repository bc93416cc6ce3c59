//! Homology of spaces of knots from companionship trees.

pub mod closed;
pub mod engine;
pub mod error;
pub mod functors;
pub mod graded;
pub mod integral;
pub mod knot;
pub mod oracle;
pub mod scan;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graded.md")]
    mod graded {}
    #[doc = include_str!("../../../book/src/functors.md")]
    mod functors {}
    #[doc = include_str!("../../../book/src/knots.md")]
    mod knots {}
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/integral.md")]
    mod integral {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/closed.md")]
    mod closed {}
    #[doc = include_str!("../../../book/src/scan.md")]
    mod scan {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
