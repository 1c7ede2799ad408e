//! Open and closed prefixes of Sturmian words.
//!
//! A word is closed when its longest border occurs in it only as a prefix
//! and as a suffix. This crate computes, for standard Sturmian words given
//! by their directive sequence, which prefixes are closed: directly, from
//! continuants of the directive, and through the central and semicentral
//! prefixes at which the classification flips. It also factorizes the
//! word into squares of reversed standard words and rebuilds a Sturmian
//! word from its sequence of open and closed prefixes.
//!
//! Every fast routine has a brute-force counterpart in [`oracle`], and
//! [`verify`] sweeps them against each other.

pub mod analysis;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod sturmian;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use sturmian::DirectiveSequence;
pub use words::{Letter, OcSequence, Word};
