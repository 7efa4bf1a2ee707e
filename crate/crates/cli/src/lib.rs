//! Library side of the command-line crate: the expression parsers, exposed
//! so integration tests can check round trips against the binary output.

pub mod parse;
