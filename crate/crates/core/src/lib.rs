//! Extended mapping class groups of punctured spheres: free-group words, the
//! standard presentations, an exact word-problem oracle through the action
//! on the fundamental group, coset enumeration, and a harness replaying the
//! periodic-generation identities.

pub mod action;
pub mod cli;
pub mod error;
pub mod harness;
pub mod homs;
pub mod presentation;
pub mod todd_coxeter;
pub mod words;

pub use error::{Error, Result};
