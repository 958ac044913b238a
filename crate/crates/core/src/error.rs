use thiserror::Error;

use crate::words::Alphabet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },

    #[error("letter index {index} is not in {alphabet}")]
    InvalidLetter { index: u32, alphabet: Alphabet },

    #[error("parse error at token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("no image given for generator {0}")]
    MissingImage(u32),

    #[error("puncture count {0} is too small (need n >= 3)")]
    InvalidN(u32),

    #[error("named element {name} is not defined for n = {n}: {reason}")]
    InvalidName { name: String, n: u32, reason: String },

    #[error("automorphism image length {len} exceeds the guard of {bound} letters")]
    ImageTooLong { len: usize, bound: usize },

    #[error("no action convention validates the relators at n = {0}")]
    NoValidConvention(u32),

    #[error("operation requires n = {expected}, got n = {got}")]
    WrongN { expected: u32, got: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
