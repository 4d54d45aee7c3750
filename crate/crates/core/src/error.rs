use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::sequence::PathLengthSequence;

/// A nonnegative dyadic rational `numerator / 2^exponent`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigUint, exponent: u32) -> Self {
        let mut numerator = numerator;
        let mut exponent = exponent;
        if numerator.is_zero() {
            exponent = 0;
        }
        while exponent > 0 && (&numerator & BigUint::one()).is_zero() {
            numerator >>= 1u32;
            exponent -= 1;
        }
        Dyadic { numerator, exponent }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// Power of two in the denominator.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigUint::one() << self.exponent)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("cannot parse {token:?} as a depth")]
    Parse { token: String },
    #[error("negative depth {value} at position {position}")]
    NegativeDepth { position: usize, value: i64 },
    #[error("depth {value} at position {position} exceeds the supported maximum {max}")]
    DepthOutOfRange { position: usize, value: i64, max: u32 },
    #[error("components are not nondecreasing at position {position}")]
    NotSorted { position: usize },
    #[error("Kraft sum is {sum}, {} 1 by {gap}", if *.excess { "exceeds" } else { "falls short of" })]
    KraftSumNotOne { sum: Dyadic, gap: Dyadic, excess: bool },
    #[error("scale 2^{scale} is below the deepest component {last}")]
    ScaleTooSmall { scale: u32, last: u32 },
    #[error("length mismatch: {left} vs {right} components")]
    LengthMismatch { left: usize, right: usize },
    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("contraction needs at least two components")]
    SingletonSequence,
    #[error("n = {n} is above the configured ceiling {ceiling}")]
    ResourceLimit { n: usize, ceiling: usize },
    #[error("{index} is not an excess index of {sequence}")]
    NotAnExcessIndex { sequence: PathLengthSequence, index: usize },
    #[error("{0} is not an element of the universe")]
    ElementNotInUniverse(PathLengthSequence),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("codewords are not prefix-free: {0}")]
    NotPrefixFree(String),
    #[error("{s} and {t} have no unique {kind} among {} candidate bounds", bounds.len())]
    NotALattice {
        kind: &'static str,
        s: PathLengthSequence,
        t: PathLengthSequence,
        bounds: Vec<PathLengthSequence>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
