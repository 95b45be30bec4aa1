//! Exact arithmetic for the modular involution of the real line.
//!
//! The involution in question is induced by the outer automorphism of the
//! extended modular group PGL(2,Z). On continued fractions it acts by the
//! quotient rewrite `[n0, n1, ...] -> [1_{n0-1}, 2, 1_{n1-2}, 2, ...]`, and on
//! the boundary of the Farey tree by XOR of turn words with the golden word
//! `(01)^ω`. This crate computes it exactly on rationals, real quadratic
//! surds, eventually periodic continued fractions and lazy quotient streams,
//! always cross-checking the two routes against each other, together with its
//! jump function at rationals, the PGL(2,Z) word/matrix automorphism, finite
//! tree-automorphism approximants, and the conjugated interval maps.
//!
//! The crate is `no_std` (alloc required); everything IO-ish lives in the
//! companion CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cf;
pub mod dynamics;
pub mod fib;
pub mod jimm;
pub mod pgl2;
pub mod rational;
pub mod render;
pub mod surd;
pub mod tree;
pub mod word;

pub use cf::{ContinuedFraction, PeriodicCf};
pub use rational::BigRational;
pub use surd::QuadSurd;

use alloc::string::String;

/// Error type shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operation requires a finite value but got the point at infinity.
    InfiniteInput,
    /// Operation requires an irrational input (e.g. the continued-fraction
    /// rewrite at a rational must go through `jump` or the rational involution).
    RationalInput(String),
    /// `d` in `(p + q*sqrt(d))/r` is a perfect square, i.e. the value is rational.
    PerfectSquare,
    /// Constructor invariant violated (zero denominator, q = 0, ...).
    Domain(String),
    /// Matrix is not in PGL(2,Z) (determinant is not +-1).
    NotUnimodular,
    /// Fixed-point extraction hit an elliptic/parabolic/identity element.
    NotHyperbolic(String),
    /// A lazy quotient stream ended before the requested output could be
    /// certified; carries the number of digits that were certified.
    InsufficientPrecision(usize),
    /// Parse error for one of the text grammars.
    Parse(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::InfiniteInput => write!(f, "input is the point at infinity"),
            Error::RationalInput(m) => write!(f, "rational input: {m}"),
            Error::PerfectSquare => write!(f, "d is a perfect square (value is rational)"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::NotUnimodular => write!(f, "matrix determinant is not +-1"),
            Error::NotHyperbolic(m) => write!(f, "not hyperbolic: {m}"),
            Error::InsufficientPrecision(n) => {
                write!(f, "stream exhausted after {n} certified digits")
            }
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
