//! Irregular Hodge numbers of confluent hypergeometric equations.
//!
//! [`theorem::irregular_hodge_spectrum`] evaluates the closed formula;
//! [`theorem::verify`] reproduces it from nearby-cycle spectra, and
//! [`weyl::katz_chain`] carries the operator through the Kummer pullback,
//! Fourier transform and inversion that justify that pipeline.

pub mod cli;
pub mod params;
mod rational;
pub mod spectra;
pub mod theorem;
pub mod weyl;

#[cfg(test)]
mod testing;

pub use params::{validate, HypergeomParams, ParamsError};
pub use rational::{q, ParseRationalError, Rational};
pub use spectra::{HodgeSpectrum, NearbyCycleSpectrum};
pub use theorem::{irregular_hodge_spectrum, verify, TheoremError, VerificationReport};
