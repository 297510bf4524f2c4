//! Functional graphs of rational maps induced by endomorphisms of ordinary
//! elliptic curves over finite fields.
//!
//! Given a curve E/F_q, an endomorphism α = (a(x)/b(x), y·α₂(x)) and an
//! extension degree n, the library
//!
//! * builds the functional graph of r on P¹(F_{q^n}) by brute force
//!   ([`dynamics`]),
//! * predicts the cycle census and the shape of every tree from the ideal
//!   factorizations of (π_qⁿ ∓ 1) and (α) in the endomorphism ring
//!   ([`predictor`], backed by [`quadorder`]),
//! * and reconciles the two, item by item.
//!
//! See the crate examples for runnable entry points to each capability; the
//! `ecdyn` binary wraps the same pipeline behind `analyze`, `graph`,
//! `validate` and `census` subcommands driven by a JSON config.

pub mod config;
pub mod curve;
pub mod dynamics;
pub mod error;
pub mod ff;
pub mod predictor;
pub mod quadorder;
pub mod report;


pub use error::{Error, Result};
