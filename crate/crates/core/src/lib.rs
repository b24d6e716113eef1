//! Jantzen filtrations of Verma and parabolic Verma modules with possibly
//! singular or nonintegral highest weights.
//!
//! Layers are computed from Kazhdan–Lusztig polynomials of the integral Weyl
//! group of each block, restricted to minimal coset representatives in the
//! singular case. Two independent checks are provided: the Jantzen sum
//! formula, and a direct computation of the contravariant form on a
//! one-parameter deformation of the Verma module.

pub mod blocks;
pub mod error;
pub mod filtration;
pub mod kl;
pub mod parabolic;
pub mod poly;
pub mod roots;
pub mod shapovalov;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
