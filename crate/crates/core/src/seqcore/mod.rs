//! Sequence types and the pointwise operators on them.
//!
//! Torus values are dyadic fixed point: a [`TorusSequence`] stores mantissas `m` with
//! value `m / 2^P`, so every difference and wrap is exact integer arithmetic.

mod reconstruct;
mod scalar;
mod sequences;
mod torus;

pub use reconstruct::{reconstruct, Reconstruction};
pub use scalar::{
    encode_scaled, mul_mod1, required_digits, scalar_sequence, BinaryDigits, DEFAULT_GUARD_BITS,
};
pub use sequences::{IntegerSequence, QuantizedSequence, SymbolicSequence};
pub use torus::{difference, iterated_difference, quantize, torus_distance, TorusSequence};
