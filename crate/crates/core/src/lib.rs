//! Exact computation of minimal border rank invariants for tensors in
//! `C^m ⊗ C^m ⊗ C^m` with rational entries.

pub mod error;
pub mod exact;
pub mod tensor;
pub mod equations;
pub mod normalform;
pub mod algebra111;
pub mod certify;
pub mod corpus;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/equations.md")]
    mod equations {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/normal_form.md")]
    mod normal_form {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
