//! Exact analysis of periodic linear systems and feedback shift registers
//! over finite fields.

pub mod analysis;
pub mod canonical;
pub mod error;
pub mod factor;
pub mod field;
pub mod floquet;
pub mod fsr;
pub mod io;
pub mod lfss;
pub mod matrix;
pub mod ntheory;
pub mod pfss;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use matrix::{FFMatrix, Vector};
pub use pfss::Pfss;
pub use poly::Poly;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/floquet.md")]
    mod floquet {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/registers.md")]
    mod registers {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
