//! Exact verification of lambda-differential operators on the Virasoro
//! algebra and of lambda-differential module structures on its modules.

pub mod aab;
pub mod cli;
pub mod config;
pub mod harness;
pub mod intseries;
pub mod omega;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod verma;
pub mod vir;

mod render;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/aab.md")]
    mod aab {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/parser.md")]
    mod parser {}
}
