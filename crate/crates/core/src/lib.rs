//! A typed lambda calculus with partial terms, quoted syntax and evaluation:
//! syntax, the encoding of wffs as constructions, the syntax algebra, a normalizer,
//! a proof kernel and the standard library of applications.

pub mod syntax;
pub mod encoding;
pub mod algebra;
pub mod normalizer;
pub mod kernel;
pub mod stdlib;
