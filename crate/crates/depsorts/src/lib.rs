//! A proof-checking kernel for first-order logic with dependent sorts.
//!
//! The crate is layered. [`syntax`] holds raw terms, types and contexts;
//! [`signature`] holds declarations with hidden arguments; [`checker`]
//! derives judgements. On top of that sit the FOLDS translations
//! ([`folds`]), categories with families and their models ([`cwf`]), the
//! logic and its proof checker ([`dfol`]), hyperdoctrine semantics
//! ([`doctrine`]) and the text formats and commands ([`cli`]).

pub mod checker;
pub mod cli;
pub mod cwf;
pub mod dfol;
pub mod doctrine;
pub mod folds;
pub mod signature;
pub mod syntax;
