//! A workbench for finite Coxeter systems, their Iwahori-Hecke algebras,
//! Kazhdan-Lusztig bases, and the graded combinatorics of Soergel bimodules.
//!
//! The crate is organized bottom-up:
//!
//! - [`laurent`]: integer Laurent polynomials in the grading variable v;
//! - [`algnum`]: exact arithmetic in Q(2cos(pi/N)) for root-system geometry;
//! - [`coxeter`]: Coxeter matrices and enumerated finite Coxeter systems;
//! - [`geomrep`]: the reflection representation and its verification;
//! - [`hecke`]: the Hecke algebra, bar involution, and Kazhdan-Lusztig tables;
//! - [`categorify`]: decategorified Soergel bimodule classes and positivity;
//! - [`category_o`]: Grothendieck-group shadows of projectives and simples;
//! - [`bimodule`]: honest polynomial bimodules in type A with maps and splittings.

pub mod algnum;
pub mod bimodule;
pub mod categorify;
pub mod category_o;
pub mod cli;
pub mod hecke;
pub mod coxeter;
pub mod geomrep;
pub mod laurent;

pub use coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, EltId, DEFAULT_MAX_ELEMENTS};
pub use laurent::LaurentPoly;
