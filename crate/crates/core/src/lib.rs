//! Computational toolkit for level-k representation theory of loop groups:
//! alcoves and affine Weyl actions, Verlinde fusion, Kac characters, and
//! explicit matrix models of cubic Dirac operators and their families.

#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod cartan;
pub mod clifford;
pub mod dirac;
pub mod error;
pub mod frame;
pub mod irrep;
pub mod kac;
pub mod kostant;
pub mod module;
pub mod qseries;
pub mod rational;
pub mod snf;
pub mod spectral;
pub mod twisted;
pub mod verlinde;

pub use cartan::{build_root_datum, AlgebraSpec, RootDatum, Series, Weight, WeylElement};
pub use frame::OrthonormalFrame;
pub use error::{Error, Result};
pub use rational::{Q, QVec};
