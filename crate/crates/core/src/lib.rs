//! Finite Calabi-Yau A∞ categories: Hochschild and cyclic homology on
//! truncated word spaces, the Lie bialgebra on cyclic cochains, and
//! noncommutative symplectic forms.

pub mod ainfty;
pub mod calabi_yau;
pub mod cyclic;
pub mod document;
pub mod error;
pub mod hochschild;
pub mod liebialg;
pub mod lincomb;
pub mod modelzoo;
pub mod ncsymp;
pub mod report;
pub mod word;

pub use ainf_exactlin::{Exec, Field, Rational, Scalar};
pub use error::{CoreError, Result};
