//! Marked bases over quasi-stable ideals and their tangent spaces.

pub mod error;
pub mod families;
pub mod groebner;
pub mod input;
pub mod linalg;
pub mod marked;
pub mod monomial;
pub mod monomial_ideal;
pub mod poly;
pub mod reproduce;
pub mod ring;
pub mod sampling;
pub mod tangent;

pub use error::{Error, Result};
