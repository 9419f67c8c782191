//! Exact verification engine for the level-0 quantum affine action on
//! level-1 spinon modules of `U_q(sl_2^)`.

pub mod affine;
pub mod error;
pub mod hecke;
pub mod kernel;
pub mod level0;
pub mod linalg;
pub mod locality;
pub mod report;
pub mod ring;
pub mod run;
pub mod symbol;
pub mod tensor;
pub mod window;

pub use error::{Error, Result};
