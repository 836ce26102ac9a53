//! Renormalized Euler characteristics of rational surgeries `S^3_{p/q}(K)`
//! computed from the Alexander polynomial of `K`, together with Turaev
//! torsion sums, Casson-Walker invariants, lens space correction terms and
//! the L-space surgery obstruction built on them.
//!
//! All values are exact rationals.

pub mod alexander;
pub mod error;
pub mod exactmath;
pub mod exec;
pub mod lens;
pub mod obstruction;
pub mod selftest;
pub mod surgery;

pub use alexander::AlexanderPoly;
pub use error::{Error, Result};
pub use exactmath::Rational;
pub use exec::Execution;
pub use lens::{LensParams, LensTable};
pub use obstruction::{
    lspace_obstruction, small_slope_check, verify_theorem12, ObstructionOptions, ObstructionReport,
    Verdict,
};
pub use surgery::{eul_table, eul_table_with, EulRow, EulTable, SurgerySlope};
