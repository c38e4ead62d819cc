//! Packing polynomials and quasi-polynomial packing functions on the integer
//! sectors `I(r/s) = {(x, y) in N0^2 : s*y <= r*x}`.
//!
//! A packing function is a bijection from the lattice points of a sector onto
//! the nonnegative integers. This crate constructs the known quadratic and
//! quasi-polynomial packings, evaluates and inverts them exactly, checks
//! candidates against brute-force enumeration, and uses the results as
//! storage-mapping functions for sector-shaped arrays.

pub mod cli;
pub mod error;
pub mod layout;
pub mod packing;
pub mod poly;
pub mod rational;
pub mod sector;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use packing::{sector_decompose, standard_families, FamilyKind, PackingFamily, Variant};
pub use poly::{deserialize, serialize, PolyForm, QuadPoly, QuasiPoly};
pub use rational::Rational;
pub use sector::{parse_slope, LatticePoint, Sector, Slope};
pub use transforms::{lambda_map, m_map, phi_map, psi_map, LinearMap2};
pub use verify::{enumerate, verify_packing, EnumerationOrder, Failure, SearchReport, Verdict};
