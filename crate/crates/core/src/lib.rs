//! Deterministic integer factorisation in `N^{1/5+o(1)}` bit operations.
//!
//! The crate is layered bottom-up:
//!
//! - [`znum`]: exact integer helpers and arithmetic in `Z/NZ`.
//! - [`polyring`]: dense polynomials over `Z/NZ` (Kronecker-substitution
//!   products, subproduct trees, multipoint and geometric evaluation).
//! - [`smallfactor`]: the Pollard–Strassen bounded divisor search.
//! - [`orderfind`]: finding a unit of provably large multiplicative order.
//! - [`lehman`]: recovering `p, q` from a guessed `aq + bp` and the
//!   candidate windows swept by the search.
//! - [`search`]: collision finding and the single baby-step giant-step sweep.
//! - [`factorizer`]: parameter selection, the (semi)prime driver and full
//!   factorisation of arbitrary `N`.
//!
//! ```
//! use detfactor::factorizer::factorise;
//! use num_bigint::BigUint;
//!
//! let f = factorise(&BigUint::from(8051u32)).unwrap();
//! assert_eq!(f.to_string(), "83 * 97");
//! ```

pub mod error;
pub mod factorizer;
pub mod lehman;
pub mod orderfind;
pub mod polyring;
pub mod primality;
pub mod search;
pub mod smallfactor;
pub mod stats;
pub mod znum;

pub use error::{Error, Result};
pub use factorizer::{factorise, Factorisation, SearchParams};
pub use orderfind::OrderOutcome;
pub use polyring::ModPoly;
pub use search::FactorOutcome;
pub use znum::{Modulus, ZnElement};

pub use num_bigint::{BigInt, BigUint};
