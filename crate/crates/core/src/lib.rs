//! Exact-arithmetic toolkit for Pascal and Rascal number triangles.
//!
//! Every triangle is generic over an integer [`Scalar`]; the aliases below
//! fix it to [`BigInt`] so entries never overflow. Rules carry rational
//! coefficients ([`Ratio`]) and are solved without floating point.
//!
//! ```
//! use rascal::{triangle, BigTriangle};
//!
//! let t: BigTriangle = triangle::build_rascal_diamond(5).unwrap();
//! let last: Vec<String> = t.row(4).unwrap().iter().map(|v| v.to_string()).collect();
//! assert_eq!(last, ["1", "4", "5", "4", "1"]);
//! ```

pub mod cell;
pub mod cli;
pub mod error;
pub mod io;
pub mod linsolve;
pub mod patterns;
pub mod rule;
pub mod scalar;
pub mod sequences;
pub mod triangle;

pub use num_bigint::BigInt;
pub use num_rational::Ratio;

pub use cell::{Cell, DiamondNeighborhood};
pub use error::{Error, Result};
pub use patterns::{PatternReport, RingKind, RingSpec};
pub use rule::{AffineDiamondRule, RelativeOffset, RuleReport};
pub use scalar::Scalar;
pub use triangle::{Generator, Triangle};

pub type BigTriangle = Triangle<BigInt>;
pub type BigRule = AffineDiamondRule<BigInt>;
pub type BigRational = Ratio<BigInt>;

pub type Triangle64 = Triangle<i64>;
pub type Rule64 = AffineDiamondRule<i64>;
