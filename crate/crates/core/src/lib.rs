//! Exact computations in the equivariant and ordinary K-rings of wonderful
//! compactifications of adjoint groups.
//!
//! The crate is `no_std` and only needs an allocator. Everything is exact:
//! coefficients are arbitrary-precision integers.

#![no_std]

extern crate alloc;

pub mod equivariant;
pub mod error;
pub mod fan;
pub mod laurent;
pub mod linalg;
pub mod ordinary;
pub mod matrix;
pub mod report;
pub mod roots;
pub mod sr;
pub mod steinberg;
pub mod subset;
pub mod suites;
pub mod weyl;

pub use equivariant::{
    filtration, fixed_point_expansion, membership_check, regular_assemble, regular_decompose, PiecewiseClass,
    RegularDecomposition, Wonderful, WonderfulDecomposition,
};
pub use error::{Error, Result};
pub use fan::{Adjacency, Cone, Fan, WeylFan};
pub use laurent::{Block, Exp, LaurentPoly};
pub use ordinary::{KGBElement, KXElement, OrdinaryRing};
pub use report::{Check, Report};
pub use roots::{CartanLabel, Family, RootSystem};
pub use sr::SRElement;
pub use steinberg::{Steinberg, SteinbergElement, SteinbergExpansion};
pub use subset::RootSubset;
pub use suites::{run_suite, Suite, SuiteOptions, UnknownSuite};
pub use weyl::{WeylElement, WeylGroup};
