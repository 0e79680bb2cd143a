//! Exact f/h/γ-vectors, local h/γ-vectors, and F/H/Γ-triangles of
//! simplicial complexes and simplicial subdivisions, with Γ-triangles of
//! finite cluster complexes and a truncated power-series engine for the
//! generating-series identities behind them.

pub mod clustermodels;
pub mod coxgamma;
pub mod error;
pub mod exactpoly;
pub mod facecomplex;
pub mod serieslab;
pub mod subdivision;
pub mod triangles;
pub mod verify;

pub use coxgamma::{CoxeterDiagram, CoxeterType};
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use exactpoly::{binom, IntPoly1, IntPoly2, Poly1, Poly2, RatPoly2, Rational, YValue};
pub use facecomplex::{Complex, FVector};
pub use subdivision::{IndexSubset, SphereWithFacet, Subdivision};
pub use triangles::{GammaTriangle, GammaVector, TriangleSet};
