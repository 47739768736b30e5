//! Numerical laboratory for Dirichlet-type spaces `D(μ₁, μ₂)` on the unit bidisc.
//!
//! The spaces are built from positive measures on the unit circle. Everything is
//! realized on finite monomial truncations: Gram matrices assembled from circle
//! moments, the coordinate multiplication pair and its toral 2-isometry identities,
//! the Koszul complex of `M_z − λ`, and Gleason/division procedures. A separate
//! quadrature oracle recomputes inner products from the defining integrals so the
//! moment route can be cross-checked.
//!
//! Module map:
//!
//! * [`measure`]: circle measures, moments, Poisson integrals, moment sequences.
//! * [`bipoly`]: dense bivariate polynomials.
//! * [`gram`]: monomial Gram matrices, reproducing kernels, Richter formula.
//! * [`quadrature`]: the independent integration oracle.
//! * [`toral`]: truncated multiplication pair and its operator identities.
//! * [`koszul`]: Koszul complex, cohomology, Fredholm index, Gleason solver.
//! * [`report`] and [`cli`]: JSON reports and the command runner.

pub mod bipoly;
pub mod cli;
pub mod error;
pub mod gram;
pub mod koszul;
mod linalg;
pub mod measure;
pub mod quadrature;
pub mod report;
pub mod toral;

pub use num_complex::Complex64;

pub use bipoly::{Axis, BiPoly};
pub use error::{Error, Result};
pub use gram::{GramMatrix, MonomialBasis};
pub use measure::{CircleMeasure, MomentSequence};
pub use quadrature::QuadSpec;
pub use toral::TruncatedPair;
pub use koszul::KoszulStage;
