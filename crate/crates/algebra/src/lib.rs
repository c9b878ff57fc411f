//! Exact algebra for verifying operator identities on R^5: Gaussian-rational
//! coefficients, rational functions in x0..x4 and r = |x| with the relation
//! r^2 = |x|^2, PBW words in su(2), and differential operators built from them.

pub mod error;
pub mod gauss;
pub mod isospin;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use error::AlgebraError;
pub use gauss::GaussRat;
pub use isospin::{IsoSum, IsoWord};
pub use operator::{DerivIndex, IsoField, OperatorExpr};
pub use poly::{Mono, Poly};
pub use rational::Rational;
pub use scalar::{Chart, ExactPoint5, Point5, ScalarExpr, ScalarSum};
