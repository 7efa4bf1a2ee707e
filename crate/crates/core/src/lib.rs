//! Exact computer algebra for the Lie algebras W_{1+inf} and W_inf^(n).
//!
//! The crate provides, over the Gaussian rationals:
//!
//! * an exact kernel of polynomials, truncated exponential generating
//!   functions and quasipolynomials ([`poly`], [`series`], [`quasipoly`]);
//! * the algebra of regular differential operators on the circle with its
//!   central two-cocycle, gradation, bases, anti-involution and residue
//!   pairing ([`dop`]);
//! * degree-bounded parabolic-subalgebra computations ([`parabolic`]);
//! * highest-weight analysis: label generating series, the quasifiniteness
//!   decision, characteristic polynomials, exponents, level-one Gram forms
//!   and the unitarity classifier ([`highest_weight`]);
//! * windowed embeddings into the infinite matrix algebra with central
//!   corrections and weight transport ([`glinf`], [`window`]).

pub mod dop;
pub mod error;
pub mod glinf;
pub mod highest_weight;
pub mod parabolic;
pub mod poly;
pub mod quasipoly;
pub mod scalar;
pub mod series;
pub mod window;

pub use dop::{DOp, LaurentVec, MomentFunctional};
pub use error::{Error, Result};
pub use glinf::{GlUnitaryVerdict, GlWeight, JetWindow};
pub use highest_weight::{
    Exponents, HighestWeight, LabelSeq, Level1Action, Level1Vector, QuasifiniteVerdict,
    RootReport, UnitaryVerdict,
};
pub use parabolic::{ClosureReport, PolySpan};
pub use poly::{falling_factorial, Poly};
pub use quasipoly::{solve_falling_diffop, QuasiPoly};
pub use scalar::Scalar;
pub use series::{detect_recurrence, Recurrence, TruncSeries};
pub use window::Window;
