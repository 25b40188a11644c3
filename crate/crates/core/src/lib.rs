//! Axisymmetric m-quasi-Einstein structures on the two-sphere.
//!
//! A solution is a metric g and one-form X♭ on a surface with
//! `Ric = (1/m) X♭⊗X♭ − ½ L_X g + λ g`. In the axisymmetric, non-gradient
//! case everything is carried by one profile function B(x):
//! `g = B⁻¹dx² + B dφ²`. This crate evaluates B in closed form, decides
//! which parameters close up smoothly on S², and checks the resulting
//! geometry against every equation it must satisfy.

pub mod admissibility;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod numeric;
pub mod par;
pub mod profile;
pub mod prolongation;
pub mod specfun;
pub mod tensor;
pub mod verify;

pub use admissibility::{
    admissible_c_range, classify, compute_c0, find_roots, AdmissibleRange, C0Result, Reason, RootPair, Verdict,
};
pub use error::{Error, Result};
pub use geometry::{build_solution, MetricPoint, Pole, SphereSolution};
pub use par::Execution;
pub use profile::{eval_b, make_profile, Alpha, BetaBranch, ModelParams, Profile, ProfileEval, Residual};
pub use specfun::{f_asymptotic_slope, f_positive_root, hyp_f, hyp_f_prime, HypParam};
pub use verify::{CheckResult, ResidualReport};
