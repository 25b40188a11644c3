//! Scalar numerical kernels: quadrature, bracketing root finder, 1-D minimiser, Γ.

pub mod gamma;
pub mod minimize;
pub mod quad;
pub mod roots;

pub use gamma::gamma;
pub use minimize::golden_section;
pub use quad::{integrate, Quadrature};
pub use roots::brent;
