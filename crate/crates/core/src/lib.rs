//! Symmetric convex bodies of the plane as points of an infinite-dimensional
//! hyperbolic space.
//!
//! Support functions of centrally symmetric bodies are even functions on the
//! circle. The mixed-area form makes that function space Lorentzian, and the
//! bodies of area π form a hyperboloid. `SL₂(ℝ)` acts on it by linear maps of
//! the bodies, the orbit of the disc is a copy of the hyperbolic plane, and
//! the segment directions form its limit set.
//!
//! ```
//! use hypkonvex::geom::Mat2;
//! use hypkonvex::lorentz::{hyper_dist, normalize};
//! use hypkonvex::supportfn::Ellipse;
//! use hypkonvex::EvenFn;
//!
//! let disc = normalize(&EvenFn::one(2048)?)?;
//! let e = Ellipse::new(Mat2::new(0.5_f64.exp(), 0.0, 0.0, (-0.5_f64).exp()))?;
//! let ellipse = normalize(&EvenFn::from_ellipse(&e, 2048)?)?;
//! assert!((hyper_dist(&disc, &ellipse)? - 0.605_023_085_347_696_8).abs() < 1e-12);
//! # Ok::<(), hypkonvex::Error>(())
//! ```

// `!(x > 0.0)` guards reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geom;
pub mod limits;
pub mod lorentz;
pub mod mobius;
pub mod par;
pub mod quad;
pub mod specfun;
pub mod supportfn;
pub mod verify;

pub use error::{Error, Result};
pub use limits::BoundaryDir;
pub use lorentz::HPoint;
pub use mobius::{HalfPlanePoint, Mobius};
pub use par::Execution;
pub use supportfn::{EvenFn, ShapeDoc};
