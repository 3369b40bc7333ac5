//! Exact scalars, polynomials, rational functions and exp-class functions.

pub mod bigfloat;
pub mod exp_poly;
pub mod gaussian;
pub mod poly;
pub mod rational;
pub mod rational_fn;
pub mod ring;

pub use bigfloat::BigFloat;
pub use exp_poly::{Exp, ExpPoly, ExpPolyRatio};
pub use gaussian::{GaussianRational, Gq};
pub use num_rational::BigRational;
pub use poly::Poly;
pub use rational_fn::RationalFn;
pub use ring::{FnRing, Ring};
