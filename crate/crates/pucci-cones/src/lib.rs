//! Homogeneous solutions of the Pucci extremal equations in planar cones.
//!
//! For ellipticity constants `0 < lambda <= Lambda` the Pucci extremal
//! operators act on the eigenvalues of a symmetric matrix: `M+` weights
//! positive eigenvalues by `Lambda` and negative ones by `lambda`, `M-`
//! swaps the weights. In a planar cone of half-opening `theta0` the
//! Dirichlet problem `M-(D^2 u) = 0`, `u = 0` on the boundary rays, has
//! exactly four homogeneous solutions of constant sign,
//!
//! ```text
//! u = rho^a  * phi(theta)      with  a  in { alpha_plus, alpha_minus }
//! v = -rho^b * psi(theta)      with  b  in { beta_plus,  beta_minus  }
//! ```
//!
//! whose exponents are the level sets `g_omega(a) = theta0` and
//! `h_omega(b) = theta0` of two piecewise transcendental functions of the
//! ellipticity ratio `omega = Lambda / lambda`. This crate evaluates those
//! functions and their x-parametrized primitives exactly, solves for the
//! four exponents, evaluates the angular profiles with two derivatives,
//! assembles full fields with Hessian eigenvalues and Pucci residuals, and
//! provides the higher-level consequences: supersolution monotonicity
//! quantities, critical-exponent (Liouville type) classification with an
//! explicit supersolution witness, and exponent bound checks.
//!
//! Everything is pure `f64` computation over immutable inputs; all types
//! are `Send + Sync` and evaluation is thread safe.

pub mod analysis;
pub mod error;
pub mod exponents;
pub mod field;
pub mod profiles;
pub mod special_functions;

pub use error::Error;
pub use exponents::{solve_exponents, ConeProblem, ExponentSet, DEFAULT_TOL};
pub use field::{
    homogeneous_hessian_eigs, pucci_apply, rank_two_update_eigs, sample_solution, FieldSample,
    PucciOperator, PucciSign, RankTwoUpdateSpec, SolutionField, SymMatrix2,
};
pub use profiles::{make_profile, AngularProfile, SolutionKind};
pub use special_functions::{eval_g, eval_h, AngularMap, Evaluation, Omega};
