//! Angular profiles of the four homogeneous solutions.
//!
//! Every profile has the same closed shape in the map coordinate
//! `x = Map^{-1}(theta)`:
//!
//! ```text
//! phi(theta) = (1 - x^2) * (1 + r x^2)^((e-2)/2) / (1 + d x^2)^(e/2)
//! ```
//!
//! where `e` is the homogeneity exponent and the pair `(r, d)` is read off
//! the branch of the map that `e` falls on: `d` is the square of the first
//! arctangent scale and `r = +-s1^2` carries the sign of the second kernel
//! (minus on arctanh branches). This reproduces the per-case formulas for
//! all four solution kinds on both sides of `theta0 = pi/2`, including the
//! arctanh branches of `H`.
//!
//! Profiles are even in `theta`, positive on the open cone and vanish at
//! `theta = +-theta0`. The solutions built on top of the psi kinds carry a
//! minus sign (`v = -rho^b psi`); the stored profile itself is positive.
//!
//! The power factors are combined in log space, so very negative exponents
//! (small openings) neither overflow nor lose the cancellation between the
//! `r` and `d` factors, and `1 - x^2` is evaluated as `(1-x)(1+x)`.

use crate::error::Error;
use crate::exponents::{solve_exponents, ConeProblem, DEFAULT_TOL};
use crate::special_functions::{AngularMap, Omega};

/// Which of the four homogeneous solutions a profile belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    /// `u = rho^alpha_plus * phi` (positive exponent, positive solution).
    PhiPlus,
    /// `u = rho^alpha_minus * phi` (negative exponent, positive solution).
    PhiMinus,
    /// `v = -rho^beta_plus * psi` (positive exponent, negative solution).
    PsiPlus,
    /// `v = -rho^beta_minus * psi` (negative exponent, negative solution).
    PsiMinus,
}

impl SolutionKind {
    pub const ALL: [SolutionKind; 4] = [
        SolutionKind::PhiPlus,
        SolutionKind::PhiMinus,
        SolutionKind::PsiPlus,
        SolutionKind::PsiMinus,
    ];

    /// True for the psi kinds, whose solutions carry the minus sign.
    pub fn is_negative_solution(self) -> bool {
        matches!(self, SolutionKind::PsiPlus | SolutionKind::PsiMinus)
    }

    /// True for the kinds with positive homogeneity exponent.
    pub fn has_positive_exponent(self) -> bool {
        matches!(self, SolutionKind::PhiPlus | SolutionKind::PsiPlus)
    }

    pub fn label(self) -> &'static str {
        match self {
            SolutionKind::PhiPlus => "phi_plus",
            SolutionKind::PhiMinus => "phi_minus",
            SolutionKind::PsiPlus => "psi_plus",
            SolutionKind::PsiMinus => "psi_minus",
        }
    }
}

/// An exponent-tagged evaluable angular profile with two derivatives.
#[derive(Debug, Clone)]
pub struct AngularProfile {
    kind: SolutionKind,
    omega: Omega,
    exponent: f64,
    theta0: f64,
    theta_max: f64,
    map: AngularMap,
    ratio: f64,
    denom: f64,
    invert_tol: f64,
}

/// Builds the profile of `kind` for `problem`, solving the exponent first.
pub fn make_profile(problem: &ConeProblem, kind: SolutionKind) -> Result<AngularProfile, Error> {
    let set = solve_exponents(problem, DEFAULT_TOL)?;
    let exponent = match kind {
        SolutionKind::PhiPlus => set.alpha_plus,
        SolutionKind::PhiMinus => set.alpha_minus,
        SolutionKind::PsiPlus => set.beta_plus,
        SolutionKind::PsiMinus => set.beta_minus,
    };
    AngularProfile::from_exponent(problem.omega(), kind, exponent, problem.theta0())
}

impl AngularProfile {
    /// Builds a profile from an explicit exponent, clipped to the cone
    /// `|theta| <= theta0`. The exponent need not solve the level-set
    /// equation: any admissible value with `g/h(exponent) >= theta0`
    /// yields a profile positive up to the boundary (used by the
    /// supersolution construction).
    pub fn from_exponent(
        omega: Omega,
        kind: SolutionKind,
        exponent: f64,
        theta0: f64,
    ) -> Result<Self, Error> {
        let map = if kind.is_negative_solution() {
            AngularMap::h(omega, exponent)?
        } else {
            AngularMap::g(omega, exponent)?
        };
        let theta_max = map.total().finite().ok_or_else(|| {
            Error::domain(format!(
                "exponent {exponent} is too close to a divergence of its branch function"
            ))
        })?;
        if theta0 > theta_max * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::domain(format!(
                "theta0 = {theta0} exceeds the angular domain bound {theta_max} of exponent {exponent}"
            )));
        }
        Ok(AngularProfile {
            kind,
            omega,
            exponent,
            theta0,
            theta_max,
            map,
            ratio: map.profile_ratio(),
            denom: map.profile_denom(),
            invert_tol: 1e-14,
        })
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn omega(&self) -> Omega {
        self.omega
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// Natural angular domain bound `g/h(exponent)`; `>= theta0`.
    pub fn theta_max(&self) -> f64 {
        self.theta_max
    }

    /// Map coordinate `x(|theta|)`, clamped to 1 at the natural boundary.
    pub fn x_at(&self, theta: f64) -> Result<f64, Error> {
        let t = self.check_theta(theta)?;
        if t >= self.theta_max {
            return Ok(1.0);
        }
        self.map.invert(t, self.invert_tol)
    }

    fn check_theta(&self, theta: f64) -> Result<f64, Error> {
        let t = theta.abs();
        if t > self.theta0 * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::range(format!(
                "theta = {theta} outside the closed cone |theta| <= {}",
                self.theta0
            )));
        }
        Ok(t.min(self.theta0.min(self.theta_max)))
    }

    /// The common positive factor of profile and Hessian eigenvalues,
    /// `R(x) = (1 + r x^2)^((e-2)/2) / (1 + d x^2)^(e/2)`.
    pub fn shape_factor(&self, x: f64) -> f64 {
        let u = x * x;
        let (r, d, e) = (self.ratio, self.denom, self.exponent);
        let ln_nr = (r * u).ln_1p();
        let ln_ratio = ((r - d) * u / (1.0 + d * u)).ln_1p();
        (0.5 * e * ln_ratio - ln_nr).exp()
    }

    /// Profile value and first two x-derivatives at the map coordinate.
    fn derivs_at_x(&self, x: f64) -> (f64, f64, f64) {
        let (r, d, e) = (self.ratio, self.denom, self.exponent);
        let u = x * x;
        let shape = self.shape_factor(x);
        let nr = 1.0 + r * u;
        let nd = 1.0 + d * u;
        // w = (e-2) r / nr - e d / nd, grouped so that e * (r - d) stays
        // bounded when e is large and r -> d.
        let w = e * (r - d) / (nr * nd) - 2.0 * r / nr;
        let wp = -2.0
            * x
            * (e * (r - d) * (r * nd + d * nr) / ((nr * nd) * (nr * nd)) - 2.0 * r * r / (nr * nr));
        let f = (1.0 - x) * (1.0 + x) * shape;
        let qt = -2.0 * x + (1.0 - u) * x * w;
        let qtp = -2.0 + (1.0 - 3.0 * u) * w + (1.0 - u) * x * wp;
        let fx = shape * qt;
        let fxx = shape * (x * w * qt + qtp);
        (f, fx, fxx)
    }

    /// Profile value; even in `theta`, zero at `|theta| = theta_max`.
    pub fn eval(&self, theta: f64) -> Result<f64, Error> {
        let (f, _, _) = self.eval_with_derivatives(theta)?;
        Ok(f)
    }

    /// First theta-derivative (odd in `theta`).
    pub fn d1(&self, theta: f64) -> Result<f64, Error> {
        let (_, d1, _) = self.eval_with_derivatives(theta)?;
        Ok(d1)
    }

    /// Second theta-derivative (even in `theta`).
    pub fn d2(&self, theta: f64) -> Result<f64, Error> {
        let (_, _, d2) = self.eval_with_derivatives(theta)?;
        Ok(d2)
    }

    /// `(phi, phi', phi'')` at `theta`, inverting the map once.
    pub fn eval_with_derivatives(&self, theta: f64) -> Result<(f64, f64, f64), Error> {
        let x = self.x_at(theta)?;
        let (f, fx, fxx) = self.derivs_at_x(x);
        let g1 = self.map.d1(x)?;
        let g2 = self.map.d2(x)?;
        let mut d1 = fx / g1;
        let d2 = (fxx * g1 - fx * g2) / (g1 * g1 * g1);
        if theta < 0.0 {
            d1 = -d1;
        }
        Ok((f, d1, d2))
    }
}
