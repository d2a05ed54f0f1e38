//! The four homogeneity exponents and monotone inversion.
//!
//! `alpha_plus` lives on the decreasing branch `(1 - 1/omega, +inf)` of
//! `g_omega`, `alpha_minus` on the increasing branch `(-inf, 1 - omega)`;
//! `beta_plus` and `beta_minus` on the corresponding branches of
//! `h_omega`, which meet at the divergence point 0. Each branch sweeps all
//! of `(0, +inf)`, so every half-opening `theta0` in `(0, pi)` has exactly
//! one root per branch. Roots are found by bisection after a geometric
//! bracket expansion (divergent near-edge values bracket as `+inf`),
//! followed by a short secant polish; the branches have no usable
//! closed-form derivative in `alpha`, so the solve stays derivative free.

use crate::error::Error;
use crate::special_functions::{AngularMap, Evaluation, Omega};

/// Default relative tolerance for exponent solves and inversions.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Bracket expansion gives up past this magnitude of `alpha`; reaching it
/// means `theta0` is numerically indistinguishable from 0 or pi.
const MAX_BRACKET: f64 = 1e8;

/// A cone problem instance: ellipticity pair and half-opening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeProblem {
    lambda: f64,
    big_lambda: f64,
    theta0: f64,
}

impl ConeProblem {
    /// Requires `0 < lambda <= Lambda < inf` and `0 < theta0 < pi`.
    pub fn new(lambda: f64, big_lambda: f64, theta0: f64) -> Result<Self, Error> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "ellipticity constant lambda must be positive and finite, got {lambda}"
            )));
        }
        if !(big_lambda >= lambda && big_lambda.is_finite()) {
            return Err(Error::domain(format!(
                "ellipticity constant Lambda must satisfy lambda <= Lambda < inf, got {big_lambda}"
            )));
        }
        if !(theta0 > 0.0 && theta0 < std::f64::consts::PI) {
            return Err(Error::domain(format!(
                "half-opening theta0 must lie in (0, pi), got {theta0}"
            )));
        }
        Ok(ConeProblem {
            lambda,
            big_lambda,
            theta0,
        })
    }

    /// Normalized instance with `lambda = 1`, `Lambda = omega`.
    pub fn from_omega(omega: f64, theta0: f64) -> Result<Self, Error> {
        Self::new(1.0, omega, theta0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn big_lambda(&self) -> f64 {
        self.big_lambda
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn omega(&self) -> Omega {
        Omega::new(self.big_lambda / self.lambda).expect("validated on construction")
    }
}

/// The four homogeneity exponents of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentSet {
    /// Root of `g_omega` on `(1 - 1/omega, +inf)`; positive.
    pub alpha_plus: f64,
    /// Root of `g_omega` on `(-inf, 1 - omega)`; negative.
    pub alpha_minus: f64,
    /// Root of `h_omega` on `(0, +inf)`; positive.
    pub beta_plus: f64,
    /// Root of `h_omega` on `(-inf, 0)`; negative.
    pub beta_minus: f64,
}

impl ExponentSet {
    /// `|branch(e) - theta0|` for each exponent, in the field order.
    pub fn residuals(&self, problem: &ConeProblem) -> Result<[f64; 4], Error> {
        let omega = problem.omega();
        let th = problem.theta0();
        let r = |map: AngularMap| map.total().value_or_infinity() - th;
        Ok([
            r(AngularMap::g(omega, self.alpha_plus)?).abs(),
            r(AngularMap::g(omega, self.alpha_minus)?).abs(),
            r(AngularMap::h(omega, self.beta_plus)?).abs(),
            r(AngularMap::h(omega, self.beta_minus)?).abs(),
        ])
    }
}

/// Which side of the branch edge the monotone branch lives on.
#[derive(Clone, Copy)]
enum BranchSide {
    /// Decreasing on `(edge, +inf)`; value tends to `+inf` at the edge.
    RightOfEdge,
    /// Increasing on `(-inf, edge)`; value tends to `+inf` at the edge.
    LeftOfEdge,
}

/// Root of a monotone branch by bisection with geometric bracket expansion.
///
/// `Diverged` evaluations compare as `+inf`, so points arbitrarily close to
/// the edge are valid high-side bracket ends.
fn solve_branch<F>(eval: F, edge: f64, side: BranchSide, theta0: f64, tol: f64) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<Evaluation, Error>,
{
    let sign = match side {
        BranchSide::RightOfEdge => 1.0,
        BranchSide::LeftOfEdge => -1.0,
    };
    let at = |offset: f64| edge + sign * offset;
    let value = |offset: f64| -> Result<f64, Error> { Ok(eval(at(offset))?.value_or_infinity()) };

    // Near-edge end: shrink the offset until the value clears theta0.
    let mut delta = 0.5;
    loop {
        if value(delta)? >= theta0 {
            break;
        }
        delta /= 16.0;
        if delta < 1e-300 {
            return Err(Error::convergence(format!(
                "no bracket end above theta0 = {theta0} near the branch edge {edge}"
            )));
        }
    }

    // Far end: expand geometrically until the value drops below theta0.
    let mut far = delta.max(1.0);
    loop {
        if value(far)? <= theta0 {
            break;
        }
        far *= 2.0;
        if far > MAX_BRACKET {
            return Err(Error::convergence(format!(
                "bracket expansion exceeded |alpha| = {MAX_BRACKET}; theta0 = {theta0} is \
                 numerically indistinguishable from 0 or pi"
            )));
        }
    }

    // Bisection on offsets, keeping f(lo) >= theta0 >= f(hi).
    let mut lo = delta;
    let mut hi = far;
    for _ in 0..220 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // float exhaustion
        }
        if value(mid)? >= theta0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 0.25 * tol * (1.0 + mid.abs()) {
            break;
        }
    }

    // Secant polish on finite values, confined to the final bracket.
    let mut x0 = lo;
    let mut x1 = hi;
    let mut f0 = value(x0)? - theta0;
    let mut f1 = value(x1)? - theta0;
    let mut best = if f0.abs() < f1.abs() { x0 } else { x1 };
    let mut best_f = f0.abs().min(f1.abs());
    if f0.is_finite() {
        for _ in 0..3 {
            if f1 == f0 {
                break;
            }
            let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if !x2.is_finite() || x2 < lo || x2 > hi {
                break;
            }
            let f2 = value(x2)? - theta0;
            if f2.abs() < best_f {
                best = x2;
                best_f = f2.abs();
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
        }
    }

    if best_f > tol * (1.0 + theta0) {
        return Err(Error::convergence(format!(
            "residual {best_f} exceeds tol*(1+theta0) after bisection at theta0 = {theta0}"
        )));
    }
    Ok(at(best))
}

/// Solves `g_omega(alpha_pm) = theta0` and `h_omega(beta_pm) = theta0`.
///
/// Each returned exponent satisfies `|branch(e) - theta0| <= tol*(1+theta0)`.
/// `theta0 = pi/2` short-circuits `alpha_plus = beta_plus = 1` exactly.
pub fn solve_exponents(problem: &ConeProblem, tol: f64) -> Result<ExponentSet, Error> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tol must be positive, got {tol}")));
    }
    let omega = problem.omega();
    let om = omega.value();
    let th = problem.theta0();
    let half_pi = std::f64::consts::FRAC_PI_2;

    let alpha_plus = if th == half_pi {
        1.0
    } else {
        solve_branch(
            |a| Ok(AngularMap::g(omega, a)?.total()),
            1.0 - 1.0 / om,
            BranchSide::RightOfEdge,
            th,
            tol,
        )?
    };
    let alpha_minus = solve_branch(
        |a| Ok(AngularMap::g(omega, a)?.total()),
        1.0 - om,
        BranchSide::LeftOfEdge,
        th,
        tol,
    )?;
    let beta_plus = if th == half_pi {
        1.0
    } else {
        solve_branch(
            |a| Ok(AngularMap::h(omega, a)?.total()),
            0.0,
            BranchSide::RightOfEdge,
            th,
            tol,
        )?
    };
    let beta_minus = solve_branch(
        |a| Ok(AngularMap::h(omega, a)?.total()),
        0.0,
        BranchSide::LeftOfEdge,
        th,
        tol,
    )?;

    Ok(ExponentSet {
        alpha_plus,
        alpha_minus,
        beta_plus,
        beta_minus,
    })
}

/// Inverse of `G_{omega,alpha}`: the `x` in `[0,1]` with `G(x) = theta`.
pub fn invert_g(omega: Omega, alpha: f64, theta: f64, tol: f64) -> Result<f64, Error> {
    AngularMap::g(omega, alpha)?.invert(theta, tol)
}

/// Inverse of `H_{omega,alpha}`.
pub fn invert_h(omega: Omega, alpha: f64, theta: f64, tol: f64) -> Result<f64, Error> {
    AngularMap::h(omega, alpha)?.invert(theta, tol)
}
