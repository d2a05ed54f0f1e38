//! Higher-level consequences of the explicit solutions: supersolution
//! monotonicity quantities, Liouville-type classification with an explicit
//! supersolution witness, and the exponent bound checks.

use crate::error::Error;
use crate::exponents::{solve_exponents, ConeProblem, ExponentSet, DEFAULT_TOL};
use crate::field::{homogeneous_hessian_eigs, PucciOperator};
use crate::profiles::{make_profile, AngularProfile, SolutionKind};
use crate::special_functions::{eval_g, Omega};

/// Per-radius infima of `u / phi_{alpha_pm}` and their scaled sequences.
///
/// For a nonnegative supersolution of `M-` the sequence
/// `r^(-alpha_plus) m_plus(r)` is non-increasing and
/// `r^(-alpha_minus) m_minus(r)` non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub radii: Vec<f64>,
    pub m_plus: Vec<f64>,
    pub m_minus: Vec<f64>,
    pub scaled_plus: Vec<f64>,
    pub scaled_minus: Vec<f64>,
}

/// Approximates `m_pm(r) = inf u/phi_{alpha_pm}` over the arc `|theta| < theta0`
/// by grid sampling with an endpoint exclusion margin of `1e-3 * theta0`
/// (the ratio is 0/0 at the boundary) and grid-doubling refinement until
/// the infimum moves by less than `1e-6` relative.
pub fn monotonicity_report<F>(
    u: F,
    problem: &ConeProblem,
    radii: &[f64],
    angular_samples: usize,
) -> Result<MonotonicityReport, Error>
where
    F: Fn(f64, f64) -> f64,
{
    if angular_samples < 16 {
        return Err(Error::domain(format!(
            "angular_samples must be at least 16, got {angular_samples}"
        )));
    }
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) || radii[0] <= 0.0 {
        return Err(Error::domain(
            "radii must be positive and strictly ascending",
        ));
    }
    let set = solve_exponents(problem, DEFAULT_TOL)?;
    let phi_plus = make_profile(problem, SolutionKind::PhiPlus)?;
    let phi_minus = make_profile(problem, SolutionKind::PhiMinus)?;
    let theta0 = problem.theta0();
    let margin = 1e-3 * theta0;

    let infimum = |r: f64, phi: &AngularProfile| -> Result<f64, Error> {
        let lo = -theta0 + margin;
        let hi = theta0 - margin;
        let eval_grid = |n: usize| -> Result<f64, Error> {
            let mut min = f64::INFINITY;
            for i in 0..n {
                let th = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
                let num = u(r, th);
                if !num.is_finite() {
                    return Err(Error::Evaluation(format!(
                        "field evaluation returned {num} at (rho={r}, theta={th})"
                    )));
                }
                let den = phi.eval(th)?;
                min = min.min(num / den);
            }
            Ok(min)
        };
        let mut n = angular_samples;
        let mut best = eval_grid(n)?;
        for _ in 0..6 {
            n *= 2;
            let refined = eval_grid(n)?;
            let done = (refined - best).abs() <= 1e-6 * best.abs().max(1e-12);
            best = refined;
            if done {
                break;
            }
        }
        Ok(best)
    };

    let mut report = MonotonicityReport {
        radii: radii.to_vec(),
        m_plus: Vec::with_capacity(radii.len()),
        m_minus: Vec::with_capacity(radii.len()),
        scaled_plus: Vec::with_capacity(radii.len()),
        scaled_minus: Vec::with_capacity(radii.len()),
    };
    for &r in radii {
        let mp = infimum(r, &phi_plus)?;
        let mm = infimum(r, &phi_minus)?;
        report.m_plus.push(mp);
        report.m_minus.push(mm);
        report.scaled_plus.push(r.powf(-set.alpha_plus) * mp);
        report.scaled_minus.push(r.powf(-set.alpha_minus) * mm);
    }
    Ok(report)
}

/// Classification of `M-(D^2 u) + u^p <= 0, u > 0` in the cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleVerdict {
    pub p: f64,
    pub omega: f64,
    pub theta0: f64,
    /// `g_omega(2/(1-p))` where `2/(1-p)` lies in the domain of `g_omega`.
    pub threshold_value: Option<f64>,
    /// No positive supersolution exists iff `p` lies in `critical_interval`.
    pub nonexistence: bool,
    /// `[1 - 2/alpha_plus, 1 - 2/alpha_minus]`, closed.
    pub critical_interval: (f64, f64),
}

/// Classifies `p` against the critical interval computed from the solved
/// exponents; `p = 1` always lies in the interior. Where `2/(1-p)` falls
/// in the domain of `g_omega` the equivalent level-set criterion
/// `g_omega(2/(1-p)) <= theta0` is reported as `threshold_value`.
pub fn liouville_classify(problem: &ConeProblem, p: f64) -> Result<LiouvilleVerdict, Error> {
    let set = solve_exponents(problem, DEFAULT_TOL)?;
    let lo = 1.0 - 2.0 / set.alpha_plus;
    let hi = 1.0 - 2.0 / set.alpha_minus;
    let nonexistence = (lo..=hi).contains(&p);
    let threshold_value = if p == 1.0 {
        None
    } else {
        match eval_g(problem.omega(), 2.0 / (1.0 - p)) {
            Ok(v) => v.finite(),
            Err(_) => None,
        }
    };
    Ok(LiouvilleVerdict {
        p,
        omega: problem.omega().value(),
        theta0: problem.theta0(),
        threshold_value,
        nonexistence,
        critical_interval: (lo, hi),
    })
}

/// Which side of the critical interval the witness construction works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupersolutionRegime {
    /// `p > 1 - 2/alpha_minus`: parameters `alpha_minus < a < b < min(1-omega, -2/(p-1))`.
    SupercriticalHigh,
    /// `p < 1 - 2/alpha_plus`: parameters `max(1-1/omega, 2/(1-p)) < b < a < alpha_plus`.
    SubcriticalLow,
}

/// Construction parameters of the explicit supersolution
/// `u(rho, theta) = rho^b (phi_a(theta) - gamma)`, scaled and shifted to a
/// classical solution of `M-(D^2 u~) + u~^p <= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupersolutionWitness {
    pub regime: SupersolutionRegime,
    pub p: f64,
    /// Profile exponent `a` (not a level-set root).
    pub alpha: f64,
    /// Radial exponent `b`, strictly between `alpha` and the regime bound.
    pub beta: f64,
    /// Profile shift `gamma` in `(0, phi_a(theta0))`.
    pub gamma: f64,
    /// `delta` constant of the differential inequality `-M- >= delta rho^(b-2)`.
    pub delta_const: f64,
    /// `delta` adjusted for `p < 0` by `(phi_a(theta0) - gamma)^(-p)`.
    pub delta_hat: f64,
    /// Lower envelope bound `R0 <= R(x)` used in the gamma window.
    pub r0: f64,
    /// Vertical shift `1/sin(theta0)` placing the cone inside `rho >= 1`.
    pub shift: f64,
}

/// The scaled witness field `u~(rho, theta) = delta_hat^(1/(p-1)) rho^b (phi_a - gamma)`.
///
/// Values are taken in unshifted coordinates; the recorded `shift` moves
/// the cone vertex so that every original point has `rho >= 1`, where the
/// differential inequality `M-(D^2 u~) + u~^p <= 0` holds pointwise.
#[derive(Debug, Clone)]
pub struct SupersolutionField {
    witness: SupersolutionWitness,
    problem: ConeProblem,
    profile: AngularProfile,
    scale: f64,
}

impl SupersolutionField {
    pub fn witness(&self) -> &SupersolutionWitness {
        &self.witness
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Witness value at `(rho, theta)`; positive on the closed cone.
    pub fn value(&self, rho: f64, theta: f64) -> Result<f64, Error> {
        if !(rho > 0.0) {
            return Err(Error::domain(format!("rho must be positive, got {rho}")));
        }
        let phi = self.profile.eval(theta)?;
        Ok(self.scale * rho.powf(self.witness.beta) * (phi - self.witness.gamma))
    }

    /// `M-(D^2 u~) + u~^p` at `(rho, theta)`; `<= 0` for `rho >= 1`.
    pub fn inequality_margin(&self, rho: f64, theta: f64) -> Result<f64, Error> {
        let w = &self.witness;
        let (phi, d1, d2) = self.profile.eval_with_derivatives(theta)?;
        let shifted = phi - w.gamma;
        let eigs = homogeneous_hessian_eigs(w.beta, shifted, d1, d2, rho, theta, 2)?;
        let scaled: Vec<f64> = eigs.iter().map(|mu| self.scale * mu).collect();
        let minus = PucciOperator::minus(self.problem.lambda(), self.problem.big_lambda())?;
        let value = self.scale * rho.powf(w.beta) * shifted;
        Ok(minus.apply(&scaled) + value.powf(w.p))
    }

    /// Checks the inequality on a log-spaced `rho in [1, 1e3]` by uniform
    /// `theta` grid of roughly `points` samples; returns the worst margin
    /// (most positive) together with its location.
    pub fn verify(&self, points: usize) -> Result<(f64, f64, f64), Error> {
        let n_rho = (points as f64).sqrt().ceil() as usize;
        let n_theta = points.div_ceil(n_rho);
        let theta0 = self.problem.theta0();
        let mut worst = f64::NEG_INFINITY;
        let mut at = (1.0, 0.0);
        for i in 0..n_rho {
            let rho = 10f64.powf(3.0 * (i as f64) / ((n_rho - 1).max(1) as f64));
            for j in 0..n_theta {
                let th = -theta0 + 2.0 * theta0 * (j as f64) / ((n_theta - 1).max(1) as f64);
                let m = self.inequality_margin(rho, th)?;
                if m > worst {
                    worst = m;
                    at = (rho, th);
                }
            }
        }
        Ok((worst, at.0, at.1))
    }
}

/// `min(R(x))` over `[0, x0]` on a 1000-point grid, scaled by the safety
/// factor 0.99: a certified lower envelope for the gamma window.
fn envelope_minimum(profile: &AngularProfile, x0: f64) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..=1000 {
        let x = x0 * (i as f64) / 1000.0;
        min = min.min(profile.shape_factor(x));
    }
    0.99 * min
}

/// `M-(D^2 rho^b) / (lambda rho^(b-2))`: positive for every admissible `b`.
fn radial_minus_coeff(omega: f64, b: f64) -> f64 {
    // eigenvalues of D^2 rho^b are b(b-1) rho^(b-2) and b rho^(b-2)
    let e1 = b * (b - 1.0);
    let e2 = b;
    let mut acc = 0.0;
    for e in [e1, e2] {
        if e > 0.0 {
            acc += e;
        } else {
            acc += omega * e;
        }
    }
    acc
}

struct Candidate {
    gamma: f64,
    delta: f64,
    r0: f64,
    phi_at_theta0: f64,
}

/// Supercritical parameter check (`alpha_minus < a < b < 1-omega`),
/// following the displayed constants: with `A(x) = x(x-1+omega)`,
/// `B(x) = x(x-1+1/omega)` the discriminant bound requires
/// `N M <= (b-1)^2 a^2 (omega+1)^2 / omega`, and then any
/// `gamma > (omega (B(a)-B(b)) - R0 (A(a)-A(b))) / (b (b-1+omega))`
/// below `phi_a(theta0)` yields
/// `-M-(D^2 u) >= delta rho^(b-2)` with
/// `delta = lambda omega (B(a)-B(b)) (1 - x0^2)`.
fn try_parameters_supercritical(
    omega: f64,
    profile: &AngularProfile,
    a: f64,
    b: f64,
    theta0: f64,
) -> Result<Option<Candidate>, Error> {
    let da = a * (a - 1.0 + omega) - b * (b - 1.0 + omega);
    let db = a * (a - 1.0 + 1.0 / omega) - b * (b - 1.0 + 1.0 / omega);

    let n_coef = b * (b - 2.0) + a / omega * (a - 1.0 + omega);
    let m_coef = b * (b - 2.0) + omega * a * (a - 1.0 + 1.0 / omega);
    let cap = (b - 1.0) * (b - 1.0) * a * a * (omega + 1.0) * (omega + 1.0) / omega;
    if n_coef * m_coef > cap {
        return Ok(None);
    }

    let m_rho = radial_minus_coeff(omega, b);
    if da <= 0.0 || db <= 0.0 || m_rho <= 0.0 {
        return Ok(None);
    }
    let x0 = profile.x_at(theta0)?;
    let r0 = envelope_minimum(profile, x0);
    let gamma_min = ((omega * db - r0 * da) / m_rho).max(0.0);
    let phi_at_theta0 = profile.eval(theta0)?;
    if gamma_min >= phi_at_theta0 * (1.0 - 1e-9) {
        return Ok(None);
    }
    let gamma = 0.5 * (gamma_min + phi_at_theta0);
    let delta = omega * db * (1.0 - x0 * x0);
    Ok(Some(Candidate {
        gamma,
        delta,
        r0,
        phi_at_theta0,
    }))
}

/// Subcritical parameter check (`max(1-1/omega, 2/(1-p)) < b < a < alpha_plus`).
///
/// Here the displayed discriminant bound fails on the `a >= 1` side, so the
/// gamma window is built from the exact pointwise envelope instead: with
/// `mu_1 >= mu_2` the Hessian eigenvalues of `rho^b phi_a` at unit radius,
/// `K(theta) = -(mu_1 + omega mu_2)` satisfies
/// `-M-(D^2 rho^b phi_a) >= lambda rho^(b-2) K(theta)`, so any gamma with
/// `K(theta) + gamma b-radial-coefficient >= delta / lambda > 0` on a grid
/// works; the grid minimum is buffered by 2% of the spread.
fn try_parameters_subcritical(
    omega: f64,
    profile: &AngularProfile,
    a: f64,
    b: f64,
    theta0: f64,
) -> Result<Option<Candidate>, Error> {
    let _ = a;
    let m_rho = radial_minus_coeff(omega, b);
    if m_rho <= 0.0 {
        return Ok(None);
    }
    let mut min_k = f64::INFINITY;
    let mut max_k = f64::NEG_INFINITY;
    for i in 0..=1000 {
        let th = theta0 * (i as f64) / 1000.0;
        let (phi, d1, d2) = profile.eval_with_derivatives(th)?;
        let eigs = homogeneous_hessian_eigs(b, phi, d1, d2, 1.0, th, 2)?;
        let k = -(eigs[0] + omega * eigs[1]);
        min_k = min_k.min(k);
        max_k = max_k.max(k);
    }
    let buffered = min_k - 0.02 * (max_k - min_k) - 1e-15;
    let gamma_min = (-buffered / m_rho).max(0.0);
    let phi_at_theta0 = profile.eval(theta0)?;
    if gamma_min >= phi_at_theta0 * (1.0 - 1e-9) {
        return Ok(None);
    }
    let gamma = 0.5 * (gamma_min + phi_at_theta0);
    let delta = buffered + gamma * m_rho;
    if delta <= 0.0 {
        return Ok(None);
    }
    let x0 = profile.x_at(theta0)?;
    let r0 = envelope_minimum(profile, x0);
    Ok(Some(Candidate {
        gamma,
        delta,
        r0,
        phi_at_theta0,
    }))
}

/// Builds the explicit supersolution witness for `p` strictly outside the
/// critical interval.
///
/// `alpha` starts at the midpoint of its admissible interval; `beta` starts
/// at the midpoint between `alpha` and the regime bound and is shrunk
/// geometrically toward `alpha` until both proof obligations hold (at most
/// 60 steps, else `Infeasible`).
pub fn build_supersolution(
    problem: &ConeProblem,
    p: f64,
) -> Result<SupersolutionField, Error> {
    let verdict = liouville_classify(problem, p)?;
    if verdict.nonexistence {
        return Err(Error::Infeasible(format!(
            "p = {p} lies in the critical interval [{}, {}]: no positive supersolution exists",
            verdict.critical_interval.0, verdict.critical_interval.1
        )));
    }
    let set = solve_exponents(problem, DEFAULT_TOL)?;
    let omega = problem.omega().value();
    let lambda = problem.lambda();
    let theta0 = problem.theta0();

    let (regime, a, bound, kind) = if p > verdict.critical_interval.1 {
        // alpha_minus < a < b < min(1-omega, -2/(p-1)) < 0
        let bound = (1.0 - omega).min(-2.0 / (p - 1.0));
        let a = 0.5 * (set.alpha_minus + bound);
        (
            SupersolutionRegime::SupercriticalHigh,
            a,
            bound,
            SolutionKind::PhiMinus,
        )
    } else {
        // max(1-1/omega, 2/(1-p)) < b < a < alpha_plus
        let bound = (1.0 - 1.0 / omega).max(2.0 / (1.0 - p));
        let a = 0.5 * (bound + set.alpha_plus);
        (
            SupersolutionRegime::SubcriticalLow,
            a,
            bound,
            SolutionKind::PhiPlus,
        )
    };

    let profile = AngularProfile::from_exponent(problem.omega(), kind, a, theta0)?;
    let mut b = 0.5 * (a + bound);
    for _ in 0..60 {
        let candidate = match regime {
            SupersolutionRegime::SupercriticalHigh => {
                try_parameters_supercritical(omega, &profile, a, b, theta0)?
            }
            SupersolutionRegime::SubcriticalLow => {
                try_parameters_subcritical(omega, &profile, a, b, theta0)?
            }
        };
        if let Some(c) = candidate {
            let delta = lambda * c.delta;
            let delta_hat = if p < 0.0 {
                delta * (c.phi_at_theta0 - c.gamma).powf(-p)
            } else {
                delta
            };
            let witness = SupersolutionWitness {
                regime,
                p,
                alpha: a,
                beta: b,
                gamma: c.gamma,
                delta_const: delta,
                delta_hat,
                r0: c.r0,
                shift: 1.0 / theta0.sin(),
            };
            let scale = delta_hat.powf(1.0 / (p - 1.0));
            return Ok(SupersolutionField {
                witness,
                problem: *problem,
                profile,
                scale,
            });
        }
        b = 0.5 * (a + b);
    }
    Err(Error::Infeasible(format!(
        "no admissible (alpha, beta, gamma) after 60 shrink steps: p = {p} is too close to \
         an endpoint of [{}, {}] for f64 margins",
        verdict.critical_interval.0, verdict.critical_interval.1
    )))
}

/// Margins of the exponent bound inequalities for one `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub omega: f64,
    /// `pi/2` minus the closed form of `g_omega(1 - 2 omega)`:
    /// nonnegative, zero only at `omega = 1` (lower bound of `alpha_minus(pi/2)`).
    pub lower_bound_margin: f64,
    /// Closed form of `g_omega(-omega)` minus `pi/2`: nonnegative, zero
    /// only at `omega = 1` (upper bound of `alpha_minus(pi/2)`).
    pub upper_bound_margin: f64,
    /// `min over the theta grid of alpha_plus(theta) - omega/(omega+1)`.
    pub global_alpha_plus_margin: f64,
    pub grid_points: usize,
}

/// Evaluates the two transcendental inequalities equivalent to
/// `1 - 2 omega <= alpha_minus(pi/2) <= -omega` in their displayed closed
/// forms, and scans the global bound `alpha_plus(theta) >= omega/(omega+1)`
/// over a `grid_points` grid of openings.
pub fn bound_suite(omega: Omega, grid_points: usize) -> Result<BoundReport, Error> {
    let w = omega.value();
    let half_pi = std::f64::consts::FRAC_PI_2;

    let lhs1 = -(w.sqrt().atan())
        + (2.0 * w + 1.0) / (2.0 * w * w - 1.0).sqrt() * ((2.0 * w * w - 1.0) / w).sqrt().atan();
    let lhs2 = -(w.sqrt().atan())
        + w.sqrt() * (2.0 + w) / (w * w + w - 1.0).sqrt() * (w * w + w - 1.0).sqrt().atan();

    let n = grid_points.max(3);
    let mut min_margin = f64::INFINITY;
    for i in 0..n {
        let theta = 1e-3 + (std::f64::consts::PI - 2e-3) * (i as f64) / ((n - 1) as f64);
        let problem = ConeProblem::from_omega(w, theta)?;
        let set = solve_exponents(&problem, DEFAULT_TOL)?;
        min_margin = min_margin.min(set.alpha_plus - w / (w + 1.0));
    }

    Ok(BoundReport {
        omega: w,
        lower_bound_margin: half_pi - lhs1,
        upper_bound_margin: lhs2 - half_pi,
        global_alpha_plus_margin: min_margin,
        grid_points: n,
    })
}

/// Convenience: the exponent set used by the reports in this module.
pub fn exponents_for(problem: &ConeProblem) -> Result<ExponentSet, Error> {
    solve_exponents(problem, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SolutionField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn monotonicity_exact_solution_is_constant() {
        // u = u_{alpha_plus} itself: r^(-alpha_plus) m_plus(r) is constant.
        let p = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let field = SolutionField::new(&p, SolutionKind::PhiPlus).unwrap();
        let radii = [0.5, 1.0, 2.0, 4.0, 8.0];
        let report = monotonicity_report(
            |r, th| field.value(r, th).unwrap(),
            &p,
            &radii,
            64,
        )
        .unwrap();
        let first = report.scaled_plus[0];
        for v in &report.scaled_plus {
            assert!((v - first).abs() <= 1e-6 * first.abs(), "{report:?}");
        }
    }

    #[test]
    fn monotonicity_supersolution_sum() {
        // u_{alpha_plus} + u_{alpha_minus} is a supersolution of the concave
        // operator: scaled_plus non-increasing, scaled_minus non-decreasing.
        let p = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let plus = SolutionField::new(&p, SolutionKind::PhiPlus).unwrap();
        let minus = SolutionField::new(&p, SolutionKind::PhiMinus).unwrap();
        let radii = [0.5, 1.0, 2.0, 4.0, 8.0];
        let report = monotonicity_report(
            |r, th| plus.value(r, th).unwrap() + minus.value(r, th).unwrap(),
            &p,
            &radii,
            64,
        )
        .unwrap();
        for w in report.scaled_plus.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-6), "scaled_plus not non-increasing: {report:?}");
        }
        for w in report.scaled_minus.windows(2) {
            assert!(w[1] >= w[0] * (1.0 - 1e-6), "scaled_minus not non-decreasing: {report:?}");
        }
    }

    #[test]
    fn monotonicity_constant_field() {
        // constants are M- harmonic; the scaling forces the monotonicity.
        let p = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let radii = [0.5, 1.0, 2.0, 4.0];
        let report = monotonicity_report(|_, _| 1.0, &p, &radii, 64).unwrap();
        for w in report.scaled_plus.windows(2) {
            assert!(w[1] < w[0], "r^-a+ inf(1/phi) must decrease");
        }
        for w in report.scaled_minus.windows(2) {
            assert!(w[1] > w[0], "r^-a- inf(1/phi) must increase");
        }
    }

    #[test]
    fn monotonicity_validation_and_evaluation_errors() {
        let p = ConeProblem::from_omega(2.0, 1.0).unwrap();
        assert!(matches!(
            monotonicity_report(|_, _| 1.0, &p, &[1.0, 2.0], 8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            monotonicity_report(|_, _| 1.0, &p, &[2.0, 1.0], 64),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            monotonicity_report(|_, _| f64::NAN, &p, &[1.0, 2.0], 64),
            Err(Error::Evaluation(_))
        ));
    }

    #[test]
    fn liouville_halfplane_laplacian() {
        // omega = 1, theta0 = pi/2: interval endpoints -1 and 3.
        let p = ConeProblem::from_omega(1.0, FRAC_PI_2).unwrap();
        let v = liouville_classify(&p, 3.0).unwrap();
        assert!(v.nonexistence, "{v:?}");
        assert!((v.critical_interval.0 + 1.0).abs() < 1e-10);
        assert!((v.critical_interval.1 - 3.0).abs() < 1e-10);
        let v = liouville_classify(&p, 3.01).unwrap();
        assert!(!v.nonexistence);
        let v = liouville_classify(&p, -1.01).unwrap();
        assert!(!v.nonexistence);
    }

    #[test]
    fn liouville_p_equal_one_always_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let omega = 1.0 + rng.random::<f64>() * 19.0;
            let theta0 = 0.05 + rng.random::<f64>() * 3.0;
            let p = ConeProblem::from_omega(omega, theta0).unwrap();
            let v = liouville_classify(&p, 1.0).unwrap();
            assert!(v.nonexistence);
            assert!(v.critical_interval.0 < 1.0 && v.critical_interval.1 > 1.0);
        }
    }

    #[test]
    fn liouville_interval_consistent_with_g_criterion() {
        // where 2/(1-p) is in the domain of g: nonexistence <=> g(2/(1-p)) <= theta0
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut checked = 0;
        while checked < 500 {
            let omega = 1.0 + rng.random::<f64>() * 9.0;
            let theta0 = 0.1 + rng.random::<f64>() * 2.9;
            let p_exp = -4.0 + rng.random::<f64>() * 10.0;
            let prob = ConeProblem::from_omega(omega, theta0).unwrap();
            let v = liouville_classify(&prob, p_exp).unwrap();
            if let Some(g_val) = v.threshold_value {
                assert_eq!(
                    v.nonexistence,
                    g_val <= theta0,
                    "mismatch at omega={omega}, theta0={theta0}, p={p_exp} (g = {g_val})"
                );
                checked += 1;
            }
        }
    }

    fn check_witness(omega: f64, theta0: f64, p_exp: f64, points: usize) {
        let prob = ConeProblem::from_omega(omega, theta0).unwrap();
        let field = build_supersolution(&prob, p_exp).unwrap();
        let (worst, rho, th) = field.verify(points).unwrap();
        assert!(
            worst <= -1e-10 * worst.abs().max(1e-30),
            "inequality violated: margin {worst} at (rho={rho}, theta={th}) \
             [omega={omega}, theta0={theta0}, p={p_exp}, witness={:?}]",
            field.witness()
        );
        assert!(worst < 0.0);
        // witness positivity on the closed cone
        for i in 0..10 {
            let th = -theta0 + 2.0 * theta0 * (i as f64) / 9.0;
            assert!(field.value(1.0, th).unwrap() > 0.0);
        }
    }

    #[test]
    fn supersolution_supercritical_laplacian() {
        // omega=1, theta0=pi/2, p=4 > 3 = upper endpoint
        check_witness(1.0, FRAC_PI_2, 4.0, 500);
        let prob = ConeProblem::from_omega(1.0, FRAC_PI_2).unwrap();
        let field = build_supersolution(&prob, 4.0).unwrap();
        let w = field.witness();
        assert_eq!(w.regime, SupersolutionRegime::SupercriticalHigh);
        assert!(-1.0 < w.alpha && w.alpha < w.beta && w.beta < 0.0_f64.min(-2.0 / 3.0));
        assert!(w.gamma > 0.0);
        assert!(w.delta_const > 0.0);
    }

    #[test]
    fn supersolution_both_regimes() {
        let prob = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let v = liouville_classify(&prob, 0.0).unwrap();
        let (lo, hi) = v.critical_interval;
        check_witness(2.0, 1.0, hi + 0.5, 500);
        check_witness(2.0, 1.0, lo - 0.5, 500);
        // wide-cone (theta0 > pi/2) subcritical regime with alpha_plus < 1
        let prob = ConeProblem::from_omega(2.0, 2.0).unwrap();
        let v = liouville_classify(&prob, 0.0).unwrap();
        check_witness(2.0, 2.0, v.critical_interval.0 - 0.5, 500);
        check_witness(2.0, 2.0, v.critical_interval.1 + 0.5, 500);
    }

    #[test]
    fn supersolution_near_endpoints() {
        let prob = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let v = liouville_classify(&prob, 0.0).unwrap();
        let (lo, hi) = v.critical_interval;
        check_witness(2.0, 1.0, hi + 1e-2, 200);
        check_witness(2.0, 1.0, lo - 1e-2, 200);
        // at the endpoint the classification flips to nonexistence
        assert!(liouville_classify(&prob, hi).unwrap().nonexistence);
        assert!(liouville_classify(&prob, lo).unwrap().nonexistence);
        assert!(!liouville_classify(&prob, hi + 1e-9).unwrap().nonexistence);
        assert!(!liouville_classify(&prob, lo - 1e-9).unwrap().nonexistence);
    }

    #[test]
    fn supersolution_rejects_interval_interior() {
        let prob = ConeProblem::from_omega(2.0, 1.0).unwrap();
        assert!(matches!(
            build_supersolution(&prob, 1.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn supersolution_negative_p_uses_delta_hat() {
        let prob = ConeProblem::from_omega(2.0, 1.0).unwrap();
        let v = liouville_classify(&prob, 0.0).unwrap();
        let p_exp = v.critical_interval.0 - 1.5;
        assert!(p_exp < 0.0, "test assumes a negative subcritical exponent");
        let field = build_supersolution(&prob, p_exp).unwrap();
        let w = field.witness();
        assert!(w.delta_hat != w.delta_const);
        check_witness(2.0, 1.0, p_exp, 300);
    }

    #[test]
    fn bounds_report() {
        let r = bound_suite(Omega::new(1.0).unwrap(), 50).unwrap();
        assert!(r.lower_bound_margin.abs() < 1e-12, "{r:?}");
        assert!(r.upper_bound_margin.abs() < 1e-12, "{r:?}");
        assert!(r.global_alpha_plus_margin > -1e-9);

        let r = bound_suite(Omega::new(3.0).unwrap(), 50).unwrap();
        assert!(r.lower_bound_margin > 1e-3, "{r:?}");
        assert!(r.upper_bound_margin > 1e-3, "{r:?}");
        assert!(r.global_alpha_plus_margin > -1e-9);

        let r = bound_suite(Omega::new(5.0).unwrap(), 500).unwrap();
        assert!(r.global_alpha_plus_margin > -1e-9, "{r:?}");
    }
}
