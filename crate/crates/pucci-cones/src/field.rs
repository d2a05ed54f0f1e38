//! Full solution fields: Hessian eigenvalues, Pucci operators, residuals.
//!
//! The Hessian of a symmetric homogeneous function `rho^a phi(theta)` in
//! dimension `n` is a rank-two update of the identity, so its spectrum is
//! explicit: the axis/radial plane contributes two simple eigenvalues and
//! the remaining `n-2` directions share one value. For `n = 2` the Pucci
//! residual of an exact solution built from the solved profiles vanishes
//! identically; a central-difference Hessian provides the independent
//! second route for verification.

use crate::error::Error;
use crate::exponents::ConeProblem;
use crate::profiles::{make_profile, AngularProfile, SolutionKind};

/// 2x2 symmetric matrix with closed-form eigenvalue extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymMatrix2 {
    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.a11 + self.a22);
        let h = (0.5 * (self.a11 - self.a22)).hypot(self.a12);
        (mean + h, mean - h)
    }
}

/// The symmetric matrix `a v(x)v + b w(x)w + c (v(x)w + w(x)v) + d I_n`
/// built from two unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoUpdateSpec {
    v: Vec<f64>,
    w: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RankTwoUpdateSpec {
    /// Requires matching lengths, `n >= 2` and unit vectors.
    pub fn new(v: Vec<f64>, w: Vec<f64>, a: f64, b: f64, c: f64, d: f64) -> Result<Self, Error> {
        if v.len() != w.len() {
            return Err(Error::dimension(format!(
                "v and w have mismatched lengths {} and {}",
                v.len(),
                w.len()
            )));
        }
        if v.len() < 2 {
            return Err(Error::dimension(format!(
                "dimension must be at least 2, got {}",
                v.len()
            )));
        }
        for (name, vec) in [("v", &v), ("w", &w)] {
            let norm = vec.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-8 {
                return Err(Error::domain(format!(
                    "{name} must be a unit vector, got |{name}| = {norm}"
                )));
            }
        }
        Ok(RankTwoUpdateSpec { v, w, a, b, c, d })
    }

    /// Normalizes nonzero direction vectors before validation.
    pub fn from_directions(
        v: &[f64],
        w: &[f64],
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    ) -> Result<Self, Error> {
        let normalize = |name: &str, s: &[f64]| -> Result<Vec<f64>, Error> {
            let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::domain(format!("{name} must be nonzero")));
            }
            Ok(s.iter().map(|x| x / norm).collect())
        };
        Self::new(normalize("v", v)?, normalize("w", w)?, a, b, c, d)
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// Dense row-major matrix (for cross-checks against a full eigensolver).
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = self.a * self.v[i] * self.v[j]
                    + self.b * self.w[i] * self.w[j]
                    + self.c * (self.v[i] * self.w[j] + self.w[i] * self.v[j]);
            }
            m[i * n + i] += self.d;
        }
        m
    }
}

/// All `n` eigenvalues of the rank-two update, descending.
///
/// `d` appears with multiplicity `n - 2` (eigenspace orthogonal to `v, w`)
/// plus the two simple values
/// `d + (a + b + 2c v.w +- sqrt((a + b + 2c v.w)^2 + 4 (1 - (v.w)^2)(c^2 - ab))) / 2`;
/// the degenerate cases `c^2 = ab` and `(v.w)^2 = 1` collapse to `d` with
/// multiplicity `n - 1` and the simple `d + a + b + 2c v.w`, which the same
/// formula produces.
pub fn rank_two_update_eigs(spec: &RankTwoUpdateSpec) -> Vec<f64> {
    let n = spec.n();
    let vw: f64 = spec.v.iter().zip(spec.w.iter()).map(|(x, y)| x * y).sum();
    let sum = spec.a + spec.b + 2.0 * spec.c * vw;
    let disc =
        (sum * sum + 4.0 * (1.0 - vw * vw) * (spec.c * spec.c - spec.a * spec.b)).max(0.0);
    let root = disc.sqrt();
    let mut eigs = Vec::with_capacity(n);
    eigs.push(spec.d + 0.5 * (sum + root));
    eigs.push(spec.d + 0.5 * (sum - root));
    for _ in 2..n {
        eigs.push(spec.d);
    }
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}

/// Hessian eigenvalues of `rho^alpha phi(theta)` in dimension `n`,
/// descending, from the pointwise data `(phi, phi', phi'')`.
///
/// The two simple values are
/// `rho^(a-2)/2 * (a^2 phi + phi'' +- sqrt((a(a-2) phi - phi'')^2 + 4 (a-1)^2 phi'^2))`;
/// for `n >= 3` the value `rho^(a-2) (a phi + phi' / tan(theta))` joins
/// with multiplicity `n - 2`. At `theta = 0` the multiplicity term is the
/// limit `a phi + phi''`, valid only when `phi' = 0` there.
pub fn homogeneous_hessian_eigs(
    alpha: f64,
    phi: f64,
    phi_d1: f64,
    phi_d2: f64,
    rho: f64,
    theta: f64,
    n: usize,
) -> Result<Vec<f64>, Error> {
    if !(rho > 0.0) {
        return Err(Error::domain(format!("rho must be positive, got {rho}")));
    }
    if n < 2 {
        return Err(Error::dimension(format!("n must be at least 2, got {n}")));
    }
    let factor = rho.powf(alpha - 2.0);
    let s = alpha * alpha * phi + phi_d2;
    let t = alpha * (alpha - 2.0) * phi - phi_d2;
    let root = t.hypot(2.0 * (alpha - 1.0) * phi_d1);
    let mut eigs = Vec::with_capacity(n);
    eigs.push(0.5 * factor * (s + root));
    eigs.push(0.5 * factor * (s - root));
    if n > 2 {
        let sin = theta.sin();
        let tangential = if sin == 0.0 {
            if phi_d1 != 0.0 {
                return Err(Error::Singularity(format!(
                    "phi' = {phi_d1} != 0 at theta = {theta}: the tangential eigenvalue \
                     phi'/tan(theta) has no limit"
                )));
            }
            factor * (alpha * phi + phi_d2)
        } else {
            factor * (alpha * phi + phi_d1 * theta.cos() / sin)
        };
        for _ in 2..n {
            eigs.push(tangential);
        }
    }
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(eigs)
}

/// Extremal operator selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PucciSign {
    Plus,
    Minus,
}

/// A Pucci extremal operator `M+` or `M-` with ellipticity `0 < lambda <= Lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PucciOperator {
    lambda: f64,
    big_lambda: f64,
    sign: PucciSign,
}

impl PucciOperator {
    pub fn new(lambda: f64, big_lambda: f64, sign: PucciSign) -> Result<Self, Error> {
        if !(lambda > 0.0 && big_lambda >= lambda && big_lambda.is_finite()) {
            return Err(Error::domain(format!(
                "ellipticity constants must satisfy 0 < lambda <= Lambda < inf, got ({lambda}, {big_lambda})"
            )));
        }
        Ok(PucciOperator {
            lambda,
            big_lambda,
            sign,
        })
    }

    pub fn minus(lambda: f64, big_lambda: f64) -> Result<Self, Error> {
        Self::new(lambda, big_lambda, PucciSign::Minus)
    }

    pub fn plus(lambda: f64, big_lambda: f64) -> Result<Self, Error> {
        Self::new(lambda, big_lambda, PucciSign::Plus)
    }

    pub fn sign(&self) -> PucciSign {
        self.sign
    }

    /// Applies the operator to a spectrum:
    /// `M+ = Lambda * sum(mu > 0) + lambda * sum(mu < 0)`, weights swapped
    /// for `M-`. Satisfies `M+(M) = -M-(-M)` exactly in floating point.
    pub fn apply(&self, eigs: &[f64]) -> f64 {
        let (w_pos, w_neg) = match self.sign {
            PucciSign::Plus => (self.big_lambda, self.lambda),
            PucciSign::Minus => (self.lambda, self.big_lambda),
        };
        let mut acc = 0.0;
        for &mu in eigs {
            if mu > 0.0 {
                acc += w_pos * mu;
            } else if mu < 0.0 {
                acc += w_neg * mu;
            }
        }
        acc
    }
}

/// Free-function form of [`PucciOperator::apply`].
pub fn pucci_apply(op: &PucciOperator, eigs: &[f64]) -> f64 {
    op.apply(eigs)
}

/// One evaluation of a homogeneous solution at a point of the cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub rho: f64,
    pub theta: f64,
    pub value: f64,
    /// Cartesian gradient `(d/dx, d/dy)` with the cone axis along `+y`.
    pub gradient: [f64; 2],
    /// Hessian eigenvalues, descending.
    pub hess_eigs: (f64, f64),
    /// `M-(D^2 f)` of the sampled solution; zero for exact solutions.
    pub pucci_minus: f64,
    /// `M+(D^2 f)` of the sampled solution.
    pub pucci_plus: f64,
}

/// A homogeneous solution of one kind, ready for repeated sampling.
#[derive(Debug, Clone)]
pub struct SolutionField {
    problem: ConeProblem,
    kind: SolutionKind,
    profile: AngularProfile,
}

impl SolutionField {
    pub fn new(problem: &ConeProblem, kind: SolutionKind) -> Result<Self, Error> {
        let profile = make_profile(problem, kind)?;
        Ok(SolutionField {
            problem: *problem,
            kind,
            profile,
        })
    }

    pub fn problem(&self) -> &ConeProblem {
        &self.problem
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn exponent(&self) -> f64 {
        self.profile.exponent()
    }

    pub fn profile(&self) -> &AngularProfile {
        &self.profile
    }

    fn sign(&self) -> f64 {
        if self.kind.is_negative_solution() {
            -1.0
        } else {
            1.0
        }
    }

    /// Solution value at polar `(rho, theta)`.
    pub fn value(&self, rho: f64, theta: f64) -> Result<f64, Error> {
        if !(rho > 0.0) {
            return Err(Error::domain(format!("rho must be positive, got {rho}")));
        }
        let phi = self.profile.eval(theta)?;
        Ok(self.sign() * rho.powf(self.exponent()) * phi)
    }

    /// Solution value at Cartesian `(x, y)`; the cone opens around `+y`.
    pub fn value_cartesian(&self, x: f64, y: f64) -> Result<f64, Error> {
        let rho = x.hypot(y);
        let theta = x.atan2(y);
        self.value(rho, theta)
    }

    /// Value, gradient, Hessian eigenvalues and both Pucci values.
    pub fn sample(&self, rho: f64, theta: f64) -> Result<FieldSample, Error> {
        if !(rho > 0.0) {
            return Err(Error::domain(format!("rho must be positive, got {rho}")));
        }
        let e = self.exponent();
        let sign = self.sign();
        let (phi, phi_d1, phi_d2) = self.profile.eval_with_derivatives(theta)?;
        let pow = rho.powf(e);
        let value = sign * pow * phi;
        let du_drho = sign * e * pow / rho * phi;
        let du_dtheta = sign * pow * phi_d1;
        let (st, ct) = (theta.sin(), theta.cos());
        let gradient = [
            du_drho * st + du_dtheta * ct / rho,
            du_drho * ct - du_dtheta * st / rho,
        ];
        let mut eigs = homogeneous_hessian_eigs(e, phi, phi_d1, phi_d2, rho, theta, 2)?;
        if sign < 0.0 {
            for mu in &mut eigs {
                *mu = -*mu;
            }
            eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        }
        let minus = PucciOperator::minus(self.problem.lambda(), self.problem.big_lambda())?;
        let plus = PucciOperator::plus(self.problem.lambda(), self.problem.big_lambda())?;
        Ok(FieldSample {
            rho,
            theta,
            value,
            gradient,
            hess_eigs: (eigs[0], eigs[1]),
            pucci_minus: minus.apply(&eigs),
            pucci_plus: plus.apply(&eigs),
        })
    }
}

/// Builds the solution of `kind` for `problem` and samples it once.
pub fn sample_solution(
    problem: &ConeProblem,
    kind: SolutionKind,
    rho: f64,
    theta: f64,
) -> Result<FieldSample, Error> {
    SolutionField::new(problem, kind)?.sample(rho, theta)
}

/// Central-difference Hessian of a Cartesian scalar field.
pub fn finite_difference_hessian(
    f: &dyn Fn(f64, f64) -> f64,
    x: f64,
    y: f64,
    step: f64,
) -> SymMatrix2 {
    let h = step;
    let f0 = f(x, y);
    let fxx = (f(x + h, y) - 2.0 * f0 + f(x - h, y)) / (h * h);
    let fyy = (f(x, y + h) - 2.0 * f0 + f(x, y - h)) / (h * h);
    let fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h))
        / (4.0 * h * h);
    SymMatrix2 {
        a11: fxx,
        a12: fxy,
        a22: fyy,
    }
}

/// Default finite-difference step at radius `rho` for Hessian stencils.
///
/// Second central differences amplify evaluation noise by `1/h^2`, which
/// puts the f64 balance point near `1e-4` (noise `~3e-6`, truncation
/// `~1e-7` for the fields here); smaller steps drown in rounding.
pub fn finite_difference_step(rho: f64) -> f64 {
    1e-4 * rho.max(1.0)
}
