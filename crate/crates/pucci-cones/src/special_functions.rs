//! The exponent functions `g_omega`, `h_omega` and their x-parametrized
//! primitives `G_{omega,alpha}`, `H_{omega,alpha}`.
//!
//! For `omega >= 1` the function `g_omega` is defined on
//! `(-inf, 1-omega) U (1-1/omega, +inf)` by three arctangent branches and
//! `h_omega` on `(-inf, 0) U (0, +inf)` by five branches, two of which use
//! the inverse hyperbolic tangent. Every branch has the shape
//!
//! ```text
//! f(x) = c0 * atan(s0 * x) + k * atf(s1 * x)        x in [0, 1]
//! ```
//!
//! with `atf` either `atan` or `atanh`, evaluated here through the even
//! analytic kernels `atan(sqrt(u))/sqrt(u)` and `atanh(sqrt(u))/sqrt(u)`
//! of `u = s1^2 x^2`. The product `k * s1` stays finite and cancellation
//! free at the branch junctions where `k` blows up and `s1` vanishes, so a
//! single code path covers interior points, junctions and the limits
//! toward the genuine divergences (which are reported as
//! [`Evaluation::Diverged`] once past [`DIVERGENCE_CAP`]).
//!
//! For `omega = 1` both operators reduce to the Laplacian and the closed
//! forms `g_1(a) = pi / (2|a|)`, `G_{1,a}(x) = 2 atan(x) / |a|` are used
//! directly (dispatch threshold `omega - 1 < 1e-12`).

use crate::error::Error;

/// Values of `g`/`h`/`G`/`H` larger than this cap are reported as
/// [`Evaluation::Diverged`] so solvers can bracket against `+inf`.
pub const DIVERGENCE_CAP: f64 = 1e100;

/// Below this value of `omega - 1` the Laplacian closed forms are used.
pub const OMEGA_ONE_EPS: f64 = 1e-12;

/// Ellipticity ratio `omega = Lambda / lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Omega(f64);

impl Omega {
    /// Requires `omega >= 1` and finite.
    pub fn new(value: f64) -> Result<Self, Error> {
        if !value.is_finite() || value < 1.0 {
            return Err(Error::domain(format!(
                "ellipticity ratio omega must be finite and >= 1, got {value}"
            )));
        }
        Ok(Omega(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the operators degenerate to the Laplacian.
    pub fn is_laplacian(self) -> bool {
        self.0 - 1.0 < OMEGA_ONE_EPS
    }
}

/// Result of evaluating one of the exponent functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Finite(f64),
    /// The value exceeds [`DIVERGENCE_CAP`]; semantically `+inf`.
    Diverged,
}

impl Evaluation {
    pub fn finite(self) -> Option<f64> {
        match self {
            Evaluation::Finite(v) => Some(v),
            Evaluation::Diverged => None,
        }
    }

    pub fn value_or_infinity(self) -> f64 {
        match self {
            Evaluation::Finite(v) => v,
            Evaluation::Diverged => f64::INFINITY,
        }
    }

    pub fn is_diverged(self) -> bool {
        matches!(self, Evaluation::Diverged)
    }

    fn from_raw(v: f64) -> Self {
        if v.is_finite() && v <= DIVERGENCE_CAP {
            Evaluation::Finite(v)
        } else {
            Evaluation::Diverged
        }
    }
}

/// Branch of `g_omega` / `G_{omega,alpha}` selected by `(omega, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GBranch {
    /// `alpha >= 1`
    AlphaGe1,
    /// `1 - 1/omega < alpha < 1`
    AlphaMid,
    /// `alpha < 1 - omega`
    AlphaLow,
}

impl GBranch {
    /// Classifies `alpha`, rejecting the closed gap `[1-omega, 1-1/omega]`
    /// (which degenerates to `{0}` for `omega = 1`).
    pub fn classify(omega: Omega, alpha: f64) -> Result<Self, Error> {
        let om = omega.value();
        if alpha >= 1.0 {
            Ok(GBranch::AlphaGe1)
        } else if alpha > 1.0 - 1.0 / om {
            Ok(GBranch::AlphaMid)
        } else if alpha < 1.0 - om {
            Ok(GBranch::AlphaLow)
        } else {
            Err(Error::domain(format!(
                "alpha = {alpha} lies in the closed gap [{}, {}] where g_omega is undefined \
                 (no positive-solution exponent there)",
                1.0 - om,
                1.0 - 1.0 / om
            )))
        }
    }
}

/// Branch of `h_omega` / `H_{omega,alpha}` selected by `(omega, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HBranch {
    /// `alpha >= 1`
    AlphaGe1,
    /// `1 - 1/omega < alpha < 1`
    AlphaMid,
    /// `0 < alpha <= 1 - 1/omega` (inverse hyperbolic tangent)
    PosArctanh,
    /// `1 - omega <= alpha < 0` (inverse hyperbolic tangent)
    NegArctanh,
    /// `alpha < 1 - omega`
    AlphaLow,
}

impl HBranch {
    /// Classifies `alpha != 0`; the arctanh branches are empty for `omega = 1`.
    pub fn classify(omega: Omega, alpha: f64) -> Result<Self, Error> {
        let om = omega.value();
        if alpha == 0.0 {
            return Err(Error::domain(
                "alpha = 0: h_omega diverges at 0 and is undefined there",
            ));
        }
        if alpha >= 1.0 {
            Ok(HBranch::AlphaGe1)
        } else if alpha > 1.0 - 1.0 / om {
            Ok(HBranch::AlphaMid)
        } else if alpha > 0.0 {
            Ok(HBranch::PosArctanh)
        } else if alpha >= 1.0 - om {
            Ok(HBranch::NegArctanh)
        } else {
            Ok(HBranch::AlphaLow)
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, HBranch::PosArctanh | HBranch::NegArctanh)
    }
}

/// `atan(sqrt(u)) / sqrt(u)` for `u >= 0`, analytic through `u = 0`.
fn atanc(u: f64) -> f64 {
    if u < 1e-6 {
        1.0 - u / 3.0 + u * u / 5.0 - u * u * u / 7.0
    } else {
        let r = u.sqrt();
        r.atan() / r
    }
}

/// `atanh(sqrt(u)) / sqrt(u)` for `0 <= u < 1`; `+inf` at and beyond 1.
fn atanhc(u: f64) -> f64 {
    if u < 1e-6 {
        1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0
    } else if u < 1.0 {
        let r = u.sqrt();
        // atanh(r) = ln(1+r) - ln(1-r)/... with 1-r = (1-u)/(1+r)
        (r.ln_1p() - 0.5 * (-u).ln_1p()) / r
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    /// `omega = 1`: `2 atan(x) / |alpha|`.
    Laplace { inv_abs_alpha: f64 },
    /// `c0 * atan(s0 x) + ks1 * x * kernel(q x^2)`.
    Piecewise {
        c0: f64,
        s0: f64,
        /// The finite product `k * s1`; `k` alone may blow up at junctions.
        ks1: f64,
        /// `s1^2 >= 0`.
        q: f64,
        hyperbolic: bool,
    },
}

/// One of the strictly increasing maps `G_{omega,alpha}` or
/// `H_{omega,alpha} : [0,1] -> [0, g_omega(alpha)]` (resp. `h`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMap {
    omega: Omega,
    alpha: f64,
    family: Family,
    form: Form,
}

impl AngularMap {
    /// The map `G_{omega,alpha}` with `G(1) = g_omega(alpha)`.
    pub fn g(omega: Omega, alpha: f64) -> Result<Self, Error> {
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        let branch = GBranch::classify(omega, alpha)?;
        let form = if omega.is_laplacian() {
            Form::Laplace {
                inv_abs_alpha: 1.0 / alpha.abs(),
            }
        } else {
            let om = omega.value();
            let sw = om.sqrt();
            let s = alpha - 1.0 + 1.0 / om;
            let t = alpha - 1.0 + om;
            match branch {
                GBranch::AlphaGe1 => Form::Piecewise {
                    c0: 1.0,
                    s0: sw,
                    ks1: (2.0 - alpha) * sw / t,
                    q: om * s / t,
                    hyperbolic: false,
                },
                GBranch::AlphaMid => Form::Piecewise {
                    c0: 1.0,
                    s0: 1.0 / sw,
                    ks1: (2.0 - alpha) / (sw * s),
                    q: t / (om * s),
                    hyperbolic: false,
                },
                GBranch::AlphaLow => Form::Piecewise {
                    c0: -1.0,
                    s0: sw,
                    ks1: (2.0 - alpha) * sw / (-t),
                    q: om * s / t,
                    hyperbolic: false,
                },
            }
        };
        Ok(AngularMap {
            omega,
            alpha,
            family: Family::G,
            form,
        })
    }

    /// The map `H_{omega,alpha}` with `H(1) = h_omega(alpha)`.
    pub fn h(omega: Omega, alpha: f64) -> Result<Self, Error> {
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        let branch = HBranch::classify(omega, alpha)?;
        let form = if omega.is_laplacian() {
            Form::Laplace {
                inv_abs_alpha: 1.0 / alpha.abs(),
            }
        } else {
            let om = omega.value();
            let sw = om.sqrt();
            let s = alpha - 1.0 + 1.0 / om;
            let t = alpha - 1.0 + om;
            match branch {
                HBranch::AlphaGe1 => Form::Piecewise {
                    c0: 1.0,
                    s0: 1.0 / sw,
                    ks1: (2.0 - alpha) / (sw * s),
                    q: t / (om * s),
                    hyperbolic: false,
                },
                HBranch::AlphaMid => Form::Piecewise {
                    c0: 1.0,
                    s0: sw,
                    ks1: (2.0 - alpha) * sw / t,
                    q: om * s / t,
                    hyperbolic: false,
                },
                HBranch::PosArctanh => Form::Piecewise {
                    c0: 1.0,
                    s0: sw,
                    ks1: (2.0 - alpha) * sw / t,
                    // s <= 0 here, so q >= 0; exactly 0 at the junction.
                    q: (-om * s / t).max(0.0),
                    hyperbolic: true,
                },
                HBranch::NegArctanh => Form::Piecewise {
                    c0: -1.0,
                    s0: 1.0 / sw,
                    ks1: (2.0 - alpha) / (sw * (-s)),
                    q: (-t / (om * s)).max(0.0),
                    hyperbolic: true,
                },
                HBranch::AlphaLow => Form::Piecewise {
                    c0: -1.0,
                    s0: 1.0 / sw,
                    ks1: (2.0 - alpha) / (sw * (-s)),
                    q: t / (om * s),
                    hyperbolic: false,
                },
            }
        };
        Ok(AngularMap {
            omega,
            alpha,
            family: Family::H,
            form,
        })
    }

    pub fn omega(&self) -> Omega {
        self.omega
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn check_x(x: f64) -> Result<(), Error> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::range(format!("x = {x} outside [0, 1]")));
        }
        Ok(())
    }

    /// Map value at `x` in `[0, 1]`.
    pub fn eval(&self, x: f64) -> Result<Evaluation, Error> {
        Self::check_x(x)?;
        let v = match self.form {
            Form::Laplace { inv_abs_alpha } => 2.0 * x.atan() * inv_abs_alpha,
            Form::Piecewise {
                c0,
                s0,
                ks1,
                q,
                hyperbolic,
            } => {
                let u = q * x * x;
                let kernel = if hyperbolic { atanhc(u) } else { atanc(u) };
                c0 * (s0 * x).atan() + ks1 * x * kernel
            }
        };
        Ok(Evaluation::from_raw(v))
    }

    /// `g_omega(alpha)` resp. `h_omega(alpha)`: the map value at `x = 1`.
    pub fn total(&self) -> Evaluation {
        self.eval(1.0).expect("x = 1 is always in range")
    }

    /// First derivative in `x`.
    pub fn d1(&self, x: f64) -> Result<f64, Error> {
        Self::check_x(x)?;
        Ok(match self.form {
            Form::Laplace { inv_abs_alpha } => 2.0 * inv_abs_alpha / (1.0 + x * x),
            Form::Piecewise {
                c0,
                s0,
                ks1,
                q,
                hyperbolic,
            } => {
                let u = q * x * x;
                let den = if hyperbolic { 1.0 - u } else { 1.0 + u };
                c0 * s0 / (1.0 + s0 * s0 * x * x) + ks1 / den
            }
        })
    }

    /// Second derivative in `x`.
    pub fn d2(&self, x: f64) -> Result<f64, Error> {
        Self::check_x(x)?;
        Ok(match self.form {
            Form::Laplace { inv_abs_alpha } => {
                let den = 1.0 + x * x;
                -4.0 * inv_abs_alpha * x / (den * den)
            }
            Form::Piecewise {
                c0,
                s0,
                ks1,
                q,
                hyperbolic,
            } => {
                let p = 1.0 + s0 * s0 * x * x;
                let u = q * x * x;
                let first = -2.0 * c0 * s0 * s0 * s0 * x / (p * p);
                let second = if hyperbolic {
                    let den = 1.0 - u;
                    2.0 * ks1 * q * x / (den * den)
                } else {
                    let den = 1.0 + u;
                    -2.0 * ks1 * q * x / (den * den)
                };
                first + second
            }
        })
    }

    /// Inverse map: the unique `x` in `[0, 1]` with `eval(x) = theta`.
    ///
    /// Safeguarded Newton on the strictly increasing map; `tol` bounds the
    /// final bracket width. `RangeError` when `theta` is outside
    /// `[0, total]`.
    pub fn invert(&self, theta: f64, tol: f64) -> Result<f64, Error> {
        let total = match self.total() {
            Evaluation::Finite(v) => v,
            Evaluation::Diverged => {
                return Err(Error::domain(
                    "cannot invert a map whose endpoint value diverged",
                ))
            }
        };
        if !(0.0..=total).contains(&theta) {
            return Err(Error::range(format!(
                "theta = {theta} outside [0, {total}]"
            )));
        }
        if theta == 0.0 {
            return Ok(0.0);
        }
        if theta == total {
            return Ok(1.0);
        }

        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        let mut x = (theta / total).clamp(1e-3, 1.0 - 1e-3);
        for _ in 0..200 {
            let f = self
                .eval(x)?
                .finite()
                .ok_or_else(|| Error::convergence("map value diverged during inversion"))?
                - theta;
            if f >= 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.d1(x)?;
            let mut next = if d > 0.0 && d.is_finite() { x - f / d } else { 0.5 * (lo + hi) };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= tol * x.max(1e-3) || hi - lo <= tol {
                return Ok(next);
            }
            x = next;
        }
        Err(Error::convergence(format!(
            "inversion did not reach tol = {tol} (bracket [{lo}, {hi}])"
        )))
    }

    /// Ratio `r` of the angular profile attached to this map branch:
    /// `+s1^2` on arctangent branches, `-s1^2` on arctanh branches,
    /// `1` in the Laplacian case.
    pub(crate) fn profile_ratio(&self) -> f64 {
        match self.form {
            Form::Laplace { .. } => 1.0,
            Form::Piecewise { q, hyperbolic, .. } => {
                if hyperbolic {
                    -q
                } else {
                    q
                }
            }
        }
    }

    /// Denominator scale `d = s0^2` of the attached angular profile.
    pub(crate) fn profile_denom(&self) -> f64 {
        match self.form {
            Form::Laplace { .. } => 1.0,
            Form::Piecewise { s0, .. } => s0 * s0,
        }
    }
}

/// `g_omega(alpha)`: exponent function of the positive homogeneous solutions.
pub fn eval_g(omega: Omega, alpha: f64) -> Result<Evaluation, Error> {
    Ok(AngularMap::g(omega, alpha)?.total())
}

/// `h_omega(alpha)`: exponent function of the negative homogeneous solutions.
pub fn eval_h(omega: Omega, alpha: f64) -> Result<Evaluation, Error> {
    Ok(AngularMap::h(omega, alpha)?.total())
}

/// `G_{omega,alpha}(x)`.
pub fn eval_g_map(omega: Omega, alpha: f64, x: f64) -> Result<Evaluation, Error> {
    AngularMap::g(omega, alpha)?.eval(x)
}

/// `H_{omega,alpha}(x)`.
pub fn eval_h_map(omega: Omega, alpha: f64, x: f64) -> Result<Evaluation, Error> {
    AngularMap::h(omega, alpha)?.eval(x)
}

/// `d/dx G_{omega,alpha}(x)`.
pub fn deriv_g_map_x(omega: Omega, alpha: f64, x: f64) -> Result<f64, Error> {
    AngularMap::g(omega, alpha)?.d1(x)
}

/// `d^2/dx^2 G_{omega,alpha}(x)`.
pub fn deriv2_g_map_x(omega: Omega, alpha: f64, x: f64) -> Result<f64, Error> {
    AngularMap::g(omega, alpha)?.d2(x)
}

/// `d/dx H_{omega,alpha}(x)`.
pub fn deriv_h_map_x(omega: Omega, alpha: f64, x: f64) -> Result<f64, Error> {
    AngularMap::h(omega, alpha)?.d1(x)
}

/// `d^2/dx^2 H_{omega,alpha}(x)`.
pub fn deriv2_h_map_x(omega: Omega, alpha: f64, x: f64) -> Result<f64, Error> {
    AngularMap::h(omega, alpha)?.d2(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn om(v: f64) -> Omega {
        Omega::new(v).unwrap()
    }

    fn g_val(omega: f64, alpha: f64) -> f64 {
        eval_g(om(omega), alpha).unwrap().finite().unwrap()
    }

    fn h_val(omega: f64, alpha: f64) -> f64 {
        eval_h(om(omega), alpha).unwrap().finite().unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn laplacian_closed_form() {
        assert!((g_val(1.0, 2.0) - FRAC_PI_4).abs() < 1e-15);
        assert!((g_val(1.0, -2.0) - FRAC_PI_4).abs() < 1e-15);
        assert!((h_val(1.0, -2.0) - FRAC_PI_4).abs() < 1e-15);
        assert!((h_val(1.0, 0.5) - PI).abs() < 1e-15);
    }

    #[test]
    fn junction_value_is_half_pi() {
        // g_omega(1) = h_omega(1) = pi/2 for every omega >= 1.
        for w in [1.0, 1.5, 3.0, 10.0, 100.0] {
            assert!((g_val(w, 1.0) - FRAC_PI_2).abs() < 1e-14, "omega {w}");
            assert!((h_val(w, 1.0) - FRAC_PI_2).abs() < 1e-14, "omega {w}");
        }
    }

    #[test]
    fn vanishing_coefficient_branch() {
        // (2 - alpha) = 0 kills the second term.
        assert!((g_val(2.0, 2.0) - 2.0_f64.sqrt().atan()).abs() < 1e-15);
    }

    #[test]
    fn reference_values_50_digit() {
        // Frozen from an independent 50-digit evaluation of the defining
        // piecewise formulas (mpmath).
        assert!(rel_close(g_val(2.0, -3.0), 1.085528347139917598964, 1e-15));
        assert!(rel_close(h_val(2.0, 0.4), 2.655879505652103192071, 1e-15));
        let hmap = AngularMap::h(om(2.0), -0.5).unwrap();
        assert!(rel_close(
            hmap.eval(0.7).unwrap().finite().unwrap(),
            0.8324194529740580843929,
            1e-15
        ));
        let gmap = AngularMap::g(om(2.0), 3.0).unwrap();
        assert!(rel_close(
            gmap.eval(0.4).unwrap().finite().unwrap(),
            0.3818213217395866015434,
            1e-15
        ));
        assert!(rel_close(gmap.d1(0.4).unwrap(), 0.7767460853943135684706, 1e-14));
        assert!(rel_close(gmap.d2(0.4).unwrap(), -1.053111855585176668047, 1e-13));
    }

    #[test]
    fn g_map_special_values() {
        // G_{omega,2}(x) = atan(sqrt(omega) x)
        let v = eval_g_map(om(4.0), 2.0, 0.5).unwrap().finite().unwrap();
        assert!((v - FRAC_PI_4).abs() < 1e-15);
        // G_{1,alpha}(x) = 2 atan(x) / |alpha|
        let v = eval_g_map(om(1.0), 3.0, 1.0).unwrap().finite().unwrap();
        assert!((v - PI / 6.0).abs() < 1e-15);
        // both terms vanish at x = 0
        for (w, a) in [(1.0, 2.0), (3.0, 1.5), (2.0, -4.0), (5.0, 0.9)] {
            assert_eq!(eval_g_map(om(w), a, 0.0).unwrap().finite().unwrap(), 0.0);
        }
        for (w, a) in [(4.0, 1.0), (2.0, 0.3), (2.0, -0.5), (3.0, -7.0)] {
            assert_eq!(eval_h_map(om(w), a, 0.0).unwrap().finite().unwrap(), 0.0);
        }
    }

    #[test]
    fn h_map_alpha_one_reaches_half_pi() {
        let v = eval_h_map(om(4.0), 1.0, 1.0).unwrap().finite().unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn map_derivatives_at_zero() {
        assert!((deriv_g_map_x(om(4.0), 2.0, 0.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((deriv_g_map_x(om(1.0), 3.0, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn map_derivatives_match_finite_differences() {
        let cases = [
            (1.0, 2.5, false),
            (2.0, 3.0, false),
            (2.0, 0.7, false),
            (2.0, -3.0, false),
            (5.0, 0.3, true),
            (5.0, -2.0, true),
            (3.0, -0.5, true),
            (10.0, -50.0, true),
        ];
        let eps = 1e-6;
        for &(w, a, use_h) in &cases {
            let map = if use_h {
                AngularMap::h(om(w), a).unwrap()
            } else {
                AngularMap::g(om(w), a).unwrap()
            };
            for x in [0.1, 0.35, 0.6, 0.85] {
                let f = |z: f64| map.eval(z).unwrap().finite().unwrap();
                let fd1 = (f(x + eps) - f(x - eps)) / (2.0 * eps);
                let fd2 = (f(x + eps) - 2.0 * f(x) + f(x - eps)) / (eps * eps);
                let d1 = map.d1(x).unwrap();
                let d2 = map.d2(x).unwrap();
                assert!(
                    rel_close(d1, fd1, 1e-7),
                    "d1 mismatch at (omega={w}, alpha={a}, x={x}): {d1} vs {fd1}"
                );
                assert!(
                    (d2 - fd2).abs() <= 1e-3 * (1.0 + d2.abs()),
                    "d2 mismatch at (omega={w}, alpha={a}, x={x}): {d2} vs {fd2}"
                );
                assert!(d1 > 0.0, "map must be strictly increasing");
            }
        }
    }

    #[test]
    fn endpoint_identity() {
        // G(1) = g and H(1) = h to 1e-12 relative.
        for &(w, a) in &[(1.0, 2.0), (2.0, 1.7), (2.0, -3.5), (7.0, 0.99)] {
            let total = AngularMap::g(om(w), a).unwrap().total().finite().unwrap();
            assert!(rel_close(total, g_val(w, a), 1e-12));
        }
        for &(w, a) in &[(2.0, 0.4), (2.0, -0.5), (4.0, 3.0), (4.0, -9.0)] {
            let total = AngularMap::h(om(w), a).unwrap().total().finite().unwrap();
            assert!(rel_close(total, h_val(w, a), 1e-12));
        }
    }

    #[test]
    fn branch_continuity_at_junctions() {
        // |f(a* + e) - f(a* - e)| -> 0 as e -> 0, tested with a slope scale.
        let check = |f: &dyn Fn(f64) -> f64, a_star: f64| {
            for eps in [1e-3, 1e-6] {
                let jump = (f(a_star + eps) - f(a_star - eps)).abs();
                let slope = ((f(a_star + 2.0 * eps) - f(a_star + eps)) / eps).abs();
                let tol = 10.0 * eps * slope.max(1.0);
                assert!(jump <= tol, "jump {jump} > {tol} at {a_star} (eps {eps})");
            }
        };
        for w in [2.0_f64, 5.0, 1.3] {
            check(&|a| g_val(w, a), 1.0);
            check(&|a| h_val(w, a), 1.0);
            check(&|a| h_val(w, a), 1.0 - 1.0 / w);
            check(&|a| h_val(w, a), 1.0 - w);
        }
    }

    #[test]
    fn monotone_in_alpha_on_each_branch() {
        for w in [1.0, 2.0, 6.5] {
            // increasing on (-inf, 1-omega)
            let edge = 1.0 - w;
            let mut prev = f64::NEG_INFINITY;
            for i in 0..1000 {
                let a = edge - 10.0 + 9.99 * (i as f64) / 999.0;
                let v = g_val(w, a);
                assert!(v > prev, "g not increasing at omega={w}, alpha={a}");
                prev = v;
            }
            // decreasing on (1-1/omega, +inf)
            let edge = 1.0 - 1.0 / w;
            let mut prev = f64::INFINITY;
            for i in 0..1000 {
                let a = edge + 0.01 + 10.0 * (i as f64) / 999.0;
                let v = g_val(w, a);
                assert!(v < prev, "g not decreasing at omega={w}, alpha={a}");
                prev = v;
            }
        }
    }

    #[test]
    fn monotone_in_omega_and_ordering_chain() {
        // g_omega increases in omega (alpha != 1), h_omega decreases, and
        // h_omega(a) < pi/(2|a|) < g_omega(a) for omega > 1.
        for a in [3.0, 1.5, -2.5, -8.0] {
            let mut prev_g = 0.0;
            let mut prev_h = f64::INFINITY;
            for w in [1.0, 1.5, 2.0, 4.0, 16.0] {
                let gv = g_val(w, a);
                let hv = h_val(w, a);
                assert!(gv > prev_g - 1e-15, "g not increasing in omega at {w}, {a}");
                assert!(hv < prev_h + 1e-15, "h not decreasing in omega at {w}, {a}");
                prev_g = gv;
                prev_h = hv;
                let lap = FRAC_PI_2 / a.abs();
                if w > 1.0 {
                    assert!(hv < lap && lap < gv, "chain fails at omega={w}, alpha={a}");
                }
            }
        }
        for w in [1.0, 2.0, 30.0] {
            assert!((g_val(w, 1.0) - FRAC_PI_2).abs() < 1e-14);
        }
    }

    #[test]
    fn asymptotes() {
        for w in [1.0, 2.0, 9.0] {
            assert!(g_val(w, 1e6) < 1e-5);
            assert!(g_val(w, -1e6) < 1e-5);
            assert!(h_val(w, 1e6) < 1e-5);
            assert!(h_val(w, -1e6) < 1e-5);
        }
    }

    #[test]
    fn divergence_toward_gap_edges() {
        let w = om(2.0);
        // Blows up monotonically toward both gap edges; the closest f64
        // neighbours of the edges still evaluate (huge but finite).
        let near = eval_g(w, 0.5 + 1e-12).unwrap().finite().unwrap();
        assert!(near > 1e4);
        let nearer = eval_g(w, 0.5f64.next_up()).unwrap().finite().unwrap();
        assert!(nearer > near);
        let left = eval_g(w, (-1.0f64).next_down()).unwrap().finite().unwrap();
        assert!(left > 1e6);
        // h genuinely diverges at alpha -> 0
        assert!(eval_h(w, 1e-200).unwrap().is_diverged());
        assert!(eval_h(w, -1e-200).unwrap().is_diverged());
    }

    #[test]
    fn domain_errors() {
        let w = om(2.0);
        // closed gap [1-omega, 1-1/omega] = [-1, 0.5]
        for a in [-1.0, -0.2, 0.0, 0.3, 0.5] {
            assert!(matches!(eval_g(w, a), Err(Error::Domain(_))), "alpha {a}");
        }
        assert!(eval_g(w, 0.5 + 1e-9).is_ok());
        assert!(eval_g(w, -1.0 - 1e-9).is_ok());
        assert!(matches!(eval_h(w, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_g(om(1.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(Omega::new(0.5), Err(Error::Domain(_))));
        assert!(matches!(Omega::new(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            eval_g_map(om(2.0), 2.0, -0.1),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            eval_h_map(om(2.0), 2.0, 1.1),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            deriv_g_map_x(om(2.0), 2.0, 2.0),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn h_junction_endpoints_evaluate() {
        // The closed arctanh-branch endpoints alpha = 1-1/omega and
        // alpha = 1-omega hit the 0/0 form of the raw coefficient; the
        // kernel path must stay finite and match the neighbour branch.
        for w in [2.0, 5.0] {
            let a = 1.0 - 1.0 / w;
            let inner = h_val(w, a);
            let outer = h_val(w, a + 1e-9);
            assert!(rel_close(inner, outer, 1e-6), "omega {w} at 1-1/omega");
            let a = 1.0 - w;
            let inner = h_val(w, a);
            let outer = h_val(w, a - 1e-9);
            assert!(rel_close(inner, outer, 1e-6), "omega {w} at 1-omega");
        }
    }

    #[test]
    fn formal_h_equals_g_of_inverse_omega_on_shared_domain() {
        // For alpha outside [1-omega, 1-1/omega] the same formulas evaluated
        // with the ratio inverted give h; check by swapping the roles of the
        // two arctan scales.
        for &(w, a) in &[(2.0_f64, 3.0_f64), (2.0, -4.0), (5.0, 1.2), (5.0, -9.0)] {
            let hv = h_val(w, a);
            // direct recomputation of g_{1/omega} extended to ratio < 1
            let om_inv = 1.0 / w;
            let s = a - 1.0 + w;
            let t = a - 1.0 + om_inv;
            let k = (2.0 - a) / (s * t).sqrt();
            let expect = if a >= 1.0 {
                om_inv.sqrt().atan() + k * (om_inv * s / t).sqrt().atan()
            } else {
                -(om_inv.sqrt().atan()) + k * (om_inv * s / t).sqrt().atan()
            };
            assert!(rel_close(hv, expect, 1e-12), "omega {w} alpha {a}");
        }
    }

    #[test]
    fn invert_round_trip() {
        let cases = [
            (1.0, 2.0, false),
            (2.0, 3.0, false),
            (2.0, -3.0, false),
            (2.0, 0.8, false),
            (2.0, 0.4, true),
            (2.0, -0.5, true),
            (6.0, -11.0, true),
        ];
        for &(w, a, use_h) in &cases {
            let map = if use_h {
                AngularMap::h(om(w), a).unwrap()
            } else {
                AngularMap::g(om(w), a).unwrap()
            };
            for x in [0.0, 0.1, 0.37, 0.62, 0.95, 1.0] {
                let theta = map.eval(x).unwrap().finite().unwrap();
                let back = map.invert(theta, 1e-14).unwrap();
                assert!(
                    (back - x).abs() < 1e-10,
                    "round trip (omega={w}, alpha={a}, x={x}): got {back}"
                );
            }
        }
    }
}
