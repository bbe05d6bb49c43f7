//! Spectral expansion of the subtracted Eisenstein product and resolvent
//! solutions of `(Δ − λ_w) u = E_a E_b` on the modular surface.
//!
//! [`expand_remainder`] decomposes the square-integrable remainder
//! `S = E_a E_b − plan` over the spectrum: finitely many Maass cusp forms,
//! the constant function, and the continuous family `E_(1/2+it)` sampled on
//! a cached quadrature grid. [`SpectralExpansion::synthesize`] reassembles
//! `S`; [`solve`] divides each spectral component by `λ_component − λ_w`
//! (direct route, `Re w > 1/2`); [`solve_continued`] evaluates the same
//! solution through a reflection-symmetric core plus a skew correction,
//! which stays finite across the critical line and extends the solution to
//! `Re w < 1/2`.
//!
//! Two normalization facts the assembly relies on:
//!
//! * Cusp-form records are Hecke-normalized (`c_1 = 1`), not unit length,
//!   so the coefficient of `f` in the expansion is `<S,f>/<f,f>` with the
//!   squared norm measured by the quadrature oracle.
//! * `E_1*` is not an eigenfunction: `Δ E_1* = (3/π)·1`. Inverting
//!   `Δ − λ_w` on a term `κ E_1*` yields `κ E_1*/(0 − λ_w) − κ(3/π)/λ_w²`,
//!   a plain division plus a constant correction. Dropping the correction
//!   would leave a defect of size `|κ|(3/π)/|λ_w|` in the equation.

use num_complex::Complex64;

use crate::cuspforms::{cuspform_eval, CuspFormRecord};
use crate::eisenstein::{eisenstein_eval, laplace_eigenvalue};
use crate::error::{Error, Result};
use crate::numerics::{
    complex_derivative, gauss_legendre, hyperbolic_laplacian_fd, QuadratureSpec, UpperHalfPoint,
};
use crate::rankin::{
    inner_product_detailed, lambda_continuous, lambda_cuspidal, MellinNormalization, SurfaceField,
};
use crate::regimes::{subtraction_plan, PlanBasis, SubtractionPlan};
use crate::special::c_residue;

const PI: f64 = std::f64::consts::PI;
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Solutions whose eigenvalue sits within this distance of an eigenvalue
/// appearing in the expansion are refused rather than amplified.
pub const COLLISION_TOLERANCE: f64 = 1e-8;

/// Distance from a spectral-line node at which the resolvent quotient
/// switches to a Taylor difference quotient. Only reachable when `w` is
/// within the guard distance of the critical line.
const NODE_GUARD: f64 = 1e-4;

/// Construction and evaluation knobs shared by the expansion and solvers.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Half-length of the spectral line window `[-t_spec, t_spec]`.
    pub t_spec: f64,
    /// Gauss-Legendre order on each width-one panel of the window.
    pub panel_order: usize,
    /// Dirichlet-series length for cuspidal pairings; `None` spends every
    /// coefficient the record carries.
    pub cusp_series_terms: Option<usize>,
    /// Accept records whose validation failed.
    pub allow_flagged: bool,
    /// Relative tail tolerance for cusp-form evaluation.
    pub cusp_tail_tol: f64,
    /// Height where oracle quadrature hands off to closed-form tails in
    /// the construction diagnostics.
    pub oracle_y_cap: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            t_spec: 30.0,
            panel_order: 16,
            cusp_series_terms: None,
            allow_flagged: false,
            cusp_tail_tol: 1e-9,
            oracle_y_cap: 8.0,
        }
    }
}

/// Cuspidal component of the expansion: the form, its pairing against the
/// remainder, and the form's squared norm in the record's own
/// normalization.
#[derive(Debug, Clone)]
pub struct CuspidalTerm {
    pub form: CuspFormRecord,
    /// `<S, f>`, from the closed unfolding of the product pairing; the
    /// subtracted Eisenstein terms and constants pair to zero against cusp
    /// forms, so this equals the product's own pairing.
    pub pairing: Complex64,
    /// `<f, f>`, measured by the quadrature oracle.
    pub norm_squared: f64,
}

impl CuspidalTerm {
    /// Coefficient of `f` in the expansion of the remainder.
    pub fn coefficient(&self) -> Complex64 {
        self.pairing / self.norm_squared
    }
}

/// One node of the spectral-line quadrature.
#[derive(Debug, Clone, Copy)]
pub struct ContinuousSample {
    /// Height on the critical line, `s = 1/2 + it`.
    pub t: f64,
    /// Quadrature weight on the panel.
    pub weight: f64,
    /// `<S, E_(1/2+it)>`, cached once per node.
    pub density: Complex64,
}

/// Spectral data of the remainder `S = E_a E_b − plan`: everything needed
/// to synthesize `S` itself or a resolvent applied to it. Immutable after
/// construction; evaluation at distinct points may run concurrently.
#[derive(Debug, Clone)]
pub struct SpectralExpansion {
    pub plan: SubtractionPlan,
    /// Constant-eigenfunction coefficient `<S,1>/<1,1>`: zero exactly,
    /// because the subtraction removes the full residual component.
    pub residual_constant: Complex64,
    /// Measured `|<S,1>|/<1,1>` from the quadrature oracle, kept as a
    /// cross-check on the analytic zero.
    pub residual_diagnostic: f64,
    pub cuspidal: Vec<CuspidalTerm>,
    pub continuous: Vec<ContinuousSample>,
    pub config: SolverConfig,
}

/// Decompose the remainder over the spectrum of the surface.
///
/// Cuspidal pairings use the closed unfolding with the larger-real-part
/// parameter in the unfolded slot, where the Dirichlet series converges
/// fastest; the continuous density is sampled once per quadrature node and
/// cached. The residual coefficient is stored as its analytic value zero,
/// with the quadrature measurement kept as a diagnostic.
pub fn expand_remainder(
    alpha: Complex64,
    beta: Complex64,
    forms: &[CuspFormRecord],
    config: SolverConfig,
) -> Result<SpectralExpansion> {
    if !(config.t_spec >= 1.0) || !config.t_spec.is_finite() {
        return Err(Error::Domain {
            what: "expand_remainder",
            detail: format!("t_spec must be finite and >= 1, got {}", config.t_spec),
        });
    }
    if config.panel_order == 0 {
        return Err(Error::Domain {
            what: "expand_remainder",
            detail: "panel_order must be positive".into(),
        });
    }
    let plan = subtraction_plan(alpha, beta)?;

    let mut cuspidal = Vec::with_capacity(forms.len());
    for (index, form) in forms.iter().enumerate() {
        if form.flagged && !config.allow_flagged {
            return Err(Error::Validation {
                record: index + 1,
                detail: "record is flagged; pass allow_flagged to use it anyway".into(),
            });
        }
        let n_terms = config
            .cusp_series_terms
            .unwrap_or(form.coefficients.len());
        // Unfold the larger-Re parameter: the series terms then decay like
        // n^(Re(alpha) - Re(beta)) times the coefficient bound.
        let pairing = lambda_cuspidal(
            plan.beta,
            form,
            plan.alpha,
            n_terms,
            MellinNormalization::Derived,
        )?;
        let norm_squared = if pairing.norm() == 0.0 {
            // Odd forms pair to zero against the even product; their norm
            // never enters a nonzero term.
            1.0
        } else {
            let field = SurfaceField::cuspform(form);
            inner_product_detailed(
                &field,
                &field,
                config.oracle_y_cap,
                &QuadratureSpec::default(),
            )?
            .value
            .re
        };
        cuspidal.push(CuspidalTerm {
            form: form.clone(),
            pairing,
            norm_squared,
        });
    }

    let (nodes, weights) = gauss_legendre(config.panel_order);
    let mut continuous = Vec::new();
    let mut lo = -config.t_spec;
    while lo < config.t_spec - 1e-12 {
        let hi = (lo + 1.0).min(config.t_spec);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for (x, w) in nodes.iter().zip(weights) {
            let t = mid + half * x;
            let density = lambda_continuous(
                Complex64::new(0.5, t),
                plan.alpha,
                plan.beta,
                MellinNormalization::Derived,
            )?;
            continuous.push(ContinuousSample {
                t,
                weight: w * half,
                density,
            });
        }
        lo = hi;
    }

    let residual_diagnostic = {
        let s_field = SurfaceField::subtracted_product(&plan)?;
        let one_field = SurfaceField::constant(ONE);
        let pairing_with_one = inner_product_detailed(
            &s_field,
            &one_field,
            config.oracle_y_cap,
            &QuadratureSpec::default(),
        )?;
        pairing_with_one.value.norm() / (PI / 3.0)
    };

    Ok(SpectralExpansion {
        plan,
        residual_constant: ZERO,
        residual_diagnostic,
        cuspidal,
        continuous,
        config,
    })
}

impl SpectralExpansion {
    /// Reassemble `S(z)` from the stored data: cusp terms, the constant
    /// component, and the truncated spectral-line integral.
    pub fn synthesize(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let mut acc = self.residual_constant;
        for term in &self.cuspidal {
            if term.pairing.norm() == 0.0 {
                continue;
            }
            acc += term.coefficient() * cuspform_eval(&term.form, z, self.config.cusp_tail_tol)?;
        }
        let mut line = ZERO;
        for node in &self.continuous {
            line +=
                node.weight * node.density * eisenstein_eval(Complex64::new(0.5, node.t), z)?;
        }
        Ok(acc + line / (4.0 * PI))
    }

    /// Empirical bound on the spectral-line mass dropped beyond `t_spec`
    /// at `z`: the outermost panel's largest `|density · E|` extended by
    /// the decay rate measured against the previous panel.
    pub fn spectral_tail_bound(&self, z: &UpperHalfPoint) -> Result<f64> {
        let t_spec = self.config.t_spec;
        let mut outer: f64 = 0.0;
        let mut inner: f64 = 0.0;
        for node in &self.continuous {
            let band = t_spec - node.t.abs();
            if band > 2.0 {
                continue;
            }
            let value = (node.density * eisenstein_eval(Complex64::new(0.5, node.t), z)?).norm();
            if band <= 1.0 {
                outer = outer.max(value);
            } else {
                inner = inner.max(value);
            }
        }
        let outer = outer.max(1e-280);
        let inner = inner.max(outer);
        // Decay rate per unit height, clamped so a flat or noisy pair of
        // panels still yields a finite (conservative) bound.
        let rate = (inner / outer).ln().clamp(0.5, 10.0);
        Ok(4.0 * 2.0 * outer / (4.0 * PI * rate))
    }
}

/// Evaluation strategy of a [`SolutionHandle`].
#[derive(Debug, Clone, Copy)]
enum Route {
    /// Plain division of every spectral component; needs `Re w > 1/2`.
    Direct,
    /// Reflection-symmetric core plus skew correction; defined off the
    /// critical line on both sides.
    Continued {
        /// The line density continued to the reflected parameter,
        /// `<S, E_s>` evaluated at `conj(1-w)`.
        reflected_density: Complex64,
    },
}

/// A solution `u_w` of `(Δ − λ_w) u_w = E_a E_b`, evaluated lazily from a
/// spectral expansion.
#[derive(Debug, Clone)]
pub struct SolutionHandle {
    pub expansion: SpectralExpansion,
    pub w: Complex64,
    pub lambda_w: Complex64,
    route: Route,
}

fn check_collisions(expansion: &SpectralExpansion, w: Complex64) -> Result<()> {
    let lambda_w = laplace_eigenvalue(w);
    let mut eigenvalues: Vec<Complex64> = expansion
        .plan
        .terms
        .iter()
        .map(|term| term.eigenvalue())
        .collect();
    if expansion.plan.constant.norm() > 0.0 || expansion.residual_constant.norm() > 0.0 {
        eigenvalues.push(ZERO);
    }
    for term in &expansion.cuspidal {
        if term.pairing.norm() > 0.0 {
            eigenvalues.push(Complex64::new(term.form.laplace_eigenvalue(), 0.0));
        }
    }
    for lambda in eigenvalues {
        if (lambda_w - lambda).norm() < COLLISION_TOLERANCE {
            return Err(Error::EigenvalueCollision { w, lambda });
        }
    }
    Ok(())
}

/// Solve `(Δ − λ_w) u = E_a E_b` by the direct spectral division,
/// convergent for `Re w > 1/2`.
pub fn solve(
    alpha: Complex64,
    beta: Complex64,
    w: Complex64,
    forms: &[CuspFormRecord],
    config: SolverConfig,
) -> Result<SolutionHandle> {
    if !(w.re > 0.5) {
        return Err(Error::Domain {
            what: "solve",
            detail: format!("direct route needs Re(w) > 1/2, got w = {w}; use solve_continued"),
        });
    }
    let expansion = expand_remainder(alpha, beta, forms, config)?;
    check_collisions(&expansion, w)?;
    Ok(SolutionHandle {
        w,
        lambda_w: laplace_eigenvalue(w),
        expansion,
        route: Route::Direct,
    })
}

/// Solve `(Δ − λ_w) u = E_a E_b` through the continued form, defined for
/// `w` off the critical line and away from the pole of `E_w` at `w = 1`.
///
/// The spectral-line integrand is replaced by the difference quotient
/// `(density(s)·E_s − density(1-w)·E_w)/(λ_s − λ_w)`, whose singularities
/// at `s = w` and `s = 1 - w` are removable; the subtracted mass is
/// restored by a closed-form tail and the exact skew correction
/// `density(1-w)·E_w/(2(1-2w))`. On `Re w > 1/2` this reproduces the
/// direct route; on `Re w < 1/2` it is the meromorphic continuation.
pub fn solve_continued(
    alpha: Complex64,
    beta: Complex64,
    w: Complex64,
    forms: &[CuspFormRecord],
    config: SolverConfig,
) -> Result<SolutionHandle> {
    if (w.re - 0.5).abs() < 1e-9 {
        return Err(Error::Domain {
            what: "solve_continued",
            detail: format!("the continued route is defined off the critical line, got w = {w}"),
        });
    }
    if (w - ONE).norm() < 1e-9 {
        return Err(Error::Pole { what: "E_w", at: w });
    }
    let nu = w - 0.5;
    if config.t_spec < 2.0 * nu.norm() + 2.0 {
        return Err(Error::Domain {
            what: "solve_continued",
            detail: format!(
                "t_spec = {} is too small for the closed-form tail at w = {w}; need at least {}",
                config.t_spec,
                2.0 * nu.norm() + 2.0
            ),
        });
    }
    let expansion = expand_remainder(alpha, beta, forms, config)?;
    check_collisions(&expansion, w)?;
    let reflected_density = lambda_continuous(
        (ONE - w).conj(),
        expansion.plan.alpha,
        expansion.plan.beta,
        MellinNormalization::Derived,
    )?;
    Ok(SolutionHandle {
        w,
        lambda_w: laplace_eigenvalue(w),
        expansion,
        route: Route::Continued { reflected_density },
    })
}

impl SolutionHandle {
    /// Whether this handle evaluates through the continued form.
    pub fn is_continued(&self) -> bool {
        matches!(self.route, Route::Continued { .. })
    }

    /// `u_w(z)`.
    pub fn evaluate(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        match self.route {
            Route::Direct => Ok(self.discrete_part(z)? + self.direct_line_part(z)?),
            Route::Continued { reflected_density } => {
                let e_w = eisenstein_eval(self.w, z)?;
                let core = self.symmetric_core(z, reflected_density * e_w)?;
                Ok(core + reflected_density * e_w / (2.0 * (ONE - 2.0 * self.w)))
            }
        }
    }

    /// The component of the continued solution invariant under
    /// `w ↦ 1 − w`; the full value adds the skew correction
    /// `density(1−w)·E_w/(2(1−2w))`. Defined for continued handles.
    pub fn symmetric_part(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        match self.route {
            Route::Continued { reflected_density } => {
                let e_w = eisenstein_eval(self.w, z)?;
                self.symmetric_core(z, reflected_density * e_w)
            }
            Route::Direct => Err(Error::Domain {
                what: "symmetric_part",
                detail: "the symmetric core is only assembled on the continued route".into(),
            }),
        }
    }

    /// Relative defect of the differential equation at `z`:
    /// `|Δ_fd u − λ_w u − E_a E_b| / |E_a E_b|` with stencil step
    /// `fd_step`.
    pub fn residual_check(&self, z: &UpperHalfPoint, fd_step: f64) -> Result<f64> {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let u = |p: UpperHalfPoint| -> Complex64 { self.evaluate(&p).unwrap_or(nan) };
        let lap = hyperbolic_laplacian_fd(u, *z, fd_step)?;
        let center = self.evaluate(z)?;
        let plan = &self.expansion.plan;
        let rhs = eisenstein_eval(plan.alpha, z)? * eisenstein_eval(plan.beta, z)?;
        let defect = lap - self.lambda_w * center - rhs;
        if !defect.re.is_finite() || !defect.im.is_finite() {
            return Err(Error::NonConvergence {
                what: "residual_check",
                detail: format!("stencil evaluation failed near z = ({}, {})", z.x(), z.y()),
            });
        }
        Ok(defect.norm() / rhs.norm())
    }

    /// Discrete spectral components divided by their eigenvalue shifts:
    /// subtraction-plan terms, constants, and cusp forms.
    fn discrete_part(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let lw = self.lambda_w;
        let plan = &self.expansion.plan;
        let mut acc = ZERO;
        for term in &plan.terms {
            acc += term.evaluate(z)? / (term.eigenvalue() - lw);
            if let PlanBasis::EisensteinStar = term.basis {
                // Delta E_1* = (3/pi)·1, so the resolvent on this term
                // needs a constant correction beyond the plain division.
                acc -= term.coefficient * c_residue() / (lw * lw);
            }
        }
        if plan.constant.norm() > 0.0 {
            acc += plan.constant / (ZERO - lw);
        }
        if self.expansion.residual_constant.norm() > 0.0 {
            acc += self.expansion.residual_constant / (ZERO - lw);
        }
        for term in &self.expansion.cuspidal {
            if term.pairing.norm() == 0.0 {
                continue;
            }
            let shift = Complex64::new(term.form.laplace_eigenvalue(), 0.0) - lw;
            acc += term.coefficient()
                * cuspform_eval(&term.form, z, self.expansion.config.cusp_tail_tol)?
                / shift;
        }
        Ok(acc)
    }

    /// Truncated spectral-line integral of the direct route. The dropped
    /// tail carries the exponentially decaying density, so no closed-form
    /// completion is needed here.
    fn direct_line_part(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let mut acc = ZERO;
        for node in &self.expansion.continuous {
            let s = Complex64::new(0.5, node.t);
            let shift = laplace_eigenvalue(s) - self.lambda_w;
            acc += node.weight * node.density * eisenstein_eval(s, z)? / shift;
        }
        Ok(acc / (4.0 * PI))
    }

    /// The reflection-symmetric core: discrete parts, the subtracted line
    /// integral, and the closed-form completion of the subtracted tail.
    ///
    /// `g_w = density(1-w)·E_w(z)` is passed in so `E_w` is evaluated once
    /// per point across the core and the skew correction.
    fn symmetric_core(&self, z: &UpperHalfPoint, g_w: Complex64) -> Result<Complex64> {
        let w = self.w;
        let mut line = ZERO;
        for node in &self.expansion.continuous {
            let s = Complex64::new(0.5, node.t);
            let d1 = s - w;
            let d2 = s + w - ONE;
            let value = if d1.norm() >= NODE_GUARD && d2.norm() >= NODE_GUARD {
                (node.density * eisenstein_eval(s, z)? - g_w) / (d1 * d2)
            } else {
                self.guarded_node(z, s, d1, d2)?
            };
            line += node.weight * value;
        }
        // Closed form of the subtracted integrand's tail beyond t_spec:
        // the density-carrying part decays exponentially and is dropped,
        // while the constant -g_w picks up the full resolvent mass
        //   int_{|t| >= T} dt/(lambda_s - lambda_w) = -2 atan(nu/T)/nu,
        // analytic in nu on |nu| < T, hence valid on both sides of the
        // critical line.
        let nu = w - 0.5;
        let t_spec = self.expansion.config.t_spec;
        let tail = g_w * (nu / t_spec).atan() / (2.0 * PI * nu);
        Ok(self.discrete_part(z)? + line / (4.0 * PI) + tail)
    }

    /// Taylor difference quotient for a node where a factor of
    /// `λ_s − λ_w = (s − w)(s + w − 1)` degenerates. The integrand
    /// `(G(s) − G(w)) / (λ_s − λ_w)` with `G(v) = density(1−v)·E_v(z)` is
    /// analytic across both roots: at `s = w` by the difference, at
    /// `s = 1 − w` because `G` is invariant under `v ↦ 1 − v`.
    fn guarded_node(
        &self,
        z: &UpperHalfPoint,
        s: Complex64,
        d1: Complex64,
        d2: Complex64,
    ) -> Result<Complex64> {
        let plan = &self.expansion.plan;
        let (alpha, beta) = (plan.alpha, plan.beta);
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let g = |v: Complex64| -> Complex64 {
            let density = lambda_continuous((ONE - v).conj(), alpha, beta, MellinNormalization::Derived);
            match (density, eisenstein_eval(v, z)) {
                (Ok(d), Ok(e)) => d * e,
                _ => nan,
            }
        };
        let radius = 5e-3;
        let value = if d1.norm() < NODE_GUARD && d2.norm() < NODE_GUARD {
            // Both roots inside the guard forces w (and the node) within
            // the guard of 1/2, where G'(1/2) = 0 by the reflection
            // symmetry and the quotient tends to G''(1/2)/2.
            complex_derivative(g, Complex64::new(0.5, 0.0), 2, radius)? / 2.0
        } else if d1.norm() < NODE_GUARD {
            complex_derivative(g, s - 0.5 * d1, 1, radius)? / d2
        } else {
            complex_derivative(g, s - 0.5 * d2, 1, radius)? / d1
        };
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonConvergence {
                what: "guarded spectral node",
                detail: format!("difference-quotient evaluation failed near s = {s}"),
            });
        }
        Ok(value)
    }
}
