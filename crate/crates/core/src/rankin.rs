//! Rankin-Selberg coefficients of the spectral decomposition, and a
//! fundamental-domain inner-product oracle that pins their normalization.
//!
//! The subtracted product `S = E_a E_b - (plan)` pairs against the
//! spectral basis through unfolded integrals. Both the continuous-
//! spectrum density and the cuspidal coefficients factor as
//!
//!   (Dirichlet series in the Fourier coefficients) x (Mellin transform
//!   of a Whittaker product),
//!
//! and both factors have closed forms: a zeta quotient via the
//! Ramanujan identity for `sigma_a(n) sigma_b(n)`, and a Gamma quartet
//! for the Mellin transform. Sources disagree on where the `pi^(a+b) /
//! (Gamma(a) Gamma(b))` prefactor lands, so both conventions are
//! implemented behind [`MellinNormalization`] and the numeric inner
//! product over the fundamental domain decides; see
//! `continuous_coefficient_matches_inner_product`.
//!
//! The oracle integrates `F conj(G) / y^2` over the truncated domain
//! `{|x| <= 1/2, |z| >= 1, y <= y_cap}` by tensor quadrature and adds
//! the cusp contribution above `y_cap` in closed form from the fields'
//! constant-term profiles (sums of `coeff * y^p * (ln y)^m`). For the
//! pairs that arise here the tail is O(1), not a small correction:
//! dropping it changes `<S, E_s>` in the second digit.

use num_complex::Complex64;

use crate::cuspforms::{cuspform_eval, CuspFormRecord, Parity};
use crate::eisenstein::{eisenstein_e1star, eisenstein_eval, phi_coefficient};
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, QuadratureSpec, UpperHalfPoint};
use crate::regimes::{PlanBasis, SubtractionPlan};
use crate::special::{
    c_coefficient, c_laurent_constant, c_residue, log_gamma, riemann_zeta, zeta_times_sm1,
};
#[cfg(test)]
use crate::special::xi_entire;

const PI: f64 = std::f64::consts::PI;

/// Placement of the `pi^(a+b) / (Gamma(a) Gamma(b))` prefactor.
///
/// `Derived` is the bare Mellin transform `int_0^inf y^(sigma-2)
/// W_a(y) W_b(y) dy` (Gamma quartet over `2 pi^sigma Gamma(sigma)`),
/// which combines with the Dirichlet-series closed form into a pure
/// `xi` quotient. `Displayed` multiplies in the prefactor. The inner
/// product oracle selects `Derived`; `Displayed` is kept so the
/// alternative convention stays testable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MellinNormalization {
    #[default]
    Derived,
    Displayed,
}

fn gamma_quartet_args(sigma: Complex64, a: Complex64, b: Complex64) -> [Complex64; 4] {
    [
        (sigma + a - b) / 2.0,
        (sigma - a + b) / 2.0,
        (sigma + 1.0 - a - b) / 2.0,
        (sigma - 1.0 + a + b) / 2.0,
    ]
}

/// Mellin transform of a Whittaker product,
/// `int_0^inf y^(sigma-2) W_a(y) W_b(y) dy`, in closed form.
/// Symmetric in `a <-> b` and under `a -> 1-a`, `b -> 1-b`.
pub fn mellin_ww(
    sigma: Complex64,
    a: Complex64,
    b: Complex64,
    normalization: MellinNormalization,
) -> Result<Complex64> {
    let mut log_sum = Complex64::new(0.0, 0.0);
    for arg in gamma_quartet_args(sigma, a, b) {
        let nearest = arg.re.round();
        if nearest <= 0.0 && (arg - nearest).norm() < 1e-12 && nearest.rem_euclid(2.0) == 0.0 {
            return Err(Error::Pole {
                what: "mellin_ww gamma factor",
                at: arg,
            });
        }
        log_sum += log_gamma(arg);
    }
    log_sum -= (2.0f64).ln() + sigma * PI.ln() + log_gamma(sigma);
    if let MellinNormalization::Displayed = normalization {
        log_sum += (a + b) * PI.ln() - log_gamma(a) - log_gamma(b);
    }
    Ok(log_sum.exp())
}

/// `pi^s / (Gamma(s) zeta(2s))`, the prefactor of `phi(n, s)`, written
/// with the entire `(2s-1) zeta(2s)` so `s = 1/2` yields 0, not a pole.
fn phi_prefactor(s: Complex64) -> Complex64 {
    let two_s = 2.0 * s;
    (s * PI.ln() - log_gamma(s)).exp() * (two_s - 1.0) / zeta_times_sm1(two_s)
}

/// Dirichlet-series data for `L(u, E_a x E_b)` with `u = conj(s)`.
#[derive(Debug, Clone)]
pub struct LPairValue {
    /// `2 sum_{n=1..N} phi(n,a) phi(n,b) n^(1-u)`.
    pub dirichlet_partial: Complex64,
    /// Ramanujan-identity zeta quotient including the `phi` prefactors.
    pub closed_form: Complex64,
    pub terms_used: usize,
    /// Upper estimate for `|partial - closed|`: series truncation plus
    /// an accumulation-roundoff floor. Infinite outside the abscissa
    /// of absolute convergence.
    pub tail_estimate: f64,
}

/// Multiplicative sieve for `sigma_e(n) = sum_{d|n} d^e`, `n = 1..N`.
fn sigma_sieve(e: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut sums = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for d in 1..=n_max {
        let power = (e * (d as f64).ln()).exp();
        for m in (d..=n_max).step_by(d) {
            sums[m] += power;
        }
    }
    sums
}

fn l_pair_closed(u: Complex64, a: Complex64, b: Complex64) -> Result<Complex64> {
    let pref = 2.0 * phi_prefactor(a) * phi_prefactor(b);
    let quotient = riemann_zeta(u + a + b - 1.0)?
        * riemann_zeta(u - a + b)?
        * riemann_zeta(u + a - b)?
        * riemann_zeta(u - a - b + 1.0)?
        * (2.0 * u - 1.0)
        / zeta_times_sm1(2.0 * u);
    Ok(pref * quotient)
}

/// Slowest decay power of the series terms: the smallest real part
/// among the four zeta arguments of the closed form.
fn l_pair_decay(u: Complex64, a: Complex64, b: Complex64) -> f64 {
    [u + a + b - 1.0, u - a + b, u + a - b, u - a - b + 1.0]
        .into_iter()
        .map(|v| v.re)
        .fold(f64::INFINITY, f64::min)
}

/// Partial sums and closed form of the Rankin-Selberg series
/// `L(conj(s), E_alpha x E_beta)`, both routes reported so their
/// agreement is a checkable property rather than an assumption.
pub fn l_eisenstein_pair(
    s: Complex64,
    alpha: Complex64,
    beta: Complex64,
    n_terms: usize,
) -> Result<LPairValue> {
    if n_terms == 0 {
        return Err(Error::Domain {
            what: "l_eisenstein_pair",
            detail: "n_terms must be positive".into(),
        });
    }
    let u = s.conj();
    let pref = phi_prefactor(alpha) * phi_prefactor(beta);
    let sig_a = sigma_sieve(2.0 * alpha - 1.0, n_terms);
    let sig_b = sigma_sieve(2.0 * beta - 1.0, n_terms);
    let exponent = 1.0 - u - alpha - beta;
    let mut partial = Complex64::new(0.0, 0.0);
    let mut abs_accum = 0.0f64;
    let mut recent_peak = 0.0f64;
    for n in 1..=n_terms {
        let term = pref * sig_a[n] * sig_b[n] * (exponent * (n as f64).ln()).exp();
        partial += term;
        abs_accum += term.norm();
        if n + 5 > n_terms {
            recent_peak = recent_peak.max(term.norm());
        }
    }
    let q = l_pair_decay(u, alpha, beta);
    // Truncation plus the roundoff floor of summing n_terms values:
    // at deep convergence the float accumulation error dominates the
    // true series tail by orders of magnitude.
    let roundoff = f64::EPSILON * abs_accum * (n_terms as f64).sqrt();
    let tail_estimate = if q > 1.001 {
        3.0 * recent_peak * n_terms as f64 / (q - 1.0) + roundoff
    } else {
        f64::INFINITY
    };
    Ok(LPairValue {
        dirichlet_partial: 2.0 * partial,
        closed_form: l_pair_closed(u, alpha, beta)?,
        terms_used: n_terms,
        tail_estimate,
    })
}

/// Continuous-spectrum coefficient `Lambda(conj(s), E_alpha x E_beta)`:
/// the L closed form times the Whittaker Mellin factor.
pub fn lambda_continuous(
    s: Complex64,
    alpha: Complex64,
    beta: Complex64,
    normalization: MellinNormalization,
) -> Result<Complex64> {
    let u = s.conj();
    Ok(l_pair_closed(u, alpha, beta)? * mellin_ww(u, alpha, beta, normalization)?)
}

/// Same value as [`lambda_continuous`] with the `Derived` convention,
/// rewritten as a quotient of completed `xi` factors. Shares nothing
/// with the `L x M` route past `xi` itself, so agreement between the
/// two is a real consistency check.
#[cfg(test)]
fn lambda_quartet(u: Complex64, a: Complex64, b: Complex64) -> Result<Complex64> {
    let args = [u + a + b - 1.0, u - a + b, u + a - b, u - a - b + 1.0];
    let mut value = Complex64::new(2.0, 0.0);
    for v in args {
        if v.norm() < 1e-12 || (v - 1.0).norm() < 1e-12 {
            return Err(Error::Pole {
                what: "lambda xi factor",
                at: v,
            });
        }
        value *= xi_entire(v) / (v * (v - 1.0));
    }
    for w in [2.0 * a, 2.0 * b, 2.0 * u] {
        value *= w * (w - 1.0) / xi_entire(w);
    }
    Ok(value)
}

/// Cuspidal coefficient `Lambda(alpha, conj(f) x E_beta)`: partial-sum
/// Dirichlet series in the cusp-form coefficients times the Mellin
/// factor at `(alpha; beta, conj(s_f))`. Odd forms pair to zero
/// against the even product. No closed form exists here; convergence
/// requires `Re(alpha)` beyond the series abscissa, roughly
/// `Re(alpha - beta) > 3/2`, and the tail is the caller's risk.
pub fn lambda_cuspidal(
    alpha: Complex64,
    f: &CuspFormRecord,
    beta: Complex64,
    n_terms: usize,
    normalization: MellinNormalization,
) -> Result<Complex64> {
    if n_terms > f.coefficients.len() {
        return Err(Error::InsufficientCoefficients {
            needed: n_terms,
            have: f.coefficients.len(),
        });
    }
    if f.parity == Parity::Odd {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut series = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms {
        let term = phi_coefficient(n as i64, beta)?
            * f.coefficients[n - 1]
            * ((1.0 - alpha) * (n as f64).ln()).exp();
        series += term;
    }
    let s_f_bar = f.spectral_parameter().conj();
    Ok(2.0 * series * mellin_ww(alpha, beta, s_f_bar, normalization)?)
}

/// One power term `coefficient * y^exponent * (ln y)^log_power` of a
/// field's constant-term profile in the cusp.
#[derive(Debug, Clone, Copy)]
pub struct CuspTerm {
    pub coefficient: Complex64,
    pub exponent: Complex64,
    pub log_power: u32,
}

/// Combine terms with matching exponent and log power, then drop
/// negligible coefficients. The leading powers of a product and of its
/// subtraction plan cancel exactly; without the merge the tail
/// integrals would diverge term by term.
fn merge_cusp_terms(mut terms: Vec<CuspTerm>) -> Vec<CuspTerm> {
    let mut merged: Vec<CuspTerm> = Vec::with_capacity(terms.len());
    terms.sort_by(|p, q| {
        (p.log_power, p.exponent.re, p.exponent.im)
            .partial_cmp(&(q.log_power, q.exponent.re, q.exponent.im))
            .expect("cusp exponents are finite")
    });
    for term in terms {
        match merged.last_mut() {
            Some(last)
                if last.log_power == term.log_power
                    && (last.exponent - term.exponent).norm() < 1e-9 =>
            {
                last.coefficient += term.coefficient;
            }
            _ => merged.push(term),
        }
    }
    let scale = merged
        .iter()
        .map(|t| t.coefficient.norm())
        .fold(1e-300, f64::max);
    merged.retain(|t| t.coefficient.norm() > 1e-11 * scale);
    merged
}

/// A function on the modular surface paired with its cusp profile:
/// `F(z) = sum(profile) + O(e^(-2 pi y))` uniformly for large `y`.
pub struct SurfaceField<'a> {
    eval: Box<dyn Fn(&UpperHalfPoint) -> Result<Complex64> + 'a>,
    cusp_profile: Vec<CuspTerm>,
}

fn power_term(coefficient: Complex64, exponent: Complex64) -> CuspTerm {
    CuspTerm {
        coefficient,
        exponent,
        log_power: 0,
    }
}

/// Constant-term profile of `kappa E_s`: `kappa y^s + kappa c_s y^(1-s)`.
fn eisenstein_profile(kappa: Complex64, s: Complex64) -> Result<[CuspTerm; 2]> {
    let c = c_coefficient(s)?;
    Ok([power_term(kappa, s), power_term(kappa * c, 1.0 - s)])
}

/// Constant-term profile of `kappa E_1^*`: `kappa (y + C - (3/pi) ln y)`.
fn star_profile(kappa: Complex64) -> [CuspTerm; 3] {
    [
        power_term(kappa, Complex64::new(1.0, 0.0)),
        power_term(kappa * c_laurent_constant(), Complex64::new(0.0, 0.0)),
        CuspTerm {
            coefficient: -kappa * c_residue(),
            exponent: Complex64::new(0.0, 0.0),
            log_power: 1,
        },
    ]
}

impl<'a> SurfaceField<'a> {
    pub fn new(
        eval: impl Fn(&UpperHalfPoint) -> Result<Complex64> + 'a,
        cusp_profile: Vec<CuspTerm>,
    ) -> Self {
        SurfaceField {
            eval: Box::new(eval),
            cusp_profile: merge_cusp_terms(cusp_profile),
        }
    }

    pub fn constant(value: Complex64) -> Self {
        SurfaceField::new(
            move |_: &UpperHalfPoint| Ok(value),
            vec![power_term(value, Complex64::new(0.0, 0.0))],
        )
    }

    pub fn eisenstein(s: Complex64) -> Result<Self> {
        let profile = eisenstein_profile(Complex64::new(1.0, 0.0), s)?;
        Ok(SurfaceField::new(
            move |z: &UpperHalfPoint| eisenstein_eval(s, z),
            profile.to_vec(),
        ))
    }

    pub fn eisenstein_star() -> Self {
        SurfaceField::new(
            eisenstein_e1star,
            star_profile(Complex64::new(1.0, 0.0)).to_vec(),
        )
    }

    /// Exponentially decaying at the cusp: empty profile.
    pub fn cuspform(f: &'a CuspFormRecord) -> Self {
        SurfaceField::new(move |z: &UpperHalfPoint| cuspform_eval(f, z, 1e-12), Vec::new())
    }

    /// The subtracted product `S = E_a E_b - (plan terms) - constant`,
    /// with the profile assembled from both sides so the non-decaying
    /// powers cancel analytically.
    pub fn subtracted_product(plan: &'a SubtractionPlan) -> Result<Self> {
        let mut profile = Vec::new();
        let ea = eisenstein_profile(Complex64::new(1.0, 0.0), plan.alpha)?;
        let eb = eisenstein_profile(Complex64::new(1.0, 0.0), plan.beta)?;
        for p in &ea {
            for q in &eb {
                profile.push(power_term(
                    p.coefficient * q.coefficient,
                    p.exponent + q.exponent,
                ));
            }
        }
        for term in &plan.terms {
            match term.basis {
                PlanBasis::Eisenstein(s) => {
                    for t in eisenstein_profile(-term.coefficient, s)? {
                        profile.push(t);
                    }
                }
                PlanBasis::EisensteinStar => {
                    for t in star_profile(-term.coefficient) {
                        profile.push(t);
                    }
                }
            }
        }
        profile.push(power_term(-plan.constant, Complex64::new(0.0, 0.0)));
        Ok(SurfaceField::new(
            move |z: &UpperHalfPoint| plan.remainder(z),
            profile,
        ))
    }

    pub fn cusp_profile(&self) -> &[CuspTerm] {
        &self.cusp_profile
    }

    pub fn eval(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        (self.eval)(z)
    }
}

/// `int_T^inf y^(p-2) (ln y)^m dy` for `Re p < 1`, by the recursion
/// `I_m = T^(p-1) (ln T)^m / (1-p) + m I_(m-1) / (1-p)`.
fn tail_power_integral(p: Complex64, m: u32, t: f64) -> Complex64 {
    let one_minus_p = 1.0 - p;
    let t_pow = ((p - 1.0) * t.ln()).exp();
    let mut value = t_pow / one_minus_p;
    for k in 1..=m {
        value = (t_pow * t.ln().powi(k as i32) + k as f64 * value) / one_minus_p;
    }
    value
}

/// Inner product with the integral split at `y_cap` and diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct InnerProductBreakdown {
    pub value: Complex64,
    /// Quadrature over the truncated fundamental domain.
    pub capped_part: Complex64,
    /// Closed-form profile integral above `y_cap`.
    pub tail_part: Complex64,
    /// Bound on what both parts neglect (non-constant Fourier modes
    /// above `y_cap`), from the `O(e^(-2 pi y))` remainder.
    pub neglected_bound: f64,
}

fn quadrature_orders(spec: &QuadratureSpec) -> (usize, usize, usize, usize) {
    // (theta nodes, sliver x nodes, strip y nodes per panel, strip x nodes)
    if spec.rel_tol < 1e-10 {
        (24, 16, 28, 64)
    } else {
        (16, 12, 20, 48)
    }
}

/// `<F, G> = int F conj(G) dx dy / y^2` over `{|x| <= 1/2, |z| >= 1}`,
/// quadrature up to `y_cap` plus the closed-form profile tail.
pub fn inner_product_detailed(
    f: &SurfaceField,
    g: &SurfaceField,
    y_cap: f64,
    spec: &QuadratureSpec,
) -> Result<InnerProductBreakdown> {
    if !(y_cap >= 2.0) || !y_cap.is_finite() {
        return Err(Error::Domain {
            what: "inner_product_oracle",
            detail: format!("y_cap must be finite and >= 2, got {y_cap}"),
        });
    }
    let (theta_n, sliver_x_n, strip_y_n, strip_x_n) = quadrature_orders(spec);
    let paired = |z: &UpperHalfPoint| -> Result<Complex64> { Ok(f.eval(z)? * g.eval(z)?.conj()) };

    // Sliver sqrt(3)/2 <= y < 1 via y = cos(theta): the corner where
    // the x-interval shrinks to zero carries the vanishing sin(theta)
    // Jacobian, so the integrand stays smooth in theta.
    let mut capped = Complex64::new(0.0, 0.0);
    let (t_nodes, t_weights) = gauss_legendre(theta_n);
    let (x_nodes, x_weights) = gauss_legendre(sliver_x_n);
    let half_theta = PI / 12.0;
    for (ti, tw) in t_nodes.iter().zip(t_weights) {
        let theta = half_theta * (ti + 1.0);
        let (y, x_min) = (theta.cos(), theta.sin());
        let jac = tw * half_theta * theta.sin() / (y * y);
        let half_span = (0.5 - x_min) / 2.0;
        let mut row = Complex64::new(0.0, 0.0);
        for (xi, xw) in x_nodes.iter().zip(x_weights) {
            let x = x_min + half_span * (xi + 1.0);
            row += xw
                * (paired(&UpperHalfPoint::new(x, y)?)? + paired(&UpperHalfPoint::new(-x, y)?)?);
        }
        capped += jac * half_span * row;
    }

    // Strip 1 <= y <= y_cap: Gauss-Legendre panels in y, and the
    // periodic midpoint rule in x, spectrally accurate for the
    // finitely many Fourier modes surviving at y >= 1.
    let (y_nodes, y_weights) = gauss_legendre(strip_y_n);
    let mut lo = 1.0;
    while lo < y_cap - 1e-12 {
        let hi = (2.0 * lo).min(y_cap);
        let mid = (hi + lo) / 2.0;
        let half = (hi - lo) / 2.0;
        for (yi, yw) in y_nodes.iter().zip(y_weights) {
            let y = mid + half * yi;
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..strip_x_n {
                let x = -0.5 + (j as f64 + 0.5) / strip_x_n as f64;
                row += paired(&UpperHalfPoint::new(x, y)?)?;
            }
            capped += yw * half * row / (strip_x_n as f64 * y * y);
        }
        lo = hi;
    }

    // Profile tail above y_cap.
    let mut tail = Complex64::new(0.0, 0.0);
    for p in f.cusp_profile() {
        for q in g.cusp_profile() {
            let exponent = p.exponent + q.exponent.conj();
            if exponent.re >= 1.0 - 1e-9 {
                return Err(Error::NonConvergence {
                    what: "inner product cusp tail",
                    detail: format!(
                        "profile pair decays like y^{}, not integrable",
                        exponent - 2.0
                    ),
                });
            }
            tail += p.coefficient
                * q.coefficient.conj()
                * tail_power_integral(exponent, p.log_power + q.log_power, y_cap);
        }
    }

    let profile_scale = |field: &SurfaceField| -> f64 {
        field
            .cusp_profile()
            .iter()
            .map(|t| t.coefficient.norm())
            .sum::<f64>()
            + 1.0
    };
    let neglected_bound =
        profile_scale(f) * profile_scale(g) * (-2.0 * PI * y_cap).exp() / (2.0 * PI);

    Ok(InnerProductBreakdown {
        value: capped + tail,
        capped_part: capped,
        tail_part: tail,
        neglected_bound,
    })
}

/// See [`inner_product_detailed`]; this is the plain value.
pub fn inner_product_oracle(
    f: &SurfaceField,
    g: &SurfaceField,
    y_cap: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    Ok(inner_product_detailed(f, g, y_cap, spec)?.value)
}
