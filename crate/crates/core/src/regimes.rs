//! Classification of a parameter pair (alpha, beta) by the relative position
//! of the real parts, construction of the subtraction plan whose remainder
//! `S = E_alpha E_beta - plan` is square-integrable, and the zeta-zero
//! solvability test on the boundary lines where the generic plans fail.
//!
//! Parameters are first brought to a canonical order `Re alpha <= Re beta`.
//! The interior regimes and their subtracted combinations:
//!
//! - `I`   (`Re beta > Re alpha + 1/2`): `E_(a+b) + c_a E_(1-a+b)`
//! - `IIa` (overlap, `Re(a+b) > 3/2`):   adds `c_b E_(1+a-b)`
//! - `IIb` (overlap, `Re(a+b) < 3/2`):   adds `c_a c_b E_(2-a-b)`
//! - `IIIa` (`a = b`, `Re a > 3/4`):     `E_(2a) + 2 c_a E_1* - (3/pi) c'(a)`
//! - `IIIb` (`a = b`, `Re a < 3/4`):     adds `c_a^2 E_(2-2a)`
//!
//! On the lines `Re(a+b) = 3/2` and `Re a = 3/4` (equal parameters) the
//! remainder is square-integrable only when a scattering coefficient
//! vanishes, i.e. when `2a-1` or `2b-1` is a nontrivial zeta zero; the
//! solvability verdict is exactly that numeric test.

use num_complex::Complex64;

use crate::eisenstein::{eisenstein_e1star, eisenstein_eval, laplace_eigenvalue};
use crate::error::{Error, Result};
use crate::numerics::UpperHalfPoint;
use crate::special::{c_coefficient, c_derivative, c_residue};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Distance within which a parameter pair is snapped onto a boundary line,
/// so double-precision classification is deterministic near the lines.
pub const REGIME_EPSILON: f64 = 1e-9;

/// Default threshold on |c| below which a boundary parameter counts as a
/// zeta-zero witness; |c| vanishes linearly at a simple zero, so this gives
/// roughly 1e-6 accuracy in the parameter.
pub const WITNESS_TOLERANCE: f64 = 1e-6;

/// Where a canonicalized pair sits relative to the regime lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Well separated: `Re beta > Re alpha + 1/2`.
    I,
    /// Overlapping strips, `Re(alpha+beta) > 3/2`, `alpha != beta`.
    IIa,
    /// Overlapping strips, `Re(alpha+beta) < 3/2`, `alpha != beta`.
    IIb,
    /// Equal parameters, `Re alpha > 3/4`.
    IIIa,
    /// Equal parameters, `1/2 <= Re alpha < 3/4`.
    IIIb,
    /// `Re(alpha+beta) = 3/2` with `alpha != beta`.
    BoundarySumThreeHalves,
    /// Equal parameters with `Re alpha = 3/4`.
    BoundaryReThreeQuarters,
    /// `Re beta = Re alpha + 1/2`.
    BoundaryDiffHalf,
    /// `alpha` or `beta` equals 1, where `E_s` has its pole.
    PoleAtOne,
    /// A real part lies below 1/2: rewrite with `E_s = c_s E_(1-s)` first.
    NeedsReflection,
}

impl Regime {
    /// True for the three boundary-line tags.
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            Regime::BoundarySumThreeHalves
                | Regime::BoundaryReThreeQuarters
                | Regime::BoundaryDiffHalf
        )
    }

    /// True for the five interior regimes that carry a generic plan.
    pub fn is_interior(self) -> bool {
        matches!(
            self,
            Regime::I | Regime::IIa | Regime::IIb | Regime::IIIa | Regime::IIIb
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::I => "I",
            Regime::IIa => "IIa",
            Regime::IIb => "IIb",
            Regime::IIIa => "IIIa",
            Regime::IIIb => "IIIb",
            Regime::BoundarySumThreeHalves => "BoundarySumThreeHalves",
            Regime::BoundaryReThreeQuarters => "BoundaryReThreeQuarters",
            Regime::BoundaryDiffHalf => "BoundaryDiffHalf",
            Regime::PoleAtOne => "PoleAtOne",
            Regime::NeedsReflection => "NeedsReflection",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Basis function appearing in a subtraction plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanBasis {
    /// `E_s` with the given spectral parameter.
    Eisenstein(Complex64),
    /// The regularized value `E_1*` at the pole parameter.
    EisensteinStar,
}

/// One subtracted term: `coefficient` times a basis function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanTerm {
    pub coefficient: Complex64,
    pub basis: PlanBasis,
}

impl PlanTerm {
    fn eisenstein(coefficient: Complex64, parameter: Complex64) -> Self {
        PlanTerm {
            coefficient,
            basis: PlanBasis::Eisenstein(parameter),
        }
    }

    /// Laplace eigenvalue of the basis function; `E_1*` inherits the pole
    /// parameter's `lambda_1 = 0`.
    pub fn eigenvalue(&self) -> Complex64 {
        match self.basis {
            PlanBasis::Eisenstein(s) => laplace_eigenvalue(s),
            PlanBasis::EisensteinStar => Complex64::new(0.0, 0.0),
        }
    }

    pub fn evaluate(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let basis = match self.basis {
            PlanBasis::Eisenstein(s) => eisenstein_eval(s, z)?,
            PlanBasis::EisensteinStar => eisenstein_e1star(z)?,
        };
        Ok(self.coefficient * basis)
    }
}

/// The combination subtracted from `E_alpha E_beta`. The remainder
/// `S = E_alpha E_beta - sum(terms) - constant` decays at the cusp.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtractionPlan {
    pub regime: Regime,
    /// Canonicalized parameters, `Re alpha <= Re beta`.
    pub alpha: Complex64,
    pub beta: Complex64,
    pub terms: Vec<PlanTerm>,
    /// Additive constant inside the subtracted combination; nonzero only
    /// for equal parameters, where it equals `-(3/pi) c'(alpha)`.
    pub constant: Complex64,
    /// Whether the input pair was exchanged to enforce the canonical order.
    pub swapped: bool,
}

impl SubtractionPlan {
    /// Value of the subtracted combination at `z`.
    pub fn subtracted_value(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let mut acc = self.constant;
        for term in &self.terms {
            acc += term.evaluate(z)?;
        }
        Ok(acc)
    }

    /// The remainder `S(z) = E_alpha(z) E_beta(z) - subtracted_value(z)`.
    pub fn remainder(&self, z: &UpperHalfPoint) -> Result<Complex64> {
        let product = eisenstein_eval(self.alpha, z)? * eisenstein_eval(self.beta, z)?;
        Ok(product - self.subtracted_value(z)?)
    }
}

fn near(value: f64, target: f64) -> bool {
    (value - target).abs() <= REGIME_EPSILON
}

fn canonical(alpha: Complex64, beta: Complex64) -> (Complex64, Complex64, bool) {
    if beta.re < alpha.re {
        (beta, alpha, true)
    } else {
        (alpha, beta, false)
    }
}

/// Assign the unique regime tag. Checks run in a fixed order: pole,
/// reflection, the sum and equal-parameter boundary lines, the difference
/// line, then the strict interior inequalities.
pub fn classify(alpha: Complex64, beta: Complex64) -> Regime {
    if (alpha - ONE).norm() <= REGIME_EPSILON || (beta - ONE).norm() <= REGIME_EPSILON {
        return Regime::PoleAtOne;
    }
    if alpha.re < 0.5 - REGIME_EPSILON || beta.re < 0.5 - REGIME_EPSILON {
        return Regime::NeedsReflection;
    }
    let (a, b, _) = canonical(alpha, beta);
    let equal = (alpha - beta).norm() <= REGIME_EPSILON;
    if near(a.re + b.re, 1.5) {
        return if equal {
            Regime::BoundaryReThreeQuarters
        } else {
            Regime::BoundarySumThreeHalves
        };
    }
    if equal {
        return if a.re > 0.75 {
            Regime::IIIa
        } else {
            Regime::IIIb
        };
    }
    if near(b.re - a.re, 0.5) {
        return Regime::BoundaryDiffHalf;
    }
    if b.re - a.re > 0.5 {
        Regime::I
    } else if a.re + b.re > 1.5 {
        Regime::IIa
    } else {
        Regime::IIb
    }
}

/// Solvability verdict for a pair on a boundary line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolvabilityVerdict {
    /// Some admissible parameter has `|c| < tol`, i.e. twice-it-minus-one
    /// is numerically a nontrivial zeta zero.
    SolvableWithWitness {
        witness: Complex64,
        c_modulus: f64,
    },
    Unsolvable {
        min_c_modulus: f64,
    },
}

/// Which scattering coefficients may vanish on each boundary line: both on
/// the sum line, only `c_alpha` when the real parts differ by exactly 1/2
/// (there `c_(1-alpha+beta)` sits at real part 3/2 and cannot vanish), and
/// only the shared `c_alpha` for equal parameters.
fn witness_candidates(regime: Regime, a: Complex64, b: Complex64) -> Vec<Complex64> {
    match regime {
        Regime::BoundarySumThreeHalves => {
            if near(b.re - a.re, 0.5) {
                vec![a]
            } else {
                vec![a, b]
            }
        }
        Regime::BoundaryReThreeQuarters | Regime::BoundaryDiffHalf => vec![a],
        _ => Vec::new(),
    }
}

/// Test whether a boundary pair is solvable: is `min |c|` over the
/// admissible parameters below `tol`? Errors unless `classify` returns a
/// boundary tag.
pub fn solvability_on_boundary(
    alpha: Complex64,
    beta: Complex64,
    tol: f64,
) -> Result<SolvabilityVerdict> {
    let regime = classify(alpha, beta);
    if !regime.is_boundary() {
        return Err(Error::Domain {
            what: "solvability_on_boundary",
            detail: format!("pair classifies as {regime}, not a boundary"),
        });
    }
    let (a, b, _) = canonical(alpha, beta);
    let mut best: Option<(Complex64, f64)> = None;
    for candidate in witness_candidates(regime, a, b) {
        let modulus = c_coefficient(candidate)?.norm();
        if best.map_or(true, |(_, m)| modulus < m) {
            best = Some((candidate, modulus));
        }
    }
    let (witness, c_modulus) = best.expect("boundary regimes have at least one candidate");
    if c_modulus < tol {
        Ok(SolvabilityVerdict::SolvableWithWitness { witness, c_modulus })
    } else {
        Ok(SolvabilityVerdict::Unsolvable {
            min_c_modulus: c_modulus,
        })
    }
}

fn equal_parameter_plan(a: Complex64, include_reflected: bool) -> Result<(Vec<PlanTerm>, Complex64)> {
    let c_a = c_coefficient(a)?;
    let mut terms = vec![
        PlanTerm::eisenstein(ONE, 2.0 * a),
        PlanTerm {
            coefficient: 2.0 * c_a,
            basis: PlanBasis::EisensteinStar,
        },
    ];
    if include_reflected {
        terms.push(PlanTerm::eisenstein(c_a * c_a, 2.0 * (ONE - a)));
    }
    let constant = -c_residue() * c_derivative(a)?;
    Ok((terms, constant))
}

/// Build the subtraction plan for a pair. Interior regimes get the generic
/// plan; boundary pairs get the reduced plan when the solvability test
/// passes (terms weighted by the vanishing coefficient are dropped for
/// distinct parameters, retained but negligible for equal parameters) and an
/// error otherwise.
pub fn subtraction_plan(alpha: Complex64, beta: Complex64) -> Result<SubtractionPlan> {
    let regime = classify(alpha, beta);
    let (a, b, swapped) = canonical(alpha, beta);
    let zero = Complex64::new(0.0, 0.0);
    let (terms, constant) = match regime {
        Regime::PoleAtOne => {
            let at = if (alpha - ONE).norm() <= REGIME_EPSILON {
                alpha
            } else {
                beta
            };
            return Err(Error::Pole {
                what: "E_alpha E_beta",
                at,
            });
        }
        Regime::NeedsReflection => {
            return Err(Error::Domain {
                what: "subtraction_plan",
                detail: format!(
                    "Re(parameter) below 1/2 at ({alpha}, {beta}); rewrite with E_s = c_s E_(1-s) first"
                ),
            });
        }
        Regime::I => {
            let c_a = c_coefficient(a)?;
            (
                vec![
                    PlanTerm::eisenstein(ONE, a + b),
                    PlanTerm::eisenstein(c_a, ONE - a + b),
                ],
                zero,
            )
        }
        Regime::IIa | Regime::IIb => {
            let c_a = c_coefficient(a)?;
            let c_b = c_coefficient(b)?;
            let mut terms = vec![
                PlanTerm::eisenstein(ONE, a + b),
                PlanTerm::eisenstein(c_a, ONE - a + b),
                PlanTerm::eisenstein(c_b, ONE + a - b),
            ];
            if regime == Regime::IIb {
                terms.push(PlanTerm::eisenstein(c_a * c_b, 2.0 * ONE - a - b));
            }
            (terms, zero)
        }
        Regime::IIIa => equal_parameter_plan(a, false)?,
        Regime::IIIb => equal_parameter_plan(a, true)?,
        Regime::BoundarySumThreeHalves | Regime::BoundaryDiffHalf => {
            match solvability_on_boundary(alpha, beta, WITNESS_TOLERANCE)? {
                SolvabilityVerdict::Unsolvable { min_c_modulus } => {
                    return Err(Error::UnsolvableBoundary {
                        detail: format!(
                            "min |c| = {min_c_modulus:.3e} on the {regime} line; no parameter doubles to a zeta zero"
                        ),
                    });
                }
                SolvabilityVerdict::SolvableWithWitness { witness, .. } => {
                    // Reduced plan: the term weighted by the vanishing
                    // coefficient is dropped; the partner term stays.
                    let kept = if witness == a {
                        PlanTerm::eisenstein(c_coefficient(b)?, ONE + a - b)
                    } else {
                        PlanTerm::eisenstein(c_coefficient(a)?, ONE - a + b)
                    };
                    (vec![PlanTerm::eisenstein(ONE, a + b), kept], zero)
                }
            }
        }
        Regime::BoundaryReThreeQuarters => {
            match solvability_on_boundary(alpha, beta, WITNESS_TOLERANCE)? {
                SolvabilityVerdict::Unsolvable { min_c_modulus } => {
                    return Err(Error::UnsolvableBoundary {
                        detail: format!(
                            "|c_alpha| = {min_c_modulus:.3e} at Re(alpha) = 3/4; 2 alpha - 1 is not a zeta zero"
                        ),
                    });
                }
                // The plan keeps its equal-parameter shape; the witness
                // makes the c_alpha-weighted term numerically negligible.
                SolvabilityVerdict::SolvableWithWitness { .. } => equal_parameter_plan(a, false)?,
            }
        }
    };
    Ok(SubtractionPlan {
        regime,
        alpha: a,
        beta: b,
        terms,
        constant,
        swapped,
    })
}

/// Discrepancy, at the test point `z = i`, between
/// `c_alpha E_(1-alpha+beta) + c_beta E_(1+alpha-beta)` at `beta = alpha +
/// delta` and its limit `-(3/pi) c'(alpha) + 2 c_alpha E_1*`. First order in
/// `delta`, which makes it a direct check that the equal-parameter plans are
/// the limits of the distinct-parameter ones.
pub fn limit_consistency_check(alpha: Complex64, delta: f64) -> Result<f64> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::Domain {
            what: "limit_consistency_check",
            detail: "delta must be finite and nonzero".into(),
        });
    }
    let z = UpperHalfPoint::new(0.0, 1.0)?;
    let beta = alpha + delta;
    let c_a = c_coefficient(alpha)?;
    let c_b = c_coefficient(beta)?;
    let lhs = c_a * eisenstein_eval(ONE - alpha + beta, &z)?
        + c_b * eisenstein_eval(ONE + alpha - beta, &z)?;
    let rhs = -c_residue() * c_derivative(alpha)? + 2.0 * c_a * eisenstein_e1star(&z)?;
    Ok((lhs - rhs).norm())
}
