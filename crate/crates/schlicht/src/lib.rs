//! Sharp bounds for the moduli difference of inverse logarithmic coefficients
//! of univalent functions.
//!
//! For a normalized univalent function `f(z) = z + a₂z² + a₃z³ + …` on the
//! unit disk, the inverse logarithmic coefficients `Γₙ` are half the Taylor
//! coefficients of `log(f⁻¹(w)/w)`. This crate evaluates the sharp closed-form
//! bounds of `|Γ₂| − |Γ₁|` over nine classical function classes, and checks
//! every bound a second way with a brute-force grid search over the
//! Carathéodory coefficient body.
//!
//! Module map:
//!
//! * [`series`] — truncated power series arithmetic: products, log/exp/powers,
//!   series reversion, logarithmic coefficients.
//! * [`caratheodory`] — the `(c₁, c₂)` coefficient body of functions with
//!   positive real part, its fiber parameterization, and the explicit rational
//!   extremal functions.
//! * [`psi`] — the reduced functionals `Ψ±(c₁, c₂) = ±(|B₂c₁² + B₃c₂| − B₁|c₁|)`,
//!   their piecewise sharp bounds, and the grid-search oracle.
//! * [`subclass`] — the function classes: coefficient maps, reduction to `Ψ`,
//!   and full series construction from a Carathéodory function.
//! * [`bounds`] — the closed-form bound catalog, extremal descriptors, the
//!   Fekete–Szegő bound, and sample families for the full class `S`.
//! * [`parse`], [`report`], [`cli`] — the verification command line: input
//!   parsing, CSV/JSON report emission, subcommand drivers.

pub mod bounds;
pub mod caratheodory;
pub mod cli;
pub mod parse;
pub mod psi;
pub mod report;
pub mod series;
pub mod subclass;

pub use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series needs at least one coefficient")]
    EmptySeries,
    #[error("series coefficient {0} is not finite")]
    NonFiniteCoefficient(usize),
    #[error("series is not a unit: constant term {0} (need 1)")]
    NotUnit(Complex64),
    #[error("series has non-zero constant term {0}")]
    NonZeroConstantTerm(Complex64),
    #[error("series is not normalized: need c[0] = 0 and c[1] = 1")]
    NotNormalized,
    #[error("point ({c1}, {c2}) lies outside the Caratheodory coefficient body")]
    InvalidPoint { c1: Complex64, c2: Complex64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("positive-real-part check failed: min Re p = {0:e} on the sample circle")]
    NotPositiveRealPart(f64),
    #[error("degenerate functional: B2 = B3 = 0")]
    DegenerateFunctional,
    #[error("grid resolution too small: {0}")]
    GridTooSmall(String),
    #[error("class S has no single Caratheodory representation")]
    ClassSNotReducible,
    #[error("internal formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("cannot parse {what}: {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}
