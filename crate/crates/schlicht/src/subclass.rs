//! The function classes and their Carathéodory reductions.
//!
//! Each class except the full class `S` is defined by a differential relation
//! that ties `f` to a Carathéodory function `p`: starlike-type classes fix
//! `zf′/f`, convex-type classes fix `1 + zf″/f′`. That gives three routes to
//! `|Γ₂| − |Γ₁|` which must agree:
//!
//! 1. close-form coefficient maps `(c₁, c₂) ↦ (a₂, a₃)`,
//! 2. the reduction `|Γ₂| − |Γ₁| = scale · Ψ₊(c₁, c₂)` with class-specific
//!    `(B₁, B₂, B₃)`,
//! 3. building the full series of `f` from `p` by the defining recurrence and
//!    reading the coefficients off.
//!
//! [`ClassSpec::gamma_diff_from_point`] evaluates routes 1 and 2 and refuses
//! to answer if they disagree; [`ClassSpec::build_f`] cross-checks route 3
//! against route 1.

use num_complex::Complex64;

use crate::caratheodory::CaratheodoryPoint;
use crate::psi::{psi_value, PsiParams, Sign};
use crate::series::{gamma_moduli_diff, NormalizedSeries, PowerSeries, UNIT_EPS};
use crate::Error;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Tolerance for the internal cross-checks between algebraically equal
/// routes (coefficient maps vs. `Ψ` reduction vs. recurrences).
pub const ROUTE_EPS: f64 = 1e-12;

/// One of the function classes, with its parameters.
///
/// `Spirallike { gamma: 0, alpha }` is the class of starlike functions of
/// order `alpha`; `GammaConvex { gamma: 0, alpha }` the convex functions of
/// order `alpha`; `F0 { lambda: 1/2 }` coincides with the convex class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassSpec {
    /// All normalized univalent functions. Not representable through a single
    /// Carathéodory function; bounds for it bind `(a₂, a₃)` directly.
    S,
    /// `|arg(zf′/f)| < απ/2`, `0 < α ≤ 1`.
    StronglyStarlike { alpha: f64 },
    /// `|arg(1 + zf″/f′)| < απ/2`, `0 < α ≤ 1`.
    StronglyConvex { alpha: f64 },
    /// `Re(1 + zf″/f′) < 1 + ν/2`, `0 < ν ≤ 1`.
    Ozaki { nu: f64 },
    /// `Re(1 + zf″/f′) > 1/2 − λ`, `−1/2 < λ ≤ 1`; bound claims are stated
    /// for `1/2 ≤ λ ≤ 1`.
    F0 { lambda: f64 },
    /// `Re(e^{−iγ} zf′/f) > α cos γ`, `|γ| < π/2`, `0 ≤ α < 1`.
    Spirallike { gamma: f64, alpha: f64 },
    /// `Re(e^{−iγ}(1 + zf″/f′)) > α cos γ`, `|γ| < π/2`, `0 ≤ α < 1`.
    GammaConvex { gamma: f64, alpha: f64 },
}

/// Whether the defining relation fixes `zf′/f` or `1 + zf″/f′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    StarlikeType,
    ConvexType,
}

/// The `(B₁, B₂, B₃)` triple and positive scale with
/// `|Γ₂| − |Γ₁| = scale · Ψ₊(c₁, c₂)`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedFunctional {
    pub b: PsiParams,
    pub scale: f64,
}

fn check_unit_interval(name: &str, v: f64, lo_open: bool, hi: f64) -> Result<(), Error> {
    let ok = v.is_finite() && v <= hi && if lo_open { v > 0.0 } else { v >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("{name} = {v}")))
    }
}

impl ClassSpec {
    pub fn strongly_starlike(alpha: f64) -> Result<Self, Error> {
        check_unit_interval("alpha", alpha, true, 1.0)?;
        Ok(ClassSpec::StronglyStarlike { alpha })
    }

    pub fn strongly_convex(alpha: f64) -> Result<Self, Error> {
        check_unit_interval("alpha", alpha, true, 1.0)?;
        Ok(ClassSpec::StronglyConvex { alpha })
    }

    pub fn ozaki(nu: f64) -> Result<Self, Error> {
        check_unit_interval("nu", nu, true, 1.0)?;
        Ok(ClassSpec::Ozaki { nu })
    }

    pub fn f0(lambda: f64) -> Result<Self, Error> {
        if !lambda.is_finite() || lambda <= -0.5 || lambda > 1.0 {
            return Err(Error::ParameterOutOfRange(format!("lambda = {lambda}")));
        }
        Ok(ClassSpec::F0 { lambda })
    }

    pub fn spirallike(gamma: f64, alpha: f64) -> Result<Self, Error> {
        if !gamma.is_finite() || gamma.abs() >= FRAC_PI_2 {
            return Err(Error::ParameterOutOfRange(format!("gamma = {gamma}")));
        }
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")));
        }
        Ok(ClassSpec::Spirallike { gamma, alpha })
    }

    pub fn gamma_convex(gamma: f64, alpha: f64) -> Result<Self, Error> {
        if !gamma.is_finite() || gamma.abs() >= FRAC_PI_2 {
            return Err(Error::ParameterOutOfRange(format!("gamma = {gamma}")));
        }
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")));
        }
        Ok(ClassSpec::GammaConvex { gamma, alpha })
    }

    pub fn starlike() -> Self {
        ClassSpec::Spirallike {
            gamma: 0.0,
            alpha: 0.0,
        }
    }

    pub fn convex() -> Self {
        ClassSpec::GammaConvex {
            gamma: 0.0,
            alpha: 0.0,
        }
    }

    pub fn starlike_of_order(alpha: f64) -> Result<Self, Error> {
        Self::spirallike(0.0, alpha)
    }

    pub fn convex_of_order(alpha: f64) -> Result<Self, Error> {
        Self::gamma_convex(0.0, alpha)
    }

    /// `μ = e^{iγ} cos γ` for the spirallike-type classes.
    pub fn mu(&self) -> Option<Complex64> {
        match *self {
            ClassSpec::Spirallike { gamma, .. } | ClassSpec::GammaConvex { gamma, .. } => {
                Some(Complex64::from_polar(gamma.cos(), gamma))
            }
            _ => None,
        }
    }

    /// `η = 4(1−α)μ − 1` (spirallike).
    pub fn eta(&self) -> Option<Complex64> {
        match *self {
            ClassSpec::Spirallike { alpha, .. } => {
                Some(self.mu().unwrap() * (4.0 * (1.0 - alpha)) - 1.0)
            }
            _ => None,
        }
    }

    /// `β = 5(1−α)μ − 2` (γ-convex).
    pub fn beta(&self) -> Option<Complex64> {
        match *self {
            ClassSpec::GammaConvex { alpha, .. } => {
                Some(self.mu().unwrap() * (5.0 * (1.0 - alpha)) - 2.0)
            }
            _ => None,
        }
    }

    pub fn relation(&self) -> Result<RelationKind, Error> {
        match self {
            ClassSpec::S => Err(Error::ClassSNotReducible),
            ClassSpec::StronglyStarlike { .. } | ClassSpec::Spirallike { .. } => {
                Ok(RelationKind::StarlikeType)
            }
            ClassSpec::StronglyConvex { .. }
            | ClassSpec::Ozaki { .. }
            | ClassSpec::F0 { .. }
            | ClassSpec::GammaConvex { .. } => Ok(RelationKind::ConvexType),
        }
    }

    /// The class's second and third coefficients as functions of `(c₁, c₂)`.
    pub fn a2_a3(&self, pt: &CaratheodoryPoint) -> Result<(Complex64, Complex64), Error> {
        let c1 = pt.c1();
        let c2 = pt.c2();
        let c1sq = c1 * c1;
        match *self {
            ClassSpec::S => Err(Error::ClassSNotReducible),
            ClassSpec::StronglyStarlike { alpha } => Ok((
                c1 * alpha,
                (c2 * 2.0 + c1sq * (3.0 * alpha - 1.0)) * (alpha / 4.0),
            )),
            ClassSpec::StronglyConvex { alpha } => Ok((
                c1 * (alpha / 2.0),
                (c2 * 2.0 + c1sq * (3.0 * alpha - 1.0)) * (alpha / 12.0),
            )),
            ClassSpec::Ozaki { nu } => Ok((
                c1 * (-nu / 4.0),
                (c1sq * (nu * nu) - c2 * (2.0 * nu)) / 24.0,
            )),
            ClassSpec::F0 { lambda } => {
                let m = 1.0 + 2.0 * lambda;
                Ok((
                    c1 * (m / 4.0),
                    (c2 * 2.0 + c1sq * m) * (m / 24.0),
                ))
            }
            ClassSpec::Spirallike { alpha, .. } => {
                let w = self.mu().unwrap() * (1.0 - alpha);
                Ok((c1 * w, (c1sq * w + c2) * w * 0.5))
            }
            ClassSpec::GammaConvex { alpha, .. } => {
                let w = self.mu().unwrap() * (1.0 - alpha);
                Ok((c1 * w * 0.5, (c1sq * w + c2) * w / 6.0))
            }
        }
    }

    /// The `(B₁, B₂, B₃, scale)` reduction of `|Γ₂| − |Γ₁|` to `Ψ₊`.
    /// `B₃ = 1` in every class.
    pub fn reduced_functional(&self) -> Result<ReducedFunctional, Error> {
        let re = |x: f64| Complex64::new(x, 0.0);
        let (b1, b2, scale) = match *self {
            ClassSpec::S => return Err(Error::ClassSNotReducible),
            ClassSpec::StronglyStarlike { alpha } => {
                (2.0, re(-0.5 * (1.0 + 3.0 * alpha)), alpha / 4.0)
            }
            ClassSpec::StronglyConvex { alpha } => {
                (3.0, re(-0.25 * (2.0 + 3.0 * alpha)), alpha / 12.0)
            }
            ClassSpec::Ozaki { nu } => (3.0, re(0.625 * nu), nu / 24.0),
            ClassSpec::F0 { lambda } => {
                let m = 1.0 + 2.0 * lambda;
                (3.0, re(-0.625 * m), m / 24.0)
            }
            ClassSpec::Spirallike { gamma, alpha } => (
                2.0,
                self.mu().unwrap() * (-2.0 * (1.0 - alpha)),
                (1.0 - alpha) * gamma.cos() / 4.0,
            ),
            ClassSpec::GammaConvex { gamma, alpha } => (
                3.0,
                self.mu().unwrap() * (-1.25 * (1.0 - alpha)),
                (1.0 - alpha) * gamma.cos() / 12.0,
            ),
        };
        Ok(ReducedFunctional {
            b: PsiParams::new(b1, b2, 1.0)?,
            scale,
        })
    }

    /// `|Γ₂| − |Γ₁|` at a point, computed through the coefficient maps and
    /// through the `Ψ` reduction. The two routes are algebraically equal;
    /// disagreement beyond [`ROUTE_EPS`] reports an internal formula error.
    pub fn gamma_diff_from_point(&self, pt: &CaratheodoryPoint) -> Result<f64, Error> {
        let (a2, a3) = self.a2_a3(pt)?;
        let direct = gamma_moduli_diff(a2, a3);
        let rf = self.reduced_functional()?;
        let reduced = rf.scale * psi_value(&rf.b, pt, Sign::Plus);
        if (direct - reduced).abs() > ROUTE_EPS {
            return Err(Error::FormulaMismatch(format!(
                "{self:?}: coefficient route {direct} vs psi route {reduced}"
            )));
        }
        Ok(direct)
    }

    /// The right-hand side the defining relation equates to, as a series:
    /// `p^α` for the strongly star/convex classes, affine images of `p` for
    /// the rest. The constant term must come out as 1 and is then pinned to
    /// exactly 1 for the recurrences.
    pub fn q_series(&self, p: &PowerSeries, order: usize) -> Result<PowerSeries, Error> {
        let n = order.min(p.order());
        let p = p.truncated(n);
        let mut q = match *self {
            ClassSpec::S => return Err(Error::ClassSNotReducible),
            ClassSpec::StronglyStarlike { alpha } | ClassSpec::StronglyConvex { alpha } => {
                p.pow_real(alpha)?
            }
            ClassSpec::Ozaki { nu } => {
                // 1 + (ν/2)(1 − p)
                let mut coeffs: Vec<Complex64> =
                    p.coeffs().iter().map(|c| c * (-nu / 2.0)).collect();
                coeffs[0] += 1.0 + nu / 2.0;
                PowerSeries::new(coeffs)?
            }
            ClassSpec::F0 { lambda } => {
                // (1/2 + λ)p + 1/2 − λ
                let mut coeffs: Vec<Complex64> =
                    p.coeffs().iter().map(|c| c * (0.5 + lambda)).collect();
                coeffs[0] += 0.5 - lambda;
                PowerSeries::new(coeffs)?
            }
            ClassSpec::Spirallike { gamma, alpha } | ClassSpec::GammaConvex { gamma, alpha } => {
                // μ((1−α)p + α) − i e^{iγ} sin γ
                let mu = self.mu().unwrap();
                let w = mu * (1.0 - alpha);
                let shift = mu * alpha
                    - Complex64::i() * Complex64::from_polar(1.0, gamma) * gamma.sin();
                let mut coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c * w).collect();
                coeffs[0] += shift;
                PowerSeries::new(coeffs)?
            }
        };
        let q0 = q.coeff(0);
        if (q0 - Complex64::new(1.0, 0.0)).norm() > UNIT_EPS {
            return Err(Error::FormulaMismatch(format!(
                "{self:?}: q(0) = {q0}, expected 1"
            )));
        }
        let mut coeffs = q.coeffs().to_vec();
        coeffs[0] = Complex64::new(1.0, 0.0);
        q = PowerSeries::new(coeffs)?;
        Ok(q)
    }

    /// Builds the full series of `f` from a Carathéodory series `p` via the
    /// class's defining relation, to the requested order (at least 3, and at
    /// most the order of `p`).
    ///
    /// Starlike type solves `zf′ = q·f`: `(n−1)aₙ = Σ_{m<n} q_{n−m} a_m`.
    /// Convex type solves `zf″ = (q−1)f′` on `b = f′`: `n·bₙ = Σ_{k≤n} q_k
    /// b_{n−k}`, then `aₙ = b_{n−1}/n`. The resulting `(a₂, a₃)` must match
    /// [`ClassSpec::a2_a3`]; a mismatch reports a recurrence bug.
    pub fn build_f(&self, p: &PowerSeries, order: usize) -> Result<NormalizedSeries, Error> {
        if order < 3 {
            return Err(Error::ParameterOutOfRange(format!(
                "build order {order}, need >= 3"
            )));
        }
        if p.order() < order {
            return Err(Error::ParameterOutOfRange(format!(
                "p truncated at {}, need at least the build order {order}",
                p.order()
            )));
        }
        let q = self.q_series(p, order)?;
        let mut a = vec![Complex64::new(0.0, 0.0); order + 1];
        a[1] = Complex64::new(1.0, 0.0);
        match self.relation()? {
            RelationKind::StarlikeType => {
                for n in 2..=order {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for m in 1..n {
                        acc += q.coeff(n - m) * a[m];
                    }
                    a[n] = acc / (n - 1) as f64;
                }
            }
            RelationKind::ConvexType => {
                let mut b = vec![Complex64::new(0.0, 0.0); order];
                b[0] = Complex64::new(1.0, 0.0);
                for n in 1..order {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 1..=n {
                        acc += q.coeff(k) * b[n - k];
                    }
                    b[n] = acc / n as f64;
                }
                for n in 2..=order {
                    a[n] = b[n - 1] / n as f64;
                }
            }
        }
        let pt = CaratheodoryPoint::new(p.coeff(1), p.coeff(2))?;
        let (a2, a3) = self.a2_a3(&pt)?;
        if (a[2] - a2).norm() > ROUTE_EPS || (a[3] - a3).norm() > ROUTE_EPS {
            return Err(Error::FormulaMismatch(format!(
                "{self:?}: recurrence gave (a2, a3) = ({}, {}), coefficient map ({a2}, {a3})",
                a[2], a[3]
            )));
        }
        NormalizedSeries::new(PowerSeries::new(a)?)
    }

    /// Short machine name, also the CLI spelling.
    pub fn label(&self) -> &'static str {
        match self {
            ClassSpec::S => "s",
            ClassSpec::StronglyStarlike { .. } => "strongly_starlike",
            ClassSpec::StronglyConvex { .. } => "strongly_convex",
            ClassSpec::Ozaki { .. } => "ozaki",
            ClassSpec::F0 { .. } => "f0",
            ClassSpec::Spirallike { .. } => "spirallike",
            ClassSpec::GammaConvex { .. } => "gamma_convex",
        }
    }

    /// The class parameters in report column order `(p1, p2)`:
    /// `alpha`/`nu`/`lambda` alone, or `(gamma, alpha)`.
    pub fn params(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            ClassSpec::S => (None, None),
            ClassSpec::StronglyStarlike { alpha } | ClassSpec::StronglyConvex { alpha } => {
                (Some(alpha), None)
            }
            ClassSpec::Ozaki { nu } => (Some(nu), None),
            ClassSpec::F0 { lambda } => (Some(lambda), None),
            ClassSpec::Spirallike { gamma, alpha }
            | ClassSpec::GammaConvex { gamma, alpha } => (Some(gamma), Some(alpha)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caratheodory::RationalP;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(c1: Complex64, c2: Complex64) -> CaratheodoryPoint {
        CaratheodoryPoint::new(c1, c2).unwrap()
    }

    fn half_plane_pt() -> CaratheodoryPoint {
        pt(c(2.0, 0.0), c(2.0, 0.0))
    }

    #[test]
    fn parameter_ranges_enforced() {
        assert!(ClassSpec::strongly_starlike(0.0).is_err());
        assert!(ClassSpec::strongly_starlike(1.0).is_ok());
        assert!(ClassSpec::ozaki(1.2).is_err());
        assert!(ClassSpec::f0(-0.5).is_err());
        assert!(ClassSpec::f0(-0.49).is_ok());
        assert!(ClassSpec::spirallike(1.6, 0.0).is_err());
        assert!(ClassSpec::gamma_convex(0.0, 1.0).is_err());
    }

    #[test]
    fn class_s_is_not_reducible() {
        assert!(ClassSpec::S.a2_a3(&half_plane_pt()).is_err());
        assert!(ClassSpec::S.reduced_functional().is_err());
        assert!(ClassSpec::S
            .build_f(&RationalP::half_plane().series(4), 4)
            .is_err());
    }

    #[test]
    fn a2_a3_examples() {
        let (a2, a3) = ClassSpec::strongly_starlike(0.5)
            .unwrap()
            .a2_a3(&half_plane_pt())
            .unwrap();
        assert!((a2 - c(1.0, 0.0)).norm() <= 1e-15);
        assert!((a3 - c(0.75, 0.0)).norm() <= 1e-15);

        let (a2, a3) = ClassSpec::ozaki(1.0)
            .unwrap()
            .a2_a3(&pt(c(0.0, 0.0), c(2.0, 0.0)))
            .unwrap();
        assert!(a2.norm() <= 1e-15);
        assert!((a3 - c(-1.0 / 6.0, 0.0)).norm() <= 1e-15);

        // starlike + half-plane p gives the Koebe coefficients
        let (a2, a3) = ClassSpec::starlike().a2_a3(&half_plane_pt()).unwrap();
        assert!((a2 - c(2.0, 0.0)).norm() <= 1e-15);
        assert!((a3 - c(3.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn reduced_functional_examples() {
        let rf = ClassSpec::convex().reduced_functional().unwrap();
        assert!((rf.b.b1() - 3.0).abs() <= 1e-15);
        assert!((rf.b.b2() - c(-1.25, 0.0)).norm() <= 1e-15);
        assert!((rf.b.b3() - 1.0).abs() <= 1e-15);
        assert!((rf.scale - 1.0 / 12.0).abs() <= 1e-15);

        let rf = ClassSpec::strongly_starlike(1.0)
            .unwrap()
            .reduced_functional()
            .unwrap();
        assert!((rf.b.b1() - 2.0).abs() <= 1e-15);
        assert!((rf.b.b2() - c(-2.0, 0.0)).norm() <= 1e-15);
        assert!((rf.scale - 0.25).abs() <= 1e-15);

        let rf = ClassSpec::ozaki(0.2).unwrap().reduced_functional().unwrap();
        assert!((rf.b.b2() - c(0.125, 0.0)).norm() <= 1e-15);
        assert!((rf.scale - 1.0 / 120.0).abs() <= 1e-16);
    }

    #[test]
    fn gamma_diff_examples() {
        let v = ClassSpec::starlike()
            .gamma_diff_from_point(&half_plane_pt())
            .unwrap();
        assert!((v - 0.5).abs() <= 1e-14);

        let v = ClassSpec::convex()
            .gamma_diff_from_point(&pt(c(0.0, 0.0), c(2.0, 0.0)))
            .unwrap();
        assert!((v - 1.0 / 6.0).abs() <= 1e-14);

        // strongly starlike α = 1 at its lower extremal point (2A, 2), A = 1/2
        let v = ClassSpec::strongly_starlike(1.0)
            .unwrap()
            .gamma_diff_from_point(&pt(c(1.0, 0.0), c(2.0, 0.0)))
            .unwrap();
        assert!((v + 0.5).abs() <= 1e-14);
    }

    #[test]
    fn q_series_examples() {
        let p = RationalP::half_plane().series(6);

        // λ = 1/2 is the convex class: q = p
        let q = ClassSpec::f0(0.5).unwrap().q_series(&p, 6).unwrap();
        for k in 0..=6 {
            assert!((q.coeff(k) - p.coeff(k)).norm() <= 1e-14);
        }

        // Ozaki: q = 1 − νz − νz² − …
        let nu = 0.3;
        let q = ClassSpec::ozaki(nu).unwrap().q_series(&p, 5).unwrap();
        assert!((q.coeff(0) - c(1.0, 0.0)).norm() == 0.0);
        for k in 1..=5 {
            assert!((q.coeff(k) - c(-nu, 0.0)).norm() <= 1e-15);
        }

        // spirallike constant term collapses to 1 for any p
        let q = ClassSpec::spirallike(0.7, 0.3)
            .unwrap()
            .q_series(&RationalP::mobius(0.4).unwrap().series(5), 5)
            .unwrap();
        assert_eq!(q.coeff(0), c(1.0, 0.0));
    }

    #[test]
    fn build_f_reproduces_koebe() {
        let p = RationalP::half_plane().series(6);
        let f = ClassSpec::starlike().build_f(&p, 6).unwrap();
        for n in 2..=6 {
            assert!(
                (f.series().coeff(n) - c(n as f64, 0.0)).norm() <= 1e-12,
                "a_{n} = {}",
                f.series().coeff(n)
            );
        }
    }

    #[test]
    fn build_f_half_plane_convex_map() {
        let p = RationalP::half_plane().series(6);
        let f = ClassSpec::f0(0.5).unwrap().build_f(&p, 6).unwrap();
        for n in 2..=6 {
            assert!((f.series().coeff(n) - c(1.0, 0.0)).norm() <= 1e-13);
        }
    }

    #[test]
    fn build_f_strongly_starlike_low_order() {
        let p = RationalP::half_plane().series(3);
        let f = ClassSpec::strongly_starlike(0.5)
            .unwrap()
            .build_f(&p, 3)
            .unwrap();
        assert!((f.series().coeff(2) - c(1.0, 0.0)).norm() <= 1e-13);
        assert!((f.series().coeff(3) - c(0.75, 0.0)).norm() <= 1e-13);
    }

    fn all_classes(rng: &mut impl Rng) -> Vec<ClassSpec> {
        vec![
            ClassSpec::strongly_starlike(rng.gen_range(f64::EPSILON..=1.0)).unwrap(),
            ClassSpec::strongly_convex(rng.gen_range(f64::EPSILON..=1.0)).unwrap(),
            ClassSpec::ozaki(rng.gen_range(f64::EPSILON..=1.0)).unwrap(),
            ClassSpec::f0(rng.gen_range(-0.49..=1.0)).unwrap(),
            ClassSpec::spirallike(rng.gen_range(-1.5..=1.5), rng.gen_range(0.0..1.0)).unwrap(),
            ClassSpec::gamma_convex(rng.gen_range(-1.5..=1.5), rng.gen_range(0.0..1.0)).unwrap(),
        ]
    }

    fn rational_ps(rng: &mut impl Rng) -> Vec<RationalP> {
        vec![
            RationalP::half_plane(),
            RationalP::symmetric(),
            RationalP::mobius(rng.gen_range(-1.0..=1.0)).unwrap(),
            RationalP::inverse_mobius(rng.gen_range(-1.0..=1.0)).unwrap(),
            RationalP::blaschke2(
                c(rng.gen_range(0.0..=1.0), 0.0),
                Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn consistency_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..20 {
            for cs in all_classes(&mut rng) {
                for p in rational_ps(&mut rng) {
                    let series = p.series(3);
                    let f = cs.build_f(&series, 3).unwrap();
                    let via_build =
                        gamma_moduli_diff(f.series().coeff(2), f.series().coeff(3));
                    let point = p.point();
                    let via_map = cs.gamma_diff_from_point(&point).unwrap();
                    assert!(
                        (via_build - via_map).abs() <= 1e-10,
                        "{cs:?} {p:?}: {via_build} vs {via_map}"
                    );
                }
            }
        }
    }

    #[test]
    fn end_to_end_pipeline_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(56);
        for _ in 0..20 {
            for cs in all_classes(&mut rng) {
                for p in rational_ps(&mut rng) {
                    let f = cs.build_f(&p.series(12), 12).unwrap();
                    let gs = f.inverse_log_coefficients();
                    let (g1, g2) = crate::series::inverse_log_pair(
                        f.series().coeff(2),
                        f.series().coeff(3),
                    );
                    assert!((gs[0] - g1).norm() <= 1e-10);
                    assert!((gs[1] - g2).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn spirallike_at_gamma_zero_is_starlike_of_order_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for _ in 0..40 {
            let alpha = rng.gen_range(0.0..1.0);
            let cs = ClassSpec::starlike_of_order(alpha).unwrap();
            let x = Complex64::from_polar(
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let point =
                crate::caratheodory::point_from_fiber(rng.gen_range(0.0..=2.0), x).unwrap();
            let (a2, a3) = cs.a2_a3(&point).unwrap();
            let c1 = point.c1();
            let c2 = point.c2();
            let w = 1.0 - alpha;
            assert!((a2 - c1 * w).norm() <= 1e-13);
            assert!((a3 - (c1 * c1 * w + c2) * (w * 0.5)).norm() <= 1e-13);
        }
    }

    #[test]
    fn convex_coincides_with_f_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(58);
        for _ in 0..20 {
            for p in rational_ps(&mut rng) {
                let point = p.point();
                let (a2, a3) = ClassSpec::convex().a2_a3(&point).unwrap();
                let (b2, b3) = ClassSpec::f0(0.5).unwrap().a2_a3(&point).unwrap();
                assert!((a2 - b2).norm() <= 1e-12);
                assert!((a3 - b3).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn build_f_rejects_short_input() {
        let p = RationalP::half_plane().series(4);
        assert!(ClassSpec::starlike().build_f(&p, 6).is_err());
        assert!(ClassSpec::starlike().build_f(&p, 2).is_err());
    }
}
