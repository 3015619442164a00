//! The Carathéodory class through its first two coefficients.
//!
//! For `p(z) = 1 + c₁z + c₂z² + …` analytic with positive real part on the
//! unit disk, the attainable pairs `(c₁, c₂)` form the body
//! `|c₁| ≤ 2`, `|c₂ − c₁²/2| ≤ 2 − |c₁|²/2`. The fiber over a fixed `c₁` is a
//! closed disk, which gives the exact three-real-parameter enumeration the
//! brute-force oracle walks: `c₁ = r ∈ [0, 2]` (rotation reduction keeps `c₁`
//! real), `c₂ = r²/2 + x·(2 − r²/2)` with `|x| ≤ 1`.
//!
//! [`RationalP`] carries the explicit degree-(2,2) rational functions that
//! attain the sharp bounds: the half-plane map, the symmetric map, the two
//! Möbius-type families, and the Blaschke-product form with a unimodular
//! second parameter.

use num_complex::Complex64;

use crate::series::PowerSeries;
use crate::Error;

/// Slack for membership tests of the coefficient body.
pub const BODY_EPS: f64 = 1e-12;

/// Number of boundary samples for the positive-real-part check.
const POSITIVITY_SAMPLES: usize = 4096;
/// Radius of the sample circle for the positive-real-part check.
const POSITIVITY_RADIUS: f64 = 0.999;
/// Acceptance floor for sampled `Re p`.
const POSITIVITY_FLOOR: f64 = -1e-9;

/// An admissible coefficient pair `(c₁, c₂)` of a Carathéodory function.
/// Construction validates membership in the coefficient body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryPoint {
    c1: Complex64,
    c2: Complex64,
}

/// Membership test for the `(c₁, c₂)` body, with `BODY_EPS` slack.
pub fn is_valid(c1: Complex64, c2: Complex64) -> bool {
    c1.norm() <= 2.0 + BODY_EPS
        && (c2 - c1 * c1 * 0.5).norm() <= 2.0 - c1.norm_sqr() * 0.5 + BODY_EPS
}

impl CaratheodoryPoint {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self, Error> {
        if !c1.re.is_finite() || !c1.im.is_finite() || !c2.re.is_finite() || !c2.im.is_finite() {
            return Err(Error::InvalidPoint { c1, c2 });
        }
        if !is_valid(c1, c2) {
            return Err(Error::InvalidPoint { c1, c2 });
        }
        Ok(Self { c1, c2 })
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    /// Rotated point `(e^{iθ}c₁, e^{2iθ}c₂)`; the body is closed under this.
    pub fn rotated(&self, theta: f64) -> Self {
        let u = Complex64::from_polar(1.0, theta);
        Self {
            c1: self.c1 * u,
            c2: self.c2 * u * u,
        }
    }
}

/// Fiber parameterization of the body: `c₁ = r`, `c₂ = r²/2 + x·(2 − r²/2)`
/// for `r ∈ [0, 2]` and `|x| ≤ 1`. Every point it produces is admissible, and
/// every admissible pair with real `c₁ ≥ 0` arises this way.
pub fn point_from_fiber(r: f64, x: Complex64) -> Result<CaratheodoryPoint, Error> {
    if !(0.0..=2.0).contains(&r) {
        return Err(Error::ParameterOutOfRange(format!(
            "fiber radius r = {r}, need 0 <= r <= 2"
        )));
    }
    if x.norm() > 1.0 + BODY_EPS {
        return Err(Error::ParameterOutOfRange(format!(
            "fiber coordinate |x| = {}, need |x| <= 1",
            x.norm()
        )));
    }
    let half_sq = r * r * 0.5;
    let c2 = Complex64::new(half_sq, 0.0) + x * (2.0 - half_sq);
    CaratheodoryPoint::new(Complex64::new(r, 0.0), c2)
}

/// The explicit rational Carathéodory functions used as extremals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RationalP {
    /// `(1+z)/(1−z)`: `c_n = 2`.
    HalfPlane,
    /// `(1+z²)/(1−z²)`: `c₁ = 0`, `c₂ = 2`.
    Symmetric,
    /// `(1+2Az+z²)/(1−z²)` with `A ∈ [−1, 1]`: `c₁ = 2A`, `c₂ = 2`.
    Mobius { a: f64 },
    /// `(1−z²)/(1−2tz+z²)` with `t ∈ [−1, 1]`: `c₁ = 2t`, `c₂ = 4t² − 2`.
    InverseMobius { t: f64 },
    /// `(1 + q₁(q₂+1)z + q₂z²) / (1 + q₁(q₂−1)z − q₂z²)` with `|q₁| ≤ 1` and
    /// `|q₂| = 1`: `c₁ = 2q₁`, `c₂ = 2q₂ − 2q₁²(q₂−1)`. For real `q₁` this is
    /// exactly the fiber point `(2q₁, x = q₂)` on the fiber boundary;
    /// `q₂ = 1` recovers `Mobius`, `q₂ = −1` recovers `InverseMobius`.
    Blaschke2 { q1: Complex64, q2: Complex64 },
}

impl RationalP {
    pub fn half_plane() -> Self {
        RationalP::HalfPlane
    }

    pub fn symmetric() -> Self {
        RationalP::Symmetric
    }

    pub fn mobius(a: f64) -> Result<Self, Error> {
        if !a.is_finite() || a.abs() > 1.0 + BODY_EPS {
            return Err(Error::ParameterOutOfRange(format!(
                "Mobius parameter A = {a}, need |A| <= 1"
            )));
        }
        let p = RationalP::Mobius { a };
        p.check_positive_real_part()?;
        Ok(p)
    }

    pub fn inverse_mobius(t: f64) -> Result<Self, Error> {
        if !t.is_finite() || t.abs() > 1.0 + BODY_EPS {
            return Err(Error::ParameterOutOfRange(format!(
                "inverse-Mobius parameter t = {t}, need |t| <= 1"
            )));
        }
        let p = RationalP::InverseMobius { t };
        p.check_positive_real_part()?;
        Ok(p)
    }

    pub fn blaschke2(q1: Complex64, q2: Complex64) -> Result<Self, Error> {
        if q1.norm() > 1.0 + BODY_EPS {
            return Err(Error::ParameterOutOfRange(format!(
                "Blaschke parameter |q1| = {}, need <= 1",
                q1.norm()
            )));
        }
        if (q2.norm() - 1.0).abs() > BODY_EPS {
            return Err(Error::ParameterOutOfRange(format!(
                "Blaschke parameter |q2| = {}, need = 1",
                q2.norm()
            )));
        }
        let p = RationalP::Blaschke2 { q1, q2 };
        p.check_positive_real_part()?;
        Ok(p)
    }

    /// Numerator and denominator coefficients `(1, n₁, n₂)`, `(1, d₁, d₂)`.
    fn fraction(&self) -> ([Complex64; 3], [Complex64; 3]) {
        let c = |x: f64| Complex64::new(x, 0.0);
        match *self {
            RationalP::HalfPlane => ([c(1.0), c(1.0), c(0.0)], [c(1.0), c(-1.0), c(0.0)]),
            RationalP::Symmetric => ([c(1.0), c(0.0), c(1.0)], [c(1.0), c(0.0), c(-1.0)]),
            RationalP::Mobius { a } => ([c(1.0), c(2.0 * a), c(1.0)], [c(1.0), c(0.0), c(-1.0)]),
            RationalP::InverseMobius { t } => {
                ([c(1.0), c(0.0), c(-1.0)], [c(1.0), c(-2.0 * t), c(1.0)])
            }
            RationalP::Blaschke2 { q1, q2 } => (
                [c(1.0), q1 * (q2 + 1.0), q2],
                [c(1.0), q1 * (q2 - 1.0), -q2],
            ),
        }
    }

    /// Evaluates the rational function at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (n, d) = self.fraction();
        (n[0] + n[1] * z + n[2] * z * z) / (d[0] + d[1] * z + d[2] * z * z)
    }

    /// Samples `Re p` on the circle `|z| = 0.999` and rejects if any sample
    /// drops below `−1e−9`. A necessary check only; exact positivity
    /// certification is out of scope.
    fn check_positive_real_part(&self) -> Result<(), Error> {
        let mut min_re = f64::INFINITY;
        for k in 0..POSITIVITY_SAMPLES {
            let theta = std::f64::consts::TAU * k as f64 / POSITIVITY_SAMPLES as f64;
            let z = Complex64::from_polar(POSITIVITY_RADIUS, theta);
            let re = self.eval(z).re;
            if re < min_re {
                min_re = re;
            }
        }
        if min_re < POSITIVITY_FLOOR {
            return Err(Error::NotPositiveRealPart(min_re));
        }
        Ok(())
    }

    /// Truncated Taylor series; `c[0] = 1` by construction.
    pub fn series(&self, order: usize) -> PowerSeries {
        let (n, d) = self.fraction();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        for m in 0..=order {
            let mut acc = if m <= 2 { n[m] } else { Complex64::new(0.0, 0.0) };
            for k in 1..=2.min(m) {
                acc -= d[k] * coeffs[m - k];
            }
            coeffs[m] = acc;
        }
        PowerSeries::new(coeffs).expect("rational series coefficients are finite")
    }

    /// The coefficient pair `(c₁, c₂)` of this function.
    pub fn point(&self) -> CaratheodoryPoint {
        let s = self.series(2);
        CaratheodoryPoint::new(s.coeff(1), s.coeff(2))
            .expect("rational Caratheodory functions have admissible coefficients")
    }
}

/// A deterministic enumeration grid over the coefficient body: `n_r` values of
/// `r` on `[0, 2]`, `n_rho` values of `ρ` on `[0, 1]` (both inclusive), and
/// `n_phi` values of `φ` on `[0, 2π)` (half-open). Row-major enumeration with
/// `r` outermost and `φ` innermost, so argmax tie-breaking by index is
/// reproducible and the stream can be partitioned at any index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_r: usize,
    pub n_rho: usize,
    pub n_phi: usize,
}

impl GridSpec {
    pub fn new(n_r: usize, n_rho: usize, n_phi: usize) -> Result<Self, Error> {
        if n_r < 2 || n_rho < 2 || n_phi < 2 {
            return Err(Error::GridTooSmall(format!(
                "({n_r}, {n_rho}, {n_phi}), need every resolution >= 2"
            )));
        }
        Ok(Self { n_r, n_rho, n_phi })
    }

    /// The default oracle resolution.
    pub fn default_oracle() -> Self {
        Self {
            n_r: 201,
            n_rho: 101,
            n_phi: 256,
        }
    }

    pub fn len(&self) -> usize {
        self.n_r * self.n_rho * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r_value(&self, i: usize) -> f64 {
        2.0 * i as f64 / (self.n_r - 1) as f64
    }

    pub fn rho_value(&self, j: usize) -> f64 {
        j as f64 / (self.n_rho - 1) as f64
    }

    pub fn phi_value(&self, k: usize) -> f64 {
        std::f64::consts::TAU * k as f64 / self.n_phi as f64
    }

    /// Decodes a row-major index into `(i, j, k)`.
    pub fn decompose(&self, index: usize) -> (usize, usize, usize) {
        let k = index % self.n_phi;
        let rest = index / self.n_phi;
        (rest / self.n_rho, rest % self.n_rho, k)
    }

    /// The grid point at a row-major index.
    pub fn point(&self, index: usize) -> CaratheodoryPoint {
        let (i, j, k) = self.decompose(index);
        let x = Complex64::from_polar(self.rho_value(j), self.phi_value(k));
        point_from_fiber(self.r_value(i), x).expect("grid coordinates are in range")
    }

    pub fn points(&self) -> impl Iterator<Item = CaratheodoryPoint> + '_ {
        (0..self.len()).map(move |idx| self.point(idx))
    }
}
