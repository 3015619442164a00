//! Truncated formal power series over complex coefficients.
//!
//! A [`PowerSeries`] holds coefficients `c[0..=N]` for a fixed truncation
//! order `N`. Binary operations clamp to the smaller input order — there is
//! no implicit zero-padding, so a result never claims orders that either
//! input did not carry. [`NormalizedSeries`] refines this to the class-`A`
//! normalization `c[0] = 0, c[1] = 1` and owns reversion and the logarithmic
//! coefficient pipelines.

use num_complex::Complex64;

use crate::Error;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Neumaier-compensated accumulator. Reversion roundtrips at order 16 pass
/// through intermediates several orders of magnitude above the result, so the
/// convolution sums here carry a correction term to keep the coefficientwise
/// error near one ulp of the largest intermediate.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn total(self) -> f64 {
        self.sum + self.carry
    }
}

/// Compensated complex dot-product accumulator.
#[derive(Clone, Copy, Default)]
struct CompensatedComplex {
    re: Compensated,
    im: Compensated,
}

impl CompensatedComplex {
    #[inline]
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    fn add_mul(&mut self, a: Complex64, b: Complex64) {
        // accumulate the four partial products separately so the compensation
        // sees every cancellation
        self.re.add(a.re * b.re);
        self.re.add(-(a.im * b.im));
        self.im.add(a.re * b.im);
        self.im.add(a.im * b.re);
    }

    #[inline]
    fn total(self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// Tolerance for "this constant term is 1" checks. Affine constructions of
/// Carathéodory transforms leave the constant term within a few ulps of 1.
pub const UNIT_EPS: f64 = 1e-12;

/// A power series truncated at order `N`, dense coefficients `c[0..=N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from `c[0..=N]`. Rejects empty input and non-finite
    /// entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(i) = coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFiniteCoefficient(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, Error> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant series `1 + 0z + … + 0z^N`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = ONE;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`. Panics past the truncation order; truncated
    /// series make no claim about higher coefficients.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Drops coefficients above `order`; no-op if already shorter.
    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Cauchy product, truncated at the smaller input order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![ZERO; n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = CompensatedComplex::default();
            for m in 0..=k {
                acc.add_mul(self.coeffs[m], other.coeffs[k - m]);
            }
            *slot = acc.total();
        }
        Self { coeffs: out }
    }

    /// Coefficientwise sum, truncated at the smaller input order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Logarithm of a unit series (`c[0] = 1`), by the recurrence
    /// `n·l_n = n·p_n − Σ_{k<n} k·l_k·p_{n−k}`. Result has zero constant term.
    pub fn log_unit(&self) -> Result<Self, Error> {
        if (self.coeffs[0] - ONE).norm() > UNIT_EPS {
            return Err(Error::NotUnit(self.coeffs[0]));
        }
        let n = self.order();
        let mut l = vec![ZERO; n + 1];
        for m in 1..=n {
            let mut acc = CompensatedComplex::default();
            acc.add(self.coeffs[m] * m as f64);
            for k in 1..m {
                acc.add_mul(l[k] * (-(k as f64)), self.coeffs[m - k]);
            }
            l[m] = acc.total() / m as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// Exponential of a series with zero constant term, by the recurrence
    /// `n·e_n = Σ_{k≤n} k·s_k·e_{n−k}`.
    pub fn exp_zero(&self) -> Result<Self, Error> {
        if self.coeffs[0].norm() > UNIT_EPS {
            return Err(Error::NonZeroConstantTerm(self.coeffs[0]));
        }
        let n = self.order();
        let mut e = vec![ZERO; n + 1];
        e[0] = ONE;
        for m in 1..=n {
            let mut acc = CompensatedComplex::default();
            for k in 1..=m {
                acc.add_mul(self.coeffs[k] * k as f64, e[m - k]);
            }
            e[m] = acc.total() / m as f64;
        }
        Ok(Self { coeffs: e })
    }

    /// Real power of a unit series: `exp(α · log p)`.
    pub fn pow_real(&self, alpha: f64) -> Result<Self, Error> {
        let log = self.log_unit()?;
        log.scale(Complex64::new(alpha, 0.0)).exp_zero()
    }

    /// Substitutes `inner` (which must have zero constant term) into `self`,
    /// truncated at the smaller of the two orders. Exact under truncation:
    /// with `inner = O(z)`, terms `a_m·inner^m` for `m > N` cannot reach `z^N`.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        if inner.coeffs[0] != ZERO {
            return Err(Error::NonZeroConstantTerm(inner.coeffs[0]));
        }
        let n = self.order().min(inner.order());
        let g = inner.truncated(n);
        let mut acc = Self {
            coeffs: vec![ZERO; n + 1],
        };
        acc.coeffs[0] = self.coeffs[n.min(self.order())];
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }
}

/// A power series with the normalization `c[0] = 0, c[1] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSeries(PowerSeries);

impl NormalizedSeries {
    pub fn new(series: PowerSeries) -> Result<Self, Error> {
        if series.order() < 1 || series.coeffs[0] != ZERO || series.coeffs[1] != ONE {
            return Err(Error::NotNormalized);
        }
        Ok(Self(series))
    }

    /// Builds `z + tail[0]·z² + tail[1]·z³ + …`.
    pub fn from_tail(tail: &[Complex64]) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 2);
        coeffs.push(ZERO);
        coeffs.push(ONE);
        coeffs.extend_from_slice(tail);
        Self(PowerSeries { coeffs })
    }

    pub fn series(&self) -> &PowerSeries {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Compositional inverse `F` with `f(F(w)) = w` up to the truncation
    /// order, solved order by order: with `A_2..A_{n-1}` fixed, the `w^n`
    /// coefficient of `f(F(w))` is `A_n` plus terms in lower-index `A`'s, so
    /// each defect determines the next coefficient.
    pub fn revert(&self) -> Self {
        let n = self.0.order();
        let mut inv = vec![ZERO; n + 1];
        inv[1] = ONE;
        for m in 2..=n {
            let partial = PowerSeries { coeffs: inv.clone() };
            let h = self
                .0
                .compose(&partial)
                .expect("partial inverse has zero constant term");
            inv[m] = -h.coeffs[m];
        }
        Self(PowerSeries { coeffs: inv })
    }

    /// Logarithmic coefficients `γ_1..γ_{N-1}`: half the Taylor coefficients
    /// of `log(f(z)/z)`.
    pub fn log_coefficients(&self) -> Vec<Complex64> {
        let unit = PowerSeries {
            coeffs: self.0.coeffs[1..].to_vec(),
        };
        let l = unit.log_unit().expect("f/z of a normalized f is a unit");
        l.coeffs[1..].iter().map(|c| c * 0.5).collect()
    }

    /// Inverse logarithmic coefficients `Γ_1..Γ_{N-1}`: the logarithmic
    /// coefficients of the compositional inverse.
    pub fn inverse_log_coefficients(&self) -> Vec<Complex64> {
        self.revert().log_coefficients()
    }
}

/// Closed forms for the first two inverse logarithmic coefficients in terms of
/// the function's own coefficients: `Γ₁ = −a₂/2`, `Γ₂ = −a₃/2 + 3a₂²/4`.
pub fn inverse_log_pair(a2: Complex64, a3: Complex64) -> (Complex64, Complex64) {
    (a2 * -0.5, a3 * -0.5 + a2 * a2 * 0.75)
}

/// `|Γ₂| − |Γ₁|` straight from `(a₂, a₃)`.
pub fn gamma_moduli_diff(a2: Complex64, a3: Complex64) -> f64 {
    let (g1, g2) = inverse_log_pair(a2, a3);
    g2.norm() - g1.norm()
}
