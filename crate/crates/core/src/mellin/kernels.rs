//! Scalar convolution kernels on `R⁺` with certified decay bounds.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use super::quadrature::{integrate, uniform_breaks};
use super::MellinError;

/// `|κ(t)| ≤ C · min(t^{p₀}, t^{−p∞})` for all `t > 0`, so the Mellin
/// integral converges absolutely on `−p₀ < Re z < p∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCertificate {
    pub bound: f64,
    pub order_at_zero: f64,
    pub order_at_infinity: f64,
    /// `κ` vanishes outside `[lo, hi]`; the transform is then entire.
    pub support: Option<(f64, f64)>,
}

impl DecayCertificate {
    pub fn new(bound: f64, order_at_zero: f64, order_at_infinity: f64) -> Self {
        Self { bound, order_at_zero, order_at_infinity, support: None }
    }

    /// Open strip `(lo, hi)` of admissible `Re z`.
    pub fn strip(&self) -> (f64, f64) {
        if self.support.is_some() {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else {
            (-self.order_at_zero, self.order_at_infinity)
        }
    }

    pub fn admits(&self, re: f64) -> bool {
        let (lo, hi) = self.strip();
        re > lo && re < hi
    }

    /// The bound evaluated at `t`.
    pub fn envelope(&self, t: f64) -> f64 {
        if let Some((lo, hi)) = self.support {
            if t < lo || t > hi {
                return 0.0;
            }
        }
        self.bound * t.powf(self.order_at_zero).min(t.powf(-self.order_at_infinity))
    }
}

pub trait ScalarKernel: Send + Sync + fmt::Debug {
    fn eval(&self, t: f64) -> f64;
    fn certificate(&self) -> DecayCertificate;
    /// Points `t` where κ is not smooth or changes scale.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// Canonical description; equal keys mean equal kernels.
    fn key(&self) -> String;
}

pub type KernelRef = Arc<dyn ScalarKernel>;

/// `e^{−t}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpKernel;

impl ScalarKernel for ExpKernel {
    fn eval(&self, t: f64) -> f64 {
        (-t).exp()
    }
    fn certificate(&self) -> DecayCertificate {
        // max of t⁴ e^{−t} is (4/e)⁴, attained at t = 4
        DecayCertificate::new((4.0 / E).powi(4), 0.0, 4.0)
    }
    fn key(&self) -> String {
        "exp".into()
    }
}

/// Indicator of `[lo, hi]`, `0 < lo < hi`.
#[derive(Debug, Clone, Copy)]
pub struct Indicator {
    pub lo: f64,
    pub hi: f64,
}

impl Indicator {
    pub fn new(lo: f64, hi: f64) -> Result<Self, MellinError> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(MellinError::InvalidKernel(format!("indicator needs 0 < lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }
}

impl ScalarKernel for Indicator {
    fn eval(&self, t: f64) -> f64 {
        if t >= self.lo && t <= self.hi {
            1.0
        } else {
            0.0
        }
    }
    fn certificate(&self) -> DecayCertificate {
        // 1 ≤ max(lo^{-2}, hi²) · min(t², t^{-2}) on [lo, hi]
        let c = self.lo.powi(-2).max(self.hi.powi(2)).max(1.0);
        DecayCertificate { bound: c, order_at_zero: 2.0, order_at_infinity: 2.0, support: Some((self.lo, self.hi)) }
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.lo, self.hi]
    }
    fn key(&self) -> String {
        format!("indicator[{:e},{:e}]", self.lo, self.hi)
    }
}

/// Interaction of two rays of a straight cone through the planar double
/// layer: for `x` on the target ray at angle `ψ_i` and `y` on the source ray
/// at angle `ψ_j`, with `t = |x|/|y|`,
///
/// `κ(t) = σ · t sin Δ / (2π (t² + 1 − 2t cos Δ))`, `Δ = ψ_i − ψ_j`,
///
/// where `σ = ±1` orients the source normal.
#[derive(Debug, Clone, Copy)]
pub struct RayPairKernel {
    sin_d: f64,
    cos_d: f64,
    sign: f64,
}

impl RayPairKernel {
    pub fn new(delta: f64, sign: f64) -> Result<Self, MellinError> {
        let (sin_d, cos_d) = delta.sin_cos();
        if 1.0 - cos_d < 1e-9 && sin_d.abs() < 1e-9 {
            return Err(MellinError::DegenerateAngle(delta));
        }
        Ok(Self { sin_d, cos_d, sign: sign.signum() })
    }

    /// Off-diagonal entry of the wedge of opening `θ`.
    pub fn wedge(theta: f64) -> Result<Self, MellinError> {
        if !(1e-9..=2.0 * PI - 1e-9).contains(&theta) {
            return Err(MellinError::DegenerateAngle(theta));
        }
        Self::new(-theta, -1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.sin_d == 0.0
    }
}

impl ScalarKernel for RayPairKernel {
    fn eval(&self, t: f64) -> f64 {
        self.sign * t * self.sin_d / (2.0 * PI * (t * t + 1.0 - 2.0 * t * self.cos_d))
    }
    fn certificate(&self) -> DecayCertificate {
        // t² + 1 − 2t cos Δ ≥ max(1, t²) · d with d = 1 for cos Δ ≤ 0 and
        // d = sin²Δ otherwise
        let d = if self.cos_d <= 0.0 { 1.0 } else { self.sin_d * self.sin_d };
        DecayCertificate::new(self.sin_d.abs() / (2.0 * PI * d), 1.0, 1.0)
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![1.0]
    }
    fn key(&self) -> String {
        // the kernel depends on σ sin Δ and cos Δ only
        format!("raypair[{:.15e},{:.15e}]", self.sign * self.sin_d, self.cos_d)
    }
}

/// `t ↦ κ(λt)`.
#[derive(Debug, Clone)]
pub struct Dilated {
    pub inner: KernelRef,
    pub lambda: f64,
}

impl Dilated {
    pub fn new(inner: KernelRef, lambda: f64) -> Result<Self, MellinError> {
        let c = inner.certificate();
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(MellinError::InvalidKernel(format!("dilation factor {lambda} must be positive")));
        }
        if c.order_at_zero < 0.0 || c.order_at_infinity < 0.0 {
            return Err(MellinError::InvalidKernel("dilation needs nonnegative decay orders".into()));
        }
        Ok(Self { inner, lambda })
    }
}

impl ScalarKernel for Dilated {
    fn eval(&self, t: f64) -> f64 {
        self.inner.eval(self.lambda * t)
    }
    fn certificate(&self) -> DecayCertificate {
        let c = self.inner.certificate();
        let l = self.lambda;
        DecayCertificate {
            bound: c.bound * l.powf(c.order_at_zero).max(l.powf(-c.order_at_infinity)),
            order_at_zero: c.order_at_zero,
            order_at_infinity: c.order_at_infinity,
            support: c.support.map(|(lo, hi)| (lo / l, hi / l)),
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().into_iter().map(|b| b / self.lambda).collect()
    }
    fn key(&self) -> String {
        format!("dilate[{:e}]({})", self.lambda, self.inner.key())
    }
}

/// `Σ αᵢ κᵢ`.
#[derive(Debug, Clone)]
pub struct Combination {
    pub terms: Vec<(f64, KernelRef)>,
}

impl ScalarKernel for Combination {
    fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|(a, k)| a * k.eval(t)).sum()
    }
    fn certificate(&self) -> DecayCertificate {
        let certs: Vec<_> = self.terms.iter().map(|(a, k)| (a.abs(), k.certificate())).collect();
        let support = certs.iter().try_fold(None::<(f64, f64)>, |acc, (_, c)| {
            let (lo, hi) = c.support?;
            Some(Some(acc.map_or((lo, hi), |(a, b)| (a.min(lo), b.max(hi)))))
        });
        DecayCertificate {
            bound: certs.iter().map(|(a, c)| a * c.bound).sum(),
            order_at_zero: certs.iter().map(|(_, c)| c.order_at_zero).fold(f64::INFINITY, f64::min),
            order_at_infinity: certs.iter().map(|(_, c)| c.order_at_infinity).fold(f64::INFINITY, f64::min),
            support: support.flatten(),
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.terms.iter().flat_map(|(_, k)| k.breakpoints()).collect()
    }
    fn key(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(a, k)| format!("{a:e}*{}", k.key())).collect();
        format!("sum({})", parts.join("+"))
    }
}

/// `(κ₁ ⋆ κ₂)(t) = ∫₀^∞ κ₁(t/s) κ₂(s) ds/s`, evaluated by quadrature in
/// `v = ln s`. The caller supplies the decay certificate.
#[derive(Debug, Clone)]
pub struct MultiplicativeConvolution {
    pub first: KernelRef,
    pub second: KernelRef,
    pub cert: DecayCertificate,
    pub tol: f64,
}

impl MultiplicativeConvolution {
    pub fn new(first: KernelRef, second: KernelRef, cert: DecayCertificate) -> Self {
        Self { first, second, cert, tol: 1e-13 }
    }

    /// Integration range in `v = ln s`. As `v → −∞` the integrand decays at
    /// rate `p₀(κ₂) + p∞(κ₁)` once `v < ln t`; as `v → ∞` at rate
    /// `p∞(κ₂) + p₀(κ₁)` once `v > ln t`.
    fn range(&self, t: f64) -> (f64, f64) {
        let c2 = self.second.certificate();
        if let Some((lo, hi)) = c2.support {
            return (lo.ln(), hi.ln());
        }
        let c1 = self.first.certificate();
        let scale = c1.bound * c2.bound * t.powf(-c1.order_at_infinity).max(t.powf(c1.order_at_zero)).max(1.0);
        let cut = |rate: f64| -> f64 {
            if rate <= 0.0 {
                return 700.0;
            }
            ((scale / (rate * self.tol * 1e-2)).ln() / rate).clamp(0.0, 700.0)
        };
        let lt = t.ln();
        let lo = lt.min(0.0) - cut(c2.order_at_zero + c1.order_at_infinity);
        let hi = lt.max(0.0) + cut(c2.order_at_infinity + c1.order_at_zero);
        (lo, hi)
    }
}

impl ScalarKernel for MultiplicativeConvolution {
    fn eval(&self, t: f64) -> f64 {
        let (lo, hi) = self.range(t);
        let mut extra: Vec<f64> = self.second.breakpoints().into_iter().map(f64::ln).collect();
        extra.extend(self.first.breakpoints().into_iter().map(|b| (t / b).ln()));
        extra.push(t.ln());
        let breaks = uniform_breaks(lo, hi, 1.0, &extra);
        let f = |v: f64| {
            let s = v.exp();
            self.first.eval(t / s) * self.second.eval(s)
        };
        match integrate(f, &breaks, self.tol, 20_000) {
            Ok(r) => r.value,
            Err(_) => f64::NAN,
        }
    }
    fn certificate(&self) -> DecayCertificate {
        self.cert
    }
    fn key(&self) -> String {
        format!("conv({},{})", self.first.key(), self.second.key())
    }
}

/// A kernel given by a closure and an explicit certificate.
#[derive(Clone)]
pub struct FnKernel {
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub cert: DecayCertificate,
    pub name: String,
}

impl fmt::Debug for FnKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnKernel").field("name", &self.name).field("cert", &self.cert).finish()
    }
}

impl ScalarKernel for FnKernel {
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn certificate(&self) -> DecayCertificate {
        self.cert
    }
    fn key(&self) -> String {
        format!("fn[{}]", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_envelope(k: &dyn ScalarKernel) {
        let c = k.certificate();
        for i in -400..=400 {
            let t = 10f64.powf(i as f64 / 50.0);
            let v = k.eval(t).abs();
            assert!(v <= c.envelope(t) * (1.0 + 1e-12) + 1e-300, "{} at t={t}: {v} > {}", k.key(), c.envelope(t));
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn envelopes_hold() {
        check_envelope(&ExpKernel);
        check_envelope(&Indicator::new(1.0, 2.0).unwrap());
        for th in [0.1, 0.7, 1.5707963, 2.5, 3.14159, 4.0, 5.5, 6.2] {
            check_envelope(&RayPairKernel::wedge(th).unwrap());
        }
        check_envelope(&Dilated::new(Arc::new(ExpKernel), 0.5).unwrap());
        check_envelope(&Dilated::new(Arc::new(RayPairKernel::wedge(1.0).unwrap()), 10.0).unwrap());
    }

    #[test]
    fn wedge_values() {
        let k = RayPairKernel::wedge(PI / 2.0).unwrap();
        for t in [0.1, 1.0, 3.0] {
            assert!((k.eval(t) - t / (2.0 * PI * (t * t + 1.0))).abs() < 1e-15);
        }
        let flat = RayPairKernel::wedge(PI).unwrap();
        assert!(flat.eval(0.7).abs() < 1e-16);
        let k = RayPairKernel::wedge(PI / 3.0).unwrap();
        let t = 0.8;
        let expected = 3f64.sqrt() / (4.0 * PI) * t / (t * t - t + 1.0);
        assert!((k.eval(t) - expected).abs() < 1e-15);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(RayPairKernel::wedge(0.0), Err(MellinError::DegenerateAngle(_))));
        assert!(matches!(RayPairKernel::wedge(2.0 * PI), Err(MellinError::DegenerateAngle(_))));
        assert!(matches!(RayPairKernel::new(2.0 * PI, 1.0), Err(MellinError::DegenerateAngle(_))));
    }

    #[test]
    fn convolution_pointwise() {
        // (e^{-t} ⋆ 1_{[1,2]})(t) = E1(t/2) − E1(t)
        let k = MultiplicativeConvolution::new(
            Arc::new(ExpKernel),
            Arc::new(Indicator::new(1.0, 2.0).unwrap()),
            DecayCertificate::new(1.51, 0.0, 2.0),
        );
        // at t = 1: ∫_1^2 e^{-1/s} ds/s = ∫_{1/2}^1 e^{-u} du/u
        let direct = integrate(|u: f64| (-u).exp() / u, &[0.5, 1.0], 1e-14, 100).unwrap().value;
        assert!((k.eval(1.0) - direct).abs() < 1e-12);
        check_envelope(&k);
    }
}
