//! Mellin transforms along vertical lines and sampled matrix symbols.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::kernels::{KernelRef, ScalarKernel};
use super::quadrature::{integrate, uniform_breaks};
use super::MellinError;
use crate::linalg::CMatrix;
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    /// Absolute tolerance per transform; each tail gets a tenth of it.
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Largest admissible `|u|` after the substitution `t = e^u`.
    pub max_truncation: f64,
}

impl Default for TransformOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, max_panels: 200_000, max_truncation: 700.0 }
    }
}

/// `|u|` beyond which `C e^{−rate·|u|}` integrates to less than `tail_tol`.
fn tail_cut(bound: f64, rate: f64, tail_tol: f64) -> f64 {
    ((bound / (rate * tail_tol)).ln() / rate).max(0.0)
}

/// `∫₀^∞ κ(t) t^{z−1} dt`, computed as `∫ κ(e^u) e^{zu} du`.
pub fn mellin_transform(k: &dyn ScalarKernel, z: Complex64) -> Result<Complex64, MellinError> {
    mellin_transform_with(k, z, &TransformOptions::default())
}

pub fn mellin_transform_with(
    k: &dyn ScalarKernel,
    z: Complex64,
    opts: &TransformOptions,
) -> Result<Complex64, MellinError> {
    let cert = k.certificate();
    if !cert.admits(z.re) {
        let (lo, hi) = cert.strip();
        return Err(MellinError::OutOfStrip { re: z.re, lo, hi });
    }
    let (lo, hi) = match cert.support {
        Some((a, b)) => (a.ln(), b.ln()),
        None => {
            let tail_tol = opts.abs_tol / 10.0;
            let lo = -tail_cut(cert.bound, cert.order_at_zero + z.re, tail_tol);
            let hi = tail_cut(cert.bound, cert.order_at_infinity - z.re, tail_tol);
            if lo < -opts.max_truncation || hi > opts.max_truncation || !lo.is_finite() || !hi.is_finite() {
                return Err(MellinError::QuadratureNonConvergent(format!(
                    "tails need truncation at [{lo:.3}, {hi:.3}] beyond {}",
                    opts.max_truncation
                )));
            }
            (lo, hi)
        }
    };
    // one oscillation of e^{iξu} per initial panel, and never more than a unit
    let h = if z.im.abs() > 0.0 { (TAU / z.im.abs()).min(1.0) } else { 1.0 };
    let features: Vec<f64> = k.breakpoints().into_iter().filter(|&b| b > 0.0).map(f64::ln).collect();
    let breaks = uniform_breaks(lo, hi, h, &features);
    let f = |u: f64| {
        let w = (z * u).exp();
        w * k.eval(u.exp())
    };
    let r = integrate(f, &breaks, 0.8 * opts.abs_tol, opts.max_panels)
        .map_err(|e| MellinError::QuadratureNonConvergent(e.to_string()))?;
    if !(r.value.re.is_finite() && r.value.im.is_finite()) {
        return Err(MellinError::QuadratureNonConvergent("kernel produced non-finite values".into()));
    }
    Ok(r.value)
}

/// Square matrix of scalar kernels plus a constant matrix, the operator
/// `c + K` acting on `R⁺ × {1..k}`.
#[derive(Clone)]
pub struct MellinKernel {
    pub size: usize,
    /// Row-major; `None` is the zero kernel.
    pub entries: Vec<Option<KernelRef>>,
    pub constant_part: CMatrix,
}

impl fmt::Debug for MellinKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<String> =
            self.entries.iter().map(|e| e.as_ref().map_or_else(|| "0".to_string(), |k| k.key())).collect();
        f.debug_struct("MellinKernel").field("size", &self.size).field("entries", &keys).finish()
    }
}

impl MellinKernel {
    pub fn zero(size: usize) -> Self {
        Self { size, entries: vec![None; size * size], constant_part: CMatrix::zeros(size, size) }
    }

    pub fn set(&mut self, i: usize, j: usize, k: KernelRef) {
        self.entries[i * self.size + j] = Some(k);
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&KernelRef> {
        self.entries[i * self.size + j].as_ref()
    }

    /// Adds `c · I` to the constant part.
    pub fn plus_identity(mut self, c: f64) -> Self {
        for i in 0..self.size {
            self.constant_part[(i, i)] += Complex64::new(c, 0.0);
        }
        self
    }

    /// Admissible strip: the intersection over all entries.
    pub fn strip(&self) -> (f64, f64) {
        self.entries.iter().flatten().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), k| {
            let (a, b) = k.certificate().strip();
            (lo.max(a), hi.min(b))
        })
    }

    /// Distinct kernels and, per entry, the index of its kernel.
    fn unique_entries(&self) -> (Vec<KernelRef>, Vec<Option<usize>>) {
        let mut keys: HashMap<String, usize> = HashMap::new();
        let mut unique = Vec::new();
        let slots = self
            .entries
            .iter()
            .map(|e| {
                e.as_ref().map(|k| {
                    *keys.entry(k.key()).or_insert_with(|| {
                        unique.push(k.clone());
                        unique.len() - 1
                    })
                })
            })
            .collect();
        (unique, slots)
    }

    /// Mellin symbol of the convolution part at `z` (constant excluded).
    pub fn symbol_at(&self, z: Complex64, opts: &TransformOptions) -> Result<CMatrix, MellinError> {
        let (unique, slots) = self.unique_entries();
        let values = unique.iter().map(|k| mellin_transform_with(k.as_ref(), z, opts)).collect::<Result<Vec<_>, _>>()?;
        Ok(assemble(self.size, &slots, &values))
    }
}

fn assemble(size: usize, slots: &[Option<usize>], values: &[Complex64]) -> CMatrix {
    CMatrix::from_fn(size, size, |i, j| slots[i * size + j].map_or(Complex64::new(0.0, 0.0), |s| values[s]))
}

/// Re-evaluates the convolution part of a symbol at any frequency ξ.
#[derive(Clone)]
pub struct SymbolSource(Arc<dyn Fn(f64) -> Result<CMatrix, MellinError> + Send + Sync>);

impl SymbolSource {
    pub fn new(f: impl Fn(f64) -> Result<CMatrix, MellinError> + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn eval(&self, xi: f64) -> Result<CMatrix, MellinError> {
        (self.0)(xi)
    }
}

impl fmt::Debug for SymbolSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SymbolSource")
    }
}

#[derive(Debug, Clone)]
pub struct MellinSymbolSample {
    pub line: f64,
    pub xi_grid: Vec<f64>,
    pub values: Vec<CMatrix>,
    pub constant_part: CMatrix,
    /// Lets a scan zoom in between grid points.
    pub source: Option<SymbolSource>,
}

impl MellinSymbolSample {
    /// Samples `f(ξ)` on the grid and keeps `f` for refinement.
    pub fn from_fn(
        line: f64,
        xi_grid: Vec<f64>,
        constant_part: CMatrix,
        f: impl Fn(f64) -> CMatrix + Send + Sync + 'static,
    ) -> Result<Self, MellinError> {
        check_grid(&xi_grid)?;
        let values = xi_grid.iter().map(|&x| f(x)).collect();
        Ok(Self { line, xi_grid, values, constant_part, source: Some(SymbolSource::new(move |x| Ok(f(x)))) })
    }

    pub fn size(&self) -> usize {
        self.constant_part.nrows()
    }

    /// `constant + values[i]`.
    pub fn full(&self, i: usize) -> CMatrix {
        &self.constant_part + &self.values[i]
    }
}

pub fn check_grid(xi: &[f64]) -> Result<(), MellinError> {
    if xi.is_empty() {
        return Err(MellinError::InvalidGrid("empty grid".into()));
    }
    if xi.iter().any(|x| !x.is_finite()) {
        return Err(MellinError::InvalidGrid("non-finite frequency".into()));
    }
    if xi.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MellinError::InvalidGrid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `steps` equispaced frequencies on `[−xi_max, xi_max]`.
pub fn symmetric_grid(xi_max: f64, steps: usize) -> Result<Vec<f64>, MellinError> {
    if !(xi_max > 0.0 && xi_max.is_finite()) || steps < 2 {
        return Err(MellinError::InvalidGrid(format!("need xi_max > 0 and at least 2 steps, got {xi_max}, {steps}")));
    }
    let n = steps - 1;
    Ok((0..steps).map(|i| xi_max * (2.0 * i as f64 - n as f64) / n as f64).collect())
}

pub fn symbol_on_line(kern: &MellinKernel, a: f64, xi_grid: &[f64]) -> Result<MellinSymbolSample, MellinError> {
    symbol_on_line_with(kern, a, xi_grid, &TransformOptions::default(), Execution::default())
}

pub fn symbol_on_line_with(
    kern: &MellinKernel,
    a: f64,
    xi_grid: &[f64],
    opts: &TransformOptions,
    exec: Execution,
) -> Result<MellinSymbolSample, MellinError> {
    Ok(symbols_on_line(&[kern], a, xi_grid, opts, exec)?.pop().expect("one kernel in, one sample out"))
}

/// Samples several kernels on one grid, transforming each distinct scalar
/// kernel only once.
pub fn symbols_on_line(
    kernels: &[&MellinKernel],
    a: f64,
    xi_grid: &[f64],
    opts: &TransformOptions,
    exec: Execution,
) -> Result<Vec<MellinSymbolSample>, MellinError> {
    check_grid(xi_grid)?;
    let mut keys: HashMap<String, usize> = HashMap::new();
    let mut unique: Vec<KernelRef> = Vec::new();
    let mut slots_per_kernel = Vec::new();
    for kern in kernels {
        let (lo, hi) = kern.strip();
        if !(a > lo && a < hi) {
            return Err(MellinError::OutOfStrip { re: a, lo, hi });
        }
        let slots: Vec<Option<usize>> = kern
            .entries
            .iter()
            .map(|e| {
                e.as_ref().map(|k| {
                    *keys.entry(k.key()).or_insert_with(|| {
                        unique.push(k.clone());
                        unique.len() - 1
                    })
                })
            })
            .collect();
        slots_per_kernel.push(slots);
    }
    let u = unique.len();
    let flat = exec.try_map_indexed(xi_grid.len() * u, |idx| {
        let (g, k) = (idx / u, idx % u);
        mellin_transform_with(unique[k].as_ref(), Complex64::new(a, xi_grid[g]), opts)
    })?;
    let mut out = Vec::with_capacity(kernels.len());
    for (kern, slots) in kernels.iter().zip(slots_per_kernel) {
        let values = (0..xi_grid.len()).map(|g| assemble(kern.size, &slots, &flat[g * u..(g + 1) * u])).collect();
        let src_kernel = (*kern).clone();
        let src_opts = *opts;
        out.push(MellinSymbolSample {
            line: a,
            xi_grid: xi_grid.to_vec(),
            values,
            constant_part: kern.constant_part.clone(),
            source: Some(SymbolSource::new(move |xi| src_kernel.symbol_at(Complex64::new(a, xi), &src_opts))),
        });
    }
    Ok(out)
}
