//! Smallest-singular-value scans of sampled symbols and the Fredholm verdict.

use std::fmt;

use super::transform::MellinSymbolSample;
use super::MellinError;
use crate::linalg::{smallest_singular_value, spectral_norm};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Below this a minimum counts as a zero.
    pub tol: f64,
    /// Grid spacing a refinement must reach before a zero is certified.
    pub resolution_limit: f64,
    /// Lower bound on `σ_min − error` needed to call a symbol invertible.
    pub margin: f64,
    pub refine: bool,
    pub exec: Execution,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { tol: 1e-8, resolution_limit: 1e-6, margin: 1e-4, refine: true, exec: Execution::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanResult {
    pub min_singular_value: f64,
    pub argmin_xi: f64,
    /// Spacing of the finest grid examined around the minimum.
    pub grid_resolution: f64,
    pub refined: bool,
    /// Largest observed slope of `σ_min` along the grid.
    pub lipschitz: f64,
    /// `lipschitz · grid_resolution / 2`, how far the true minimum may sit below the reported one.
    pub error_bound: f64,
}

pub fn invertibility_scan(s: &MellinSymbolSample, tol: f64) -> ScanResult {
    invertibility_scan_with(s, &ScanOptions { tol, ..ScanOptions::default() })
}

pub fn invertibility_scan_with(s: &MellinSymbolSample, opts: &ScanOptions) -> ScanResult {
    let xi = &s.xi_grid;
    let sigma = opts.exec.map_indexed(xi.len(), |i| smallest_singular_value(&s.full(i)));
    let mut best = 0;
    for (i, &v) in sigma.iter().enumerate() {
        if v < sigma[best] {
            best = i;
        }
    }
    let mut lipschitz: f64 = 0.0;
    let mut resolution: f64 = 0.0;
    for i in 1..xi.len() {
        let h = xi[i] - xi[i - 1];
        lipschitz = lipschitz.max((sigma[i] - sigma[i - 1]).abs() / h);
        resolution = resolution.max(h);
    }
    let mut result = ScanResult {
        min_singular_value: sigma[best],
        argmin_xi: xi[best],
        grid_resolution: resolution,
        refined: false,
        lipschitz,
        error_bound: 0.5 * lipschitz * resolution,
    };
    if opts.refine && xi.len() >= 2 {
        if let Some(src) = &s.source {
            let lo = xi[best.saturating_sub(1)];
            let hi = xi[(best + 1).min(xi.len() - 1)];
            if let Some(r) = zoom(s, src, lo, hi, (xi[0], xi[xi.len() - 1]), &result, opts) {
                result = r;
            }
        }
    }
    result
}

/// Nine-point zoom around the grid minimum until the spacing drops below
/// the resolution limit and below `tol / lipschitz`. Returns `None` if the source fails.
fn zoom(
    s: &MellinSymbolSample,
    src: &super::transform::SymbolSource,
    mut lo: f64,
    mut hi: f64,
    range: (f64, f64),
    start: &ScanResult,
    opts: &ScanOptions,
) -> Option<ScanResult> {
    let mut best = (start.min_singular_value, start.argmin_xi);
    let mut lipschitz = start.lipschitz;
    let mut spacing = (hi - lo) / 8.0;
    for _ in 0..80 {
        spacing = (hi - lo) / 8.0;
        if spacing.is_nan() || spacing <= 0.0 {
            break;
        }
        let pts: Vec<f64> = (0..9).map(|i| lo + spacing * i as f64).collect();
        let vals = opts
            .exec
            .try_map_indexed(9, |i| src.eval(pts[i]).map(|m| smallest_singular_value(&(&s.constant_part + m))))
            .ok()?;
        for i in 1..9 {
            lipschitz = lipschitz.max((vals[i] - vals[i - 1]).abs() / spacing);
        }
        let mut j = 0;
        for i in 1..9 {
            if vals[i] < vals[j] {
                j = i;
            }
        }
        if vals[j] < best.0 {
            best = (vals[j], pts[j]);
        }
        // finer than the limit when needed so that the slope cannot hide a
        // value below tol between two samples
        if spacing < opts.resolution_limit.min(opts.tol / lipschitz.max(1.0)) {
            break;
        }
        lo = (best.1 - spacing).max(range.0);
        hi = (best.1 + spacing).min(range.1);
    }
    Some(ScanResult {
        min_singular_value: best.0,
        argmin_xi: best.1,
        grid_resolution: spacing,
        refined: true,
        lipschitz,
        error_bound: 0.5 * lipschitz * spacing,
    })
}

/// `σ_min(constant) − max ‖values‖` at the two ends of the grid: positive
/// when the convolution part has decayed enough that the constant alone
/// keeps the symbol invertible beyond the grid.
pub fn decay_margin(s: &MellinSymbolSample) -> f64 {
    let Some(last) = s.values.len().checked_sub(1) else {
        return f64::NEG_INFINITY;
    };
    let tail = spectral_norm(&s.values[0]).max(spectral_norm(&s.values[last]));
    smallest_singular_value(&s.constant_part) - tail
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexVerdict {
    Invertible,
    CertifiedZero,
    Inconclusive,
}

impl fmt::Display for VertexVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexVerdict::Invertible => "invertible",
            VertexVerdict::CertifiedZero => "certified-zero",
            VertexVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverallVerdict {
    Fredholm,
    NotFredholm,
    Inconclusive,
}

impl OverallVerdict {
    /// Fredholm > Inconclusive > NotFredholm.
    pub fn rank(self) -> u8 {
        match self {
            OverallVerdict::NotFredholm => 0,
            OverallVerdict::Inconclusive => 1,
            OverallVerdict::Fredholm => 2,
        }
    }
}

impl fmt::Display for OverallVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OverallVerdict::Fredholm => "Fredholm",
            OverallVerdict::NotFredholm => "NotFredholm",
            OverallVerdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexReport {
    pub label: String,
    pub scan: ScanResult,
    pub decay_ok: bool,
    pub verdict: VertexVerdict,
}

impl VertexReport {
    /// `σ_min − error_bound`, the certified lower bound on the line.
    pub fn margin(&self) -> f64 {
        self.scan.min_singular_value - self.scan.error_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FredholmReport {
    pub elliptic: bool,
    pub per_vertex: Vec<VertexReport>,
    pub overall: OverallVerdict,
    /// Weight index of the spaces `K^m_a(∂Ω) → K^0_a(∂Ω)`.
    pub sobolev_index: f64,
    pub line: f64,
    pub tol: f64,
    pub margin: f64,
}

impl FredholmReport {
    pub fn sobolev_context(&self) -> String {
        format!("K^m_{0}(dOmega) -> K^0_{0}(dOmega)", self.sobolev_index)
    }
}

pub fn vertex_verdict(scan: &ScanResult, decay_ok: bool, opts: &ScanOptions) -> VertexVerdict {
    if scan.min_singular_value < opts.tol && scan.grid_resolution < opts.resolution_limit {
        VertexVerdict::CertifiedZero
    } else if scan.min_singular_value - scan.error_bound > opts.margin && decay_ok {
        VertexVerdict::Invertible
    } else {
        VertexVerdict::Inconclusive
    }
}

/// Scans one symbol per vertex and combines the results with the
/// ellipticity assertion. `decay_ok` defaults to the decay margin test.
pub fn fredholm_verdict(
    elliptic: bool,
    labels: &[String],
    samples: &[MellinSymbolSample],
    decay_ok: Option<&[bool]>,
    opts: &ScanOptions,
) -> Result<FredholmReport, MellinError> {
    if samples.len() != labels.len() {
        return Err(MellinError::ArityMismatch { expected: labels.len(), got: samples.len() });
    }
    if let Some(d) = decay_ok {
        if d.len() != labels.len() {
            return Err(MellinError::ArityMismatch { expected: labels.len(), got: d.len() });
        }
    }
    let per_vertex: Vec<VertexReport> = samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let scan = invertibility_scan_with(s, opts);
            let ok = decay_ok.map_or_else(|| decay_margin(s) > opts.margin, |d| d[i]);
            VertexReport { label: labels[i].clone(), scan, decay_ok: ok, verdict: vertex_verdict(&scan, ok, opts) }
        })
        .collect();
    let overall = if !elliptic || per_vertex.iter().any(|v| v.verdict == VertexVerdict::CertifiedZero) {
        OverallVerdict::NotFredholm
    } else if per_vertex.iter().all(|v| v.verdict == VertexVerdict::Invertible) {
        OverallVerdict::Fredholm
    } else {
        OverallVerdict::Inconclusive
    };
    let line = samples.first().map_or(0.5, |s| s.line);
    Ok(FredholmReport {
        elliptic,
        per_vertex,
        overall,
        sobolev_index: 0.5,
        line,
        tol: opts.tol,
        margin: opts.margin,
    })
}
