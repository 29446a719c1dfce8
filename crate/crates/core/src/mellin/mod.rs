//! Mellin transforms of layer-potential kernels on rays and the symbol
//! scans deciding invertibility of the indicial operators.

pub mod kernels;
pub mod pipeline;
pub mod quadrature;
pub mod scan;
pub mod transform;

pub use kernels::{
    Combination, DecayCertificate, Dilated, ExpKernel, FnKernel, Indicator, KernelRef, MultiplicativeConvolution,
    RayPairKernel, ScalarKernel,
};
pub use pipeline::{
    double_layer_kernel, fredholm_for_boundary, fredholm_for_domain, fredholm_for_vertices, fredholm_for_wedge, layer_potential_operator,
    vertex_rays, wedge_double_layer_kernel, wedge_operator, FredholmParams,
};
pub use quadrature::{gk15, integrate, QuadResult, QuadratureError};
pub use scan::{
    decay_margin, fredholm_verdict, invertibility_scan, invertibility_scan_with, FredholmReport, OverallVerdict,
    ScanOptions, ScanResult, VertexReport, VertexVerdict,
};
pub use transform::{
    check_grid, mellin_transform, mellin_transform_with, symbol_on_line, symbol_on_line_with, symbols_on_line,
    symmetric_grid, MellinKernel, MellinSymbolSample, SymbolSource, TransformOptions,
};

use crate::unfold::UnfoldError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MellinError {
    #[error("Re z = {re} lies outside the admissible strip ({lo}, {hi})")]
    OutOfStrip { re: f64, lo: f64, hi: f64 },
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergent(String),
    #[error("coinciding rays (angle difference {0}) give a singular kernel")]
    DegenerateAngle(f64),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("expected {expected} symbol samples, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
}
