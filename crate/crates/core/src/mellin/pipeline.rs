//! Double-layer indicial operators at vertices and the Fredholm pipeline.

use std::collections::HashMap;
use std::sync::Arc;

use super::kernels::{KernelRef, RayPairKernel};
use super::scan::{fredholm_verdict, FredholmReport, ScanOptions, VertexReport};
use super::transform::{symbols_on_line, symmetric_grid, MellinKernel, TransformOptions};
use super::MellinError;
use crate::geometry::{PolygonalDomain, SectorSet};
use crate::unfold::{desingularize, unfold, DesingularizedBoundary};

/// Boundary rays of the cone over `omega` with the orientation of their
/// normals: `(start, +1)` and `(start + length, −1)` per component.
/// Angles are unwrapped, so the two sides of a slit stay 2π apart.
pub fn vertex_rays(omega: &SectorSet) -> Vec<(f64, f64)> {
    omega.sectors().iter().flat_map(|s| [(s.start(), 1.0), (s.start() + s.length(), -1.0)]).collect()
}

/// Double-layer kernel matrix between the boundary rays at a vertex.
/// Diagonal entries vanish (straight rays); rays that coincide as sets
/// are refused.
pub fn double_layer_kernel(omega: &SectorSet) -> Result<MellinKernel, MellinError> {
    let rays = vertex_rays(omega);
    let mut k = MellinKernel::zero(rays.len());
    for (i, &(psi_i, _)) in rays.iter().enumerate() {
        for (j, &(psi_j, sign_j)) in rays.iter().enumerate() {
            if i != j {
                let entry: KernelRef = Arc::new(RayPairKernel::new(psi_i - psi_j, sign_j)?);
                k.set(i, j, entry);
            }
        }
    }
    Ok(k)
}

/// `½I + K` at a vertex.
pub fn layer_potential_operator(omega: &SectorSet) -> Result<MellinKernel, MellinError> {
    Ok(double_layer_kernel(omega)?.plus_identity(0.5))
}

/// Convolution part for the infinite wedge of opening θ.
pub fn wedge_double_layer_kernel(theta: f64) -> Result<MellinKernel, MellinError> {
    let kappa: KernelRef = Arc::new(RayPairKernel::wedge(theta)?);
    let mut k = MellinKernel::zero(2);
    k.set(0, 1, kappa.clone());
    k.set(1, 0, kappa);
    Ok(k)
}

pub fn wedge_operator(theta: f64) -> Result<MellinKernel, MellinError> {
    Ok(wedge_double_layer_kernel(theta)?.plus_identity(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FredholmParams {
    pub line: f64,
    pub xi_max: f64,
    pub xi_steps: usize,
    pub scan: ScanOptions,
    pub transform: TransformOptions,
}

impl Default for FredholmParams {
    fn default() -> Self {
        Self {
            line: 0.5,
            xi_max: 40.0,
            xi_steps: 4001,
            scan: ScanOptions::default(),
            transform: TransformOptions::default(),
        }
    }
}

pub fn fredholm_for_vertices(
    elliptic: bool,
    vertices: &[(String, MellinKernel)],
    params: &FredholmParams,
) -> Result<FredholmReport, MellinError> {
    let grid = symmetric_grid(params.xi_max, params.xi_steps)?;
    // vertices with the same operator (e.g. equal corner angles) share one scan
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut unique: Vec<&MellinKernel> = Vec::new();
    let mut unique_labels: Vec<String> = Vec::new();
    let slots: Vec<usize> = vertices
        .iter()
        .map(|(label, k)| {
            *seen.entry(format!("{k:?}{:?}", k.constant_part)).or_insert_with(|| {
                unique.push(k);
                unique_labels.push(label.clone());
                unique.len() - 1
            })
        })
        .collect();
    let samples = symbols_on_line(&unique, params.line, &grid, &params.transform, params.scan.exec)?;
    let mut report = fredholm_verdict(elliptic, &unique_labels, &samples, None, &params.scan)?;
    report.per_vertex = vertices
        .iter()
        .zip(&slots)
        .map(|((label, _), &s)| VertexReport { label: label.clone(), ..report.per_vertex[s].clone() })
        .collect();
    Ok(report)
}

/// `½I + K` at every vertex of the unfolded boundary.
pub fn fredholm_for_domain(
    d: &PolygonalDomain,
    elliptic: bool,
    params: &FredholmParams,
) -> Result<FredholmReport, MellinError> {
    fredholm_for_boundary(&desingularize(&unfold(d)?)?, elliptic, params)
}

/// Same as [`fredholm_for_domain`] but starting from the unit space M.
pub fn fredholm_for_boundary(
    m: &DesingularizedBoundary,
    elliptic: bool,
    params: &FredholmParams,
) -> Result<FredholmReport, MellinError> {
    let vertices = m
        .vertices
        .iter()
        .map(|v| Ok((v.label(), layer_potential_operator(&v.sector)?)))
        .collect::<Result<Vec<_>, MellinError>>()?;
    fredholm_for_vertices(elliptic, &vertices, params)
}

pub fn fredholm_for_wedge(theta: f64, elliptic: bool, params: &FredholmParams) -> Result<FredholmReport, MellinError> {
    fredholm_for_vertices(elliptic, &[("p1".to_string(), wedge_operator(theta)?)], params)
}
