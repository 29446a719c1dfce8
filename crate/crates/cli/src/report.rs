//! Structured reports and their text/JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};

use conelayer_core::geometry::{SectorSet, VertexCensus};
use conelayer_core::groupoid::BoundaryGroupoid;
use conelayer_core::ktheory::{k_boundary_algebra, k_indicial};
use conelayer_core::mellin::{FredholmParams, FredholmReport};
use conelayer_core::unfold::DesingularizedBoundary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// 9 significant digits; fixed notation for decimal exponents in −5..=8,
/// trailing zeros dropped. `0.5 → "0.5"`, `1e-8 → "1e-8"`.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=8).contains(&exp) {
        let digits = (8 - exp) as usize;
        let s = format!("{x:.digits$}");
        trim_zeros(&s).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mant))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn round9(x: f64) -> f64 {
    fmt_sig9(x).parse().unwrap_or(x)
}

fn ser9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round9(*x))
}

fn sectors(s: &SectorSet) -> String {
    if s.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = s
        .sectors()
        .iter()
        .map(|a| format!("({}, {})", fmt_sig9(a.start()), fmt_sig9(a.start() + a.length())))
        .collect();
    parts.join(" u ")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    #[serde(serialize_with = "ser9")]
    pub x: f64,
    #[serde(serialize_with = "ser9")]
    pub y: f64,
    pub kind: String,
    pub ramification: usize,
    pub covers: usize,
    pub sector: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusBlock {
    pub l: usize,
    pub m: usize,
    pub m_prime: usize,
    pub alpha: usize,
    pub points: Vec<PointEntry>,
}

impl CensusBlock {
    pub fn new(c: &VertexCensus) -> Self {
        let mut points: Vec<PointEntry> = c
            .true_conical_non_crack
            .iter()
            .map(|(p, s)| PointEntry {
                x: p.x,
                y: p.y,
                kind: "true-conical".into(),
                ramification: 0,
                covers: 1,
                sector: sectors(s),
            })
            .collect();
        points.extend(c.singular_cracks.iter().map(|s| PointEntry {
            x: s.point.x,
            y: s.point.y,
            kind: s.class.kind.as_str().into(),
            ramification: s.class.ramification,
            covers: s.cover_count,
            sector: sectors(&s.sector),
        }));
        Self { l: c.l(), m: c.m(), m_prime: c.m_prime(), alpha: c.alpha(), points }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub label: String,
    #[serde(serialize_with = "ser9")]
    pub x: f64,
    #[serde(serialize_with = "ser9")]
    pub y: f64,
    pub sector: String,
    pub boundary_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnfoldBlock {
    pub vertices: Vec<VertexEntry>,
    pub arcs: usize,
    pub collars: usize,
    pub smooth: bool,
}

impl UnfoldBlock {
    pub fn new(m: &DesingularizedBoundary) -> Self {
        let vertices = m
            .vertices
            .iter()
            .map(|v| VertexEntry {
                label: v.label(),
                x: v.base_point.x,
                y: v.base_point.y,
                sector: sectors(&v.sector),
                boundary_points: v.boundary_count,
            })
            .collect();
        Self { vertices, arcs: m.arcs.len(), collars: m.collar_count(), smooth: m.is_smooth() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub label: String,
    pub stratum: String,
    pub indicial: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupoidBlock {
    pub interior: String,
    pub strata: Vec<StratumEntry>,
    pub b_groupoid: bool,
    pub amenable: bool,
}

impl GroupoidBlock {
    pub fn new(g: &BoundaryGroupoid) -> Self {
        let strata = g
            .vertex_strata
            .iter()
            .zip(g.indicial_summands())
            .enumerate()
            .map(|(i, (v, s))| StratumEntry {
                label: v.label.clone(),
                stratum: g
                    .restrict(&conelayer_core::groupoid::StratumId::Vertex(i))
                    .map(|d| d.to_string())
                    .unwrap_or_default(),
                indicial: s.algebra.to_string(),
            })
            .collect();
        Self { interior: g.interior_stratum.to_string(), strata, b_groupoid: g.is_b_groupoid(), amenable: g.amenable }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KTheoryBlock {
    pub k0: usize,
    pub k1: usize,
    pub indicial_k0: usize,
    pub indicial_k1: usize,
    pub smooth_case: bool,
}

impl KTheoryBlock {
    pub fn new(g: &BoundaryGroupoid) -> Self {
        let b = k_boundary_algebra(g);
        let i = k_indicial(g);
        Self { k0: b.k.k0.rank, k1: b.k.k1.rank, indicial_k0: i.k0.rank, indicial_k1: i.k1.rank, smooth_case: b.smooth_case }
    }
}

/// Groupoid and K-theory of the `conebase:` records of a file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbstractBlock {
    pub groupoid: GroupoidBlock,
    pub ktheory: KTheoryBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub label: String,
    #[serde(serialize_with = "ser9")]
    pub sigma_min: f64,
    #[serde(serialize_with = "ser9")]
    pub argmin_xi: f64,
    #[serde(serialize_with = "ser9")]
    pub resolution: f64,
    #[serde(serialize_with = "ser9")]
    pub error_bound: f64,
    #[serde(serialize_with = "ser9")]
    pub margin: f64,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FredholmBlock {
    #[serde(serialize_with = "ser9")]
    pub line: f64,
    #[serde(serialize_with = "ser9")]
    pub xi_max: f64,
    pub xi_steps: usize,
    #[serde(serialize_with = "ser9")]
    pub tol: f64,
    pub elliptic: bool,
    pub spaces: String,
    pub vertices: Vec<ScanEntry>,
    pub overall: String,
}

impl FredholmBlock {
    pub fn new(r: &FredholmReport, p: &FredholmParams) -> Self {
        let vertices = r
            .per_vertex
            .iter()
            .map(|v| ScanEntry {
                label: v.label.clone(),
                sigma_min: v.scan.min_singular_value,
                argmin_xi: v.scan.argmin_xi,
                resolution: v.scan.grid_resolution,
                error_bound: v.scan.error_bound,
                margin: v.margin(),
                verdict: v.verdict.to_string(),
            })
            .collect();
        Self {
            line: p.line,
            xi_max: p.xi_max,
            xi_steps: p.xi_steps,
            tol: p.scan.tol,
            elliptic: r.elliptic,
            spaces: r.sobolev_context(),
            vertices,
            overall: r.overall.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfold: Option<UnfoldBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groupoid: Option<GroupoidBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ktheory: Option<KTheoryBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "abstract")]
    pub abstract_cones: Option<AbstractBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fredholm: Option<FredholmBlock>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            sha256: None,
            census: None,
            unfold: None,
            groupoid: None,
            ktheory: None,
            abstract_cones: None,
            fredholm: None,
        }
    }
}

fn group(rank: usize) -> String {
    match rank {
        0 => "0".into(),
        1 => "Z".into(),
        n => format!("Z^{n}"),
    }
}

fn text_groupoid(out: &mut String, head: &str, g: &GroupoidBlock) {
    let _ = writeln!(out, "{head}: vertices={} b_groupoid={} amenable={}", g.strata.len(), g.b_groupoid, g.amenable);
    let _ = writeln!(out, "  interior {}", g.interior);
    for s in &g.strata {
        let _ = writeln!(out, "  stratum {}: {} indicial={}", s.label, s.stratum, s.indicial);
    }
}

fn text_ktheory(out: &mut String, head: &str, k: &KTheoryBlock) {
    let _ = writeln!(out, "{head}: K0={} K1={}", group(k.k0), group(k.k1));
    let _ = writeln!(out, "  indicial K0={} K1={}", group(k.indicial_k0), group(k.indicial_k1));
    if k.smooth_case {
        let _ = writeln!(out, "  smooth boundary: compact operators");
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => emit_text(r),
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command);
    if let Some(h) = &r.sha256 {
        let _ = writeln!(out, "sha256: {h}");
    }
    if let Some(c) = &r.census {
        let _ = writeln!(out, "census: l={} m={} m'={} alpha={}", c.l, c.m, c.m_prime, c.alpha);
        for p in &c.points {
            let _ = writeln!(
                out,
                "  point ({}, {}) {} ramification={} covers={} sector={}",
                fmt_sig9(p.x),
                fmt_sig9(p.y),
                p.kind,
                p.ramification,
                p.covers,
                p.sector
            );
        }
    }
    if let Some(u) = &r.unfold {
        let _ = writeln!(out, "unfold: vertices={} arcs={} collars={} smooth={}", u.vertices.len(), u.arcs, u.collars, u.smooth);
        for v in &u.vertices {
            let _ = writeln!(
                out,
                "  vertex {} at ({}, {}) sector={} boundary_points={}",
                v.label,
                fmt_sig9(v.x),
                fmt_sig9(v.y),
                v.sector,
                v.boundary_points
            );
        }
    }
    if let Some(g) = &r.groupoid {
        text_groupoid(&mut out, "groupoid", g);
    }
    if let Some(k) = &r.ktheory {
        text_ktheory(&mut out, "ktheory", k);
    }
    if let Some(a) = &r.abstract_cones {
        text_groupoid(&mut out, "abstract groupoid", &a.groupoid);
        text_ktheory(&mut out, "abstract ktheory", &a.ktheory);
    }
    if let Some(f) = &r.fredholm {
        let _ = writeln!(
            out,
            "fredholm: line={} xi_max={} xi_steps={} tol={} elliptic={}",
            fmt_sig9(f.line),
            fmt_sig9(f.xi_max),
            f.xi_steps,
            fmt_sig9(f.tol),
            f.elliptic
        );
        let _ = writeln!(out, "  spaces {}", f.spaces);
        for v in &f.vertices {
            let _ = writeln!(
                out,
                "  vertex {} sigma_min={} argmin_xi={} resolution={} error_bound={} margin={} verdict={}",
                v.label,
                fmt_sig9(v.sigma_min),
                fmt_sig9(v.argmin_xi),
                fmt_sig9(v.resolution),
                fmt_sig9(v.error_bound),
                fmt_sig9(v.margin),
                v.verdict
            );
        }
        let _ = writeln!(out, "  overall {}", f.overall);
    }
    out
}

/// Reader for the JSON rendering.
pub fn read_json_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9() {
        assert_eq!(fmt_sig9(0.5), "0.5");
        assert_eq!(fmt_sig9(1e-8), "1e-8");
        assert_eq!(fmt_sig9(40.0), "40");
        assert_eq!(fmt_sig9(4001.0), "4001");
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(std::f64::consts::PI), "3.14159265");
        assert_eq!(fmt_sig9(0.5 - 2f64.sqrt() / 4.0), "0.146446609");
        assert_eq!(fmt_sig9(1.234e-5), "0.00001234");
        assert_eq!(fmt_sig9(-2.5e-7), "-2.5e-7");
        assert_eq!(fmt_sig9(123456789012.0), "1.23456789e11");
        assert_eq!(fmt_sig9(9.9999999996), "10");
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("ktheory x.dom");
        r.ktheory = Some(KTheoryBlock { k0: 0, k1: 3, indicial_k0: 0, indicial_k1: 4, smooth_case: false });
        let s = emit_report(&r, Format::Json);
        let back = read_json_report(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&back, Format::Json), s);
        assert!(emit_report(&r, Format::Text).contains("ktheory: K0=0 K1=Z^3"));
    }
}
