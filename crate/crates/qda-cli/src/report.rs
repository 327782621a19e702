//! Report envelope and per-command result types.
//!
//! Reports render to pretty JSON or to plain text. Both forms are
//! deterministic: JSON object keys come out sorted, a trailing newline is
//! always present, and nothing varies between reruns unless --timings is
//! given (the `timings` field stays null without it).

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Truncation degree; null for commands that do not truncate.
    pub max_degree: Option<usize>,
    /// Canonical echo of the parsed input file.
    pub spec: Value,
    pub all_checks_passed: bool,
    pub results: Value,
    /// Wall-clock data, only with --timings; null keeps reruns byte-equal.
    pub timings: Option<Timings>,
}

#[derive(Serialize)]
pub struct Timings {
    pub total_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(self).expect("serialize"))
            .expect("render");
        s.push('\n');
        s
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn header_text(report: &Report, input_line: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", report.tool, report.version);
    match report.max_degree {
        Some(n) => {
            let _ = writeln!(out, "command: {} (max degree {})", report.command, n);
        }
        None => {
            let _ = writeln!(out, "command: {}", report.command);
        }
    }
    let _ = writeln!(out, "input: {input_line}");
    out
}

pub fn footer_text(passed: bool) -> String {
    if passed {
        "result: all checks passed\n".to_string()
    } else {
        "result: some checks failed\n".to_string()
    }
}

// ---------------------------------------------------------------- check --

#[derive(Serialize)]
pub struct CheckResults {
    pub invertible: bool,
    pub symmetric: bool,
    pub involutive: bool,
    pub hermitian: bool,
    pub qybe: QybeResult,
    pub hecke: HeckeResult,
    pub spectrum_contains_one: bool,
    pub relations_star_closed: bool,
}

#[derive(Serialize)]
pub struct QybeResult {
    pub holds: bool,
    pub witness: Option<WitnessOut>,
}

/// Braid-relation counterexample with 1-based generator indices.
#[derive(Serialize)]
pub struct WitnessOut {
    pub input: [usize; 3],
    pub output: [usize; 3],
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct HeckeResult {
    pub holds: bool,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub alpha_plus_beta_is_one: Option<bool>,
}

impl CheckResults {
    pub fn passed(&self) -> bool {
        self.invertible
            && self.symmetric
            && self.involutive
            && self.hermitian
            && self.qybe.holds
            && self.hecke.holds
            && self.hecke.alpha_plus_beta_is_one.unwrap_or(false)
            && self.spectrum_contains_one
            && self.relations_star_closed
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "invertible:             {}", yn(self.invertible));
        let _ = writeln!(out, "symmetric:              {}", yn(self.symmetric));
        let _ = writeln!(out, "involutive:             {}", yn(self.involutive));
        let _ = writeln!(out, "hermitian:              {}", yn(self.hermitian));
        match &self.qybe.witness {
            None => {
                let _ = writeln!(out, "braid relation (qybe):  {}", yn(self.qybe.holds));
            }
            Some(w) => {
                let _ = writeln!(
                    out,
                    "braid relation (qybe):  no  witness input ({},{},{}) output ({},{},{}): lhs {}, rhs {}",
                    w.input[0], w.input[1], w.input[2],
                    w.output[0], w.output[1], w.output[2],
                    w.lhs, w.rhs
                );
            }
        }
        match (&self.hecke.alpha, &self.hecke.beta) {
            (Some(a), Some(b)) => {
                let _ = writeln!(
                    out,
                    "hecke relation:         yes  alpha = {a}, beta = {b}, alpha + beta = 1: {}",
                    yn(self.hecke.alpha_plus_beta_is_one.unwrap_or(false))
                );
            }
            _ => {
                let _ = writeln!(out, "hecke relation:         no");
            }
        }
        let _ = writeln!(
            out,
            "spectrum contains one:  {}",
            yn(self.spectrum_contains_one)
        );
        let _ = writeln!(
            out,
            "relations star-closed:  {}",
            yn(self.relations_star_closed)
        );
        out
    }
}

// -------------------------------------------------------------- hilbert --

#[derive(Serialize)]
pub struct HilbertResults {
    /// dim of the base algebra in degrees 0..=N.
    pub base: Vec<usize>,
    /// dim of the second algebra (relations from 1l + R); null when the
    /// input gives relations only.
    pub prime: Option<Vec<usize>>,
    /// dim of the annihilator dual in degrees 0..=N.
    pub dual: Vec<usize>,
    pub bigraded: Option<BigradedResults>,
}

#[derive(Serialize)]
pub struct BigradedResults {
    pub triangle: Vec<TriangleEntry>,
    pub freeness: Vec<FreenessOut>,
    pub all_free: bool,
}

#[derive(Serialize)]
pub struct TriangleEntry {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct FreenessOut {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
    pub expected: usize,
    pub ok: bool,
}

fn series_line(out: &mut String, label: &str, dims: &[usize]) {
    let cells: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{label} [{}]", cells.join(", "));
}

impl HilbertResults {
    pub fn passed(&self) -> bool {
        self.bigraded.as_ref().is_none_or(|b| b.all_free)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        series_line(&mut out, "base:  ", &self.base);
        match &self.prime {
            Some(p) => series_line(&mut out, "prime: ", p),
            None => {
                let _ = writeln!(out, "prime: unavailable (relations-only input)");
            }
        }
        series_line(&mut out, "dual:  ", &self.dual);
        if let Some(b) = &self.bigraded {
            let max = b.triangle.iter().map(|e| e.r + e.s).max().unwrap_or(0);
            let _ = writeln!(out, "bigraded dimensions (rows r, columns s):");
            let width = b
                .triangle
                .iter()
                .map(|e| e.dim.to_string().len())
                .max()
                .unwrap_or(1)
                .max(2);
            let mut head = String::from("  r\\s");
            for s in 0..=max {
                let _ = write!(head, " {s:>width$}");
            }
            let _ = writeln!(out, "{head}");
            for r in 0..=max {
                let mut line = format!("  {r:>3}");
                for s in 0..=max - r {
                    let dim = b
                        .triangle
                        .iter()
                        .find(|e| e.r == r && e.s == s)
                        .map(|e| e.dim)
                        .unwrap_or(0);
                    let _ = write!(line, " {dim:>width$}");
                }
                let _ = writeln!(out, "{line}");
            }
            let good = b.freeness.iter().filter(|f| f.ok).count();
            let _ = writeln!(
                out,
                "freeness: {good}/{} blocks match the product of edge dimensions",
                b.freeness.len()
            );
            for f in b.freeness.iter().filter(|f| !f.ok) {
                let _ = writeln!(
                    out,
                    "  block ({},{}): dim {}, expected {}",
                    f.r, f.s, f.dim, f.expected
                );
            }
        }
        out
    }
}

// ------------------------------------------------------------- poincare --

#[derive(Serialize)]
pub struct PoincareResults {
    pub well_defined: bool,
    pub ill_defined: Vec<IllDefinedOut>,
    pub d_squared_zero: bool,
    pub delta_squared_zero: bool,
    /// dδ + δd = (r+s)·id on every block of total degree ≤ N.
    pub degree_identity: bool,
    pub d_lines: Vec<LineOut>,
    pub delta_lines: Vec<LineOut>,
    /// Homology vanishes in positive total degree and is one-dimensional
    /// exactly at the origin, for both lines.
    pub trivial_only_at_origin: bool,
}

#[derive(Serialize)]
pub struct IllDefinedOut {
    pub diff: &'static str,
    pub r: usize,
    pub s: usize,
    pub relation: String,
    pub image_normal_form: String,
}

#[derive(Serialize)]
pub struct LineOut {
    pub total_degree: usize,
    pub nodes: Vec<NodeOut>,
    pub trivial: bool,
}

#[derive(Serialize)]
pub struct NodeOut {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
    pub homology_dim: usize,
    pub certified: bool,
}

fn lines_text(out: &mut String, label: &str, lines: &[LineOut]) {
    let _ = writeln!(out, "{label} homology by total degree:");
    for line in lines {
        let dims: Vec<String> = line
            .nodes
            .iter()
            .map(|n| n.homology_dim.to_string())
            .collect();
        let _ = writeln!(out, "  t={}: [{}]", line.total_degree, dims.join(", "));
    }
}

impl PoincareResults {
    pub fn passed(&self) -> bool {
        self.well_defined
            && self.d_squared_zero
            && self.delta_squared_zero
            && self.degree_identity
            && self.trivial_only_at_origin
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "well defined:            {}", yn(self.well_defined));
        for w in &self.ill_defined {
            let _ = writeln!(
                out,
                "  {} at ({},{}): relation {} maps to {}",
                w.diff, w.r, w.s, w.relation, w.image_normal_form
            );
        }
        let _ = writeln!(out, "d squared zero:          {}", yn(self.d_squared_zero));
        let _ = writeln!(
            out,
            "delta squared zero:      {}",
            yn(self.delta_squared_zero)
        );
        let _ = writeln!(out, "degree identity:         {}", yn(self.degree_identity));
        lines_text(&mut out, "d-line", &self.d_lines);
        lines_text(&mut out, "delta-line", &self.delta_lines);
        let _ = writeln!(
            out,
            "trivial except at (0,0): {}",
            yn(self.trivial_only_at_origin)
        );
        out
    }
}

// --------------------------------------------------------------- koszul --

#[derive(Serialize)]
pub struct KoszulResults {
    /// dim of the dual coalgebra components, p = 0..=N.
    pub dual_dims: Vec<usize>,
    pub boundary_squares_zero: bool,
    pub weights: Vec<WeightOut>,
    /// Exactness at the two end nodes of every weight ≤ N.
    pub presentation_exact: bool,
    /// All homology of positive weight vanishes in the truncation.
    pub acyclic_positive_weights: bool,
    /// The alternating dimension sum is 0 for every acyclic positive weight.
    pub euler_zero_where_acyclic: bool,
}

#[derive(Serialize)]
pub struct WeightOut {
    pub weight: usize,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub euler: i64,
    pub exact: bool,
}

impl KoszulResults {
    pub fn passed(&self) -> bool {
        self.boundary_squares_zero
            && self.presentation_exact
            && self.acyclic_positive_weights
            && self.euler_zero_where_acyclic
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        series_line(&mut out, "dual dimensions:", &self.dual_dims);
        let _ = writeln!(
            out,
            "boundary squares zero:  {}",
            yn(self.boundary_squares_zero)
        );
        for w in &self.weights {
            let dims: Vec<String> = w.dims.iter().map(|d| d.to_string()).collect();
            let hom: Vec<String> = w.homology.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(
                out,
                "weight {}: dims [{}], homology [{}], euler {}",
                w.weight,
                dims.join(", "),
                hom.join(", "),
                w.euler
            );
        }
        let _ = writeln!(
            out,
            "presentation exact:     {}",
            yn(self.presentation_exact)
        );
        let _ = writeln!(
            out,
            "acyclic in range:       {}",
            yn(self.acyclic_positive_weights)
        );
        let _ = writeln!(
            out,
            "euler zero if acyclic:  {}",
            yn(self.euler_zero_where_acyclic)
        );
        out
    }
}

// -------------------------------------------------------------- compare --

#[derive(Serialize)]
pub struct CompareResults {
    /// "prime" when R is symmetric and involutive, otherwise "dual".
    pub target: &'static str,
    pub freeness: Vec<FreenessOut>,
    pub all_free: bool,
    pub identification: Vec<IdentOut>,
    pub identification_ok: bool,
    pub surjectivity: Vec<SurjOut>,
    pub all_surjective: bool,
    pub diagram: Vec<DiagramOut>,
    pub diagram_ok: bool,
    pub product_span: Vec<ProductSpanOut>,
    pub product_span_ok: bool,
}

#[derive(Serialize)]
pub struct IdentOut {
    pub p: usize,
    pub rank: usize,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct SurjOut {
    pub weight: usize,
    pub p: usize,
    pub rank: usize,
    pub dim: usize,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct DiagramOut {
    pub p: usize,
    /// "exact", "scalar", "defect", or "trivial" when both composites
    /// vanish at every checked weight.
    pub status: &'static str,
    pub scalar: Option<String>,
    pub weights_checked: Vec<usize>,
    /// Same status and scalar at every checked weight.
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct ProductSpanOut {
    pub r: usize,
    pub s: usize,
    pub rank: usize,
    pub dim: usize,
    pub ok: bool,
}

impl CompareResults {
    pub fn passed(&self) -> bool {
        self.all_free
            && self.identification_ok
            && self.all_surjective
            && self.diagram_ok
            && self.product_span_ok
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "comparison target: {}", self.target);
        let good = self.freeness.iter().filter(|f| f.ok).count();
        let _ = writeln!(out, "freeness: {good}/{} blocks free", self.freeness.len());
        for f in self.freeness.iter().filter(|f| !f.ok) {
            let _ = writeln!(
                out,
                "  block ({},{}): dim {}, expected {}",
                f.r, f.s, f.dim, f.expected
            );
        }
        let _ = writeln!(
            out,
            "identification with the {}: {}",
            self.target,
            yn(self.identification_ok)
        );
        for i in self.identification.iter().filter(|i| !i.ok) {
            let _ = writeln!(out, "  p={}: rank {}", i.p, i.rank);
        }
        let good = self.surjectivity.iter().filter(|s| s.ok).count();
        let _ = writeln!(
            out,
            "surjectivity: {good}/{} maps onto their block",
            self.surjectivity.len()
        );
        for s in self.surjectivity.iter().filter(|s| !s.ok) {
            let _ = writeln!(
                out,
                "  (w={}, p={}): rank {} of {}",
                s.weight, s.p, s.rank, s.dim
            );
        }
        for d in &self.diagram {
            let weights: Vec<String> =
                d.weights_checked.iter().map(|w| w.to_string()).collect();
            let detail = match (&d.scalar, d.consistent) {
                (Some(c), true) => format!("scalar {c}"),
                (None, true) => d.status.to_string(),
                (_, false) => format!("{} (inconsistent across weights)", d.status),
            };
            let _ = writeln!(
                out,
                "diagram p={}: {detail} (weights {})",
                d.p,
                weights.join(", ")
            );
        }
        let good = self.product_span.iter().filter(|p| p.ok).count();
        let _ = writeln!(
            out,
            "product span: {good}/{} blocks spanned by edge products",
            self.product_span.len()
        );
        for p in self.product_span.iter().filter(|p| !p.ok) {
            let _ = writeln!(out, "  block ({},{}): rank {} of {}", p.r, p.s, p.rank, p.dim);
        }
        out
    }
}
