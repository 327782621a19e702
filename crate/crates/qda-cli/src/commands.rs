//! Builds the per-command results from a parsed input.

use std::sync::Arc;

use qda::bigraded::BigradedAlgebra;
use qda::calculus::{
    laplacian_is_degree, line_homology, squares_to_zero, verify_well_defined, Diff,
    IllDefinedWitness,
};
use qda::exact::SparseVec;
use qda::koszul::{
    check_diagram, comparison_surjectivity, dual_identification, DiagramStatus, KoszulComplex,
};
use qda::quadalg::QuadraticAlgebra;
use qda::rmatrix::RMatrix;
use qda::spec::AlgebraSpec;
use qda::{Error, Result};

use crate::report::*;

fn require_rmatrix(spec: &AlgebraSpec) -> Result<&RMatrix> {
    spec.rmatrix().ok_or_else(|| {
        Error::Unsupported(
            "this command needs an R-matrix input; the file gives relations only".into(),
        )
    })
}

fn base_algebra(spec: &AlgebraSpec, budget: Option<u64>) -> QuadraticAlgebra {
    QuadraticAlgebra::from_relation_rows(spec.n(), spec.mode(), spec.relation_rows())
        .with_budget(budget)
}

fn graded_dims(alg: &QuadraticAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    (0..=max_degree)
        .map(|m| Ok(alg.graded_basis(m)?.dim()))
        .collect()
}

pub fn check(spec: &AlgebraSpec) -> Result<CheckResults> {
    let r = require_rmatrix(spec)?;
    let witness = r.check_qybe();
    let hecke = match r.check_hecke() {
        Some((alpha, beta)) => {
            let sum_is_one = (&alpha + &beta).is_one();
            HeckeResult {
                holds: true,
                alpha: Some(alpha.to_string()),
                beta: Some(beta.to_string()),
                alpha_plus_beta_is_one: Some(sum_is_one),
            }
        }
        None => HeckeResult {
            holds: false,
            alpha: None,
            beta: None,
            alpha_plus_beta_is_one: None,
        },
    };
    Ok(CheckResults {
        invertible: r.invertible(),
        symmetric: r.check_symmetric(),
        involutive: r.check_involutive(),
        hermitian: r.check_hermitian(),
        qybe: QybeResult {
            holds: witness.is_none(),
            witness: witness.map(|w| WitnessOut {
                input: w.input.map(|i| i + 1),
                output: w.output.map(|i| i + 1),
                lhs: w.lhs.to_string(),
                rhs: w.rhs.to_string(),
            }),
        },
        hecke,
        spectrum_contains_one: r.spectrum_contains_one(),
        relations_star_closed: r.relations_star_closed(),
    })
}

pub fn hilbert(
    spec: &AlgebraSpec,
    max_degree: usize,
    bigraded: bool,
    budget: Option<u64>,
) -> Result<HilbertResults> {
    let base = base_algebra(spec, budget);
    let dual = base.dual().with_budget(budget);
    let prime = spec
        .rmatrix()
        .map(|r| {
            let alg =
                QuadraticAlgebra::from_relation_rows(spec.n(), spec.mode(), r.corelation_rows())
                    .with_budget(budget);
            graded_dims(&alg, max_degree)
        })
        .transpose()?;
    let bigraded = if bigraded {
        let r = require_rmatrix(spec)?;
        let big = BigradedAlgebra::new(r).with_budget(budget);
        big.prepare(max_degree)?;
        let mut triangle = Vec::new();
        for row in 0..=max_degree {
            for s in 0..=max_degree - row {
                triangle.push(TriangleEntry {
                    r: row,
                    s,
                    dim: big.dim(row, s)?,
                });
            }
        }
        let freeness: Vec<FreenessOut> = big
            .freeness_table(max_degree)?
            .into_iter()
            .map(|f| FreenessOut {
                r: f.r,
                s: f.s,
                dim: f.dim,
                expected: f.expected,
                ok: f.ok,
            })
            .collect();
        let all_free = freeness.iter().all(|f| f.ok);
        Some(BigradedResults {
            triangle,
            freeness,
            all_free,
        })
    } else {
        None
    };
    Ok(HilbertResults {
        base: graded_dims(&base, max_degree)?,
        prime,
        dual: graded_dims(&dual, max_degree)?,
        bigraded,
    })
}

/// Renders a block vector as a polynomial in named generators, x1..xn then
/// y1..yn, for witness output.
fn poly_string(big: &BigradedAlgebra, r: usize, s: usize, v: &SparseVec) -> String {
    let n = big.n() as u8;
    let words = big.block_words(r, s);
    let mut out = String::new();
    for (ord, coeff) in v.iter() {
        let name: String = words
            .letters_at(*ord as usize)
            .iter()
            .map(|&l| {
                if l < n {
                    format!("x{}", l + 1)
                } else {
                    format!("y{}", l - n + 1)
                }
            })
            .collect();
        let c = coeff.to_string();
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match c.as_str() {
            "1" => out.push_str(&name),
            "-1" => {
                out.push('-');
                out.push_str(&name);
            }
            _ => {
                out.push_str(&c);
                out.push('*');
                out.push_str(&name);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn ill_defined_out(big: &BigradedAlgebra, w: IllDefinedWitness) -> IllDefinedOut {
    let (tr, ts) = w
        .diff
        .target(w.r, w.s)
        .expect("a witness only exists where the map is nonzero");
    IllDefinedOut {
        diff: match w.diff {
            Diff::D => "d",
            Diff::Delta => "delta",
        },
        r: w.r,
        s: w.s,
        relation: poly_string(big, w.r, w.s, &w.relation),
        image_normal_form: poly_string(big, tr, ts, &w.image_normal_form),
    }
}

pub fn poincare(
    spec: &AlgebraSpec,
    max_degree: usize,
    budget: Option<u64>,
) -> Result<PoincareResults> {
    let r = require_rmatrix(spec)?;
    let big = BigradedAlgebra::new(r).with_budget(budget);
    big.prepare(max_degree)?;
    let mut ill = Vec::new();
    let mut d_sq = true;
    let mut delta_sq = true;
    let mut degree_identity = true;
    for t in 0..=max_degree {
        for row in 0..=t {
            let s = t - row;
            for diff in [Diff::D, Diff::Delta] {
                if let Some(w) = verify_well_defined(&big, diff, row, s)? {
                    ill.push(ill_defined_out(&big, w));
                }
            }
            d_sq &= squares_to_zero(&big, Diff::D, row, s)?;
            delta_sq &= squares_to_zero(&big, Diff::Delta, row, s)?;
            degree_identity &= laplacian_is_degree(&big, row, s)?;
        }
    }
    let lines = |diff: Diff| -> Result<Vec<LineOut>> {
        (0..=max_degree)
            .map(|t| {
                let nodes: Vec<NodeOut> = line_homology(&big, diff, t)?
                    .into_iter()
                    .map(|n| NodeOut {
                        r: n.r,
                        s: n.s,
                        dim: n.dim,
                        homology_dim: n.homology_dim,
                        certified: n.certified,
                    })
                    .collect();
                let trivial = nodes.iter().all(|n| n.homology_dim == 0);
                Ok(LineOut {
                    total_degree: t,
                    nodes,
                    trivial,
                })
            })
            .collect()
    };
    let d_lines = lines(Diff::D)?;
    let delta_lines = lines(Diff::Delta)?;
    let origin_ok = |ls: &[LineOut]| {
        ls[0].nodes.len() == 1
            && ls[0].nodes[0].homology_dim == 1
            && ls[1..].iter().all(|l| l.trivial)
    };
    let trivial_only_at_origin = origin_ok(&d_lines) && origin_ok(&delta_lines);
    Ok(PoincareResults {
        well_defined: ill.is_empty(),
        ill_defined: ill,
        d_squared_zero: d_sq,
        delta_squared_zero: delta_sq,
        degree_identity,
        d_lines,
        delta_lines,
        trivial_only_at_origin,
    })
}

pub fn koszul(
    spec: &AlgebraSpec,
    max_degree: usize,
    budget: Option<u64>,
) -> Result<KoszulResults> {
    let kz = KoszulComplex::new(Arc::new(base_algebra(spec, budget)));
    let dual_dims = kz.dual_dims(max_degree)?;
    let mut weights = Vec::new();
    let mut squares = true;
    for w in 0..=max_degree {
        squares &= kz.boundary_squares_to_zero(w)?;
        let nodes = kz.homology(w)?;
        let dims: Vec<usize> = nodes.iter().map(|n| n.dim).collect();
        let homology: Vec<usize> = nodes.iter().map(|n| n.homology_dim).collect();
        let exact = homology.iter().all(|h| *h == 0);
        weights.push(WeightOut {
            weight: w,
            dims,
            homology,
            euler: kz.euler_characteristic(w)?,
            exact,
        });
    }
    let mut presentation = true;
    for w in 1..=max_degree {
        presentation &= kz.presentation_exact(w)?;
    }
    let acyclic = weights[1..].iter().all(|w| w.exact);
    let euler_ok = weights[1..]
        .iter()
        .filter(|w| w.exact)
        .all(|w| w.euler == 0);
    Ok(KoszulResults {
        dual_dims,
        boundary_squares_zero: squares,
        weights,
        presentation_exact: presentation,
        acyclic_positive_weights: acyclic,
        euler_zero_where_acyclic: euler_ok,
    })
}

pub fn compare(
    spec: &AlgebraSpec,
    max_degree: usize,
    budget: Option<u64>,
) -> Result<CompareResults> {
    let r = require_rmatrix(spec)?;
    let big = BigradedAlgebra::new(r).with_budget(budget);
    big.prepare(max_degree)?;
    let base = Arc::new(base_algebra(spec, budget));
    let kz = KoszulComplex::new(base.clone());
    let use_prime = r.check_symmetric() && r.check_involutive();
    let target_alg = if use_prime {
        QuadraticAlgebra::from_relation_rows(spec.n(), spec.mode(), r.corelation_rows())
            .with_budget(budget)
    } else {
        base.dual().with_budget(budget)
    };

    let freeness: Vec<FreenessOut> = big
        .freeness_table(max_degree)?
        .into_iter()
        .map(|f| FreenessOut {
            r: f.r,
            s: f.s,
            dim: f.dim,
            expected: f.expected,
            ok: f.ok,
        })
        .collect();
    let all_free = freeness.iter().all(|f| f.ok);

    let identification: Vec<IdentOut> = (0..=max_degree)
        .map(|p| {
            let (ok, rank) = dual_identification(&kz, &target_alg, p)?;
            Ok(IdentOut { p, rank, ok })
        })
        .collect::<Result<_>>()?;
    let identification_ok = identification.iter().all(|i| i.ok);

    let mut surjectivity = Vec::new();
    for w in 0..=max_degree {
        for p in 0..=w {
            let (rank, dim) = comparison_surjectivity(&big, &kz, w, p)?;
            surjectivity.push(SurjOut {
                weight: w,
                p,
                rank,
                dim,
                ok: rank == dim,
            });
        }
    }
    let all_surjective = surjectivity.iter().all(|s| s.ok);

    let mut diagram = Vec::new();
    for p in 1..=max_degree {
        let mut weights_checked = Vec::new();
        let mut decisive: Option<DiagramStatus> = None;
        let mut consistent = true;
        let mut any_defect = false;
        for w in p..=max_degree {
            weights_checked.push(w);
            let d = check_diagram(&big, &kz, w, p)?;
            if matches!(d.status, DiagramStatus::Defect { .. }) {
                any_defect = true;
            }
            if d.vacuous {
                continue;
            }
            match &decisive {
                None => decisive = Some(d.status),
                Some(prev) => consistent &= *prev == d.status,
            }
        }
        let (status, scalar) = match &decisive {
            None => ("trivial", None),
            Some(DiagramStatus::Exact) => ("exact", None),
            Some(DiagramStatus::Scalar(c)) => ("scalar", Some(c.to_string())),
            Some(DiagramStatus::Defect { .. }) => ("defect", None),
        };
        diagram.push(DiagramOut {
            p,
            status: if any_defect { "defect" } else { status },
            scalar,
            weights_checked,
            consistent,
        });
    }
    let diagram_ok = diagram
        .iter()
        .all(|d| d.status != "defect" && d.consistent);

    let mut product_span = Vec::new();
    for t in 0..=max_degree {
        for row in 0..=t {
            let s = t - row;
            let (rank, dim) = big.check_product_span(row, s)?;
            product_span.push(ProductSpanOut {
                r: row,
                s,
                rank,
                dim,
                ok: rank == dim,
            });
        }
    }
    let product_span_ok = product_span.iter().all(|p| p.ok);

    Ok(CompareResults {
        target: if use_prime { "prime" } else { "dual" },
        freeness,
        all_free,
        identification,
        identification_ok,
        surjectivity,
        all_surjective,
        diagram,
        diagram_ok,
        product_span,
        product_span_ok,
    })
}
