//! Quadratic algebras on n generators and their graded components.
//!
//! A quadratic algebra is the tensor algebra on E = span{x¹..xⁿ} modulo the
//! two-sided ideal generated by a subspace ℛ ⊆ E⊗E. Degree m of the ideal is
//! built by the recursion Ideal_m = E ⊗ Ideal_{m−1} + ℛ ⊗ E^{m−2}; the degree
//! m component of the algebra is the quotient of E^{⊗m}, represented
//! canonically by the words on the free columns of the ideal's reduced
//! echelon basis (the standard words).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exact::{Mode, RowBasis, SparseVec};
use crate::tensor::{embed_full, full_dim};

/// The degree-m data of a quadratic algebra: the ideal span inside E^{⊗m}
/// and the standard words that represent the quotient.
#[derive(Debug)]
pub struct GradedBasis {
    pub degree: usize,
    /// Span of the degree-m ideal component in the n^m word coordinates.
    pub ideal: RowBasis,
    /// Codes of the standard words (free columns), ascending.
    pub words: Vec<u32>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// A quadratic algebra with memoized graded components.
pub struct QuadraticAlgebra {
    n: usize,
    mode: Mode,
    relations: RowBasis,
    budget: Option<u64>,
    graded: Mutex<HashMap<usize, Arc<GradedBasis>>>,
}

impl QuadraticAlgebra {
    /// Builds the algebra presented by the span of the given relation rows
    /// (sparse vectors in the n² pair coordinates).
    pub fn from_relation_rows(
        n: usize,
        mode: Mode,
        rows: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let relations = RowBasis::from_rows(mode, (n * n) as u32, rows);
        QuadraticAlgebra {
            n,
            mode,
            relations,
            budget: None,
            graded: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_budget(mut self, cells: Option<u64>) -> Self {
        self.budget = cells;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn relations(&self) -> &RowBasis {
        &self.relations
    }

    /// Whether another algebra has exactly the same relation span.
    pub fn same_relations(&self, other: &QuadraticAlgebra) -> bool {
        self.n == other.n
            && self.mode == other.mode
            && self.relations.canonical_rows() == other.relations.canonical_rows()
    }

    /// The Koszul dual: relations are the annihilator of ℛ under the
    /// bilinear dot pairing on E⊗E (no conjugation).
    pub fn dual(&self) -> QuadraticAlgebra {
        let ann = self.relations.kernel_basis();
        let mut out = QuadraticAlgebra::from_relation_rows(self.n, self.mode, ann);
        out.budget = self.budget;
        out
    }

    pub fn graded_basis(&self, m: usize) -> Result<Arc<GradedBasis>> {
        if let Some(g) = self.graded.lock().expect("lock poisoned").get(&m) {
            return Ok(g.clone());
        }
        let computed = self.compute_graded(m)?;
        let mut map = self.graded.lock().expect("lock poisoned");
        Ok(map
            .entry(m)
            .or_insert_with(|| Arc::new(computed))
            .clone())
    }

    fn compute_graded(&self, m: usize) -> Result<GradedBasis> {
        let n = self.n as u32;
        let dim = full_dim(n, m);
        if m < 2 {
            let ideal = RowBasis::new(self.mode, dim as u32);
            let words = ideal.free_columns();
            return Ok(GradedBasis {
                degree: m,
                ideal,
                words,
            });
        }
        let prev = self.graded_basis(m - 1)?;
        let rel_rows = self.relations.canonical_rows();
        if let Some(budget) = self.budget {
            let rows = self.n as u64 * prev.ideal.rank() as u64
                + rel_rows.len() as u64 * full_dim(n, m - 2) as u64;
            let cells = rows.saturating_mul(dim as u64);
            if cells > budget {
                return Err(Error::Budget(format!(
                    "degree {} needs about {} cells, budget is {}",
                    m, cells, budget
                )));
            }
        }
        let mut ideal = RowBasis::new(self.mode, dim as u32);
        // E ⊗ Ideal_{m-1}: prefix lifts land in disjoint column ranges per
        // letter, so they stay inter-reduced and can be bulk-loaded.
        let shift = full_dim(n, m - 1) as u32;
        for letter in 0..n {
            let lifted = prev
                .ideal
                .canonical_rows()
                .into_iter()
                .map(|row| row.map_cols(|c| letter * shift + c));
            ideal.insert_disjoint_unchecked(lifted);
        }
        // ℛ ⊗ E^{m-2} at slot 0.
        for row in embed_full(&rel_rows, 0, m, n) {
            ideal.insert(row);
        }
        let words = ideal.free_columns();
        Ok(GradedBasis {
            degree: m,
            ideal,
            words,
        })
    }

    /// dim 𝒜_m for m = 0..=max_degree.
    pub fn hilbert(&self, max_degree: usize) -> Result<Vec<usize>> {
        (0..=max_degree)
            .map(|m| Ok(self.graded_basis(m)?.dim()))
            .collect()
    }

    /// Canonical representative of `v` (coordinates in E^{⊗m}) modulo the
    /// degree-m ideal: supported on standard words only.
    pub fn normal_form(&self, m: usize, v: &SparseVec) -> Result<SparseVec> {
        Ok(self.graded_basis(m)?.ideal.reduce(v))
    }

    /// Product of two represented elements, as the normal form of their
    /// concatenation in degree m1+m2.
    pub fn multiply(
        &self,
        (m1, a): (usize, &SparseVec),
        (m2, b): (usize, &SparseVec),
    ) -> Result<SparseVec> {
        let n = self.n as u32;
        let shift = full_dim(n, m2) as u32;
        let product = SparseVec::from_entries(a.iter().flat_map(|(c1, s1)| {
            b.iter()
                .map(move |(c2, s2)| (c1 * shift + c2, s1 * s2))
        }));
        self.normal_form(m1 + m2, &product)
    }
}
