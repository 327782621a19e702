//! The bigraded algebra A on 2n generators x¹..xⁿ, y¹..yⁿ.
//!
//! Given an R-matrix grid, A is presented by four bihomogeneous relation
//! families:
//!
//!   xx: the rows of 1l − R read in the x-letters        (bidegree (2,0))
//!   xy: x_λ y_μ − Σ grid[λμ][νρ] · y_ν x_ρ              (bidegree (1,1))
//!   yx: y_λ x_μ − Σ grid[λμ][νρ] · x_ν y_ρ              (bidegree (1,1))
//!   yy: the rows of 1l + R read in the y-letters        (bidegree (0,2))
//!
//! Since every relation is bihomogeneous, A splits into blocks A^{(r,s)} by
//! x-degree r and y-degree s. Each block is E_block/Ideal_block where the
//! block ideal obeys the recursion
//!
//!   Ideal^{(r,s)} = Σ_letters letter ⊗ Ideal^(sub-block) + families ⊗ blocks,
//!
//! mirroring the ungraded ideal recursion slot by slot.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exact::{Mode, RowBasis, Scalar, SparseVec};
use crate::rmatrix::RMatrix;
use crate::tensor::{embed_block_slot0, full_dim, prefix_lift, BlockWords};

/// One bidegree block of A: its word table, ideal span (in block ordinals),
/// and the standard words that represent the quotient.
#[derive(Debug)]
pub struct BlockBasis {
    pub r: usize,
    pub s: usize,
    pub words: Arc<BlockWords>,
    pub ideal: RowBasis,
    /// Free ordinals (ascending): codes of the standard words via `words`.
    pub standard: Vec<u32>,
}

impl BlockBasis {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }
}

/// Summary line of the freeness comparison for one block: the computed
/// dimension against the product of the two edge dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessEntry {
    pub r: usize,
    pub s: usize,
    pub dim: usize,
    pub expected: usize,
    pub ok: bool,
}

pub struct BigradedAlgebra {
    n: usize,
    mode: Mode,
    rmatrix: RMatrix,
    fam_xx: Vec<SparseVec>,
    fam_xy: Vec<SparseVec>,
    fam_yx: Vec<SparseVec>,
    fam_yy: Vec<SparseVec>,
    budget: Option<u64>,
    words: Mutex<HashMap<(usize, usize), Arc<BlockWords>>>,
    blocks: Mutex<HashMap<(usize, usize), Arc<BlockBasis>>>,
}

impl BigradedAlgebra {
    pub fn new(rmatrix: &RMatrix) -> Self {
        let n = rmatrix.n();
        let mode = rmatrix.mode();
        let l = 2 * n as u32;
        let nn = n as u32;

        // xx and yy: canonical spans re-lettered into the 2n-letter alphabet.
        let to_xx = |c: u32| (c / nn) * l + (c % nn);
        let to_yy = |c: u32| (c / nn + nn) * l + (c % nn + nn);
        let xx_span = RowBasis::from_rows(mode, nn * nn, rmatrix.relation_rows());
        let fam_xx: Vec<SparseVec> = xx_span
            .canonical_rows()
            .into_iter()
            .map(|row| row.map_cols(to_xx))
            .collect();
        let yy_span = RowBasis::from_rows(mode, nn * nn, rmatrix.corelation_rows());
        let fam_yy: Vec<SparseVec> = yy_span
            .canonical_rows()
            .into_iter()
            .map(|row| row.map_cols(to_yy))
            .collect();

        // Mixed graph families straight from the grid.
        let grid = rmatrix.grid();
        let mut fam_xy = Vec::with_capacity(n * n);
        let mut fam_yx = Vec::with_capacity(n * n);
        for lam in 0..nn {
            for mu in 0..nn {
                let inp = (lam * nn + mu) as usize;
                let mut xy = vec![(lam * l + nn + mu, Scalar::one(mode))];
                let mut yx = vec![((lam + nn) * l + mu, Scalar::one(mode))];
                for nu in 0..nn {
                    for rho in 0..nn {
                        let coeff = grid.get(inp, (nu * nn + rho) as usize);
                        if coeff.is_zero() {
                            continue;
                        }
                        xy.push(((nu + nn) * l + rho, -coeff));
                        yx.push((nu * l + nn + rho, -coeff));
                    }
                }
                fam_xy.push(SparseVec::from_entries(xy));
                fam_yx.push(SparseVec::from_entries(yx));
            }
        }

        BigradedAlgebra {
            n,
            mode,
            rmatrix: rmatrix.clone(),
            fam_xx,
            fam_xy,
            fam_yx,
            fam_yy,
            budget: None,
            words: Mutex::new(HashMap::new()),
            blocks: Mutex::new(HashMap::new()),
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

    pub fn rmatrix(&self) -> &RMatrix {
        &self.rmatrix
    }

    /// The four relation families over (2n)² pair codes, in the order
    /// xx, xy, yx, yy with their pair bidegrees.
    pub fn families(&self) -> [(&[SparseVec], (usize, usize)); 4] {
        [
            (&self.fam_xx, (2, 0)),
            (&self.fam_xy, (1, 1)),
            (&self.fam_yx, (1, 1)),
            (&self.fam_yy, (0, 2)),
        ]
    }

    pub fn block_words(&self, r: usize, s: usize) -> Arc<BlockWords> {
        if let Some(w) = self.words.lock().expect("lock poisoned").get(&(r, s)) {
            return w.clone();
        }
        let table = Arc::new(BlockWords::new(self.n as u32, r, s));
        self.words
            .lock()
            .expect("lock poisoned")
            .entry((r, s))
            .or_insert(table)
            .clone()
    }

    pub fn block_basis(&self, r: usize, s: usize) -> Result<Arc<BlockBasis>> {
        if let Some(b) = self.blocks.lock().expect("lock poisoned").get(&(r, s)) {
            return Ok(b.clone());
        }
        let computed = self.compute_block(r, s)?;
        let mut map = self.blocks.lock().expect("lock poisoned");
        Ok(map
            .entry((r, s))
            .or_insert_with(|| Arc::new(computed))
            .clone())
    }

    fn compute_block(&self, r: usize, s: usize) -> Result<BlockBasis> {
        let words = self.block_words(r, s);
        let dim = words.dim();
        if r + s < 2 {
            let ideal = RowBasis::new(self.mode, dim as u32);
            let standard = ideal.free_columns();
            return Ok(BlockBasis {
                r,
                s,
                words,
                ideal,
                standard,
            });
        }

        let sub_x = if r >= 1 {
            Some(self.block_basis(r - 1, s)?)
        } else {
            None
        };
        let sub_y = if s >= 1 {
            Some(self.block_basis(r, s - 1)?)
        } else {
            None
        };

        if let Some(budget) = self.budget {
            let mut rows: u64 = 0;
            if let Some(b) = &sub_x {
                rows += (self.n * b.ideal.rank()) as u64;
            }
            if let Some(b) = &sub_y {
                rows += (self.n * b.ideal.rank()) as u64;
            }
            for (fam, (pa, pb)) in self.families() {
                if r >= pa && s >= pb {
                    rows += fam.len() as u64 * full_dim(2 * self.n as u32, r + s - 2) as u64;
                }
            }
            let cells = rows.saturating_mul(dim as u64);
            if cells > budget {
                return Err(Error::Budget(format!(
                    "block ({}, {}) needs about {} cells, budget is {}",
                    r, s, cells, budget
                )));
            }
        }

        let mut ideal = RowBasis::new(self.mode, dim as u32);
        // Letter ⊗ sub-ideal lifts: distinct leading letters put these rows
        // in pairwise disjoint ordinal ranges, so they bulk-load.
        let n = self.n as u8;
        for letter in 0..2 * n {
            let sub = if letter < n { &sub_x } else { &sub_y };
            if let Some(sub) = sub {
                let lifted = prefix_lift(
                    &sub.ideal.canonical_rows(),
                    letter,
                    &sub.words,
                    &words,
                );
                ideal.insert_disjoint_unchecked(lifted);
            }
        }
        // Slot-0 family placements.
        for (fam, (pa, pb)) in self.families() {
            if fam.is_empty() || r < pa || s < pb {
                continue;
            }
            let right = self.block_words(r - pa, s - pb);
            for row in embed_block_slot0(fam, (pa, pb), &words, &right) {
                ideal.insert(row);
            }
        }

        let standard = ideal.free_columns();
        Ok(BlockBasis {
            r,
            s,
            words,
            ideal,
            standard,
        })
    }

    pub fn dim(&self, r: usize, s: usize) -> Result<usize> {
        Ok(self.block_basis(r, s)?.dim())
    }

    /// Canonical normal form in one block: coordinates over block ordinals in,
    /// standard-word support out.
    pub fn normal_form(&self, r: usize, s: usize, v: &SparseVec) -> Result<SparseVec> {
        Ok(self.block_basis(r, s)?.ideal.reduce(v))
    }

    /// Product of block elements: concatenation of words followed by normal
    /// form in the target block.
    pub fn multiply(
        &self,
        (r1, s1, a): (usize, usize, &SparseVec),
        (r2, s2, b): (usize, usize, &SparseVec),
    ) -> Result<SparseVec> {
        let w1 = self.block_words(r1, s1);
        let w2 = self.block_words(r2, s2);
        let target = self.block_words(r1 + r2, s1 + s2);
        let shift = full_dim(2 * self.n as u32, r2 + s2) as u32;
        let product = SparseVec::from_entries(a.iter().flat_map(|(o1, s1v)| {
            let c1 = w1.code_at(*o1 as usize);
            let (w2, target) = (&w2, &target);
            b.iter().map(move |(o2, s2v)| {
                let code = c1 * shift + w2.code_at(*o2 as usize);
                let ord = target
                    .ordinal_of(code)
                    .expect("concatenation lands in the product block");
                (ord as u32, s1v * s2v)
            })
        }));
        self.normal_form(r1 + r2, s1 + s2, &product)
    }

    /// Whether products of standard words from the two edge blocks span the
    /// whole block (r, s). Returns (span rank, block dimension).
    pub fn check_product_span(&self, r: usize, s: usize) -> Result<(usize, usize)> {
        let bx = self.block_basis(r, 0)?;
        let by = self.block_basis(0, s)?;
        let target = self.block_basis(r, s)?;
        let mut span = RowBasis::new(self.mode, target.words.dim() as u32);
        for ox in &bx.standard {
            let a = SparseVec::unit(*ox, self.mode);
            for oy in &by.standard {
                let b = SparseVec::unit(*oy, self.mode);
                let prod = self.multiply((r, 0, &a), (0, s, &b))?;
                span.insert(prod);
            }
        }
        Ok((span.rank(), target.dim()))
    }

    /// The freeness table over all bidegrees with r+s ≤ max_degree: block
    /// dimension against dim A^{(r,0)} · dim A^{(0,s)}.
    pub fn freeness_table(&self, max_degree: usize) -> Result<Vec<FreenessEntry>> {
        let mut out = Vec::new();
        for t in 0..=max_degree {
            for r in (0..=t).rev() {
                let s = t - r;
                let dim = self.dim(r, s)?;
                let expected = self.dim(r, 0)? * self.dim(0, s)?;
                out.push(FreenessEntry {
                    r,
                    s,
                    dim,
                    expected,
                    ok: dim == expected,
                });
            }
        }
        Ok(out)
    }

    /// Computes all blocks with r+s ≤ max_degree, shell by shell. Within one
    /// shell the blocks are independent and are evaluated in parallel; the
    /// results are memoized write-once so the outcome does not depend on the
    /// thread schedule.
    pub fn prepare(&self, max_degree: usize) -> Result<()> {
        use rayon::prelude::*;
        for t in 0..=max_degree {
            let shells: Vec<(usize, usize)> = (0..=t).map(|r| (r, t - r)).collect();
            shells
                .par_iter()
                .map(|&(r, s)| self.block_basis(r, s).map(|_| ()))
                .collect::<Result<Vec<()>>>()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadalg::QuadraticAlgebra;
    use crate::tensor::encode_word;
    use num_rational::BigRational;

    fn flip2() -> BigradedAlgebra {
        BigradedAlgebra::new(&RMatrix::flip(2, Mode::Rational))
    }

    #[test]
    fn flip_blocks_have_classical_dimensions() {
        let a = flip2();
        // dim A^{(r,s)} = (r+1)·C(2,s): polynomial times exterior.
        for t in 0..=5usize {
            for r in 0..=t {
                let s = t - r;
                let expected = (r + 1) * crate::tensor::binomial(2, s);
                assert_eq!(a.dim(r, s).unwrap(), expected, "block ({r},{s})");
            }
        }
    }

    #[test]
    fn flip_freeness_table_is_all_true() {
        let a = flip2();
        for entry in a.freeness_table(5).unwrap() {
            assert!(entry.ok, "block ({}, {})", entry.r, entry.s);
        }
    }

    #[test]
    fn mixed_relations_put_x_before_y() {
        let a = flip2();
        // nf(y1 x1) = x1 y1 for the flip: coordinates commute with y's.
        let block = a.block_words(1, 1);
        let y1x1 = block.ordinal_of(encode_word(&[2, 0], 4)).unwrap() as u32;
        let x1y1 = block.ordinal_of(encode_word(&[0, 2], 4)).unwrap() as u32;
        let nf = a
            .normal_form(1, 1, &SparseVec::unit(y1x1, Mode::Rational))
            .unwrap();
        assert_eq!(nf, SparseVec::unit(x1y1, Mode::Rational));
    }

    #[test]
    fn edge_blocks_agree_with_the_two_quadratic_algebras() {
        let r = RMatrix::flip(2, Mode::Rational);
        let a = BigradedAlgebra::new(&r);
        let base = QuadraticAlgebra::from_relation_rows(2, Mode::Rational, r.relation_rows());
        let prime = QuadraticAlgebra::from_relation_rows(2, Mode::Rational, r.corelation_rows());
        for m in 0..=4usize {
            assert_eq!(a.dim(m, 0).unwrap(), base.graded_basis(m).unwrap().dim());
            assert_eq!(a.dim(0, m).unwrap(), prime.graded_basis(m).unwrap().dim());
        }
    }

    #[test]
    fn block_ideals_partition_the_ungraded_ideal() {
        // Running the plain quadratic-algebra recursion on all four families
        // over the 4-letter alphabet must give, in each total degree, the sum
        // of the block ideal ranks: relations are bihomogeneous so the ideal
        // splits. This cross-checks the block recursion against an
        // independent code path.
        let r = RMatrix::flip(2, Mode::Rational);
        let a = BigradedAlgebra::new(&r);
        let all_rows: Vec<SparseVec> = a
            .families()
            .iter()
            .flat_map(|(fam, _)| fam.iter().cloned())
            .collect();
        let ungraded = QuadraticAlgebra::from_relation_rows(4, Mode::Rational, all_rows);
        for m in 0..=4usize {
            let total = ungraded.graded_basis(m).unwrap().ideal.rank();
            let mut sum = 0;
            for r_deg in 0..=m {
                sum += a.block_basis(r_deg, m - r_deg).unwrap().ideal.rank();
            }
            assert_eq!(total, sum, "degree {m}");
        }
    }

    #[test]
    fn hecke_blocks_collapse_off_the_free_pattern() {
        let q = BigRational::new(2.into(), 1.into());
        let r = RMatrix::hecke_gl(2, &q, Mode::Rational).unwrap();
        let a = BigradedAlgebra::new(&r);
        // Non-involutive Hecke: the mixed block drops to 3 and the yy block
        // dies entirely, so the freeness table fails there.
        assert_eq!(a.dim(1, 1).unwrap(), 3);
        assert_eq!(a.dim(0, 2).unwrap(), 0);
        let table = a.freeness_table(2).unwrap();
        let entry = table.iter().find(|e| e.r == 1 && e.s == 1).unwrap();
        assert!(!entry.ok);
        assert_eq!(entry.expected, 4);
    }

    #[test]
    fn diag_signs_fails_freeness_at_bidegree_two_one() {
        let r = RMatrix::diag_signs(2, &[1, -1, -1, 1], Mode::Rational).unwrap();
        let a = BigradedAlgebra::new(&r);
        assert_eq!(a.dim(1, 1).unwrap(), 4);
        assert_eq!(a.dim(2, 1).unwrap(), 2);
        let table = a.freeness_table(3).unwrap();
        let entry = table.iter().find(|e| e.r == 2 && e.s == 1).unwrap();
        assert!(!entry.ok);
        assert_eq!(entry.expected, 4);
    }

    #[test]
    fn product_span_covers_blocks() {
        let a = flip2();
        let (rank, dim) = a.check_product_span(2, 1).unwrap();
        assert_eq!(rank, dim);
        let q = BigRational::new(2.into(), 1.into());
        let h = BigradedAlgebra::new(&RMatrix::hecke_gl(2, &q, Mode::Rational).unwrap());
        let (rank, dim) = h.check_product_span(1, 1).unwrap();
        assert_eq!((rank, dim), (3, 3));
    }

    #[test]
    fn budget_limits_block_construction() {
        let a = flip2().with_budget(Some(5));
        match a.dim(2, 2) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
