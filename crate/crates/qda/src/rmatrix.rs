//! R-matrices on E ⊗ E and their structural properties.
//!
//! An R-matrix on an n-dimensional space E is stored as its n²×n² grid with
//! rows indexed by input pairs and columns by output pairs, both in
//! lexicographic code λ·n+μ:
//!
//! R(e_λ ⊗ e_μ) = Σ_{νρ} grid[λμ][νρ] · e_ν ⊗ e_ρ.
//!
//! With this layout "apply R then S" is the grid product G_R · G_S, and the
//! braid relation (R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R), the quantum
//! Yang-Baxter equation in its braid form, becomes an identity of 3-letter
//! grids built from Kronecker products.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Mode, RowBasis, Scalar, SparseVec};

/// An exact R-matrix: the grid of R on E ⊗ E for dim E = n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    grid: Matrix,
}

/// A counterexample to the braid relation: the first basis input triple
/// (scanning lexicographically) and output triple where the two sides of the
/// braid identity disagree. Indices are 0-based here; reports print 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QybeWitness {
    pub input: [usize; 3],
    pub output: [usize; 3],
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl RMatrix {
    pub fn new(n: usize, grid: Matrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        if grid.nrows() != n * n || grid.ncols() != n * n {
            return Err(Error::Dimension(format!(
                "R-matrix grid for n={} must be {}x{}, got {}x{}",
                n,
                n * n,
                n * n,
                grid.nrows(),
                grid.ncols()
            )));
        }
        Ok(RMatrix { n, grid })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.grid.mode()
    }

    pub fn grid(&self) -> &Matrix {
        &self.grid
    }

    /// The flip e_λ⊗e_μ ↦ e_μ⊗e_λ.
    pub fn flip(n: usize, mode: Mode) -> Self {
        let mut grid = Matrix::zero(mode, n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                grid.set(a * n + b, b * n + a, Scalar::one(mode));
            }
        }
        RMatrix { n, grid }
    }

    pub fn identity(n: usize, mode: Mode) -> Self {
        RMatrix {
            n,
            grid: Matrix::identity(mode, n * n),
        }
    }

    pub fn neg_flip(n: usize, mode: Mode) -> Self {
        let f = RMatrix::flip(n, mode);
        RMatrix {
            n,
            grid: f.grid.neg(),
        }
    }

    pub fn neg_identity(n: usize, mode: Mode) -> Self {
        let i = RMatrix::identity(n, mode);
        RMatrix {
            n,
            grid: i.grid.neg(),
        }
    }

    /// Diagonal sign matrix: R(e_λ⊗e_μ) = ε_{λμ}·e_λ⊗e_μ with ε read from
    /// `signs` in pair-code order (length n², entries ±1).
    pub fn diag_signs(n: usize, signs: &[i64], mode: Mode) -> Result<Self> {
        if signs.len() != n * n {
            return Err(Error::Dimension(format!(
                "diag_signs needs {} signs for n={}, got {}",
                n * n,
                n,
                signs.len()
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("diag_signs entries must be 1 or -1".into()));
        }
        let mut grid = Matrix::zero(mode, n * n, n * n);
        for (i, &s) in signs.iter().enumerate() {
            grid.set(i, i, Scalar::from_int(s, mode));
        }
        Ok(RMatrix { n, grid })
    }

    /// The Hecke-type deformation of the flip, normalized so its spectrum is
    /// {1, -1/q²}: on the diagonal R(e_i⊗e_i) = e_i⊗e_i, above it
    /// R(e_i⊗e_j) = e_j⊗e_i for i<j, and below it
    /// R(e_i⊗e_j) = q⁻²·e_j⊗e_i + (1−q⁻²)·e_i⊗e_j for i>j.
    ///
    /// Satisfies the braid relation and R² = (1−q⁻²)R + q⁻²·1l; at q = 1 it
    /// degenerates to the flip. Its relation span Im(1−R) is spanned by
    /// e_i⊗e_j − e_j⊗e_i, so the associated quadratic algebra is the
    /// commutative polynomial algebra for every q.
    pub fn hecke_gl(n: usize, q: &BigRational, mode: Mode) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Invalid("hecke_gl requires q != 0".into()));
        }
        let qinv2 = BigRational::one() / (q * q);
        let one_minus = BigRational::one() - &qinv2;
        let mut grid = Matrix::zero(mode, n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let inp = i * n + j;
                let swapped = j * n + i;
                if i == j {
                    grid.set(inp, inp, Scalar::one(mode));
                } else if i < j {
                    grid.set(inp, swapped, Scalar::one(mode));
                } else {
                    grid.set(inp, swapped, Scalar::from_rational(qinv2.clone(), mode));
                    if !one_minus.is_zero() {
                        grid.set(inp, inp, Scalar::from_rational(one_minus.clone(), mode));
                    }
                }
            }
        }
        Ok(RMatrix { n, grid })
    }

    /// Bilinear symmetry of the grid (no conjugation): grid == gridᵀ.
    pub fn check_symmetric(&self) -> bool {
        self.grid == self.grid.transpose()
    }

    /// R² = 1l on E⊗E.
    pub fn check_involutive(&self) -> bool {
        let sq = self.grid.mul(&self.grid).expect("square grid");
        sq == Matrix::identity(self.mode(), self.n * self.n)
    }

    /// The reality conditions R^{λμ}_{νρ} = conj(R^{νρ}_{λμ}) and
    /// R^{λμ}_{νρ} = conj(R^{μλ}_{ρν}). In rational mode conjugation is the
    /// identity and this degenerates to symmetry plus pair-swap invariance.
    pub fn check_hermitian(&self) -> bool {
        let n = self.n;
        for l in 0..n {
            for m in 0..n {
                for v in 0..n {
                    for r in 0..n {
                        let a = self.grid.get(l * n + m, v * n + r);
                        let b = self.grid.get(v * n + r, l * n + m).conj();
                        if *a != b {
                            return false;
                        }
                        let c = self.grid.get(m * n + l, r * n + v).conj();
                        if *a != c {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn invertible(&self) -> bool {
        self.grid.rank() == self.n * self.n
    }

    /// Whether 1 is an eigenvalue of R, decided exactly via rank(R − 1l).
    pub fn spectrum_contains_one(&self) -> bool {
        let id = Matrix::identity(self.mode(), self.n * self.n);
        let diff = self.grid.sub(&id).expect("same shape");
        diff.rank() < self.n * self.n
    }

    /// Verifies the braid relation on E⊗E⊗E; None means it holds.
    pub fn check_qybe(&self) -> Option<QybeWitness> {
        let n = self.n;
        let mode = self.mode();
        let id = Matrix::identity(mode, n);
        let r12 = self.grid.kron(&id);
        let r23 = id.kron(&self.grid);
        let lhs = r12
            .mul(&r23)
            .and_then(|m| m.mul(&r12))
            .expect("cube grids compose");
        let rhs = r23
            .mul(&r12)
            .and_then(|m| m.mul(&r23))
            .expect("cube grids compose");
        let dim = n * n * n;
        for row in 0..dim {
            for col in 0..dim {
                let a = lhs.get(row, col);
                let b = rhs.get(row, col);
                if a != b {
                    let unpack = |c: usize| [c / (n * n), (c / n) % n, c % n];
                    return Some(QybeWitness {
                        input: unpack(row),
                        output: unpack(col),
                        lhs: a.clone(),
                        rhs: b.clone(),
                    });
                }
            }
        }
        None
    }

    /// Solves R² = α·R + β·1l exactly. Returns None when no such (α, β) with
    /// β ≠ 0 exists. For scalar matrices R = c·1l the representative (0, c²)
    /// is returned.
    pub fn check_hecke(&self) -> Option<(Scalar, Scalar)> {
        let mode = self.mode();
        let dim = self.n * self.n;
        let id = Matrix::identity(mode, dim);
        let sq = self.grid.mul(&self.grid).expect("square grid");

        // Scalar case first: R = c·1l forces the canonical answer (0, c²).
        let c = self.grid.get(0, 0).clone();
        if self.grid == id.scale(&c) {
            let beta = &c * &c;
            if beta.is_zero() {
                return None;
            }
            return Some((Scalar::zero(mode), beta));
        }

        // Otherwise R and 1l are independent, so (α, β) is unique if it
        // exists. Solve for α from any position where the coefficient is
        // determined, then verify the full identity.
        let mut alpha: Option<Scalar> = None;
        'outer: for i in 0..dim {
            for j in 0..dim {
                if i != j && !self.grid.get(i, j).is_zero() {
                    alpha = Some(
                        sq.get(i, j)
                            .checked_div(self.grid.get(i, j))
                            .expect("divisor checked nonzero"),
                    );
                    break 'outer;
                }
            }
        }
        let alpha = match alpha {
            Some(a) => a,
            None => {
                // R is diagonal and non-scalar: two distinct diagonal values
                // d, e give α = d+e, β = -d·e.
                let mut first: Option<Scalar> = None;
                let mut second: Option<Scalar> = None;
                for i in 0..dim {
                    let d = self.grid.get(i, i);
                    match &first {
                        None => first = Some(d.clone()),
                        Some(f) if f != d && second.is_none() => second = Some(d.clone()),
                        _ => {}
                    }
                }
                let (d, e) = (first?, second?);
                &d + &e
            }
        };
        // β is forced by any diagonal position.
        let beta = sq.get(0, 0) - &(&alpha * self.grid.get(0, 0));
        if beta.is_zero() {
            return None;
        }
        let rhs = self
            .grid
            .scale(&alpha)
            .add(&id.scale(&beta))
            .expect("same shape");
        if sq == rhs {
            Some((alpha, beta))
        } else {
            None
        }
    }

    /// The relation span of the quadratic algebra: the row space of 1l − R
    /// inside E ⊗ E (pair coordinates).
    pub fn relation_rows(&self) -> Vec<SparseVec> {
        let id = Matrix::identity(self.mode(), self.n * self.n);
        let diff = id.sub(&self.grid).expect("same shape");
        (0..diff.nrows())
            .map(|i| diff.row_sparse(i))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// The row space of 1l + R, presenting the second quadratic algebra.
    pub fn corelation_rows(&self) -> Vec<SparseVec> {
        let id = Matrix::identity(self.mode(), self.n * self.n);
        let sum = id.add(&self.grid).expect("same shape");
        (0..sum.nrows())
            .map(|i| sum.row_sparse(i))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Whether the relation span is closed under the antilinear star
    /// Σ c_{ab} e_a⊗e_b ↦ Σ conj(c_{ab}) e_b⊗e_a.
    pub fn relations_star_closed(&self) -> bool {
        let n = self.n as u32;
        let rows = self.relation_rows();
        let basis = RowBasis::from_rows(self.mode(), n * n, rows.clone());
        rows.iter().all(|row| {
            let starred = SparseVec::from_entries(row.iter().map(|(c, s)| {
                let (a, b) = (c / n, c % n);
                (b * n + a, s.conj())
            }));
            basis.contains(&starred)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn flip_is_symmetric_involutive_braided() {
        let r = RMatrix::flip(2, Mode::Rational);
        assert!(r.check_symmetric());
        assert!(r.check_involutive());
        assert!(r.check_qybe().is_none());
        assert!(r.invertible());
        assert!(r.spectrum_contains_one());
        let (alpha, beta) = r.check_hecke().expect("flip satisfies a Hecke identity");
        assert!(alpha.is_zero());
        assert!(beta.is_one());
    }

    #[test]
    fn neg_identity_and_neg_flip_are_braided_involutions() {
        for r in [
            RMatrix::neg_identity(2, Mode::Rational),
            RMatrix::neg_flip(2, Mode::Rational),
        ] {
            assert!(r.check_involutive());
            assert!(r.check_qybe().is_none());
            let (alpha, beta) = r.check_hecke().expect("involution");
            assert!(alpha.is_zero());
            assert!(beta.is_one());
        }
        // -1l has no eigenvalue 1; -flip does (antisymmetric vectors).
        assert!(!RMatrix::neg_identity(2, Mode::Rational).spectrum_contains_one());
        assert!(RMatrix::neg_flip(2, Mode::Rational).spectrum_contains_one());
    }

    #[test]
    fn diag_signs_breaks_the_braid_relation() {
        let r = RMatrix::diag_signs(2, &[1, -1, -1, 1], Mode::Rational).unwrap();
        assert!(r.check_symmetric());
        assert!(r.check_involutive());
        let w = r.check_qybe().expect("diagonal signs violate the braid");
        // First failing input triple is e1⊗e1⊗e2 (0-based [0,0,1]).
        assert_eq!(w.input, [0, 0, 1]);
        assert_eq!(w.output, [0, 0, 1]);
        assert_eq!(w.lhs, Scalar::from_int(-1, Mode::Rational));
        assert_eq!(w.rhs, Scalar::from_int(1, Mode::Rational));
    }

    #[test]
    fn hecke_gl_at_q_one_is_the_flip() {
        let r = RMatrix::hecke_gl(3, &rat(1, 1), Mode::Rational).unwrap();
        assert_eq!(r, RMatrix::flip(3, Mode::Rational));
    }

    #[test]
    fn hecke_gl_grid_at_q_two() {
        let r = RMatrix::hecke_gl(2, &rat(2, 1), Mode::Rational).unwrap();
        let expected = Matrix::from_rows(
            Mode::Rational,
            vec![
                vec![
                    Scalar::from_int(1, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                ],
                vec![
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(1, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                ],
                vec![
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_ratio(1, 4, Mode::Rational),
                    Scalar::from_ratio(3, 4, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                ],
                vec![
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(0, Mode::Rational),
                    Scalar::from_int(1, Mode::Rational),
                ],
            ],
        )
        .unwrap();
        assert_eq!(r.grid(), &expected);
    }

    #[test]
    fn hecke_gl_is_braided_but_not_symmetric_or_involutive() {
        for n in [2usize, 3] {
            let r = RMatrix::hecke_gl(n, &rat(2, 1), Mode::Rational).unwrap();
            assert!(r.check_qybe().is_none(), "braid fails for n={n}");
            assert!(!r.check_symmetric());
            assert!(!r.check_involutive());
            assert!(r.invertible());
            assert!(r.spectrum_contains_one());
            let (alpha, beta) = r.check_hecke().expect("Hecke identity");
            assert_eq!(alpha, Scalar::from_ratio(3, 4, Mode::Rational));
            assert_eq!(beta, Scalar::from_ratio(1, 4, Mode::Rational));
        }
    }

    #[test]
    fn hecke_gl_relations_span_commutators() {
        let r = RMatrix::hecke_gl(2, &rat(2, 1), Mode::Rational).unwrap();
        let basis = RowBasis::from_rows(Mode::Rational, 4, r.relation_rows());
        assert_eq!(basis.rank(), 1);
        // The span is exactly that of e12 - e21.
        let comm = SparseVec::from_entries([
            (1, Scalar::from_int(1, Mode::Rational)),
            (2, Scalar::from_int(-1, Mode::Rational)),
        ]);
        assert!(basis.contains(&comm));
    }

    fn phase_flip() -> RMatrix {
        // R(e_λ⊗e_μ) = u_{λμ}·e_μ⊗e_λ with u11 = u22 = 1, u12 = i, u21 = -i.
        let mode = Mode::Gaussian;
        let mut grid = Matrix::zero(mode, 4, 4);
        grid.set(0, 0, Scalar::one(mode));
        grid.set(1, 2, Scalar::i());
        grid.set(2, 1, -Scalar::i());
        grid.set(3, 3, Scalar::one(mode));
        RMatrix::new(2, grid).unwrap()
    }

    #[test]
    fn phase_flip_is_hermitian_braided_involutive() {
        let r = phase_flip();
        assert!(r.check_hermitian());
        assert!(r.check_involutive());
        assert!(r.check_qybe().is_none());
        assert!(!r.check_symmetric());
        assert!(r.relations_star_closed());
    }

    #[test]
    fn flip_relations_are_star_closed_too() {
        assert!(RMatrix::flip(2, Mode::Rational).relations_star_closed());
    }

    #[test]
    fn wrong_grid_size_is_a_dimension_error() {
        let grid = Matrix::identity(Mode::Rational, 3);
        match RMatrix::new(2, grid) {
            Err(Error::Dimension(msg)) => assert!(msg.contains("4x4")),
            other => panic!("expected dimension error, got {other:?}"),
        }
    }
}
