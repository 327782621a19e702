//! Randomized invariants for the exact linear algebra core and the algebra
//! layers built on top of it. Each case states a law that must hold for all
//! inputs, not a frozen example.

use proptest::prelude::*;
use qda::bigraded::BigradedAlgebra;
use qda::calculus::{free_image, Diff};
use qda::exact::{span_intersection, span_sum, Matrix, Mode, RowBasis, Scalar, SparseVec};
use qda::koszul::KoszulComplex;
use qda::quadalg::QuadraticAlgebra;
use qda::rmatrix::RMatrix;
use qda::tensor::{decode_word, encode_word, BlockWords};
use std::sync::Arc;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::from_ratio(p, q, Mode::Rational))
}

fn dense_vec(ncols: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(small_rational(), ncols).prop_map(|vals| {
        SparseVec::from_entries(vals.into_iter().enumerate().map(|(i, s)| (i as u32, s)))
    })
}

fn vec_list(ncols: usize, max_rows: usize) -> impl Strategy<Value = Vec<SparseVec>> {
    prop::collection::vec(dense_vec(ncols), 0..=max_rows)
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(small_rational(), cols), rows)
            .prop_map(|grid| Matrix::from_rows(Mode::Rational, grid).unwrap())
    })
}

proptest! {
    #[test]
    fn row_basis_ignores_insertion_order(rows in vec_list(6, 6)) {
        let forward = RowBasis::from_rows(Mode::Rational, 6, rows.clone());
        let backward = RowBasis::from_rows(Mode::Rational, 6, rows.into_iter().rev());
        prop_assert_eq!(forward.canonical_rows(), backward.canonical_rows());
    }

    #[test]
    fn row_basis_rank_plus_annihilator_is_ambient(rows in vec_list(6, 6)) {
        let basis = RowBasis::from_rows(Mode::Rational, 6, rows.clone());
        let ann = basis.kernel_basis();
        prop_assert_eq!(basis.rank() + ann.len(), 6);
        for k in &ann {
            for r in &rows {
                // dot yields None when the supports are disjoint.
                prop_assert!(r.dot(k).is_none_or(|s| s.is_zero()));
            }
        }
    }

    #[test]
    fn double_annihilator_restores_the_span(rows in vec_list(5, 5)) {
        let original = RowBasis::from_rows(Mode::Rational, 5, rows);
        let ann = RowBasis::from_rows(Mode::Rational, 5, original.kernel_basis());
        let double = RowBasis::from_rows(Mode::Rational, 5, ann.kernel_basis());
        prop_assert_eq!(original.canonical_rows(), double.canonical_rows());
    }

    #[test]
    fn normal_form_is_a_projection(rows in vec_list(6, 4), v in dense_vec(6), w in dense_vec(6), c in small_rational()) {
        let basis = RowBasis::from_rows(Mode::Rational, 6, rows);
        let nf = basis.reduce(&v);
        prop_assert_eq!(basis.reduce(&nf), nf.clone());
        // Linearity: reduce(v + c*w) = reduce(v) + c*reduce(w).
        let combo = v.linear_combine(&Scalar::one(Mode::Rational), &w, &c);
        let lhs = basis.reduce(&combo);
        let rhs = nf.linear_combine(&Scalar::one(Mode::Rational), &basis.reduce(&w), &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_and_intersection_dimensions_balance(u in vec_list(6, 4), v in vec_list(6, 4)) {
        let ub = RowBasis::from_rows(Mode::Rational, 6, u.clone());
        let vb = RowBasis::from_rows(Mode::Rational, 6, v.clone());
        let sum = span_sum(Mode::Rational, 6, &u, &v);
        let meet = span_intersection(Mode::Rational, 6, &u, &v);
        prop_assert_eq!(sum.rank() + meet.len(), ub.rank() + vb.rank());
        for w in &meet {
            prop_assert!(ub.contains(w));
            prop_assert!(vb.contains(w));
        }
    }

    #[test]
    fn rref_is_idempotent_and_counts_pivots(m in small_matrix()) {
        let (r1, pivots) = m.rref();
        let (r2, pivots2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(&pivots, &pivots2);
        prop_assert_eq!(pivots.len(), m.rank());
    }

    #[test]
    fn matrix_rank_nullity(m in small_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.nrows(), m.ncols());
        if kernel.nrows() > 0 {
            prop_assert!(kernel.mul(&m.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn word_codes_round_trip(letters in prop::collection::vec(0u8..6, 0..=6)) {
        let code = encode_word(&letters, 6);
        prop_assert_eq!(decode_word(code, 6, letters.len()), letters);
    }

    #[test]
    fn bidegree_blocks_partition_all_words(n in 1u32..=3, t in 0usize..=5) {
        let total: usize = (0..=t).map(|s| BlockWords::new(n, t - s, s).dim()).sum();
        prop_assert_eq!(total, (2 * n as usize).pow(t as u32));
    }
}

fn flip_big() -> Arc<BigradedAlgebra> {
    Arc::new(BigradedAlgebra::new(&RMatrix::flip(2, Mode::Rational)))
}

fn hecke_big() -> Arc<BigradedAlgebra> {
    let q = num_rational::BigRational::new(2.into(), 1.into());
    Arc::new(BigradedAlgebra::new(
        &RMatrix::hecke_gl(2, &q, Mode::Rational).unwrap(),
    ))
}

fn block_element(big: Arc<BigradedAlgebra>, r: usize, s: usize) -> impl Strategy<Value = SparseVec> {
    let dim = big.block_words(r, s).dim();
    dense_vec(dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(
        a in block_element(flip_big(), 1, 0),
        b in block_element(flip_big(), 0, 1),
        c in block_element(flip_big(), 1, 1),
    ) {
        let big = flip_big();
        let ab = big.multiply((1, 0, &a), (0, 1, &b)).unwrap();
        let bc = big.multiply((0, 1, &b), (1, 1, &c)).unwrap();
        let left = big.multiply((1, 1, &ab), (1, 1, &c)).unwrap();
        let right = big.multiply((1, 0, &a), (1, 2, &bc)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hecke_multiplication_is_associative(
        a in block_element(hecke_big(), 1, 0),
        b in block_element(hecke_big(), 0, 1),
        c in block_element(hecke_big(), 1, 0),
    ) {
        let big = hecke_big();
        let ab = big.multiply((1, 0, &a), (0, 1, &b)).unwrap();
        let bc = big.multiply((0, 1, &b), (1, 0, &c)).unwrap();
        let left = big.multiply((1, 1, &ab), (1, 0, &c)).unwrap();
        let right = big.multiply((1, 0, &a), (1, 1, &bc)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn derivations_satisfy_the_graded_leibniz_rule(
        a in block_element(flip_big(), 1, 1),
        b in block_element(flip_big(), 1, 1),
    ) {
        let big = flip_big();
        // a has one y-letter, so the sign on the right summand is -1.
        for diff in [Diff::D, Diff::Delta] {
            let ab = big.multiply((1, 1, &a), (1, 1, &b)).unwrap();
            let (tr, ts) = diff.target(2, 2).unwrap();
            let lhs = big.normal_form(tr, ts, &free_image(&big, diff, 2, 2, &ab).unwrap()).unwrap();

            let da = free_image(&big, diff, 1, 1, &a).unwrap();
            let db = free_image(&big, diff, 1, 1, &b).unwrap();
            let (ar, a_s) = diff.target(1, 1).unwrap();
            let da_b = big.multiply((ar, a_s, &da), (1, 1, &b)).unwrap();
            let a_db = big.multiply((1, 1, &a), (ar, a_s, &db)).unwrap();
            let rhs = da_b.sub(&a_db);
            prop_assert_eq!(lhs, rhs, "diff {:?}", diff);
        }
    }

    #[test]
    fn koszul_boundary_squares_to_zero_for_sign_algebras(
        signs in prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { 1i64 } else { -1 }), 4),
        weight in 1usize..=4,
    ) {
        let r = RMatrix::diag_signs(2, &signs, Mode::Rational).unwrap();
        let alg = Arc::new(QuadraticAlgebra::from_relation_rows(
            2, Mode::Rational, r.relation_rows(),
        ));
        let kz = KoszulComplex::new(alg);
        prop_assert!(kz.boundary_squares_to_zero(weight).unwrap());
    }

    #[test]
    fn reflections_split_pairs_into_orthogonal_relations(v in dense_vec(4)) {
        prop_assume!(!v.is_empty());
        // R = 1 - 2 v v^T / (v.v) is symmetric and involutive, so the
        // relation and corelation spans must be orthogonal complements.
        let vv = v.dot(&v).unwrap();
        let mut grid = Matrix::identity(Mode::Rational, 4);
        for (i, vi) in v.iter() {
            for (j, vj) in v.iter() {
                let shift = (&(vi * vj) * &Scalar::from_int(2, Mode::Rational))
                    .checked_div(&vv)
                    .unwrap();
                let cur = grid.get(*i as usize, *j as usize).clone();
                grid.set(*i as usize, *j as usize, &cur - &shift);
            }
        }
        let r = RMatrix::new(2, grid).unwrap();
        prop_assert!(r.check_symmetric());
        prop_assert!(r.check_involutive());
        let rel = r.relation_rows();
        let corel = r.corelation_rows();
        let rel_rank = RowBasis::from_rows(Mode::Rational, 4, rel.clone()).rank();
        let corel_rank = RowBasis::from_rows(Mode::Rational, 4, corel.clone()).rank();
        prop_assert_eq!(rel_rank + corel_rank, 4);
        for x in &rel {
            for y in &corel {
                prop_assert!(x.dot(y).is_none_or(|s| s.is_zero()));
            }
        }
    }

    #[test]
    fn hecke_family_satisfies_braid_and_trace_of_one(p in 1i64..=5, q in 1i64..=5) {
        let ratio = num_rational::BigRational::new(p.into(), q.into());
        let r = RMatrix::hecke_gl(2, &ratio, Mode::Rational).unwrap();
        prop_assert!(r.check_qybe().is_none());
        let (alpha, beta) = r.check_hecke().unwrap();
        prop_assert!(!beta.is_zero());
        prop_assert!((&alpha + &beta).is_one());
    }

    #[test]
    fn quotient_normal_form_is_linear_and_idempotent(
        u in dense_vec(8),
        w in dense_vec(8),
        c in small_rational(),
    ) {
        let big = hecke_big();
        let alg = QuadraticAlgebra::from_relation_rows(
            2,
            Mode::Rational,
            big.rmatrix().relation_rows(),
        );
        let nf_u = alg.normal_form(3, &u).unwrap();
        prop_assert_eq!(alg.normal_form(3, &nf_u).unwrap(), nf_u.clone());
        let combo = u.linear_combine(&Scalar::one(Mode::Rational), &w, &c);
        let lhs = alg.normal_form(3, &combo).unwrap();
        let rhs = nf_u.linear_combine(
            &Scalar::one(Mode::Rational),
            &alg.normal_form(3, &w).unwrap(),
            &c,
        );
        prop_assert_eq!(lhs, rhs);
    }
}
