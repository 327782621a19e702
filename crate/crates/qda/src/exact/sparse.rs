use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{Mode, Scalar};

/// A sparse vector over a fixed (implicit) column count: strictly ascending
/// column indices paired with nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(u32, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(col: u32, mode: Mode) -> Self {
        SparseVec {
            entries: vec![(col, Scalar::one(mode))],
        }
    }

    /// Builds a vector from arbitrary (column, scalar) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_entries(pairs: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut map: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, s) in pairs {
            if s.is_zero() {
                continue;
            }
            match map.remove(&c) {
                None => {
                    map.insert(c, s);
                }
                Some(prev) => {
                    let sum = &prev + &s;
                    if !sum.is_zero() {
                        map.insert(c, sum);
                    }
                }
            }
        }
        SparseVec {
            entries: map.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, col: u32) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Smallest column index in the support.
    pub fn leading(&self) -> Option<u32> {
        self.entries.first().map(|e| e.0)
    }

    /// Largest column index in the support.
    pub fn trailing(&self) -> Option<u32> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, k: &Scalar) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, s)| (*c, s * k)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(c, s)| (*c, -s)).collect(),
        }
    }

    /// a·self + b·other, merging sorted supports.
    pub fn linear_combine(&self, a: &Scalar, other: &SparseVec, b: &Scalar) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut li = self.entries.iter().peekable();
        let mut ri = other.entries.iter().peekable();
        loop {
            match (li.peek(), ri.peek()) {
                (None, None) => break,
                (Some((c, s)), None) => {
                    let v = s * a;
                    if !v.is_zero() {
                        out.push((*c, v));
                    }
                    li.next();
                }
                (None, Some((c, s))) => {
                    let v = s * b;
                    if !v.is_zero() {
                        out.push((*c, v));
                    }
                    ri.next();
                }
                (Some((lc, ls)), Some((rc, rs))) => {
                    if lc < rc {
                        let v = ls * a;
                        if !v.is_zero() {
                            out.push((*lc, v));
                        }
                        li.next();
                    } else if rc < lc {
                        let v = rs * b;
                        if !v.is_zero() {
                            out.push((*rc, v));
                        }
                        ri.next();
                    } else {
                        let v = &(ls * a) + &(rs * b);
                        if !v.is_zero() {
                            out.push((*lc, v));
                        }
                        li.next();
                        ri.next();
                    }
                }
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mode = self
            .entries
            .first()
            .or(other.entries.first())
            .map(|(_, s)| s.mode());
        match mode {
            None => SparseVec::new(),
            Some(m) => self.linear_combine(&Scalar::one(m), other, &Scalar::one(m)),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mode = self
            .entries
            .first()
            .or(other.entries.first())
            .map(|(_, s)| s.mode());
        match mode {
            None => SparseVec::new(),
            Some(m) => self.linear_combine(&Scalar::one(m), other, &-&Scalar::one(m)),
        }
    }

    /// Bilinear dot product (no conjugation), the pairing used throughout.
    pub fn dot(&self, other: &SparseVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let mut li = self.entries.iter().peekable();
        let mut ri = other.entries.iter().peekable();
        while let (Some((lc, ls)), Some((rc, rs))) = (li.peek(), ri.peek()) {
            if lc < rc {
                li.next();
            } else if rc < lc {
                ri.next();
            } else {
                let prod = ls * rs;
                acc = Some(match acc {
                    None => prod,
                    Some(a) => &a + &prod,
                });
                li.next();
                ri.next();
            }
        }
        acc
    }

    /// Remaps column indices through a strictly increasing function.
    pub fn map_cols(&self, f: impl Fn(u32) -> u32) -> SparseVec {
        let entries: Vec<(u32, Scalar)> =
            self.entries.iter().map(|(c, s)| (f(*c), s.clone())).collect();
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    /// Clears denominators and divides by the content so all components are
    /// coprime integers. The zero vector is left untouched.
    pub(crate) fn make_primitive(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut lcm = BigInt::one();
        for (_, s) in &self.entries {
            s.fold_denom_lcm(&mut lcm);
        }
        if !lcm.is_one() {
            for (_, s) in &mut self.entries {
                s.mul_int(&lcm);
            }
        }
        let mut gcd = BigInt::zero();
        for (_, s) in &self.entries {
            s.fold_numer_gcd(&mut gcd);
        }
        if !gcd.is_one() && !gcd.is_zero() {
            for (_, s) in &mut self.entries {
                s.div_int_exact(&gcd);
            }
        }
    }
}

/// A canonical row basis of a subspace, maintained by fraction-free
/// Gauss-Jordan elimination with trailing pivots.
///
/// Invariants: each stored row is a primitive integer vector whose largest
/// support index (its pivot) appears in no other stored row. The normalized
/// view (pivots scaled to 1) is the reduced echelon basis of the span with
/// respect to the trailing-pivot order, which is unique, so the basis does
/// not depend on insertion order.
///
/// Trailing pivots make the *lexicographically smallest* columns the free
/// ones, which is what makes quotient-space representatives come out as the
/// expected standard words downstream.
#[derive(Clone, Debug)]
pub struct RowBasis {
    ncols: u32,
    mode: Mode,
    rows: BTreeMap<u32, SparseVec>,
}

impl RowBasis {
    pub fn new(mode: Mode, ncols: u32) -> Self {
        RowBasis {
            ncols,
            mode,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_rows(mode: Mode, ncols: u32, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut basis = RowBasis::new(mode, ncols);
        for r in rows {
            basis.insert(r);
        }
        basis
    }

    pub fn ncols(&self) -> u32 {
        self.ncols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.keys().copied().collect()
    }

    /// Columns not used as pivots, ascending. These index the canonical
    /// complement (quotient representatives).
    pub fn free_columns(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.ncols as usize - self.rows.len());
        let mut pivots = self.rows.keys().copied().peekable();
        for c in 0..self.ncols {
            if pivots.peek() == Some(&c) {
                pivots.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Fraction-free reduction of `v` against all stored rows. The result is
    /// a (primitive) vector with no support on any pivot column; it is zero
    /// iff `v` lies in the span.
    fn reduce_ff(&self, v: SparseVec) -> SparseVec {
        let mut v = v;
        loop {
            let hit = v
                .entries
                .iter()
                .rev()
                .find_map(|(c, _)| self.rows.contains_key(c).then_some(*c));
            let Some(p) = hit else { break };
            let row = &self.rows[&p];
            let vp = v.get(p).expect("pivot entry present").clone();
            let rp = row.get(p).expect("pivot of stored row").clone();
            v = v.linear_combine(&rp, row, &-&vp);
            v.make_primitive();
        }
        v
    }

    /// Inserts `v` into the basis. Returns false (and changes nothing) when
    /// `v` already lies in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce_ff(v);
        if v.is_empty() {
            return false;
        }
        v.make_primitive();
        let p = v.trailing().expect("nonzero vector has a trailing entry");
        debug_assert!(p < self.ncols, "column index out of range");
        // Back-substitute the new pivot out of every stored row.
        let vp = v.get(p).expect("trailing entry").clone();
        let affected: Vec<u32> = self
            .rows
            .iter()
            .filter(|(_, r)| r.get(p).is_some())
            .map(|(k, _)| *k)
            .collect();
        for k in affected {
            let row = self.rows.remove(&k).expect("row key just listed");
            let rp = row.get(p).expect("entry at new pivot").clone();
            let mut reduced = row.linear_combine(&vp, &v, &-&rp);
            reduced.make_primitive();
            debug_assert_eq!(reduced.trailing(), Some(k));
            self.rows.insert(k, reduced);
        }
        self.rows.insert(p, v);
        true
    }

    /// Bulk-loads rows that are already mutually inter-reduced with distinct
    /// trailing pivots not present in the basis. Used for prefix-lifted ideal
    /// rows whose supports live in pairwise disjoint column ranges.
    pub(crate) fn insert_disjoint_unchecked(&mut self, rows: impl IntoIterator<Item = SparseVec>) {
        for mut v in rows {
            debug_assert!(!v.is_empty());
            v.make_primitive();
            let p = v.trailing().expect("nonzero row");
            debug_assert!(p < self.ncols);
            let prev = self.rows.insert(p, v);
            debug_assert!(prev.is_none(), "duplicate pivot in bulk load");
        }
        #[cfg(debug_assertions)]
        self.assert_inter_reduced();
    }

    #[cfg(debug_assertions)]
    fn assert_inter_reduced(&self) {
        for (p, row) in &self.rows {
            for (c, _) in row.iter() {
                assert!(c == p || !self.rows.contains_key(c), "rows not inter-reduced");
            }
        }
    }

    /// Canonical normal form: `v` minus its projection onto the span, using
    /// exact rational division so the result is the unique representative
    /// supported on free columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_coords(v).0
    }

    /// Normal form together with the coordinates of the projected part in
    /// terms of the normalized rows (keyed by ascending pivot ordinal).
    pub fn reduce_with_coords(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut v = v.clone();
        let mut coords = Vec::new();
        loop {
            let hit = v
                .entries
                .iter()
                .rev()
                .find_map(|(c, _)| self.rows.contains_key(c).then_some(*c));
            let Some(p) = hit else { break };
            let row = &self.rows[&p];
            let vp = v.get(p).expect("pivot entry present").clone();
            let rp = row.get(p).expect("pivot of stored row").clone();
            let coeff = vp.checked_div(&rp).expect("pivot is nonzero");
            v = v.linear_combine(&Scalar::one(self.mode), row, &-&coeff);
            // The coordinate with respect to the *normalized* row (pivot 1)
            // is the original value at the pivot column.
            let ordinal = self.rows.range(..=p).count() - 1;
            coords.push((ordinal, vp));
        }
        coords.sort_by_key(|(i, _)| *i);
        (v, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_ff(v.clone()).is_empty()
    }

    /// The unique reduced echelon basis: rows normalized to pivot 1, listed
    /// by ascending pivot column.
    pub fn canonical_rows(&self) -> Vec<SparseVec> {
        self.rows
            .values()
            .map(|row| {
                let p = row.trailing().expect("stored rows are nonzero");
                let inv = row
                    .get(p)
                    .expect("pivot entry")
                    .checked_inv()
                    .expect("pivot is nonzero");
                row.scale(&inv)
            })
            .collect()
    }

    /// Canonical basis of the null space {v : r·v = 0 for every row r}.
    ///
    /// One basis vector per free column f: the unit at f extended by the
    /// forced pivot coordinates. Each output has entry 1 at its free column
    /// and support otherwise only on pivot columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let canonical = self.canonical_rows();
        let pivots = self.pivots();
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut entries = vec![(f, Scalar::one(self.mode))];
                for (row, p) in canonical.iter().zip(&pivots) {
                    if let Some(a) = row.get(f) {
                        entries.push((*p, -a));
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect()
    }
}
