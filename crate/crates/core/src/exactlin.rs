//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are [`LinComb`]s: finite formal linear combinations over any
//! totally ordered key type. Elimination always pivots on the largest key
//! of a row, so a reduced echelon basis doubles as a set of oriented
//! rewriting rules when the key order is a monomial order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("bilinear form is not square: {rows} rows over {keys} keys")]
    NonSquareForm { rows: usize, keys: usize },
    #[error("bilinear form row {row} has {len} entries, expected {keys}")]
    RaggedForm { row: usize, len: usize, keys: usize },
}

/// Finite linear combination of basis keys with nonzero rational
/// coefficients. Iteration is in ascending key order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: B) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        LinComb { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Sum of keys, each with coefficient one (repeats accumulate).
    pub fn from_keys<I: IntoIterator<Item = B>>(keys: I) -> Self {
        Self::from_terms(keys.into_iter().map(|k| (k, Rational::one())))
    }

    pub fn add_term(&mut self, key: B, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &LinComb<B>, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &B) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &B> {
        self.terms.keys()
    }

    /// Largest key with its coefficient.
    pub fn leading(&self) -> Option<(&B, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn into_terms(self) -> BTreeMap<B, Rational> {
        self.terms
    }

    /// Linear extension of a map from keys to combinations.
    pub fn flat_map<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a map on keys.
    pub fn map_keys<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> C,
    {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Bilinear extension of `f` to `self x other`.
    pub fn bilinear<C, D, F>(&self, other: &LinComb<C>, mut f: F) -> LinComb<D>
    where
        C: Ord + Clone,
        D: Ord + Clone,
        F: FnMut(&B, &C) -> LinComb<D>,
    {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = f(a, b);
                if !prod.is_zero() {
                    out.add_scaled(&prod, &(ca * cb));
                }
            }
        }
        out
    }

    /// Tensor product `self ⊗ other` over pair keys.
    pub fn tensor<C: Ord + Clone>(&self, other: &LinComb<C>) -> LinComb<(B, C)> {
        self.bilinear(other, |a, b| LinComb::basis((a.clone(), b.clone())))
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k:?}")?;
            } else {
                write!(f, "{c}*{k:?}")?;
            }
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{abs}*{k}")?;
            }
        }
        Ok(())
    }
}

/// Row-major sparse matrix. The column space is the union of the row
/// supports together with any explicitly declared columns.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix<B: Ord> {
    pub rows: Vec<LinComb<B>>,
    extra_columns: BTreeSet<B>,
}

impl<B: Ord + Clone> SparseMatrix<B> {
    pub fn new(rows: Vec<LinComb<B>>) -> Self {
        SparseMatrix {
            rows,
            extra_columns: BTreeSet::new(),
        }
    }

    pub fn with_columns<I: IntoIterator<Item = B>>(rows: Vec<LinComb<B>>, columns: I) -> Self {
        SparseMatrix {
            rows,
            extra_columns: columns.into_iter().collect(),
        }
    }

    pub fn columns(&self) -> BTreeSet<B> {
        let mut cols = self.extra_columns.clone();
        for row in &self.rows {
            cols.extend(row.keys().cloned());
        }
        cols
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// Basis of `{x : row . x = 0 for every row}` over [`Self::columns`].
    pub fn kernel_basis(&self) -> Vec<LinComb<B>> {
        let mut ech = Echelon::new();
        for row in &self.rows {
            ech.insert(row.clone());
        }
        let reduced = ech.into_reduced();
        let mut out = Vec::new();
        for free in self.columns() {
            if reduced.contains_key(&free) {
                continue;
            }
            let mut v = LinComb::basis(free.clone());
            for (lead, row) in &reduced {
                let c = row.coeff(&free);
                if !c.is_zero() {
                    v.add_term(lead.clone(), -c);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Incremental row-echelon basis keyed by leading (largest) key. Every
/// stored row has leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<B: Ord> {
    pivots: BTreeMap<B, LinComb<B>>,
}

impl<B: Ord + Clone> Default for Echelon<B> {
    fn default() -> Self {
        Self::new()
    }
}

impl<B: Ord + Clone> Echelon<B> {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by the stored pivots until its leading key is free.
    pub fn reduce_leading(&self, mut v: LinComb<B>) -> LinComb<B> {
        loop {
            let Some((lead, c)) = v.leading() else {
                return v;
            };
            let Some(pivot) = self.pivots.get(lead) else {
                return v;
            };
            let factor = -c.clone();
            v.add_scaled(pivot, &factor);
        }
    }

    /// Fully reduces `v`: no key of the result is a pivot key.
    pub fn reduce_full(&self, mut v: LinComb<B>) -> LinComb<B> {
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                None => return v,
                Some((k, c)) => v.add_scaled(&self.pivots[&k], &-c),
            }
        }
    }

    /// Inserts `v`; returns true when it raised the rank.
    pub fn insert(&mut self, v: LinComb<B>) -> bool {
        let v = self.reduce_leading(v);
        let Some((lead, c)) = v.leading() else {
            return false;
        };
        let lead = lead.clone();
        let inv = c.recip();
        self.pivots.insert(lead, v.scale(&inv));
        true
    }

    pub fn contains(&self, v: &LinComb<B>) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Reduced row echelon form: each row is monic at its leading key and
    /// contains no other pivot key.
    pub fn into_reduced(self) -> BTreeMap<B, LinComb<B>> {
        let mut done: Echelon<B> = Echelon::new();
        for (lead, row) in self.pivots {
            let (lc, tail) = {
                let mut tail = row.clone();
                let lc = tail.coeff(&lead);
                tail.add_term(lead.clone(), -lc.clone());
                (lc, tail)
            };
            // Pivots are visited in ascending order, so every pivot key in
            // the tail is already reduced.
            let mut reduced = done.reduce_full(tail);
            reduced.add_term(lead.clone(), lc);
            done.pivots.insert(lead, reduced);
        }
        done.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<B>> {
        self.pivots.values()
    }
}

pub fn rank<B: Ord + Clone>(m: &SparseMatrix<B>) -> usize {
    m.rank()
}

pub fn kernel_basis<B: Ord + Clone>(m: &SparseMatrix<B>) -> Vec<LinComb<B>> {
    m.kernel_basis()
}

pub fn rank_of<B: Ord + Clone>(vs: &[LinComb<B>]) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v.clone());
    }
    ech.rank()
}

/// True iff the rational spans of `a` and `b` coincide.
pub fn span_equal<B: Ord + Clone>(a: &[LinComb<B>], b: &[LinComb<B>]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    if ra != rb {
        return false;
    }
    let union: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
    rank_of(&union) == ra
}

/// Square bilinear form on an ordered key space, stored by rows.
#[derive(Clone, Debug)]
pub struct BilinearForm<B: Ord> {
    keys: Vec<B>,
    rows: BTreeMap<B, LinComb<B>>,
}

impl<B: Ord + Clone> BilinearForm<B> {
    /// Dense constructor; `rows[a][b]` is the pairing of `keys[a]` with `keys[b]`.
    pub fn from_rows(keys: Vec<B>, rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        if rows.len() != keys.len() {
            return Err(LinAlgError::NonSquareForm {
                rows: rows.len(),
                keys: keys.len(),
            });
        }
        let mut out = BTreeMap::new();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != keys.len() {
                return Err(LinAlgError::RaggedForm {
                    row: i,
                    len: row.len(),
                    keys: keys.len(),
                });
            }
            let lc = LinComb::from_terms(keys.iter().cloned().zip(row));
            out.insert(keys[i].clone(), lc);
        }
        Ok(BilinearForm { keys, rows: out })
    }

    pub fn diagonal(entries: Vec<(B, Rational)>) -> Self {
        let keys: Vec<B> = entries.iter().map(|(k, _)| k.clone()).collect();
        let rows = entries
            .into_iter()
            .map(|(k, c)| {
                let row = LinComb::from_terms([(k.clone(), c)]);
                (k, row)
            })
            .collect();
        BilinearForm { keys, rows }
    }

    pub fn keys(&self) -> &[B] {
        &self.keys
    }

    /// The functional `x -> <v, x>` as a row vector.
    pub fn functional(&self, v: &LinComb<B>) -> LinComb<B> {
        v.flat_map(|k| self.rows.get(k).cloned().unwrap_or_default())
    }

    pub fn pair(&self, v: &LinComb<B>, w: &LinComb<B>) -> Rational {
        let f = self.functional(v);
        f.iter().map(|(k, c)| c * w.coeff(k)).sum()
    }
}

/// Basis of `{x : <v, x> = 0 for all v in vs}` inside the form's key space.
pub fn orth_complement<B: Ord + Clone>(
    vs: &[LinComb<B>],
    form: &BilinearForm<B>,
) -> Vec<LinComb<B>> {
    let rows = vs.iter().map(|v| form.functional(v)).collect();
    SparseMatrix::with_columns(rows, form.keys().iter().cloned()).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: u32) -> LinComb<u32> {
        LinComb::basis(i)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut v = e(1) + e(2);
        v.add_term(1, int(-1));
        assert_eq!(v, e(2));
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank(&SparseMatrix::<u32>::new(vec![])), 0);
        let row = e(1).scale(&int(3)) + e(4);
        assert_eq!(rank(&SparseMatrix::new(vec![row.clone(), row.clone(), row])), 1);
    }

    #[test]
    fn kernel_small_cases() {
        let id = SparseMatrix::new(vec![e(1), e(2)]);
        assert!(kernel_basis(&id).is_empty());
        let zero = SparseMatrix::with_columns(vec![LinComb::zero()], [1u32, 2, 3]);
        assert_eq!(kernel_basis(&zero).len(), 3);
    }

    #[test]
    fn span_equal_small_cases() {
        assert!(span_equal(&[e(1)], &[e(1).scale(&int(2))]));
        assert!(!span_equal(&[e(1)], &[e(2)]));
    }

    #[test]
    fn orth_complement_small_cases() {
        let form = BilinearForm::diagonal(vec![(1u32, int(1)), (2, int(1))]);
        assert_eq!(orth_complement(&[], &form).len(), 2);
        let perp = orth_complement(&[e(1)], &form);
        assert!(span_equal(&perp, &[e(2)]));
    }

    #[test]
    fn non_square_form_rejected() {
        let err = BilinearForm::from_rows(vec![1u32, 2], vec![vec![int(1), int(0)]]).unwrap_err();
        assert_eq!(err, LinAlgError::NonSquareForm { rows: 1, keys: 2 });
        let err = BilinearForm::from_rows(vec![1u32, 2], vec![vec![int(1)], vec![int(0), int(1)]])
            .unwrap_err();
        assert!(matches!(err, LinAlgError::RaggedForm { row: 0, .. }));
    }

    #[test]
    fn reduced_form_has_no_pivot_in_tails() {
        let rows = vec![e(3) + e(2) + e(1), e(2) - e(1), e(2) + e(1)];
        let mut ech = Echelon::new();
        for r in rows {
            ech.insert(r);
        }
        let red = ech.into_reduced();
        assert_eq!(red.len(), 3);
        for (lead, row) in &red {
            assert_eq!(row, &e(*lead));
        }
    }

    fn small_matrix() -> impl Strategy<Value = (Vec<LinComb<u8>>, u8)> {
        (1u8..7).prop_flat_map(|ncols| {
            let row = proptest::collection::vec((0..ncols, -3i64..4), 0..6).prop_map(|ts| {
                LinComb::from_terms(ts.into_iter().map(|(k, c)| (k, int(c))))
            });
            (proptest::collection::vec(row, 0..6), Just(ncols))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((rows, ncols) in small_matrix()) {
            let m = SparseMatrix::with_columns(rows.clone(), 0..ncols);
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), ncols as usize);
            for x in &ker {
                for r in &rows {
                    let dot: Rational = r.iter().map(|(k, c)| c * x.coeff(k)).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }

        #[test]
        fn double_complement_is_identity((rows, ncols) in small_matrix(), signs in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2)], 7)) {
            let form = BilinearForm::diagonal((0..ncols).map(|k| (k, int(signs[k as usize]))).collect());
            let once = orth_complement(&rows, &form);
            let twice = orth_complement(&once, &form);
            prop_assert!(span_equal(&twice, &rows));
        }
    }
}
