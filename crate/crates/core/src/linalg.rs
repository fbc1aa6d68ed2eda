//! Sparse exact linear algebra.
//!
//! Linear maps between finite-dimensional spaces are stored as
//! [`SparseMatrix`] values whose row `i` is the image of source basis vector
//! `i` (vectors are rows, maps act on the right). The free functions
//! [`rref`], [`kernel`] and [`solve_affine`] use the ordinary column-vector
//! reading `M x`.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::{Error, Result};

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, F::one())],
        }
    }

    pub fn single(i: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn min_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let s = x.add(&y.mul(c));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc = acc.add(&x.mul(y));
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Re-index every entry through `f` (which must be injective).
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Keep only entries whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        SparseVec {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }
}

/// Scratch space for summing many sparse contributions.
#[derive(Debug)]
pub struct Accumulator<F> {
    map: BTreeMap<usize, F>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x = x.add(c),
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_vec(&mut self, v: &SparseVec<F>, c: &F) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &x.mul(c));
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![SparseVec::zero(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec<F>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < ncols)));
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.rows[i].get(j)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter() {
                cols[j].push((i, c.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    /// Row vector times matrix: `x * self`.
    pub fn apply(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (i, c) in x.iter() {
            acc.add_vec(&self.rows[i], c);
        }
        acc.finish()
    }

    /// Matrix times column vector: `self * x`.
    pub fn mul_vec(&self, x: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(x)))
                .filter(|(_, c)| !c.is_zero()),
        )
    }

    /// Ordinary product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            rows: self.rows.iter().map(|r| rhs.apply(r)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols, PivotRule::Lowest);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }
}

/// Which column of a row serves as its pivot during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PivotRule {
    /// Leftmost nonzero column (textbook row echelon form).
    Lowest,
    /// Rightmost nonzero column; with basis vectors sorted increasingly
    /// this selects leading terms.
    Highest,
}

impl PivotRule {
    fn pivot_of<F: Field>(self, v: &SparseVec<F>) -> Option<usize> {
        match self {
            PivotRule::Lowest => v.min_index(),
            PivotRule::Highest => v.max_index(),
        }
    }
}

#[derive(Clone, Debug)]
struct EchelonRow<F> {
    vec: SparseVec<F>,
    /// Expression of `vec` in terms of the inserted vectors.
    combo: SparseVec<F>,
}

/// Incrementally built semi-echelon basis.
///
/// Each stored row has pivot coefficient one and pivots are distinct. The
/// rows are not kept fully reduced; [`Echelon::reduce`] still returns a
/// remainder that vanishes on every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    rule: PivotRule,
    rows: Vec<EchelonRow<F>>,
    pivot_row: BTreeMap<usize, usize>,
    inserted: usize,
    dependencies: Vec<SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize, rule: PivotRule) -> Self {
        Echelon {
            dim,
            rule,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
            inserted: 0,
            dependencies: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rule(&self) -> PivotRule {
        self.rule
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v`, returning the remainder and the combination of stored
    /// rows that was subtracted (in terms of inserted vectors).
    fn reduce_tracked(&self, v: &SparseVec<F>, track: bool) -> (SparseVec<F>, SparseVec<F>) {
        let mut work: BTreeMap<usize, F> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut used = Accumulator::new();
        let mut bound: Option<usize> = None;
        loop {
            let next = match (self.rule, bound) {
                (PivotRule::Highest, None) => work.iter().next_back(),
                (PivotRule::Highest, Some(b)) => work.range(..b).next_back(),
                (PivotRule::Lowest, None) => work.iter().next(),
                (PivotRule::Lowest, Some(b)) => work.range(b + 1..).next(),
            };
            let Some((&col, coef)) = next else { break };
            bound = Some(col);
            let Some(&r) = self.pivot_row.get(&col) else { continue };
            let coef = coef.clone();
            let row = &self.rows[r];
            for (j, x) in row.vec.iter() {
                let delta = x.mul(&coef);
                match work.get_mut(&j) {
                    Some(y) => {
                        *y = y.sub(&delta);
                        if y.is_zero() {
                            work.remove(&j);
                        }
                    }
                    None => {
                        work.insert(j, delta.neg());
                    }
                }
            }
            if track {
                used.add_vec(&row.combo, &coef);
            }
        }
        (
            SparseVec {
                entries: work.into_iter().collect(),
            },
            used.finish(),
        )
    }

    /// Remainder of `v` modulo the span; zero on all pivot columns.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_tracked(v, false).0
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it enlarged the span. When it did not,
    /// the linear dependency among inserted vectors is recorded.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_tracked(&v, true);
        // rem = v - sum(used_j * inserted_j)
        let combo = SparseVec::unit(id).sub(&used);
        match self.rule.pivot_of(&rem) {
            None => {
                self.dependencies.push(combo);
                false
            }
            Some(p) => {
                let inv = rem.get(p).inv().expect("pivot is nonzero");
                let row = EchelonRow {
                    vec: rem.scale(&inv),
                    combo: combo.scale(&inv),
                };
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    /// Finds `x` (indexed by insertion order) with `sum x_i v_i = b`.
    pub fn express(&self, b: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (rem, used) = self.reduce_tracked(b, true);
        rem.is_zero().then_some(used)
    }

    /// Basis of linear relations among the inserted vectors.
    pub fn dependencies(&self) -> &[SparseVec<F>] {
        &self.dependencies
    }

    /// Fully reduced basis, sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec<F>> {
        let mut out: Vec<(usize, SparseVec<F>)> = self
            .pivot_row
            .iter()
            .map(|(&p, &r)| {
                let row = &self.rows[r].vec;
                let tail = row.filter(|j| j != p);
                let reduced = self.reduce(&tail);
                (p, reduced.add(&SparseVec::unit(p)))
            })
            .collect();
        out.sort_by_key(|(p, _)| *p);
        out.into_iter().map(|(_, v)| v).collect()
    }

    /// Coordinates not used as pivots, ascending.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivot_row.contains_key(c)).collect()
    }
}

/// A linear subspace given by a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rule: PivotRule,
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && if self.rule == other.rule {
                self.basis == other.basis
            } else {
                self.dim() == other.dim() && self.basis.iter().all(|v| other.contains(v))
            }
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Self::zero_with(ambient, PivotRule::Lowest)
    }

    pub fn zero_with(ambient: usize, rule: PivotRule) -> Self {
        Subspace {
            ambient,
            rule,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(SparseVec::unit), PivotRule::Lowest)
    }

    pub fn span(
        ambient: usize,
        vectors: impl IntoIterator<Item = SparseVec<F>>,
        rule: PivotRule,
    ) -> Self {
        let mut e = Echelon::new(ambient, rule);
        for v in vectors {
            e.insert(v);
        }
        Self::from_echelon(&e)
    }

    pub fn from_echelon(e: &Echelon<F>) -> Self {
        let basis = e.reduced_basis();
        let pivots = basis
            .iter()
            .map(|v| e.rule.pivot_of(v).expect("nonzero basis vector"))
            .collect();
        Subspace {
            ambient: e.dim,
            rule: e.rule,
            basis,
            pivots,
        }
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.ambient, self.rule);
        for v in &self.basis {
            e.insert(v.clone());
        }
        e
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rule(&self) -> PivotRule {
        self.rule
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` modulo the subspace.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        // The basis is fully reduced, so one pass over pivots suffices.
        let mut out = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out.get(p);
            if !c.is_zero() {
                out = out.add_scaled(b, &c.neg());
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of a member on the echelon basis.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut rebuilt = SparseVec::zero();
        for (b, c) in self.basis.iter().zip(&coords) {
            rebuilt = rebuilt.add_scaled(b, c);
        }
        (rebuilt == *v).then_some(coords)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Self {
        Self::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
            self.rule,
        )
    }

    /// Intersection via the kernel of `[B_self; -B_other]`.
    pub fn intersection(&self, other: &Subspace<F>) -> Self {
        let mut e = Echelon::new(self.ambient, PivotRule::Lowest);
        for v in &self.basis {
            e.insert(v.clone());
        }
        for v in &other.basis {
            e.insert(v.clone());
        }
        let k = self.basis.len();
        let vectors = e.dependencies().iter().map(|dep| {
            let mut acc = SparseVec::zero();
            for (i, c) in dep.iter() {
                if i < k {
                    acc = acc.add_scaled(&self.basis[i], c);
                }
            }
            acc
        });
        Self::span(self.ambient, vectors.collect::<Vec<_>>(), self.rule)
    }

    /// A complement of `sub` inside `self` spanned by block-homogeneous
    /// vectors, where `blocks[i]` labels coordinate `i`.
    ///
    /// The complement is deterministic: container basis vectors are reduced
    /// modulo `sub` in echelon order and kept when independent.
    pub fn complement_within(&self, sub: &Subspace<F>, blocks: &[usize]) -> Result<Self> {
        if !self.contains_subspace(sub) {
            return Err(Error::MembershipViolation);
        }
        if blocks.len() != self.ambient {
            return Err(Error::Dimension("block labels do not cover the ambient space".into()));
        }
        let homogeneous = |v: &SparseVec<F>| {
            let mut it = v.indices().map(|i| blocks[i]);
            match it.next() {
                None => true,
                Some(b) => it.all(|x| x == b),
            }
        };
        if !sub.basis.iter().all(homogeneous) || !self.basis.iter().all(homogeneous) {
            return Err(Error::NotHomogeneous(
                "subspace is not spanned by block-homogeneous vectors".into(),
            ));
        }
        let mut e = sub.echelon();
        let mut picked = Vec::new();
        for v in &self.basis {
            let r = e.reduce(v);
            if !r.is_zero() {
                debug_assert!(homogeneous(&r));
                e.insert(r.clone());
                picked.push(r);
            }
        }
        Ok(Self::span(self.ambient, picked, self.rule))
    }
}

/// Reduced row echelon form (leftmost pivots) and pivot columns.
pub fn rref<F: Field>(m: &SparseMatrix<F>) -> (SparseMatrix<F>, Vec<usize>) {
    let mut e = Echelon::new(m.ncols(), PivotRule::Lowest);
    for r in m.rows() {
        e.insert(r.clone());
    }
    let mut rows = e.reduced_basis();
    let pivots: Vec<usize> = rows.iter().filter_map(|r| r.min_index()).collect();
    rows.resize(m.nrows(), SparseVec::zero());
    (SparseMatrix::from_rows(m.ncols(), rows), pivots)
}

/// Right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &SparseMatrix<F>) -> Subspace<F> {
    let (r, pivots) = rref(m);
    let n = m.ncols();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut pairs = vec![(free, F::one())];
        for (k, &p) in pivots.iter().enumerate() {
            let c = r.get(k, free);
            if !c.is_zero() {
                pairs.push((p, c.neg()));
            }
        }
        vectors.push(SparseVec::from_pairs(pairs));
    }
    Subspace::span(n, vectors, PivotRule::Lowest)
}

/// Left kernel `{x : x m = 0}`, i.e. the kernel of the map stored in `m`.
pub fn left_kernel<F: Field>(m: &SparseMatrix<F>) -> Subspace<F> {
    let mut e = Echelon::new(m.ncols(), PivotRule::Lowest);
    for r in m.rows() {
        e.insert(r.clone());
    }
    Subspace::span(m.nrows(), e.dependencies().to_vec(), PivotRule::Lowest)
}

/// Solutions of `constraints * x = rhs`: one particular solution plus the
/// kernel, or `None` when the system is inconsistent.
pub fn solve_affine<F: Field>(
    constraints: &SparseMatrix<F>,
    rhs: &SparseVec<F>,
) -> Option<(SparseVec<F>, Subspace<F>)> {
    let n = constraints.ncols();
    // Augment with the right-hand side in column n.
    let augmented: Vec<SparseVec<F>> = constraints
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| r.add(&SparseVec::single(n, rhs.get(i))))
        .collect();
    let aug = SparseMatrix::from_rows(n + 1, augmented);
    let (r, pivots) = rref(&aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut particular = Vec::new();
    for (k, &p) in pivots.iter().enumerate() {
        particular.push((p, r.get(k, n)));
    }
    Some((SparseVec::from_pairs(particular), kernel(constraints)))
}

/// Solves `x * map = b` for maps stored row-per-source-basis.
pub struct LeftSolver<F> {
    echelon: Echelon<F>,
    sources: usize,
}

impl<F: Field> LeftSolver<F> {
    pub fn new(map: &SparseMatrix<F>) -> Self {
        Self::from_rows(map.ncols(), map.rows().iter().cloned())
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut echelon = Echelon::new(ncols, PivotRule::Lowest);
        let mut sources = 0;
        for r in rows {
            echelon.insert(r);
            sources += 1;
        }
        LeftSolver { echelon, sources }
    }

    pub fn solve(&self, b: &SparseVec<F>) -> Option<SparseVec<F>> {
        self.echelon.express(b)
    }

    pub fn kernel_dim(&self) -> usize {
        self.sources - self.echelon.rank()
    }

    pub fn kernel(&self) -> &[SparseVec<F>] {
        self.echelon.dependencies()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type M = SparseMatrix<Rational>;

    fn v(xs: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&xs.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_zero_matrix() {
        let m = M::from_i64(&[&[0, 0], &[0, 0]]);
        let (r, p) = rref(&m);
        assert_eq!(r, m);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_identity() {
        let m = M::identity(2);
        let (r, p) = rref(&m);
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&M::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, M::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&M::identity(2)).dim(), 0);
        assert_eq!(kernel(&M::zero(3, 3)).dim(), 3);
        let k = kernel(&M::from_i64(&[&[1, 2]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(&[-2, 1])));
    }

    #[test]
    fn solve_affine_examples() {
        let (x, k) = solve_affine(&M::identity(2), &v(&[0, 0])).unwrap();
        assert!(x.is_zero());
        assert_eq!(k.dim(), 0);

        assert!(solve_affine(&M::from_i64(&[&[0]]), &v(&[1])).is_none());

        let (x, k) = solve_affine(&M::from_i64(&[&[1, 1]]), &v(&[2])).unwrap();
        assert_eq!(x, v(&[2, 0]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(&[1, -1])));
    }

    #[test]
    fn complement_examples() {
        let e1 = v(&[1, 0]);
        let plane = Subspace::<Rational>::full(2);
        let line = Subspace::span(2, [e1.clone()], PivotRule::Lowest);
        let c = plane.complement_within(&line, &[0, 0]).unwrap();
        assert_eq!(c, Subspace::span(2, [v(&[0, 1])], PivotRule::Lowest));

        let c = plane.complement_within(&plane, &[0, 0]).unwrap();
        assert_eq!(c.dim(), 0);

        let c = plane.complement_within(&line, &[0, 1]).unwrap();
        assert_eq!(c, Subspace::span(2, [v(&[0, 1])], PivotRule::Lowest));

        let diag = Subspace::span(2, [v(&[1, 1])], PivotRule::Lowest);
        assert!(matches!(
            plane.complement_within(&diag, &[0, 1]),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(
            line.complement_within(&plane, &[0, 0]),
            Err(Error::MembershipViolation)
        ));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])], PivotRule::Lowest);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])], PivotRule::Lowest);
        assert_eq!(a.sum(&b).dim(), 3);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(3, [v(&[0, 1, 0])], PivotRule::Lowest));
    }

    #[test]
    fn left_solver_tracks_combinations() {
        let m = M::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        let s = LeftSolver::new(&m);
        assert_eq!(s.kernel_dim(), 1);
        let x = s.solve(&v(&[2, 3, 5])).unwrap();
        assert_eq!(m.apply(&x), v(&[2, 3, 5]));
        assert!(s.solve(&v(&[1, 0, 0])).is_none());
        for k in s.kernel() {
            assert!(m.apply(k).is_zero());
        }
    }

    #[test]
    fn highest_rule_reduces_leading_terms() {
        let mut e = Echelon::<Rational>::new(3, PivotRule::Highest);
        e.insert(v(&[1, 0, 1]));
        e.insert(v(&[0, 1, 1]));
        assert_eq!(e.pivots().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(e.non_pivots(), vec![0]);
        assert_eq!(e.reduce(&v(&[0, 0, 1])), v(&[-1, 0, 0]));
        let s = Subspace::from_echelon(&e);
        assert_eq!(s.reduce(&v(&[0, 1, 0])), v(&[1, 0, 0]));
    }
}
