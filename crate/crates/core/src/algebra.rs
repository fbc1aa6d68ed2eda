//! Graded quotients `A = T(V)/I` of the free braided Hopf algebra, built
//! degree by degree up to a truncation bound.
//!
//! Degree `n` is computed inside `V (x) A_{n-1}`: every free word `v u`
//! reduces to `v (x) reduce(u)`, so `A_n` is the quotient of that space by
//! the images of `r w` for relations `r` and normal words `w`. Pivots are
//! taken at the largest word, so the surviving (normal) words are the
//! deg-lex smallest ones and every normal word of degree `n` is `v w` with
//! `w` normal of degree `n - 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::field::Field;
use crate::linalg::{Accumulator, Echelon, PivotRule, SparseMatrix, SparseVec, Subspace};
use crate::tensor::Layout2;
use crate::word::{is_primitive, FreeElement, Word};
use crate::yd::YdModule;
use crate::{Error, Result};

/// How the coideal property of the defining ideal was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoidealCheck {
    /// Every relation is primitive in `T(V)`.
    PrimitiveRelations,
    /// The coproduct of every relation was projected to `A (x) A` and vanished.
    Verified,
    /// No relations at all.
    Free,
}

/// A homogeneous element of `A`, given by coordinates on the normal words
/// of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous<F> {
    pub degree: usize,
    pub coords: SparseVec<F>,
}

impl<F: Field> Homogeneous<F> {
    pub fn new(degree: usize, coords: SparseVec<F>) -> Self {
        Homogeneous { degree, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

#[derive(Debug)]
pub struct GradedAlgebra<F> {
    module: YdModule<F>,
    relations: Vec<FreeElement<F>>,
    max_degree: usize,
    words: Vec<Vec<Word>>,
    word_index: Vec<HashMap<Word, usize>>,
    gdeg: Vec<Vec<usize>>,
    /// `split[n][k] = (v, w)` with normal word `k` equal to `v` followed by
    /// normal word `w` of degree `n - 1`.
    split: Vec<Vec<(usize, usize)>>,
    /// `left[n]`: `V (x) A_{n-1} -> A_n`, row `v * dim_{n-1} + w`.
    left: Vec<SparseMatrix<F>>,
    /// `rho[n][g]`: action of `g` on `A_n`.
    rho: Vec<Vec<SparseMatrix<F>>>,
    coproduct: Vec<SparseMatrix<F>>,
    antipode: Vec<SparseMatrix<F>>,
    mult: Vec<Vec<OnceLock<SparseMatrix<F>>>>,
    coideal_check: CoidealCheck,
}

impl<F: Field> GradedAlgebra<F> {
    /// The tensor algebra `T(V)` truncated at `max_degree`.
    pub fn free(module: YdModule<F>, max_degree: usize) -> Result<Self> {
        Self::build_quotient(module, Vec::new(), max_degree)
    }

    /// Builds `T(V)/I` where `I` is the two-sided ideal generated by
    /// `relations`, checking homogeneity, G-stability and the coideal
    /// property along the way.
    pub fn build_quotient(
        module: YdModule<F>,
        relations: Vec<FreeElement<F>>,
        max_degree: usize,
    ) -> Result<Self> {
        let d = module.dim();
        for r in &relations {
            let text = r.render(module.labels());
            if r.terms().any(|(w, _)| w.letters().any(|l| l >= d)) {
                return Err(Error::Dimension(format!("relation {text} uses an unknown letter")));
            }
            match r.degree() {
                Some(0) => {
                    return Err(Error::NotHomogeneous(format!(
                        "relation {text} has degree 0; the quotient would not be connected"
                    )))
                }
                Some(_) => {}
                None if r.is_zero() => {}
                None => {
                    return Err(Error::NotHomogeneous(format!(
                        "relation {text} mixes word lengths"
                    )))
                }
            }
            if !r.is_zero() && r.g_degree(&module).is_none() {
                return Err(Error::NotHSubcomodule { relation: text });
            }
        }
        let relations: Vec<FreeElement<F>> =
            relations.into_iter().filter(|r| !r.is_zero()).collect();
        let order = module.group().order();

        let mut alg = GradedAlgebra {
            module,
            relations,
            max_degree,
            words: vec![vec![Word::unit()]],
            word_index: vec![HashMap::from([(Word::unit(), 0)])],
            gdeg: Vec::new(),
            split: vec![vec![(usize::MAX, usize::MAX)]],
            left: vec![SparseMatrix::zero(0, 1)],
            rho: vec![vec![SparseMatrix::identity(1); order]],
            coproduct: Vec::new(),
            antipode: Vec::new(),
            mult: Vec::new(),
            coideal_check: CoidealCheck::Free,
        };
        alg.gdeg.push(vec![alg.module.group().identity()]);
        for n in 1..=max_degree {
            alg.build_degree(n);
            alg.check_g_stability(n)?;
        }
        alg.mult = (0..=max_degree)
            .map(|i| (0..=max_degree - i).map(|_| OnceLock::new()).collect())
            .collect();
        alg.coideal_check = alg.check_ideal_is_coideal()?;
        for n in 0..=max_degree {
            let delta = alg.compute_coproduct(n);
            alg.coproduct.push(delta);
        }
        for n in 0..=max_degree {
            let s = alg.compute_antipode(n);
            alg.antipode.push(s);
        }
        Ok(alg)
    }

    fn build_degree(&mut self, n: usize) {
        let d = self.module.dim();
        let prev = self.words[n - 1].len();
        let cols = d * prev;
        let mut ech = Echelon::new(cols, PivotRule::Highest);
        for r in &self.relations {
            let m = r.max_len();
            if m > n {
                continue;
            }
            for w in 0..self.words[n - m].len() {
                ech.insert(self.relation_image(r, m, n, w));
            }
        }
        let basis = Subspace::from_echelon(&ech);
        let non_pivots = ech.non_pivots();
        let mut col_to_normal = vec![usize::MAX; cols];
        for (k, &c) in non_pivots.iter().enumerate() {
            col_to_normal[c] = k;
        }
        let mut rows: Vec<SparseVec<F>> = vec![SparseVec::zero(); cols];
        for &c in &non_pivots {
            rows[c] = SparseVec::unit(col_to_normal[c]);
        }
        for (b, &p) in basis.basis().iter().zip(basis.pivots()) {
            // e_p = b - (b - e_p) reduces to -(b - e_p).
            rows[p] = SparseVec::from_pairs(
                b.iter()
                    .filter(|(j, _)| *j != p)
                    .map(|(j, c)| (col_to_normal[j], c.neg())),
            );
        }
        let left = SparseMatrix::from_rows(non_pivots.len(), rows);

        let group = self.module.group().clone();
        let mut words = Vec::with_capacity(non_pivots.len());
        let mut split = Vec::with_capacity(non_pivots.len());
        let mut gdeg = Vec::with_capacity(non_pivots.len());
        let mut index = HashMap::new();
        for &c in &non_pivots {
            let (v, w) = (c / prev, c % prev);
            let word = Word::letter(v).concat(&self.words[n - 1][w]);
            index.insert(word.clone(), words.len());
            words.push(word);
            split.push((v, w));
            gdeg.push(group.mul(self.module.degree(v), self.gdeg[n - 1][w]));
        }
        self.words.push(words);
        self.word_index.push(index);
        self.split.push(split);
        self.gdeg.push(gdeg);
        self.left.push(left);

        // g . (v w) = (g . v)(g . w)
        let dim_n = self.words[n].len();
        let rho_n: Vec<SparseMatrix<F>> = (0..group.order())
            .map(|g| {
                let rows = (0..dim_n)
                    .map(|k| {
                        let (v, w) = self.split[n][k];
                        let gv = self.module.act(g, &SparseVec::unit(v));
                        let gw = self.rho[n - 1][g].row(w);
                        self.left[n].apply(&outer(&gv, gw, prev))
                    })
                    .collect();
                SparseMatrix::from_rows(dim_n, rows)
            })
            .collect();
        self.rho.push(rho_n);
    }

    /// Image of `r w` in `V (x) A_{n-1}` for a relation of degree `m` and a
    /// normal word `w` of degree `n - m`.
    fn relation_image(&self, r: &FreeElement<F>, m: usize, n: usize, w: usize) -> SparseVec<F> {
        let prev = self.words[n - 1].len();
        let mut acc = Accumulator::new();
        for (word, c) in r.terms() {
            let letters: Vec<usize> = word.letters().collect();
            let mut tail = SparseVec::unit(w);
            for (step, &l) in letters[1..].iter().rev().enumerate() {
                tail = self.left_mul_letter(l, n - m + step, &tail);
            }
            let first = letters[0];
            for (j, x) in tail.iter() {
                acc.add(first * prev + j, &x.mul(c));
            }
        }
        acc.finish()
    }

    /// `v * x` for `x` in `A_k`.
    fn left_mul_letter(&self, v: usize, k: usize, x: &SparseVec<F>) -> SparseVec<F> {
        let dim_k = self.words[k].len();
        let mut acc = Accumulator::new();
        for (j, c) in x.iter() {
            acc.add_vec(self.left[k + 1].row(v * dim_k + j), c);
        }
        acc.finish()
    }

    fn check_g_stability(&self, n: usize) -> Result<()> {
        for r in &self.relations {
            if r.max_len() != n {
                continue;
            }
            for &s in &self.module.group().generator_indices() {
                let image = r.act(&self.module, s);
                if !self.reduce_free(&image)?.is_zero() {
                    return Err(Error::NotGStable {
                        relation: r.render(self.module.labels()),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_ideal_is_coideal(&self) -> Result<CoidealCheck> {
        if self.relations.is_empty() {
            return Ok(CoidealCheck::Free);
        }
        if self.relations.iter().all(|r| is_primitive(&self.module, r)) {
            return Ok(CoidealCheck::PrimitiveRelations);
        }
        for r in &self.relations {
            let m = r.max_len();
            if m > self.max_degree {
                continue;
            }
            let mut acc = Accumulator::new();
            for (w, c) in r.terms() {
                acc.add_vec(&self.word_coproduct(&w.0), c);
            }
            if !acc.finish().is_zero() {
                return Err(Error::NotACoideal {
                    relation: r.render(self.module.labels()),
                    degree: m,
                });
            }
        }
        Ok(CoidealCheck::Verified)
    }

    /// `(pi (x) pi) Delta(word)` for an arbitrary free word, recursively.
    fn word_coproduct(&self, letters: &[u32]) -> SparseVec<F> {
        match letters.split_first() {
            None => SparseVec::unit(0),
            Some((&v, rest)) => {
                let inner = self.word_coproduct(rest);
                self.left_mul_coproduct(v as usize, rest.len(), &inner)
            }
        }
    }

    /// `(1 (x) v + v (x) 1) * t` for `t` in `(A (x) A)_k`.
    fn left_mul_coproduct(&self, v: usize, k: usize, t: &SparseVec<F>) -> SparseVec<F> {
        let lay_k = self.layout2(k);
        let lay = self.layout2(k + 1);
        let g = self.module.degree(v);
        let mut acc = Accumulator::new();
        for (idx, c) in t.iter() {
            let (i, p, q) = lay_k.decode(idx);
            let j = k - i;
            // (1 (x) v)(p (x) q) = (g . p) (x) v q
            let gp = self.rho[i][g].row(p);
            let vq = self.left[j + 1].row(v * self.dim(j) + q);
            for (a, x) in gp.iter() {
                for (b, y) in vq.iter() {
                    acc.add(lay.index(i, a, b), &x.mul(y).mul(c));
                }
            }
            // (v (x) 1)(p (x) q) = v p (x) q
            let vp = self.left[i + 1].row(v * self.dim(i) + p);
            for (a, x) in vp.iter() {
                acc.add(lay.index(i + 1, a, q), &x.mul(c));
            }
        }
        acc.finish()
    }

    fn compute_coproduct(&self, n: usize) -> SparseMatrix<F> {
        let lay = self.layout2(n);
        if n == 0 {
            return SparseMatrix::from_rows(lay.dim(), vec![SparseVec::unit(0)]);
        }
        let rows = (0..self.dim(n))
            .map(|k| {
                let (v, w) = self.split[n][k];
                self.left_mul_coproduct(v, n - 1, self.coproduct[n - 1].row(w))
            })
            .collect();
        SparseMatrix::from_rows(lay.dim(), rows)
    }

    /// `S(v w) = -S(g_v . w) v`.
    fn compute_antipode(&self, n: usize) -> SparseMatrix<F> {
        if n == 0 {
            return SparseMatrix::identity(1);
        }
        let rows = (0..self.dim(n))
            .map(|k| {
                let (v, w) = self.split[n][k];
                let gw = self.rho[n - 1][self.module.degree(v)].row(w);
                let s = self.antipode[n - 1].apply(gw);
                let v1 = self.left[1].row(v);
                self.multiply_vec(n - 1, &s, 1, v1).neg()
            })
            .collect();
        SparseMatrix::from_rows(self.dim(n), rows)
    }

    pub fn module(&self) -> &YdModule<F> {
        &self.module
    }

    pub fn relations(&self) -> &[FreeElement<F>] {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coideal_check(&self) -> CoidealCheck {
        self.coideal_check
    }

    /// `dim A_n`; zero beyond the truncation.
    pub fn dim(&self, n: usize) -> usize {
        self.words.get(n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    /// Graded dimensions `dim A_0, .., dim A_max`.
    pub fn hilbert(&self) -> Vec<usize> {
        self.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn normal_words(&self, n: usize) -> &[Word] {
        &self.words[n]
    }

    pub fn word_position(&self, w: &Word) -> Option<usize> {
        self.word_index.get(w.len())?.get(w).copied()
    }

    /// G-degree of normal word `k` in degree `n`.
    pub fn g_degree(&self, n: usize, k: usize) -> usize {
        self.gdeg[n][k]
    }

    pub fn g_degrees(&self, n: usize) -> &[usize] {
        &self.gdeg[n]
    }

    pub fn action(&self, n: usize, g: usize) -> &SparseMatrix<F> {
        &self.rho[n][g]
    }

    /// `Delta_n: A_n -> (A (x) A)_n` in the layout of [`Self::layout2`].
    pub fn coproduct_matrix(&self, n: usize) -> &SparseMatrix<F> {
        &self.coproduct[n]
    }

    pub fn antipode_matrix(&self, n: usize) -> &SparseMatrix<F> {
        &self.antipode[n]
    }

    pub fn layout2(&self, n: usize) -> Layout2 {
        let dims = self.dims();
        Layout2::new(n, &dims, &dims)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            Err(Error::DegreeOverflow {
                requested: n,
                max: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    /// Multiplication `A_i (x) A_j -> A_{i+j}`, row `p * dim_j + q`.
    pub fn mult_matrix(&self, i: usize, j: usize) -> Result<&SparseMatrix<F>> {
        self.check_degree(i + j)?;
        Ok(self.mult_matrix_unchecked(i, j))
    }

    fn mult_matrix_unchecked(&self, i: usize, j: usize) -> &SparseMatrix<F> {
        self.mult[i][j].get_or_init(|| {
            let dj = self.dim(j);
            let rows = if i == 0 {
                (0..dj).map(SparseVec::unit).collect()
            } else {
                let inner = self.mult_matrix_unchecked(i - 1, j);
                let prev = self.dim(i + j - 1);
                (0..self.dim(i) * dj)
                    .map(|row| {
                        let (p, q) = (row / dj, row % dj);
                        let (v, rest) = self.split[i][p];
                        let x = inner.row(rest * dj + q);
                        self.left[i + j].apply(&x.map_indices(|t| v * prev + t))
                    })
                    .collect()
            };
            SparseMatrix::from_rows(self.dim(i + j), rows)
        })
    }

    /// Product of homogeneous coordinate vectors.
    pub fn multiply_vec(
        &self,
        i: usize,
        a: &SparseVec<F>,
        j: usize,
        b: &SparseVec<F>,
    ) -> SparseVec<F> {
        let m = self.mult_matrix_unchecked(i, j);
        let dj = self.dim(j);
        let mut acc = Accumulator::new();
        for (p, x) in a.iter() {
            for (q, y) in b.iter() {
                acc.add_vec(m.row(p * dj + q), &x.mul(y));
            }
        }
        acc.finish()
    }

    pub fn multiply_hom(&self, a: &Homogeneous<F>, b: &Homogeneous<F>) -> Result<Homogeneous<F>> {
        self.check_degree(a.degree + b.degree)?;
        Ok(Homogeneous::new(
            a.degree + b.degree,
            self.multiply_vec(a.degree, &a.coords, b.degree, &b.coords),
        ))
    }

    /// Product of arbitrary elements, returned on normal words.
    pub fn multiply(&self, a: &FreeElement<F>, b: &FreeElement<F>) -> Result<FreeElement<F>> {
        self.check_degree(a.max_len() + b.max_len())?;
        self.reduce_free(&a.mul(b))
    }

    /// Coordinates of the degree-`n` free word `w` on the normal words.
    pub fn reduce_word(&self, w: &Word) -> Result<SparseVec<F>> {
        self.check_degree(w.len())?;
        let letters: Vec<usize> = w.letters().collect();
        if letters.iter().any(|&l| l >= self.module.dim()) {
            return Err(Error::Dimension(format!("word {w:?} uses an unknown letter")));
        }
        let mut x = SparseVec::unit(0);
        for (k, &l) in letters.iter().rev().enumerate() {
            x = self.left_mul_letter(l, k, &x);
        }
        Ok(x)
    }

    /// Normal form of a free element.
    pub fn reduce_free(&self, x: &FreeElement<F>) -> Result<FreeElement<F>> {
        let mut by_degree: BTreeMap<usize, Accumulator<F>> = BTreeMap::new();
        for (w, c) in x.terms() {
            let v = self.reduce_word(w)?;
            by_degree.entry(w.len()).or_default().add_vec(&v, c);
        }
        let mut out = FreeElement::zero();
        for (n, acc) in by_degree {
            for (k, c) in acc.finish().iter() {
                out.add_term(self.words[n][k].clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Coordinates of a homogeneous free element.
    pub fn to_homogeneous(&self, x: &FreeElement<F>) -> Result<Homogeneous<F>> {
        let n = match x.degree() {
            Some(n) => n,
            None if x.is_zero() => 0,
            None => {
                return Err(Error::NotHomogeneous(format!(
                    "{} mixes degrees",
                    x.render(self.module.labels())
                )))
            }
        };
        let mut acc = Accumulator::new();
        for (w, c) in x.terms() {
            acc.add_vec(&self.reduce_word(w)?, c);
        }
        Ok(Homogeneous::new(n, acc.finish()))
    }

    pub fn to_free(&self, x: &Homogeneous<F>) -> FreeElement<F> {
        FreeElement::from_terms(
            x.coords
                .iter()
                .map(|(k, c)| (self.words[x.degree][k].clone(), c.clone())),
        )
    }

    /// Renders a homogeneous element in the document syntax.
    pub fn render(&self, x: &Homogeneous<F>) -> String {
        self.to_free(x).render(self.module.labels())
    }

    /// `Delta(x)` in the flat layout of degree `x.degree`.
    pub fn coproduct_vec(&self, x: &Homogeneous<F>) -> SparseVec<F> {
        self.coproduct[x.degree].apply(&x.coords)
    }

    /// `Delta(x)` as pairs of normal words.
    pub fn coproduct(&self, x: &FreeElement<F>) -> Result<BTreeMap<(Word, Word), F>> {
        let mut out: BTreeMap<(Word, Word), F> = BTreeMap::new();
        for n in 0..=x.max_len() {
            let part = x.component(n);
            if part.is_zero() {
                continue;
            }
            let h = self.to_homogeneous(&part)?;
            let lay = self.layout2(n);
            for (idx, c) in self.coproduct_vec(&h).iter() {
                let (i, p, q) = lay.decode(idx);
                let key = (self.words[i][p].clone(), self.words[n - i][q].clone());
                let entry = out.entry(key).or_insert_with(F::zero);
                *entry = entry.add(c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn antipode(&self, x: &FreeElement<F>) -> Result<FreeElement<F>> {
        let mut out = FreeElement::zero();
        for n in 0..=x.max_len() {
            let part = x.component(n);
            if part.is_zero() {
                continue;
            }
            let h = self.to_homogeneous(&part)?;
            let s = Homogeneous::new(n, self.antipode[n].apply(&h.coords));
            out = out.add(&self.to_free(&s));
        }
        Ok(out)
    }

    /// Counit on `A_n` coordinates.
    pub fn counit(&self, x: &Homogeneous<F>) -> F {
        if x.degree == 0 {
            x.coords.get(0)
        } else {
            F::zero()
        }
    }

    /// Braided product on `(A (x) A)`: `(a (x) b)(c (x) d) = a (b_(-1) . c) (x) b_(0) d`.
    pub fn braided_product(
        &self,
        m: usize,
        s: &SparseVec<F>,
        n: usize,
        t: &SparseVec<F>,
    ) -> SparseVec<F> {
        let (lm, ln, lo) = (self.layout2(m), self.layout2(n), self.layout2(m + n));
        let mut acc = Accumulator::new();
        for (x, cx) in s.iter() {
            let (i, a, b) = lm.decode(x);
            let gb = self.gdeg[m - i][b];
            for (y, cy) in t.iter() {
                let (k, c, d) = ln.decode(y);
                let gc = self.rho[k][gb].row(c);
                let left = self.multiply_vec(i, &SparseVec::unit(a), k, gc);
                let right = self.multiply_vec(m - i, &SparseVec::unit(b), n - k, &SparseVec::unit(d));
                let coef = cx.mul(cy);
                for (p, u) in left.iter() {
                    for (q, w) in right.iter() {
                        acc.add(lo.index(i + k, p, q), &u.mul(w).mul(&coef));
                    }
                }
            }
        }
        acc.finish()
    }

    /// `(pi (x) pi) Delta(r)` of a free element in the free algebra, i.e. the
    /// test that decides whether `Delta(r)` lies in `I (x) T + T (x) I`.
    pub fn projected_free_coproduct(&self, r: &FreeElement<F>) -> Result<SparseVec<F>> {
        let n = r
            .degree()
            .ok_or_else(|| Error::NotHomogeneous("element mixes degrees".into()))?;
        self.check_degree(n)?;
        let mut acc = Accumulator::new();
        for (w, c) in r.terms() {
            acc.add_vec(&self.word_coproduct(&w.0), c);
        }
        Ok(acc.finish())
    }
}

/// `a (x) b` in `V (x) A_k` style coordinates, index `i * right_dim + j`.
pub(crate) fn outer<F: Field>(a: &SparseVec<F>, b: &SparseVec<F>, right_dim: usize) -> SparseVec<F> {
    let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            pairs.push((i * right_dim + j, x.mul(y)));
        }
    }
    SparseVec::from_pairs(pairs)
}
