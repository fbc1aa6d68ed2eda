//! Words and finite linear combinations of words in the tensor algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::field::Field;
use crate::yd::YdModule;

/// A monomial of the tensor algebra; the empty word is the unit.
///
/// Ordered degree-lexicographically with letters compared by basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(v: usize) -> Self {
        Word(vec![v as u32])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Ordered product of the letters' G-degrees.
    pub fn g_degree<F: Field>(&self, module: &YdModule<F>) -> usize {
        let g = module.group();
        self.letters()
            .fold(g.identity(), |acc, l| g.mul(acc, module.degree(l)))
    }

    /// Letters joined by `*`, or `1` for the unit.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters()
            .map(|l| labels[l].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the tensor algebra `T(V)`: a finite combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for FreeElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> FreeElement<F> {
    pub fn zero() -> Self {
        FreeElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(Word::unit())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, F::one())
    }

    pub fn letter(v: usize) -> Self {
        Self::word(Word::letter(v))
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    /// Concatenation product in `T(V)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.mul(y));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// The common word length, if every term has the same length.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    /// The common G-degree, if every term has the same one.
    pub fn g_degree(&self, module: &YdModule<F>) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.g_degree(module));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// The part of length `n`.
    pub fn component(&self, n: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Letterwise action of the group element `g`.
    pub fn act(&self, module: &YdModule<F>, g: usize) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut partial = FreeElement::term(Word::unit(), c.clone());
            for l in w.letters() {
                let img = module.act(g, &crate::linalg::SparseVec::unit(l));
                let mut next = Self::zero();
                for (pw, pc) in &partial.terms {
                    for (u, uc) in img.iter() {
                        next.add_term(pw.concat(&Word::letter(u)), pc.mul(uc));
                    }
                }
                partial = next;
            }
            out = out.add(&partial);
        }
        out
    }

    /// Renders in the document syntax, e.g. `v12*v23 - 2*v13`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let word = w.render(labels);
            if mag == "1" {
                s.push_str(&word);
            } else if w.is_empty() {
                s.push_str(&mag);
            } else {
                let _ = write!(s, "{mag}*{word}");
            }
        }
        s
    }
}

/// Element of `T(V) (x) T(V)` keyed by word pairs.
pub type FreeTensor<F> = BTreeMap<(Word, Word), F>;

fn add_tensor_term<F: Field>(t: &mut FreeTensor<F>, key: (Word, Word), c: F) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

/// Coproduct in the free braided Hopf algebra `T(V)`, computed from
/// `Delta(v) = 1 (x) v + v (x) 1` and the braided product
/// `(a (x) b)(c (x) d) = a (b_(-1) . c) (x) b_(0) d`.
pub fn free_coproduct<F: Field>(module: &YdModule<F>, x: &FreeElement<F>) -> FreeTensor<F> {
    let mut out = FreeTensor::new();
    for (w, c) in x.terms() {
        for (k, v) in word_coproduct(module, &w.0) {
            add_tensor_term(&mut out, k, v.mul(c));
        }
    }
    out
}

fn word_coproduct<F: Field>(module: &YdModule<F>, letters: &[u32]) -> FreeTensor<F> {
    let mut out = FreeTensor::new();
    let Some((&first, rest)) = letters.split_first() else {
        out.insert((Word::unit(), Word::unit()), F::one());
        return out;
    };
    let v = Word::letter(first as usize);
    let g = module.degree(first as usize);
    for ((a, b), c) in word_coproduct(module, rest) {
        // (1 (x) v)(a (x) b) = (g . a) (x) v b
        let ga = FreeElement::word(a.clone()).act(module, g);
        for (aw, ac) in ga.terms() {
            add_tensor_term(&mut out, (aw.clone(), v.concat(&b)), ac.mul(&c));
        }
        // (v (x) 1)(a (x) b) = v a (x) b
        add_tensor_term(&mut out, (v.concat(&a), b), c);
    }
    out
}

/// Whether `Delta(r) = 1 (x) r + r (x) 1` in `T(V)`.
pub fn is_primitive<F: Field>(module: &YdModule<F>, r: &FreeElement<F>) -> bool {
    let mut expected = FreeTensor::new();
    for (w, c) in r.terms() {
        add_tensor_term(&mut expected, (Word::unit(), w.clone()), c.clone());
        add_tensor_term(&mut expected, (w.clone(), Word::unit()), c.clone());
    }
    free_coproduct(module, r) == expected
}
