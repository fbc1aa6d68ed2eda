//! Hilbert series of FK(n) by row reduction over raw free words modulo a
//! prime, independent of the library.

use std::collections::BTreeMap;

/// Row echelon form over `F_p` with rows stored sparsely; only the
/// leading entry is eliminated, which is enough for the rank.
struct Echelon {
    p: i64,
    pivots: BTreeMap<usize, BTreeMap<usize, i64>>,
}

impl Echelon {
    fn new(p: i64) -> Self {
        Echelon { p, pivots: BTreeMap::new() }
    }

    fn inv(&self, a: i64) -> i64 {
        let (mut r, mut e, mut b) = (1i64, self.p - 2, a.rem_euclid(self.p));
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    fn insert(&mut self, mut row: BTreeMap<usize, i64>) {
        row.retain(|_, c| {
            *c = c.rem_euclid(self.p);
            *c != 0
        });
        while let Some((&lead, &c)) = row.iter().next() {
            let Some(piv) = self.pivots.get(&lead) else {
                let s = self.inv(c);
                for v in row.values_mut() {
                    *v = *v * s % self.p;
                }
                self.pivots.insert(lead, row);
                return;
            };
            for (&k, &v) in piv {
                let e = row.entry(k).or_insert(0);
                *e = (*e - c * v).rem_euclid(self.p);
                if *e == 0 {
                    row.remove(&k);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Relations of FK(n) over letters `v_ij`, `i < j`, in lexicographic
/// order, as maps from words to integer coefficients.
fn fk_relations(n: usize) -> (usize, Vec<Vec<(Vec<usize>, i64)>>) {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let v = |a: usize, b: usize| -> (usize, i64) {
        let (key, s) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
        (pairs.iter().position(|&q| q == key).unwrap(), s)
    };
    let mono = |x: (usize, i64), y: (usize, i64)| (vec![x.0, y.0], x.1 * y.1);
    let mut rels = Vec::new();
    for &(i, j) in &pairs {
        rels.push(vec![mono(v(i, j), v(i, j))]);
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i != j && j != k && i != k {
                    rels.push(vec![
                        mono(v(i, j), v(j, k)),
                        mono(v(j, k), v(k, i)),
                        mono(v(k, i), v(i, j)),
                    ]);
                }
            }
        }
    }
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            if [k, l].iter().all(|x| *x != i && *x != j) {
                let (a, b) = (v(i, j), v(k, l));
                rels.push(vec![mono(a, b), (mono(b, a).0, -mono(b, a).1)]);
            }
        }
    }
    (pairs.len(), rels)
}

/// `dim (T(V)/I)_m` for `m <= max`, from the span of all `u r w` inside
/// the raw degree-`m` words.
pub fn dense_hilbert(n: usize, max: usize, p: i64) -> Vec<usize> {
    let (d, rels) = fk_relations(n);
    let encode = |w: &[usize]| w.iter().fold(0usize, |acc, &x| acc * d + x);
    let words = |len: usize| -> Vec<Vec<usize>> {
        (0..d.pow(len as u32))
            .map(|mut k| {
                let mut w = vec![0; len];
                for slot in w.iter_mut().rev() {
                    *slot = k % d;
                    k /= d;
                }
                w
            })
            .collect()
    };
    (0..=max)
        .map(|m| {
            let mut ech = Echelon::new(p);
            if m >= 2 {
                for left in 0..=m - 2 {
                    for u in words(left) {
                        for w in words(m - 2 - left) {
                            for r in &rels {
                                let mut row = BTreeMap::new();
                                for (mono, c) in r {
                                    let full: Vec<usize> = u.iter().chain(mono).chain(&w).copied().collect();
                                    *row.entry(encode(&full)).or_insert(0) += c;
                                }
                                ech.insert(row);
                            }
                        }
                    }
                }
            }
            d.pow(m as u32) - ech.rank()
        })
        .collect()
}

