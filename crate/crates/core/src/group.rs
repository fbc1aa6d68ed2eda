//! Finite groups given by a full multiplication table.
//!
//! Permutations compose right-to-left: `(s * t)(i) = s(t(i))`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Default upper bound on the order of a generated group.
pub const DEFAULT_GROUP_LIMIT: usize = 10_000;

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidGroup(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Builds from 1-based cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree {
                    return Err(Error::InvalidGroup(format!(
                        "point {a} outside 1..={degree}"
                    )));
                }
                if touched[a - 1] {
                    return Err(Error::InvalidGroup(format!("point {a} repeated in cycles")));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > degree {
                    return Err(Error::InvalidGroup(format!(
                        "point {b} outside 1..={degree}"
                    )));
                }
                img[a - 1] = (b - 1) as u32;
            }
        }
        Ok(Perm(img))
    }

    /// Parses cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidGroup(format!("bad cycle notation `{s}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidGroup(format!("unclosed cycle in `{s}`")))?;
            let body = &open[..close];
            let pts: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidGroup(format!("bad point `{t}` in `{s}`")))
                })
                .collect::<Result<_>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        Perm(rhs.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.0[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
struct GroupData {
    order: usize,
    identity: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    perms: Option<PermPresentation>,
}

#[derive(Debug)]
struct PermPresentation {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// A finite group; cheap to clone and compared by identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for FiniteGroup {}

/// Element of a [`FiniteGroup`], referenced by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    owner: FiniteGroup,
    index: usize,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn owner(&self) -> &FiniteGroup {
        &self.owner
    }
}

impl FiniteGroup {
    /// Enumerates the closure of `generators` breadth-first. Elements are
    /// indexed in discovery order: the identity first, then products
    /// `g * x` for each queued `x` and each generator `g` in declared order.
    pub fn from_permutation_generators(degree: usize, generators: &[Perm]) -> Result<Self> {
        Self::from_permutation_generators_bounded(degree, generators, DEFAULT_GROUP_LIMIT)
    }

    pub fn from_permutation_generators_bounded(
        degree: usize,
        generators: &[Perm],
        limit: usize,
    ) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {g} does not act on {degree} points"
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::from([(Perm::identity(degree), 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = g.compose(&x);
                if !index.contains_key(&y) {
                    if elements.len() == limit {
                        return Err(Error::GroupTooLarge { limit });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&a.compose(b)] as u32;
            }
        }
        let inverse = elements.iter().map(|a| index[&a.inverse()] as u32).collect();
        Ok(FiniteGroup(Arc::new(GroupData {
            order: n,
            identity: 0,
            table,
            inverse,
            perms: Some(PermPresentation {
                degree,
                generators: generators.to_vec(),
                elements,
                index,
            }),
        })))
    }

    /// Builds from a multiplication table `table[i][j] = i * j`, checking
    /// the group axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over its index set".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv as u32);
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let g = FiniteGroup(Arc::new(GroupData {
            order: n,
            identity,
            table: flat,
            inverse,
            perms: None,
        }));
        g.check_laws()?;
        Ok(g)
    }

    /// Verifies associativity, identity, inverse and Latin-square laws.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(Error::InvalidGroup(format!("row/column {a} is not a permutation")));
            }
            if self.mul(a, self.inv(a)) != self.identity() || self.mul(self.identity(), a) != a {
                return Err(Error::InvalidGroup(format!("unit/inverse law fails at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::from_permutation_generators(1, &[]).expect("trivial group")
    }

    /// The symmetric group on `n` points generated by `(1 2)` and `(1 2 .. n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let n = n.max(1);
        if n == 1 {
            return Self::from_permutation_generators(1, &[]);
        }
        let t = Perm::from_cycles(n, &[vec![1, 2]])?;
        let c = Perm::from_cycles(n, &[(1..=n).collect()])?;
        Self::from_permutation_generators(n, &[t, c])
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a] as usize
    }

    /// Index of `g h g^-1`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order(), "element index out of range");
        GroupElement {
            owner: self.clone(),
            index,
        }
    }

    /// `g h g^-1` for elements of the same group.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        if g.owner != *self || h.owner != *self {
            return Err(Error::OwnerMismatch);
        }
        Ok(self.element(self.conj(g.index, h.index)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conj(g, a)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        self.0.perms.as_ref().map(|p| p.degree)
    }

    pub fn generators(&self) -> Option<&[Perm]> {
        self.0.perms.as_ref().map(|p| p.generators.as_slice())
    }

    pub fn perm(&self, index: usize) -> Option<&Perm> {
        self.0.perms.as_ref().map(|p| &p.elements[index])
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.0.perms.as_ref().and_then(|pp| pp.index.get(p).copied())
    }

    /// Indices of the declared generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        match &self.0.perms {
            Some(p) => p.generators.iter().map(|g| p.index[g]).collect(),
            None => (0..self.order()).collect(),
        }
    }

    /// Cycle notation for permutation groups, `g<index>` otherwise.
    pub fn label(&self, index: usize) -> String {
        match self.perm(index) {
            Some(p) => p.to_string(),
            None => format!("g{index}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn closure_orders() {
        let s3 = FiniteGroup::from_permutation_generators(3, &[cyc(3, "(1 2)"), cyc(3, "(1 2 3)")])
            .unwrap();
        assert_eq!(s3.order(), 6);
        let triv = FiniteGroup::from_permutation_generators(1, &[]).unwrap();
        assert_eq!(triv.order(), 1);
        let s4 =
            FiniteGroup::from_permutation_generators(4, &[cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")])
                .unwrap();
        assert_eq!(s4.order(), 24);
        s4.check_laws().unwrap();
    }

    #[test]
    fn closure_limit() {
        let r = FiniteGroup::from_permutation_generators_bounded(
            5,
            &[cyc(5, "(1 2)"), cyc(5, "(1 2 3 4 5)")],
            100,
        );
        assert!(matches!(r, Err(Error::GroupTooLarge { limit: 100 })));
    }

    #[test]
    fn conjugation_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let g = s3.element(s3.index_of(&cyc(3, "(1 2)")).unwrap());
        let h = s3.element(s3.index_of(&cyc(3, "(1 3)")).unwrap());
        let c = s3.conjugate(&g, &h).unwrap();
        assert_eq!(s3.perm(c.index()).unwrap(), &cyc(3, "(2 3)"));
        let e = s3.element(s3.identity());
        assert_eq!(s3.conjugate(&e, &h).unwrap(), h);
        assert_eq!(s3.conjugate(&g, &e).unwrap(), e);
    }

    #[test]
    fn owner_mismatch() {
        let a = FiniteGroup::symmetric(3).unwrap();
        let b = FiniteGroup::symmetric(3).unwrap();
        let r = a.conjugate(&a.element(1), &b.element(1));
        assert!(matches!(r, Err(Error::OwnerMismatch)));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = cyc(4, "(1 3)(2 4)");
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(cyc(4, "()").to_string(), "()");
        assert_eq!(cyc(4, "(2 3 4)").to_string(), "(2 3 4)");
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
    }

    #[test]
    fn conjugacy_classes_of_s4() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = s4.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn from_table_cyclic() {
        let t: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let g = FiniteGroup::from_table(t).unwrap();
        assert_eq!(g.element_order(1), 4);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(bad).is_err());
    }
}
