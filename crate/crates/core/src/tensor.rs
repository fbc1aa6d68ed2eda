//! Flat indexing of homogeneous components of graded tensor products.
//!
//! The degree-`n` part of `X (x) Y` is `sum_i X_i (x) Y_{n-i}`; blocks are
//! laid out by increasing `i`, and inside a block `x_p (x) y_q` sits at
//! `p * dim Y_{n-i} + q`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout2 {
    n: usize,
    offsets: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    total: usize,
}

impl Layout2 {
    /// `left[i]`, `right[j]` are the graded dimensions; missing entries
    /// count as zero.
    pub fn new(n: usize, left: &[usize], right: &[usize]) -> Self {
        let dim = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
        let mut offsets = Vec::with_capacity(n + 2);
        let mut total = 0;
        for i in 0..=n {
            offsets.push(total);
            total += dim(left, i) * dim(right, n - i);
        }
        offsets.push(total);
        Layout2 {
            n,
            offsets,
            left: (0..=n).map(|i| dim(left, i)).collect(),
            right: (0..=n).map(|j| dim(right, j)).collect(),
            total,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn left_dim(&self, i: usize) -> usize {
        self.left[i]
    }

    pub fn right_dim(&self, j: usize) -> usize {
        self.right[j]
    }

    pub fn index(&self, i: usize, p: usize, q: usize) -> usize {
        debug_assert!(p < self.left[i] && q < self.right[self.n - i]);
        self.offsets[i] + p * self.right[self.n - i] + q
    }

    /// Inverse of [`Layout2::index`]: `(i, p, q)`.
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let i = match self.offsets.binary_search(&idx) {
            // Several empty blocks may share an offset; take the last.
            Ok(mut k) => {
                while k + 1 < self.offsets.len() && self.offsets[k + 1] == idx {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        let r = self.right[self.n - i];
        let local = idx - self.offsets[i];
        (i, local / r, local % r)
    }

    /// Index range of the block `X_i (x) Y_{n-i}`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }
}

/// Degree-`n` part of `X (x) Y (x) Z`, blocks ordered lexicographically by
/// `(i, j)` with `i + j + k = n`.
#[derive(Clone, Debug)]
pub struct Layout3 {
    n: usize,
    offsets: std::collections::HashMap<(usize, usize), usize>,
    x: Vec<usize>,
    y: Vec<usize>,
    z: Vec<usize>,
    total: usize,
    starts: Vec<(usize, usize, usize)>,
}

impl Layout3 {
    pub fn new(n: usize, x: &[usize], y: &[usize], z: &[usize]) -> Self {
        let dim = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
        let mut offsets = std::collections::HashMap::new();
        let mut starts = Vec::new();
        let mut total = 0;
        for i in 0..=n {
            for j in 0..=n - i {
                let k = n - i - j;
                offsets.insert((i, j), total);
                starts.push((total, i, j));
                total += dim(x, i) * dim(y, j) * dim(z, k);
            }
        }
        Layout3 {
            n,
            offsets,
            x: (0..=n).map(|i| dim(x, i)).collect(),
            y: (0..=n).map(|i| dim(y, i)).collect(),
            z: (0..=n).map(|i| dim(z, i)).collect(),
            total,
            starts,
        }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn index(&self, i: usize, j: usize, p: usize, q: usize, r: usize) -> usize {
        let k = self.n - i - j;
        debug_assert!(p < self.x[i] && q < self.y[j] && r < self.z[k]);
        self.offsets[&(i, j)] + (p * self.y[j] + q) * self.z[k] + r
    }

    /// `(i, j, p, q, r)` for a flat index.
    pub fn decode(&self, idx: usize) -> (usize, usize, usize, usize, usize) {
        let pos = self.starts.partition_point(|(s, i, j)| {
            let k = self.n - i - j;
            *s + self.x[*i] * self.y[*j] * self.z[k] <= idx
        });
        let (s, i, j) = self.starts[pos];
        let k = self.n - i - j;
        let local = idx - s;
        let r = local % self.z[k];
        let pq = local / self.z[k];
        (i, j, pq / self.y[j], pq % self.y[j], r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout2_round_trip() {
        let dims = [1, 3, 0, 2];
        let l = Layout2::new(3, &dims, &dims);
        // blocks: (0,3): 1*2, (1,2): 3*0, (2,1): 0*3, (3,0): 2*1
        assert_eq!(l.dim(), 4);
        for idx in 0..l.dim() {
            let (i, p, q) = l.decode(idx);
            assert_eq!(l.index(i, p, q), idx);
        }
        assert_eq!(l.decode(2), (3, 0, 0));
    }

    #[test]
    fn layout3_round_trip() {
        let dims = [1, 2, 2];
        let l = Layout3::new(2, &dims, &dims, &dims);
        for idx in 0..l.dim() {
            let (i, j, p, q, r) = l.decode(idx);
            assert_eq!(l.index(i, j, p, q, r), idx);
        }
        // 3 ways of one degree-2 factor (2 each) + 3 ways of two degree-1 factors (4 each)
        assert_eq!(l.dim(), 3 * 2 + 3 * 4);
    }
}
