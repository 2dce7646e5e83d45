//! Plain permutations on `0..n`, stored as image tables.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image table is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("expected a fixed-point-free involution")]
    NotInvolution,
}

/// A permutation of `0..n`; `map[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n).collect() }
    }

    pub fn from_images(map: Vec<usize>) -> Result<Self, PermError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    /// Builds the cyclic successor map from explicit cycles; elements not
    /// mentioned are fixed points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x >= n || seen[x] {
                    return Err(PermError::NotBijective(n));
                }
                seen[x] = true;
                map[x] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Perm { map: inv }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { map: other.map.iter().map(|&v| self.map[v]).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// Cycle decomposition; each cycle starts at its smallest element and
    /// cycles are sorted by smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.map[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
            }
        }
        count
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        (0..self.map.len()).all(|i| self.map[i] != i && self.map[self.map[i]] == i)
    }
}

/// Iterates over all fixed-point-free involutions on `0..2n` as image
/// tables, in a deterministic order: the smallest unmatched point is paired
/// with each larger free point in increasing order.
pub fn fixed_point_free_involutions(n_pairs: usize) -> InvolutionIter {
    InvolutionIter::new(n_pairs)
}

pub struct InvolutionIter {
    n: usize,
    // stack of (point, partner) choices made so far
    stack: Vec<(usize, usize)>,
    map: Vec<usize>,
    used: Vec<bool>,
    done: bool,
    fresh: bool,
}

impl InvolutionIter {
    fn new(n_pairs: usize) -> Self {
        let n = 2 * n_pairs;
        InvolutionIter {
            n,
            stack: Vec::new(),
            map: vec![usize::MAX; n],
            used: vec![false; n],
            done: n == 0,
            fresh: true,
        }
    }

    fn first_free(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.used[i])
    }

    /// Extends the current partial matching greedily with the smallest
    /// available partners until complete. Returns false if nothing to extend.
    fn complete(&mut self) -> bool {
        while let Some(a) = self.first_free() {
            let b = match (a + 1..self.n).find(|&j| !self.used[j]) {
                Some(b) => b,
                None => return false,
            };
            self.pair(a, b);
        }
        true
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.used[a] = true;
        self.used[b] = true;
        self.map[a] = b;
        self.map[b] = a;
        self.stack.push((a, b));
    }

    fn unpair(&mut self) -> (usize, usize) {
        let (a, b) = self.stack.pop().expect("unpair on empty stack");
        self.used[a] = false;
        self.used[b] = false;
        self.map[a] = usize::MAX;
        self.map[b] = usize::MAX;
        (a, b)
    }
}

impl Iterator for InvolutionIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            if !self.complete() {
                self.done = true;
                return None;
            }
            return Some(Perm { map: self.map.clone() });
        }
        // backtrack: advance the deepest choice that still has a larger partner
        loop {
            if self.stack.is_empty() {
                self.done = true;
                return None;
            }
            let (a, b) = self.unpair();
            if let Some(nb) = (b + 1..self.n).find(|&j| !self.used[j]) {
                self.pair(a, nb);
                if self.complete() {
                    return Some(Perm { map: self.map.clone() });
                }
                // dead end can only mean odd leftover, impossible here; keep backtracking
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_order() {
        // self ∘ other applies other first
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![0, 2, 1]).unwrap();
        let c = a.compose(&b);
        assert_eq!(c.apply(1), a.apply(b.apply(1)));
    }

    #[test]
    fn involution_counts_match_double_factorial() {
        // (2n-1)!! involutions on 2n points
        let expect = [1usize, 1, 3, 15, 105, 945];
        for n in 1..=5 {
            assert_eq!(fixed_point_free_involutions(n).count(), expect[n]);
        }
    }

    #[test]
    fn involutions_are_involutions_and_distinct() {
        let all: Vec<Perm> = fixed_point_free_involutions(3).collect();
        for p in &all {
            assert!(p.is_fixed_point_free_involution());
        }
        let mut dedup = all.clone();
        dedup.sort_by(|x, y| x.images().cmp(y.images()));
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn cycles_start_at_minimum() {
        let p = Perm::from_cycles(6, &[vec![4, 2, 5], vec![1, 3]]).unwrap();
        let cyc = p.cycles();
        assert_eq!(cyc, vec![vec![0], vec![1, 3], vec![2, 5, 4]]);
    }
}
