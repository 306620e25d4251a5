//! Multi-indices `(n_0, …, n_{r-1})` and walks on the index lattice.

use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        assert!(!components.is_empty(), "multi-index needs at least one ray");
        MultiIndex(components)
    }

    pub fn zeros(r: usize) -> Self {
        Self::new(vec![0; r])
    }

    pub fn diagonal(r: usize, n: u32) -> Self {
        Self::new(vec![n; r])
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    /// `|n| = n_0 + … + n_{r-1}`, the degree in `w`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, ray: usize) -> u32 {
        self.0[ray]
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `n + e_ray`.
    pub fn raised(&self, ray: usize) -> Self {
        let mut v = self.0.clone();
        v[ray] += 1;
        MultiIndex(v)
    }

    /// `n - e_ray`, or `None` when that component is already zero.
    pub fn lowered(&self, ray: usize) -> Option<Self> {
        if self.0[ray] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[ray] -= 1;
        Some(MultiIndex(v))
    }

    /// All multi-indices with `|n| <= max_total`, graded (by `|n|`, then
    /// lexicographic).
    pub fn indices_up_to(r: usize, max_total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            let mut cur = vec![0u32; r];
            fill(&mut out, &mut cur, 0, total);
        }
        fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, remaining: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = remaining;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for v in 0..=remaining {
                cur[pos] = v;
                fill(out, cur, pos + 1, remaining - v);
            }
            cur[pos] = 0;
        }
        out
    }

    /// Default walk: cycle through the rays, taking one step on each ray
    /// that is still below its target component, until the index is reached.
    pub fn round_robin_path(&self) -> Vec<usize> {
        let mut taken = vec![0u32; self.r()];
        let mut path = Vec::with_capacity(self.total() as usize);
        while path.len() < self.total() as usize {
            for ray in 0..self.r() {
                if taken[ray] < self.0[ray] {
                    taken[ray] += 1;
                    path.push(ray);
                }
            }
        }
        path
    }

    /// Every distinct step ordering that reaches this index. The count is
    /// the multinomial `|n|! / (n_0!⋯n_{r-1}!)`; callers keep `|n|` small.
    pub fn all_paths(&self) -> Vec<Vec<usize>> {
        let mut remaining = self.0.clone();
        let mut cur = Vec::with_capacity(self.total() as usize);
        let mut out = Vec::new();
        rec(&mut remaining, &mut cur, &mut out);
        fn rec(remaining: &mut [u32], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining.iter().all(|&x| x == 0) {
                out.push(cur.clone());
                return;
            }
            for ray in 0..remaining.len() {
                if remaining[ray] > 0 {
                    remaining[ray] -= 1;
                    cur.push(ray);
                    rec(remaining, cur, out);
                    cur.pop();
                    remaining[ray] += 1;
                }
            }
        }
        out
    }

    /// A uniformly shuffled step ordering reaching this index.
    pub fn random_path<R: Rng>(&self, rng: &mut R) -> Vec<usize> {
        let mut steps = Vec::with_capacity(self.total() as usize);
        for (ray, &count) in self.0.iter().enumerate() {
            for _ in 0..count {
                steps.push(ray);
            }
        }
        steps.shuffle(rng);
        steps
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
