use std::fmt;

use serde::{Deserialize, Serialize};

/// Exterior monomial `dx_{a1} ∧ … ∧ dx_{ak}` with `a1 < … < ak`, one bit per covector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Blade(pub u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_indices(ix: &[usize]) -> Option<Blade> {
        let mut m = 0u32;
        for &i in ix {
            if i >= 32 || m & (1 << i) != 0 {
                return None;
            }
            m |= 1 << i;
        }
        Some(Blade(m))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn meets(self, other: Blade) -> bool {
        self.0 & other.0 != 0
    }

    /// `self ∧ other` as `(sign, blade)`, or `None` if they share a covector.
    #[inline]
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.meets(other) {
            return None;
        }
        Some((wedge_sign(self.0, other.0), Blade(self.0 | other.0)))
    }
}

/// Sign of reordering `a ∧ b` into ascending order: the parity of pairs `(i ∈ a, j ∈ b)` with `i > j`.
#[inline]
pub fn wedge_sign(a: u32, b: u32) -> i8 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // Bits of `a` strictly above `j`.
        inversions += (a & (!0u32).checked_shl(j + 1).unwrap_or(0)).count_ones();
    }
    if inversions & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of moving the covector at bit `from` to bit `to` inside `mask` (neither endpoint counted).
#[inline]
pub fn transport_sign(mask: u32, from: u32, to: u32) -> i8 {
    let (lo, hi) = if from < to { (from, to) } else { (to, from) };
    let between = if hi - lo <= 1 { 0 } else { ((1u32 << (hi - lo - 1)) - 1) << (lo + 1) };
    if (mask & between).count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ix: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", ix.join(","))
    }
}

/// Binomial table and combinatorial-number-system ranking of `k`-subsets of `0..n`.
pub struct SubsetRanker {
    n: usize,
    k: usize,
    binom: Vec<Vec<u64>>,
}

impl SubsetRanker {
    pub fn new(n: usize, k: usize) -> Self {
        let mut binom = vec![vec![0u64; k + 2]; n + 1];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for i in 1..=n {
            for j in 1..=k + 1 {
                binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
            }
        }
        SubsetRanker { n, k, binom }
    }

    pub fn count(&self) -> usize {
        self.binom[self.n][self.k] as usize
    }

    /// `Σ_t C(b_t, t+1)` over the set bits `b_0 < b_1 < …`.
    #[inline]
    pub fn rank(&self, mask: u32) -> usize {
        let mut r = 0u64;
        let mut m = mask;
        let mut t = 1;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            r += self.binom[b][t];
            t += 1;
        }
        r as usize
    }

    pub fn unrank(&self, mut r: usize) -> u32 {
        let mut mask = 0u32;
        let mut b = self.n;
        for t in (1..=self.k).rev() {
            b -= 1;
            while self.binom[b][t] as usize > r {
                b -= 1;
            }
            r -= self.binom[b][t] as usize;
            mask |= 1 << b;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_sign(a: u32, b: u32) -> i8 {
        let ia: Vec<u32> = (0..32).filter(|i| a & (1 << i) != 0).collect();
        let ib: Vec<u32> = (0..32).filter(|i| b & (1 << i) != 0).collect();
        let inv = ia.iter().flat_map(|i| ib.iter().map(move |j| (i > j) as u32)).sum::<u32>();
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn wedge_examples() {
        let d01 = Blade::from_indices(&[0, 1]).unwrap();
        let d02 = Blade::from_indices(&[0, 2]).unwrap();
        assert_eq!(d01.wedge(d02), None);
        let d1 = Blade::from_indices(&[1]).unwrap();
        let d0 = Blade::from_indices(&[0]).unwrap();
        assert_eq!(d1.wedge(d0), Some((-1, d01)));
        assert_eq!(Blade::from_indices(&[3, 3]), None);
        assert_eq!(Blade::from_indices(&[32]), None);
    }

    #[test]
    fn ranker_is_a_bijection() {
        let r = SubsetRanker::new(12, 4);
        assert_eq!(r.count(), 495);
        let mut seen = vec![false; r.count()];
        for m in 0u32..(1 << 12) {
            if m.count_ones() == 4 {
                let k = r.rank(m);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(r.unrank(k), m);
            }
        }
        assert!(seen.into_iter().all(|s| s));
        assert_eq!(SubsetRanker::new(32, 8).count(), 10_518_300);
    }

    proptest! {
        #[test]
        fn sign_matches_brute_force(a in any::<u32>(), b in any::<u32>()) {
            let b = b & !a;
            prop_assert_eq!(wedge_sign(a, b), brute_sign(a, b));
        }

        #[test]
        fn transport_matches_wedge(mask in any::<u32>(), from in 0u32..32, to in 0u32..32) {
            // Moving bit `from` to `to` equals pulling it to the front and pushing it back.
            prop_assume!(from != to);
            let mask = (mask | (1 << from)) & !(1 << to);
            let rest = mask & !(1 << from);
            let s1 = wedge_sign(1 << from, rest);
            let s2 = wedge_sign(1 << to, rest);
            prop_assert_eq!(transport_sign(mask, from, to), s1 * s2);
        }
    }
}
