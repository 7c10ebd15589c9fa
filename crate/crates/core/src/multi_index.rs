//! Finitely supported exponent sequences `(…, i_3, i_2, i_1)`, their weight
//! `Σ s·i_s`, and the two total orders used to rank PBW monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Dense storage: `entries[s - 1] = i_s`, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit sequence ε_s (`s >= 1`).
    pub fn unit(s: usize) -> Self {
        assert!(s >= 1, "positions start at 1");
        let mut entries = vec![0; s];
        entries[s - 1] = 1;
        MultiIndex { entries }
    }

    /// From `(position, exponent)` pairs; repeated positions accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut m = Self::zero();
        for (s, e) in pairs {
            m.add_at(s, e);
        }
        m
    }

    pub fn from_dense(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        MultiIndex { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: usize) -> u32 {
        if s == 0 {
            return 0;
        }
        self.entries.get(s - 1).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, s: usize, e: u32) {
        assert!(s >= 1, "positions start at 1");
        if e == 0 {
            return;
        }
        if self.entries.len() < s {
            self.entries.resize(s, 0);
        }
        self.entries[s - 1] += e;
    }

    /// Removes one from position `s`; `None` if that entry is already zero.
    pub fn minus_unit(&self, s: usize) -> Option<Self> {
        if self.get(s) == 0 {
            return None;
        }
        let mut entries = self.entries.clone();
        entries[s - 1] -= 1;
        Some(Self::from_dense(entries))
    }

    pub fn plus_unit(&self, s: usize) -> Self {
        let mut m = self.clone();
        m.add_at(s, 1);
        m
    }

    pub fn plus(&self, other: &MultiIndex) -> Self {
        let mut m = self.clone();
        for (s, e) in other.support() {
            m.add_at(s, e);
        }
        m
    }

    /// `w(i) = Σ s·i_s`.
    pub fn weight(&self) -> u64 {
        self.support().map(|(s, e)| s as u64 * u64::from(e)).sum()
    }

    /// Total number of factors `Σ i_s`.
    pub fn length(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    /// Nonzero `(position, exponent)` pairs in increasing position.
    pub fn support(&self) -> impl DoubleEndedIterator<Item = (usize, u32)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i + 1, e))
    }

    /// Largest position with a nonzero entry.
    pub fn max_position(&self) -> Option<usize> {
        if self.entries.is_empty() {
            None
        } else {
            Some(self.entries.len())
        }
    }

    /// Smallest position with a nonzero entry.
    pub fn min_position(&self) -> Option<usize> {
        self.support().next().map(|(s, _)| s)
    }

    /// `i′ = i − ε_p`, `p` the largest nonzero position.
    pub fn prime(&self) -> Option<Self> {
        self.minus_unit(self.max_position()?)
    }

    /// `i″ = i − ε_q`, `q` the smallest nonzero position.
    pub fn double_prime(&self) -> Option<Self> {
        self.minus_unit(self.min_position()?)
    }

    pub fn to_map(&self) -> BTreeMap<usize, u32> {
        self.support().collect()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support()
            .rev()
            .map(|(s, e)| {
                if e == 1 {
                    format!("ε{s}")
                } else {
                    format!("{e}ε{s}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

pub fn weight(i: &MultiIndex) -> u64 {
    i.weight()
}

/// `i > k` iff the highest differing position has the larger entry in `i`.
pub fn lex_compare(i: &MultiIndex, k: &MultiIndex) -> Ordering {
    let top = i.entries.len().max(k.entries.len());
    for s in (1..=top).rev() {
        match i.get(s).cmp(&k.get(s)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// `i ≻ k` iff the lowest differing position has the larger entry in `i`.
pub fn revlex_compare(i: &MultiIndex, k: &MultiIndex) -> Ordering {
    let top = i.entries.len().max(k.entries.len());
    for s in 1..=top {
        match i.get(s).cmp(&k.get(s)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Order on pairs `(i, j)`: weight of `j` first, then `j` by revlex, then `i` by lex.
pub fn pair_compare(a: (&MultiIndex, &MultiIndex), b: (&MultiIndex, &MultiIndex)) -> Ordering {
    let (i, j) = a;
    let (k, l) = b;
    j.weight()
        .cmp(&l.weight())
        .then_with(|| revlex_compare(j, l))
        .then_with(|| lex_compare(i, k))
}

/// All multi-indices of weight exactly `n` (one per integer partition of `n`).
pub fn multi_indices_of_weight(n: u64) -> Vec<MultiIndex> {
    fn go(remaining: u64, max_part: u64, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if remaining == 0 {
            out.push(MultiIndex::from_dense(current.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            let s = part as usize;
            if current.len() < s {
                current.resize(s, 0);
            }
            current[s - 1] += 1;
            go(remaining - part, part, current, out);
            current[s - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(0), …, p(n)` by the standard coin-change recurrence.
pub fn partition_counts(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(pairs: &[(usize, u32)]) -> MultiIndex {
        MultiIndex::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&MultiIndex::zero()), 0);
        assert_eq!(weight(&MultiIndex::unit(3)), 3);
        assert_eq!(weight(&mi(&[(3, 1), (1, 2)])), 5);
    }

    #[test]
    fn primes() {
        let i = mi(&[(3, 2), (1, 1)]);
        assert_eq!(i.prime().unwrap(), mi(&[(3, 1), (1, 1)]));
        assert_eq!(i.double_prime().unwrap(), mi(&[(3, 2)]));
        assert!(MultiIndex::zero().prime().is_none());
        // trailing zeros are trimmed so equality stays canonical
        assert_eq!(MultiIndex::unit(4).prime().unwrap(), MultiIndex::zero());
    }

    #[test]
    fn orders() {
        let (e1, e2) = (MultiIndex::unit(1), MultiIndex::unit(2));
        assert_eq!(lex_compare(&e2, &e1), Ordering::Greater);
        assert_eq!(revlex_compare(&e1, &e2), Ordering::Greater);
        assert_eq!(lex_compare(&e1, &e1), Ordering::Equal);
    }

    #[test]
    fn pair_order_examples() {
        let z = MultiIndex::zero();
        let two_e1 = mi(&[(1, 2)]);
        let e2 = MultiIndex::unit(2);
        assert_eq!(pair_compare((&z, &two_e1), (&z, &e2)), Ordering::Greater);
        let e1 = MultiIndex::unit(1);
        assert_eq!(pair_compare((&e1, &e1), (&z, &e1)), Ordering::Greater);
        assert_eq!(pair_compare((&e1, &e2), (&e1, &e2)), Ordering::Equal);
    }

    #[test]
    fn partitions() {
        assert_eq!(
            partition_counts(10),
            vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        );
        for n in 0..=10u64 {
            let all = multi_indices_of_weight(n);
            assert_eq!(all.len() as u128, partition_counts(10)[n as usize]);
            assert!(all.iter().all(|m| m.weight() == n));
        }
    }
}
