use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Subset of the node indices `0..universe` backed by a packed bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    universe: usize,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn new(universe: usize) -> Self {
        NodeSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = NodeSet::new(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a set, rejecting indices outside the universe.
    pub fn from_nodes<I: IntoIterator<Item = usize>>(universe: usize, nodes: I) -> Result<Self> {
        let mut s = NodeSet::new(universe);
        for v in nodes {
            if v >= universe {
                return Err(Error::NodeOutOfRange { node: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Set whose members are the one-bits of `mask` (universe at most 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= WORD);
        let mut s = NodeSet::new(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`; panics if `v` is outside the universe.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "node {v} outside universe {}", self.universe);
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Low 64 members as a mask; only meaningful for universes of at most 64 nodes.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &NodeSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> NodeSet {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|self ∖ other|` without allocating.
    #[inline]
    pub fn difference_len(&self, other: &NodeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_universe(&self, other: &NodeSet) {
        assert_eq!(
            self.universe, other.universe,
            "node sets over different universes"
        );
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct NodeSetRepr {
    universe: usize,
    members: Vec<usize>,
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NodeSetRepr {
            universe: self.universe,
            members: self.iter().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = NodeSetRepr::deserialize(deserializer)?;
        NodeSet::from_nodes(repr.universe, repr.members).map_err(serde::de::Error::custom)
    }
}
