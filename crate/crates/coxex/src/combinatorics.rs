//! Ordered multisets, stable-sort lengths, and bitmask set systems.
//!
//! Ground elements are 1-based. A `SubsetMask` stores element `i` in bit `i - 1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub const MAX_N: u32 = 24;
pub const MAX_EXHAUSTIVE_N: u32 = 16;
pub const MAX_UNIVERSE: usize = 25;

/// Number of strict inversions, i.e. the number of adjacent swaps a stable
/// bubble sort performs. Equal entries are never swapped.
pub fn sort_length(a: &[u32]) -> usize {
    let mut count = 0;
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            if a[p] > a[q] {
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrderedMultiset(Vec<u32>);

impl OrderedMultiset {
    pub fn new(entries: Vec<u32>) -> Self {
        OrderedMultiset(entries)
    }

    /// The elements of `mask` in increasing order.
    pub fn increasing(mask: SubsetMask) -> Self {
        OrderedMultiset(mask.elements().collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &OrderedMultiset) -> OrderedMultiset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OrderedMultiset(v)
    }

    pub fn reversed(&self) -> OrderedMultiset {
        OrderedMultiset(self.0.iter().rev().copied().collect())
    }

    pub fn sort_length(&self) -> usize {
        sort_length(&self.0)
    }

    pub fn is_ordered_set(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.0.iter().all(|x| seen.insert(*x))
    }

    /// Deletes the elements of `b` while keeping the relative order of the rest.
    pub fn remove_ordered(&self, b: SubsetMask) -> Result<OrderedMultiset> {
        if !self.is_ordered_set() {
            return Err(Error::RepeatedElements);
        }
        Ok(OrderedMultiset(
            self.0.iter().copied().filter(|&x| !b.contains(x)).collect(),
        ))
    }

    /// 1-based position of `i`.
    pub fn index_of(&self, i: u32) -> Result<usize> {
        let mut hits = self.0.iter().enumerate().filter(|(_, &x)| x == i);
        match (hits.next(), hits.next()) {
            (None, _) => Err(Error::NotPresent(i)),
            (Some(_), Some(_)) => Err(Error::Ambiguous(i)),
            (Some((p, _)), None) => Ok(p + 1),
        }
    }
}

impl From<Vec<u32>> for OrderedMultiset {
    fn from(v: Vec<u32>) -> Self {
        OrderedMultiset(v)
    }
}

/// ℓ(A, B) = sort_length(A ∘ B).
pub fn ell_pair(a: &OrderedMultiset, b: &OrderedMultiset) -> usize {
    a.concat(b).sort_length()
}

/// ℓ(A, B) for sets given without an ordering: both are increasingly ordered.
pub fn ell(a: SubsetMask, b: SubsetMask) -> usize {
    ell_pair(&OrderedMultiset::increasing(a), &OrderedMultiset::increasing(b))
}

/// ℓ(i, B) for a single element.
pub fn ell_elem(i: u32, b: SubsetMask) -> usize {
    ell_pair(&OrderedMultiset(vec![i]), &OrderedMultiset::increasing(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: u32) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn single(i: u32) -> Self {
        debug_assert!((1..=32).contains(&i));
        SubsetMask(1 << (i - 1))
    }

    pub fn from_elements(elems: &[u32]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elems {
            if e == 0 || e > MAX_N {
                return Err(Error::ElementOutOfRange { element: e, n: MAX_N });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: u32) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros();
            w &= w - 1;
            Some(t + 1)
        })
    }

    #[inline]
    pub fn sym_diff(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 ^ other.0)
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn minus(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn complement(self, n: u32) -> SubsetMask {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn toggle(self, i: u32) -> SubsetMask {
        self.sym_diff(SubsetMask::single(i))
    }

    pub fn max_element(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }
}

pub fn sym_diff(i: SubsetMask, j: SubsetMask) -> SubsetMask {
    i.sym_diff(j)
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        SubsetMask::from_elements(&v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(mask: SubsetMask) -> Parity {
        if mask.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::BadGround { n, max: MAX_N });
        }
        Ok(GroundSet { n })
    }

    /// A ground set small enough for exhaustive modes.
    pub fn exhaustive(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_EXHAUSTIVE_N {
            return Err(Error::BadGround { n, max: MAX_EXHAUSTIVE_N });
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn full(self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn contains(self, mask: SubsetMask) -> bool {
        mask.is_subset(self.full())
    }

    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        (0..1u32 << self.n).map(SubsetMask)
    }

    pub fn subsets_of_size(self, k: u32) -> impl Iterator<Item = SubsetMask> {
        self.subsets().filter(move |s| s.len() == k)
    }

    pub fn subsets_of_parity(self, p: Parity) -> impl Iterator<Item = SubsetMask> {
        self.subsets().filter(move |s| Parity::of(*s) == p)
    }
}

/// A set of subsets of [n]. Membership uses a dense table when n ≤ 16.
#[derive(Clone, Debug)]
pub struct SetSystem {
    ground: GroundSet,
    members: Vec<SubsetMask>,
    table: Option<BitSet>,
}

impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetSystem {}

impl SetSystem {
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut v: Vec<SubsetMask> = members.into_iter().collect();
        for m in &v {
            if !ground.contains(*m) {
                return Err(Error::ElementOutOfRange { element: m.max_element(), n: ground.n() });
            }
        }
        v.sort();
        v.dedup();
        Ok(Self::from_sorted(ground, v))
    }

    fn from_sorted(ground: GroundSet, members: Vec<SubsetMask>) -> Self {
        let table = (ground.n() <= MAX_EXHAUSTIVE_N).then(|| {
            BitSet::from_indices(1 << ground.n(), members.iter().map(|m| m.0 as usize))
        });
        SetSystem { ground, members, table }
    }

    pub fn from_lists(n: u32, sets: &[Vec<u32>]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let masks = sets
            .iter()
            .map(|s| {
                if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n) {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                SubsetMask::from_elements(s)
            })
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, masks)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, mask: SubsetMask) -> bool {
        match &self.table {
            Some(t) => t.contains(mask.0 as usize),
            None => self.members.binary_search(&mask).is_ok(),
        }
    }

    /// True when all members share one parity (vacuously for the empty system).
    pub fn is_even(&self) -> bool {
        match self.members.first() {
            None => true,
            Some(&f) => self.members.iter().all(|&m| Parity::of(m) == Parity::of(f)),
        }
    }

    pub fn restrict_parity(&self, p: Parity) -> SetSystem {
        let v = self.members.iter().copied().filter(|&m| Parity::of(m) == p).collect();
        Self::from_sorted(self.ground, v)
    }

    /// Every member has exactly `k` elements.
    pub fn uniform_rank(&self) -> Option<u32> {
        let k = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == k).then_some(k)
    }

    pub fn to_json(&self) -> SetSystemJson {
        SetSystemJson {
            n: self.n(),
            sets: self.members.iter().map(|m| m.to_vec()).collect(),
        }
    }
}

/// `{"n": 4, "sets": [[], [1], [1,2,3]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemJson {
    pub n: u32,
    pub sets: Vec<Vec<u32>>,
}

impl SetSystemJson {
    pub fn into_system(self) -> Result<SetSystem> {
        SetSystem::from_lists(self.n, &self.sets)
    }
}

/// Every subset of `universe` as a set system, the empty system first.
pub fn enumerate_set_systems(
    ground: GroundSet,
    universe: &[SubsetMask],
) -> Result<impl Iterator<Item = SetSystem>> {
    let mut u: Vec<SubsetMask> = universe.to_vec();
    u.sort();
    u.dedup();
    if u.len() > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(u.len()));
    }
    if let Some(bad) = u.iter().find(|m| !ground.contains(**m)) {
        return Err(Error::ElementOutOfRange { element: bad.max_element(), n: ground.n() });
    }
    Ok((0u64..1 << u.len()).map(move |code| system_from_code(ground, &u, code)))
}

/// The set system selecting `universe[i]` for every set bit `i` of `code`.
pub fn system_from_code(ground: GroundSet, universe: &[SubsetMask], code: u64) -> SetSystem {
    let mut members: Vec<SubsetMask> = universe
        .iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, &m)| m)
        .collect();
    members.sort();
    SetSystem::from_sorted(ground, members)
}
