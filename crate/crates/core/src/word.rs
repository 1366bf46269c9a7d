//! Permutations, subexcedant sequences and their set-valued statistics.
//!
//! Positions are 1-based everywhere in the public API. Entries of a
//! [`Permutation`] are the values `1..=n`; entries of a [`SubexcedantSeq`]
//! satisfy `0 <= s_i <= i - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing set of 1-based positions.
///
/// Text form is `{1 4 5 6}` (`{}` when empty); the serialized form is a
/// sorted array. Both are canonical, so equal sets always print the same.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionSet(Vec<usize>);

impl PositionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    // Callers push in increasing order.
    fn push(&mut self, position: usize) {
        debug_assert!(self.0.last().is_none_or(|&last| last < position));
        self.0.push(position);
    }

    fn from_rev(mut positions: Vec<usize>) -> Self {
        positions.reverse();
        Self(positions)
    }
}

impl FromIterator<usize> for PositionSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<const N: usize> From<[usize; N]> for PositionSet {
    fn from(positions: [usize; N]) -> Self {
        positions.into_iter().collect()
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Five position sets in a fixed order: `(Des, Ides, LrM, Lrm, RlM)` for a
/// permutation, `(Asc, Row, Pos0, Max, Rlm)` for a subexcedant sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiveTuple(pub [PositionSet; 5]);

impl FiveTuple {
    /// `{..}|{..}|{..}|{..}|{..}`, used as a distribution-table key.
    pub fn canonical_key(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        parts.join("|")
    }
}

impl fmt::Display for FiveTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = &self.0;
        write!(f, "({a}, {b}, {c}, {d}, {e})")
    }
}

fn non_empty<T>(w: &[T]) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(())
    }
}

fn descents<T: Ord>(w: &[T]) -> PositionSet {
    let mut set = PositionSet::new();
    for (i, pair) in w.windows(2).enumerate() {
        if pair[0] > pair[1] {
            set.push(i + 1);
        }
    }
    set
}

fn ascents<T: Ord>(w: &[T]) -> PositionSet {
    let mut set = PositionSet::new();
    for (i, pair) in w.windows(2).enumerate() {
        if pair[0] < pair[1] {
            set.push(i + 1);
        }
    }
    set
}

/// Positions whose entry is strictly beyond every earlier entry in the
/// sense of `beats` (scanning left to right).
fn left_to_right<T: Ord>(w: &[T], beats: impl Fn(&T, &T) -> bool) -> PositionSet {
    let mut set = PositionSet::new();
    let mut best: Option<&T> = None;
    for (i, x) in w.iter().enumerate() {
        if best.is_none_or(|b| beats(x, b)) {
            set.push(i + 1);
            best = Some(x);
        }
    }
    set
}

fn right_to_left<T: Ord>(w: &[T], beats: impl Fn(&T, &T) -> bool) -> PositionSet {
    let mut rev = Vec::new();
    let mut best: Option<&T> = None;
    for (i, x) in w.iter().enumerate().rev() {
        if best.is_none_or(|b| beats(x, b)) {
            rev.push(i + 1);
            best = Some(x);
        }
    }
    PositionSet::from_rev(rev)
}

/// `{i : w_i > w_{i+1}}`.
pub fn des_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(descents(w))
}

/// `{i : w_i < w_{i+1}}`. Equal neighbours are neither ascents nor descents.
pub fn asc_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(ascents(w))
}

/// Left-to-right maxima: `{i : w_j < w_i for all j < i}`.
pub fn lrmax_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(left_to_right(w, |x, b| x > b))
}

/// Left-to-right minima: `{i : w_j > w_i for all j < i}`.
pub fn lrmin_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(left_to_right(w, |x, b| x < b))
}

/// Right-to-left maxima: `{i : w_j < w_i for all j > i}`.
pub fn rlmax_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(right_to_left(w, |x, b| x > b))
}

/// Right-to-left minima: `{i : w_j > w_i for all j > i}`.
pub fn rlmin_set<T: Ord>(w: &[T]) -> Result<PositionSet> {
    non_empty(w)?;
    Ok(right_to_left(w, |x, b| x < b))
}

/// Reads a whitespace-separated line of non-negative decimal integers.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let word: Vec<usize> = text
        .split_whitespace()
        .enumerate()
        .map(|(k, tok)| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                position: k + 1,
                token: tok.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    non_empty(&word)?;
    Ok(word)
}

fn write_word(f: &mut fmt::Formatter<'_>, entries: &[usize]) -> fmt::Result {
    for (k, x) in entries.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// A permutation of `{1, ..., n}` in one-line notation, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        non_empty(&entries)?;
        let n = entries.len();
        let mut first_seen = vec![0usize; n + 1];
        for (i, &x) in entries.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::OutOfRange {
                    position: i + 1,
                    value: x,
                    n,
                });
            }
            if first_seen[x] != 0 {
                return Err(Error::Repeated {
                    position: i + 1,
                    value: x,
                    first: first_seen[x],
                });
            }
            first_seen[x] = i + 1;
        }
        Ok(Self { entries })
    }

    /// Caller guarantees `entries` is a permutation of `1..=n`.
    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    /// `n n-1 ... 1`.
    pub fn reversal(n: usize) -> Result<Self> {
        Self::new((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [usize] {
        &mut self.entries
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// `positions()[v]` is the 0-based position of value `v`; index 0 unused.
    pub(crate) fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.len() + 1];
        for (i, &x) in self.entries.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }

    /// The permutation `q` with `q[p[i]] = i`.
    pub fn inverse(&self) -> Self {
        let mut q = vec![0; self.len()];
        for (i, &x) in self.entries.iter().enumerate() {
            q[x - 1] = i + 1;
        }
        Self { entries: q }
    }

    pub fn des_set(&self) -> PositionSet {
        descents(&self.entries)
    }

    /// Inverse descents: positions `i > 1` such that `p_i + 1` occurs to the
    /// left of `p_i`. Same cardinality as `inverse().des_set()`, but in
    /// general a different set.
    pub fn ides_set(&self) -> PositionSet {
        let n = self.len();
        let pos = self.positions();
        let mut set = PositionSet::new();
        for (i, &x) in self.entries.iter().enumerate() {
            if x < n && pos[x + 1] < i {
                set.push(i + 1);
            }
        }
        set
    }

    pub fn lrmax_set(&self) -> PositionSet {
        left_to_right(&self.entries, |x, b| x > b)
    }

    pub fn lrmin_set(&self) -> PositionSet {
        left_to_right(&self.entries, |x, b| x < b)
    }

    pub fn rlmax_set(&self) -> PositionSet {
        right_to_left(&self.entries, |x, b| x > b)
    }

    pub fn des(&self) -> usize {
        self.des_set().len()
    }

    pub fn ides(&self) -> usize {
        self.ides_set().len()
    }

    /// `(Des, Ides, LrM, Lrm, RlM)`.
    pub fn five_tuple(&self) -> FiveTuple {
        FiveTuple([
            self.des_set(),
            self.ides_set(),
            self.lrmax_set(),
            self.lrmin_set(),
            self.rlmax_set(),
        ])
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_word(s)?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.entries)
    }
}

/// A word `s_1 ... s_n` with `0 <= s_i <= i - 1`, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SubexcedantSeq {
    entries: Vec<usize>,
}

impl SubexcedantSeq {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        non_empty(&entries)?;
        for (i, &x) in entries.iter().enumerate() {
            if x > i {
                return Err(Error::NotSubexcedant {
                    position: i + 1,
                    value: x,
                    bound: i,
                });
            }
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// `0 1 2 ... n-1`.
    pub fn staircase(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [usize] {
        &mut self.entries
    }

    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn asc_set(&self) -> PositionSet {
        ascents(&self.entries)
    }

    /// Last-value positions: `s_i != 0` and `s_i` absent from the suffix
    /// after `i`. Never contains 1; its size is the number of distinct
    /// nonzero symbols.
    pub fn row_set(&self) -> PositionSet {
        let mut seen = vec![false; self.len()];
        let mut rev = Vec::new();
        for (i, &x) in self.entries.iter().enumerate().rev() {
            if x != 0 && !seen[x] {
                rev.push(i + 1);
            }
            seen[x] = true;
        }
        PositionSet::from_rev(rev)
    }

    pub fn pos0_set(&self) -> PositionSet {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `{i : s_i = i - 1}`.
    pub fn max_set(&self) -> PositionSet {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, &x)| x == i)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn rlmin_set(&self) -> PositionSet {
        right_to_left(&self.entries, |x, b| x < b)
    }

    pub fn asc(&self) -> usize {
        self.asc_set().len()
    }

    pub fn row(&self) -> usize {
        self.row_set().len()
    }

    /// `(Asc, Row, Pos0, Max, Rlm)`.
    pub fn five_tuple(&self) -> FiveTuple {
        FiveTuple([
            self.asc_set(),
            self.row_set(),
            self.pos0_set(),
            self.max_set(),
            self.rlmin_set(),
        ])
    }
}

impl TryFrom<Vec<usize>> for SubexcedantSeq {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<SubexcedantSeq> for Vec<usize> {
    fn from(s: SubexcedantSeq) -> Self {
        s.entries
    }
}

impl FromStr for SubexcedantSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_word(s)?)
    }
}

impl fmt::Display for SubexcedantSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> SubexcedantSeq {
        s.parse().unwrap()
    }

    #[test]
    fn example_pair_statistics() {
        let p = perm("6 2 5 8 7 3 1 4");
        let s = seq("0 1 1 0 2 3 6 3");
        assert_eq!(p.des_set(), PositionSet::from([1, 4, 5, 6]));
        assert_eq!(s.asc_set(), PositionSet::from([1, 4, 5, 6]));
        assert_eq!(p.ides_set(), PositionSet::from([3, 5, 7, 8]));
        assert_eq!(s.row_set(), PositionSet::from([3, 5, 7, 8]));
        assert_eq!(p.lrmax_set(), PositionSet::from([1, 4]));
        assert_eq!(s.pos0_set(), PositionSet::from([1, 4]));
        assert_eq!(p.lrmin_set(), PositionSet::from([1, 2, 7]));
        assert_eq!(s.max_set(), PositionSet::from([1, 2, 7]));
        assert_eq!(p.rlmax_set(), PositionSet::from([4, 5, 8]));
        assert_eq!(s.rlmin_set(), PositionSet::from([4, 5, 8]));
        assert_eq!(p.five_tuple(), s.five_tuple());
    }

    #[test]
    fn small_words() {
        assert!(des_set(&[1, 2, 3]).unwrap().is_empty());
        assert_eq!(des_set(&[3, 2, 1]).unwrap(), PositionSet::from([1, 2]));
        assert!(asc_set(&[0, 0, 0]).unwrap().is_empty());
        assert!(des_set(&[0, 0, 0]).unwrap().is_empty());
        assert_eq!(asc_set(&[0, 1, 2]).unwrap(), PositionSet::from([1, 2]));
        assert!(perm("1 2 3").ides_set().is_empty());
        assert_eq!(perm("3 2 1").ides_set(), PositionSet::from([2, 3]));
        assert_eq!(seq("0 0 0 0").pos0_set(), PositionSet::from([1, 2, 3, 4]));
        assert_eq!(seq("0 1 2 3").pos0_set(), PositionSet::from([1]));
        assert_eq!(seq("0 1 2 3").max_set(), PositionSet::from([1, 2, 3, 4]));
        assert_eq!(seq("0 0 0 0").max_set(), PositionSet::from([1]));
        assert!(seq("0 0 0").row_set().is_empty());
        assert_eq!(seq("0 1 1").row_set(), PositionSet::from([3]));
    }

    #[test]
    fn generic_word_statistics_match_typed_ones() {
        let p = perm("6 2 5 8 7 3 1 4");
        assert_eq!(lrmax_set(p.entries()).unwrap(), PositionSet::from([1, 4]));
        assert_eq!(
            lrmin_set(p.entries()).unwrap(),
            PositionSet::from([1, 2, 7])
        );
        assert_eq!(
            rlmax_set(p.entries()).unwrap(),
            PositionSet::from([4, 5, 8])
        );
        assert_eq!(
            rlmin_set(&[0, 1, 1, 0, 2, 3, 6, 3]).unwrap(),
            PositionSet::from([4, 5, 8])
        );
        assert_eq!(
            rlmin_set(&['b', 'a', 'c']).unwrap(),
            PositionSet::from([2, 3])
        );
    }

    #[test]
    fn empty_word_rejected() {
        let empty: [usize; 0] = [];
        assert_eq!(des_set(&empty), Err(Error::EmptyWord));
        assert_eq!(asc_set(&empty), Err(Error::EmptyWord));
        assert_eq!(lrmax_set(&empty), Err(Error::EmptyWord));
        assert_eq!(rlmin_set(&empty), Err(Error::EmptyWord));
        assert_eq!(Permutation::new(vec![]), Err(Error::EmptyWord));
        assert_eq!(SubexcedantSeq::new(vec![]), Err(Error::EmptyWord));
        assert_eq!("   ".parse::<Permutation>(), Err(Error::EmptyWord));
    }

    #[test]
    fn invalid_words_name_the_position() {
        assert_eq!(
            "1 3 3".parse::<Permutation>(),
            Err(Error::Repeated {
                position: 3,
                value: 3,
                first: 2
            })
        );
        assert_eq!(
            "1 4 2".parse::<Permutation>(),
            Err(Error::OutOfRange {
                position: 2,
                value: 4,
                n: 3
            })
        );
        assert_eq!(
            "0 1 3".parse::<SubexcedantSeq>(),
            Err(Error::NotSubexcedant {
                position: 3,
                value: 3,
                bound: 2
            })
        );
        assert_eq!(
            "0 x".parse::<SubexcedantSeq>(),
            Err(Error::Parse {
                position: 2,
                token: "x".into()
            })
        );
        assert!("0 -1".parse::<SubexcedantSeq>().is_err());
    }

    #[test]
    fn inverse() {
        assert_eq!(perm("1 2 3").inverse(), perm("1 2 3"));
        assert_eq!(perm("2 3 1").inverse(), perm("3 1 2"));
        assert_eq!(perm("6 2 5 8 7 3 1 4").inverse(), perm("7 2 6 8 3 1 5 4"));
    }

    #[test]
    fn singleton() {
        let p = perm("1");
        let t = p.five_tuple();
        assert_eq!(t.to_string(), "({}, {}, {1}, {1}, {1})");
        assert_eq!(seq("0").five_tuple(), t);
    }

    #[test]
    fn canonical_forms() {
        let t = perm("6 2 5 8 7 3 1 4").five_tuple();
        assert_eq!(
            t.canonical_key(),
            "{1 4 5 6}|{3 5 7 8}|{1 4}|{1 2 7}|{4 5 8}"
        );
        assert_eq!(PositionSet::new().to_string(), "{}");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[1,4,5,6],[3,5,7,8],[1,4],[1,2,7],[4,5,8]]");
        let p: Permutation = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(p, perm("2 1"));
        assert!(serde_json::from_str::<SubexcedantSeq>("[0,2]").is_err());
    }
}
