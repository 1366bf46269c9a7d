//! Slices, profiles and the forward code `b`.
//!
//! The slice `U_i` of a permutation is a decreasing sequence of labeled
//! intervals covering the values not yet used after `i` steps, together with
//! the sentinel `0`. `U_0 = ([0,n],0)`. At step `i` the entry `p_i` is
//! located in some interval of `U_{i-1}`; the label of that interval is
//! `b_i`, and the interval is split, trimmed at the top, trimmed at the
//! bottom or deleted according to where `p_i` sits inside it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lehmer::lehmer_encode;
use crate::word::{Permutation, SubexcedantSeq};

/// The four-way classification of a position, `[not P1] + 2 [not P2]`.
///
/// For a permutation, P1 is "p_i + 1 occurs to the right of p_i" and P2 is
/// "p_i - 1 occurs to the right of p_i in p followed by 0". For a
/// subexcedant sequence the same table is driven by R1 ("s_i occurs again
/// later") and R2 ("the symbol i - 1 occurs in s").
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum LambdaClass {
    /// Both properties hold; `p_i` is interior to its interval.
    Split = 0,
    /// Only the second holds; `p_i` is the top of its interval.
    TrimTop = 1,
    /// Only the first holds; `p_i` is the bottom of its interval.
    TrimBottom = 2,
    /// Neither holds; `p_i` is a one-element interval.
    Remove = 3,
}

impl LambdaClass {
    pub fn from_properties(first: bool, second: bool) -> Self {
        match (first, second) {
            (true, true) => Self::Split,
            (false, true) => Self::TrimTop,
            (true, false) => Self::TrimBottom,
            (false, false) => Self::Remove,
        }
    }

    pub fn value(self) -> u8 {
        self as u8
    }

    /// Which case applies when `value` is removed from `interval`.
    pub fn of_position_in(interval: Interval, value: usize) -> Self {
        debug_assert!(interval.contains(value));
        Self::from_properties(value < interval.hi, value > interval.lo)
    }
}

impl From<LambdaClass> for u8 {
    fn from(c: LambdaClass) -> u8 {
        c.value()
    }
}

impl TryFrom<u8> for LambdaClass {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Self::Split),
            1 => Ok(Self::TrimTop),
            2 => Ok(Self::TrimBottom),
            3 => Ok(Self::Remove),
            _ => Err(Error::Internal(format!("lambda value {v} is not in 0..=3"))),
        }
    }
}

impl fmt::Display for LambdaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Formats a lambda sequence as `0,0,1,1,3,2,1,3`.
pub fn format_lambda(lambda: &[LambdaClass]) -> String {
    let parts: Vec<String> = lambda.iter().map(ToString::to_string).collect();
    parts.join(",")
}

pub fn lambda_perm(p: &Permutation) -> Vec<LambdaClass> {
    let n = p.len();
    let pos = p.positions();
    p.entries()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let successor_right = x < n && pos[x + 1] > i;
            // 0 sits after every entry, so value 1 always has P2.
            let predecessor_right = x == 1 || pos[x - 1] > i;
            LambdaClass::from_properties(successor_right, predecessor_right)
        })
        .collect()
}

pub fn lambda_seq(s: &SubexcedantSeq) -> Vec<LambdaClass> {
    let n = s.len();
    let mut present = vec![false; n];
    for &x in s.entries() {
        present[x] = true;
    }
    let mut seen_later = vec![false; n];
    let mut out = vec![LambdaClass::Split; n];
    for (i, &x) in s.entries().iter().enumerate().rev() {
        out[i] = LambdaClass::from_properties(seen_later[x], present[i]);
        seen_later[x] = true;
    }
    out
}

/// A nonempty integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledInterval {
    pub interval: Interval,
    pub label: usize,
}

impl fmt::Display for LabeledInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.interval, self.label)
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// The slice `U_step`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub step: usize,
    pub intervals: Vec<LabeledInterval>,
}

impl Slice {
    /// `U_0 = ([0,n],0)`.
    pub fn initial(n: usize) -> Self {
        Self {
            step: 0,
            intervals: vec![LabeledInterval {
                interval: Interval::new(0, n),
                label: 0,
            }],
        }
    }

    pub fn labels(&self) -> Vec<usize> {
        self.intervals.iter().map(|li| li.label).collect()
    }

    /// Index of the interval containing `value`.
    pub fn locate(&self, value: usize) -> Option<usize> {
        // Intervals are decreasing; the first with lo <= value is the only candidate.
        let k = self
            .intervals
            .iter()
            .position(|li| li.interval.lo <= value)?;
        self.intervals[k].interval.contains(value).then_some(k)
    }

    /// Removes `value` and moves to the next step. Returns the label of the
    /// interval that held `value` and the case that was applied.
    fn advance(&mut self, value: usize) -> Result<(usize, LambdaClass)> {
        let v = self.locate(value).ok_or_else(|| {
            Error::Internal(format!(
                "value {value} lies in no interval of slice {}",
                self.step
            ))
        })?;
        let LabeledInterval { interval, label } = self.intervals[v];
        let case = LambdaClass::of_position_in(interval, value);
        let ivs = &mut self.intervals;
        let last_label = ivs.last().map(|li| li.label).unwrap_or_default();

        // Geometry first; labels are reassigned below from the old label list.
        let mut labels: Vec<usize> = ivs.iter().map(|li| li.label).collect();
        match case {
            LambdaClass::Split => {
                let upper = Interval::new(value + 1, interval.hi);
                let lower = Interval::new(interval.lo, value - 1);
                ivs[v].interval = upper;
                ivs.insert(
                    v + 1,
                    LabeledInterval {
                        interval: lower,
                        label: 0,
                    },
                );
                labels.push(last_label + 1);
            }
            LambdaClass::TrimTop => {
                assert!(interval.lo < value, "trim-top on a one-element interval");
                ivs[v].interval = Interval::new(interval.lo, value - 1);
                labels.remove(v);
                labels.push(last_label + 1);
            }
            LambdaClass::TrimBottom => {
                ivs[v].interval = Interval::new(value + 1, interval.hi);
                *labels.last_mut().expect("slice is never empty") += 1;
            }
            LambdaClass::Remove => {
                ivs.remove(v);
                labels.remove(v);
                *labels.last_mut().expect("0 keeps the slice nonempty") = last_label + 1;
            }
        }
        debug_assert_eq!(labels.len(), ivs.len());
        for (li, l) in ivs.iter_mut().zip(labels) {
            li.label = l;
        }
        self.step += 1;
        Ok((label, case))
    }

    /// The complement of this slice within `[1, n]`, as decreasing maximal
    /// intervals.
    pub fn profile(&self, n: usize) -> Profile {
        let mut out = Vec::new();
        let mut top = n;
        for li in &self.intervals {
            let iv = li.interval;
            if iv.hi < top {
                out.push(Interval::new(iv.hi + 1, top));
            }
            if iv.lo == 0 {
                break;
            }
            top = iv.lo - 1;
        }
        Profile {
            step: self.step,
            intervals: out,
        }
    }

    /// Checks every structural property a slice of `p` must have at its
    /// step: decreasing disjoint intervals, strictly increasing labels in
    /// `[0, step]` ending at `step`, `0` in the last interval, coverage of
    /// exactly the unused values plus `0`, and the Lehmer entry
    /// `L(p)_{step+1} = card([p_{step+1}, n] minus the slice)`.
    pub fn check_invariants(&self, p: &Permutation) -> Result<()> {
        let fail = |what: String| Err(Error::Internal(format!("slice U_{}: {what}", self.step)));
        let n = p.len();
        let i = self.step;
        let ivs = &self.intervals;
        let Some(last) = ivs.last() else {
            return fail("no intervals".into());
        };
        for w in ivs.windows(2) {
            if w[1].interval.hi >= w[0].interval.lo {
                return fail(format!("intervals {} and {} not decreasing", w[0], w[1]));
            }
            if w[1].label <= w[0].label {
                return fail(format!(
                    "labels {} and {} not increasing",
                    w[0].label, w[1].label
                ));
            }
        }
        if last.label != i {
            return fail(format!("last label {} differs from step", last.label));
        }
        if ivs
            .iter()
            .any(|li| li.interval.lo > li.interval.hi || li.interval.hi > n)
        {
            return fail("malformed interval".into());
        }
        if !last.interval.contains(0) {
            return fail("0 not in last interval".into());
        }
        let mut covered = vec![false; n + 1];
        for li in ivs {
            covered[li.interval.lo..=li.interval.hi].fill(true);
        }
        let mut expected = vec![false; n + 1];
        expected[0] = true;
        for &x in &p.entries()[i..] {
            expected[x] = true;
        }
        if covered != expected {
            return fail("union differs from unused values and 0".into());
        }
        if i < n {
            let next = p.at(i + 1);
            let used_above = (next..=n).filter(|&x| !covered[x]).count();
            let code = lehmer_encode(p);
            if code.at(i + 1) != used_above {
                return fail(format!(
                    "Lehmer entry {} is {}, slice gives {used_above}",
                    i + 1,
                    code.at(i + 1)
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.intervals)
    }
}

/// The profile at a step: decreasing maximal intervals covering the values
/// already used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub step: usize,
    pub intervals: Vec<Interval>,
}

impl Profile {
    pub fn cardinalities(&self) -> Vec<usize> {
        self.intervals.iter().map(Interval::len).collect()
    }

    /// Decreasing, non-contiguous, total size `step`, union equal to the
    /// first `step` entries of `p`.
    pub fn check_invariants(&self, p: &Permutation) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("profile {}: {what}", self.step)));
        for w in self.intervals.windows(2) {
            if w[1].hi + 1 >= w[0].lo {
                return fail("intervals not decreasing and separated");
            }
        }
        if self.cardinalities().iter().sum::<usize>() != self.step {
            return fail("total size differs from step");
        }
        let mut prefix: Vec<usize> = p.entries()[..self.step].to_vec();
        prefix.sort_unstable();
        let mut union: Vec<usize> = self.intervals.iter().flat_map(|iv| iv.lo..=iv.hi).collect();
        union.sort_unstable();
        if union != prefix {
            return fail("union differs from the prefix values");
        }
        Ok(())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.intervals)
    }
}

/// Runs the slice process on `p`, calling `visit(slice, i)` on `U_{i-1}`
/// before step `i` consumes `p_i`, and collecting `(b_i, case_i)`.
fn walk(p: &Permutation, mut visit: impl FnMut(&Slice)) -> Vec<(usize, LambdaClass)> {
    let mut slice = Slice::initial(p.len());
    p.entries()
        .iter()
        .map(|&x| {
            visit(&slice);
            slice
                .advance(x)
                .expect("every unused value lies in some slice interval")
        })
        .collect()
}

/// `U_0, ..., U_{n-1}`.
pub fn slices(p: &Permutation) -> Vec<Slice> {
    let mut out = Vec::with_capacity(p.len());
    walk(p, |s| out.push(s.clone()));
    out
}

/// Profiles at steps `1, ..., n-1`.
pub fn profiles(p: &Permutation) -> Vec<Profile> {
    let n = p.len();
    slices(p).iter().skip(1).map(|s| s.profile(n)).collect()
}

/// The code `b(p)`: `b_i` is the label of the interval of `U_{i-1}` that
/// contains `p_i`.
pub fn b_encode(p: &Permutation) -> SubexcedantSeq {
    let code = walk(p, |_| ())
        .into_iter()
        .map(|(label, _)| label)
        .collect();
    SubexcedantSeq::from_entries_unchecked(code)
}

/// The step-by-step text trace: `U_i = ...` for every slice and, from step
/// 1 on, `X_i = ...` for the matching profile.
pub fn format_trace(p: &Permutation) -> String {
    let n = p.len();
    let mut out = String::new();
    for (i, u) in slices(p).iter().enumerate() {
        out.push_str(&format!("U_{i} = {u}\n"));
        if i > 0 {
            out.push_str(&format!("X_{i} = {}\n", u.profile(n)));
        }
    }
    out
}

/// The case applied at each step of the slice process, read off the
/// interval geometry rather than from P1/P2.
pub fn geometric_lambda(p: &Permutation) -> Vec<LambdaClass> {
    walk(p, |_| ()).into_iter().map(|(_, case)| case).collect()
}

/// Slices and profiles of `p` with every invariant checked at every step.
pub fn checked_trace(p: &Permutation) -> Result<(Vec<Slice>, Vec<Profile>)> {
    let n = p.len();
    let slices = slices(p);
    for s in &slices {
        s.check_invariants(p)?;
    }
    let profiles: Vec<Profile> = slices.iter().skip(1).map(|s| s.profile(n)).collect();
    for x in &profiles {
        x.check_invariants(p)?;
    }
    let geometric = geometric_lambda(p);
    if geometric != lambda_perm(p) {
        return Err(Error::Internal(format!(
            "interval geometry gives lambda {} but P1/P2 give {}",
            format_lambda(&geometric),
            format_lambda(&lambda_perm(p))
        )));
    }
    Ok((slices, profiles))
}
