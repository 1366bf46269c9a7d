//! The inverse code `b^-1`.
//!
//! The labels of the slices and the sizes of the profile intervals of a
//! permutation are determined by its code `s = b(p)` alone, even though the
//! interval endpoints are not. Walking `s` left to right, we keep the
//! alternating chain of slice and profile segments (ordered from the value
//! `n` down to `0`), read off each Lehmer entry `c_i` as the number of used
//! values above the segment `s_i` points at, and finally decode `c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lehmer::lehmer_decode;
use crate::slicer::{b_encode, lambda_seq, LambdaClass};
use crate::word::{Permutation, SubexcedantSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segment {
    /// A slice interval, known only by its label.
    Slice { label: usize },
    /// A maximal run of used values.
    Profile { size: usize },
}

/// Slice and profile segments in decreasing value order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentChain {
    segments: Vec<Segment>,
    step: usize,
}

impl SegmentChain {
    pub fn new() -> Self {
        Self {
            segments: vec![Segment::Slice { label: 0 }],
            step: 0,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Whether the value `n` is already used.
    pub fn top_is_profile(&self) -> bool {
        matches!(self.segments.first(), Some(Segment::Profile { .. }))
    }

    pub fn labels(&self) -> Vec<usize> {
        self.segments
            .iter()
            .filter_map(|s| match *s {
                Segment::Slice { label } => Some(label),
                Segment::Profile { .. } => None,
            })
            .collect()
    }

    pub fn profile_sizes(&self) -> Vec<usize> {
        self.segments
            .iter()
            .filter_map(|s| match *s {
                Segment::Profile { size } => Some(size),
                Segment::Slice { .. } => None,
            })
            .collect()
    }

    fn profile_size_mut(&mut self, k: usize) -> Result<&mut usize> {
        match self.segments.get_mut(k) {
            Some(Segment::Profile { size }) => Ok(size),
            _ => Err(Error::Internal(format!(
                "segment {k} is not a profile segment"
            ))),
        }
    }

    /// Consumes one entry of the code with its lambda class and returns the
    /// Lehmer entry `c_i` at that step.
    pub fn apply(&mut self, entry: usize, case: LambdaClass) -> Result<usize> {
        let idx = self
            .segments
            .iter()
            .position(|s| *s == Segment::Slice { label: entry })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no slice segment labeled {entry} at step {}",
                    self.step + 1
                ))
            })?;
        let rank = self.segments[..idx]
            .iter()
            .filter(|s| matches!(s, Segment::Slice { .. }))
            .count();
        // With v = rank + 1 the entry is the size of the first v profile
        // intervals if n is used, else of the first v - 1.
        let above = rank + usize::from(self.top_is_profile());
        let lehmer_entry: usize = self.profile_sizes().iter().take(above).sum();
        debug_assert_eq!(
            lehmer_entry,
            self.segments[..idx]
                .iter()
                .map(|s| match *s {
                    Segment::Profile { size } => size,
                    Segment::Slice { .. } => 0,
                })
                .sum::<usize>()
        );

        let mut labels = self.labels();
        let last = *labels.last().expect("chain always holds a slice segment");
        let placeholder = Segment::Slice { label: usize::MAX };
        match case {
            LambdaClass::Split => {
                self.segments.splice(
                    idx..=idx,
                    [placeholder, Segment::Profile { size: 1 }, placeholder],
                );
                labels.push(last + 1);
            }
            LambdaClass::TrimTop => {
                if idx > 0 {
                    *self.profile_size_mut(idx - 1)? += 1;
                } else {
                    self.segments.insert(0, Segment::Profile { size: 1 });
                }
                labels.remove(rank);
                labels.push(last + 1);
            }
            LambdaClass::TrimBottom => {
                *self.profile_size_mut(idx + 1)? += 1;
                *labels.last_mut().expect("nonempty") += 1;
            }
            LambdaClass::Remove => {
                let below = *self.profile_size_mut(idx + 1)?;
                if idx > 0 {
                    let above = *self.profile_size_mut(idx - 1)?;
                    self.segments.splice(
                        idx - 1..=idx + 1,
                        [Segment::Profile {
                            size: above + 1 + below,
                        }],
                    );
                } else {
                    self.segments.remove(idx);
                    *self.profile_size_mut(idx)? += 1;
                }
                labels.remove(rank);
                *labels
                    .last_mut()
                    .ok_or_else(|| Error::Internal("removed the last slice segment".into()))? =
                    last + 1;
            }
        }

        let mut fresh = labels.into_iter();
        for seg in &mut self.segments {
            if let Segment::Slice { label } = seg {
                *label = fresh
                    .next()
                    .ok_or_else(|| Error::Internal("label list too short".into()))?;
            }
        }
        self.step += 1;
        self.check()?;
        Ok(lehmer_entry)
    }

    fn check(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Internal(format!(
                "chain after step {}: {what}",
                self.step
            )))
        };
        for w in self.segments.windows(2) {
            if matches!(w, [Segment::Profile { .. }, Segment::Profile { .. }]) {
                return fail("adjacent profile segments");
            }
        }
        let labels = self.labels();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return fail("slice labels not increasing");
        }
        if labels.last() != Some(&self.step) {
            return fail("last label differs from step");
        }
        if !matches!(self.segments.last(), Some(Segment::Slice { .. })) {
            return fail("chain does not end with the slice holding 0");
        }
        if self.profile_sizes().iter().sum::<usize>() != self.step {
            return fail("profile sizes do not add up to the step");
        }
        Ok(())
    }
}

impl Default for SegmentChain {
    fn default() -> Self {
        Self::new()
    }
}

/// `S0 P1 S1 ...`: slice segments by label, profile segments by size.
impl fmt::Display for SegmentChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match s {
                Segment::Slice { label } => write!(f, "S{label}")?,
                Segment::Profile { size } => write!(f, "P{size}")?,
            }
        }
        Ok(())
    }
}

/// Everything the decoder computes along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeTrace {
    /// Chain states after steps `0, 1, ..., n`.
    pub chains: Vec<SegmentChain>,
    pub lehmer: SubexcedantSeq,
    pub permutation: Permutation,
}

pub fn decode_trace(s: &SubexcedantSeq) -> Result<DecodeTrace> {
    let n = s.len();
    let lambda = lambda_seq(s);
    // n is used before step i exactly when no 0 occurs in s_i ... s_n.
    let last_zero = s.entries().iter().rposition(|&x| x == 0).unwrap_or(0);

    let mut chain = SegmentChain::new();
    let mut chains = vec![chain.clone()];
    let mut code = Vec::with_capacity(n);
    for (i, (&entry, &case)) in s.entries().iter().zip(&lambda).enumerate() {
        if chain.top_is_profile() != (i > last_zero) {
            return Err(Error::Internal(format!(
                "step {}: chain and code disagree on whether {n} is used",
                i + 1
            )));
        }
        code.push(chain.apply(entry, case)?);
        chains.push(chain.clone());
    }
    let lehmer = SubexcedantSeq::new(code)?;
    let permutation = lehmer_decode(&lehmer);
    Ok(DecodeTrace {
        chains,
        lehmer,
        permutation,
    })
}

/// `b^-1(s)`.
pub fn b_decode(s: &SubexcedantSeq) -> Permutation {
    decode_trace(s)
        .expect("every subexcedant sequence is the code of a permutation")
        .permutation
}

pub fn roundtrip_check(p: &Permutation) -> bool {
    b_decode(&b_encode(p)) == *p
}
