//! Independent oracles. Nothing here calls into the code paths under test
//! except to enumerate inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use permcode::enumerate::{Options, Words};
use permcode::{b_encode, Permutation, SubexcedantSeq};

/// All permutations of 1..=n by recursive insertion, independent of the
/// library's lexicographic successor.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

pub fn all_seqs(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=i).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn naive_des(w: &[usize]) -> usize {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] > w[i + 1])
        .count()
}

pub fn naive_asc(w: &[usize]) -> usize {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] < w[i + 1])
        .count()
}

/// ides p = des p^-1: count values v with v + 1 placed before v.
pub fn naive_ides(p: &[usize]) -> usize {
    let pos = |v: usize| p.iter().position(|&x| x == v).unwrap();
    (1..p.len()).filter(|&v| pos(v + 1) < pos(v)).count()
}

pub fn naive_row(s: &[usize]) -> usize {
    let mut distinct: Vec<usize> = s.iter().copied().filter(|&x| x != 0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len()
}

pub fn naive_lehmer(p: &[usize]) -> Vec<usize> {
    (0..p.len())
        .map(|j| (0..j).filter(|&i| p[i] > p[j]).count())
        .collect()
}

/// Eulerian numbers A(n, k) by the classical recurrence.
pub fn eulerian_numbers(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 2..=n {
        let mut next = vec![0u64; m];
        for k in 0..m {
            let stay = if k < row.len() {
                (k as u64 + 1) * row[k]
            } else {
                0
            };
            let carry = if k > 0 {
                (m - k) as u64 * row[k - 1]
            } else {
                0
            };
            next[k] = stay + carry;
        }
        row = next;
    }
    row
}

/// Joint (des, ides) counts computed by brute force.
pub fn brute_double_eulerian(n: usize) -> BTreeMap<(usize, usize), u64> {
    let mut t = BTreeMap::new();
    for p in all_perms(n) {
        *t.entry((naive_des(&p), naive_ides(&p))).or_default() += 1;
    }
    t
}

/// Reference inverse of `b`: the preimage table obtained by encoding every
/// permutation.
pub fn preimage_table(n: usize) -> HashMap<SubexcedantSeq, Permutation> {
    Words::<Permutation>::all(n)
        .map(|p| (b_encode(&p), p))
        .collect()
}

pub fn opts() -> Options {
    Options::default()
}
