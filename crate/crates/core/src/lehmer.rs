//! The Lehmer code: entry `j` counts the earlier entries larger than `p_j`.

use crate::word::{Permutation, SubexcedantSeq};

pub fn lehmer_encode(p: &Permutation) -> SubexcedantSeq {
    let e = p.entries();
    let code = (0..e.len())
        .map(|j| e[..j].iter().filter(|&&x| x > e[j]).count())
        .collect();
    SubexcedantSeq::from_entries_unchecked(code)
}

/// Right to left: `p_j` is the `(j - s_j)`-th smallest value not yet used.
pub fn lehmer_decode(s: &SubexcedantSeq) -> Permutation {
    let n = s.len();
    let mut unused: Vec<usize> = (1..=n).collect();
    let mut entries = vec![0; n];
    for j in (1..=n).rev() {
        let rank = j - s.at(j);
        entries[j - 1] = unused.remove(rank - 1);
    }
    Permutation::from_entries_unchecked(entries)
}

/// Number of distinct nonzero symbols in the Lehmer code.
pub fn dumont_stat(p: &Permutation) -> usize {
    lehmer_encode(p).row()
}
