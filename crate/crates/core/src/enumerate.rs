//! Exhaustive generators, distribution tables and the theorem verifiers.
//!
//! Every verifier walks all `n!` permutations or all `n!` subexcedant
//! sequences. Work can be split into contiguous blocks of the lexicographic
//! order ([`Options::jobs`]); per-block results are merged by pointwise
//! addition, so every report is independent of the partitioning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse::{b_decode, decode_trace};
use crate::lehmer::{dumont_stat, lehmer_encode};
use crate::slicer::{
    b_encode, checked_trace, format_lambda, lambda_perm, lambda_seq, profiles, slices,
};
use crate::word::{Permutation, PositionSet, SubexcedantSeq};

pub const DEFAULT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest `n` accepted by generators and verifiers.
    pub cap: usize,
    /// Number of worker threads.
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            jobs: 1,
        }
    }
}

impl Options {
    pub fn with_jobs(jobs: usize) -> Self {
        Self {
            jobs,
            ..Self::default()
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        // 20! is the largest factorial that fits in u64.
        if n == 0 || n > self.cap || n > 20 {
            Err(Error::EnumerationCap {
                n,
                cap: self.cap.min(20),
            })
        } else {
            Ok(())
        }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Words that can be listed in a fixed order of length `n!`.
pub trait Enumerable: Sized + Clone {
    /// The word of rank `rank` (0-based) among all words of length `n`.
    fn unrank(n: usize, rank: u64) -> Self;

    /// Steps to the successor; returns false (and leaves `self` unspecified)
    /// at the last word.
    fn advance(&mut self) -> bool;

    fn rank(&self) -> u64;
}

/// Lexicographic order.
impl Enumerable for Permutation {
    fn unrank(n: usize, mut rank: u64) -> Self {
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut entries = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k);
            entries.push(pool.remove((rank / f) as usize));
            rank %= f;
        }
        Permutation::from_entries_unchecked(entries)
    }

    fn advance(&mut self) -> bool {
        let e = self.entries_mut();
        let Some(i) = e.windows(2).rposition(|w| w[0] < w[1]) else {
            return false;
        };
        let j = e.iter().rposition(|&x| x > e[i]).expect("e[i + 1] > e[i]");
        e.swap(i, j);
        e[i + 1..].reverse();
        true
    }

    fn rank(&self) -> u64 {
        let e = self.entries();
        let n = e.len();
        (0..n)
            .map(|i| e[i + 1..].iter().filter(|&&x| x < e[i]).count() as u64 * factorial(n - 1 - i))
            .sum()
    }
}

/// Mixed-radix counting with radices `1, 2, ..., n`, last entry fastest.
impl Enumerable for SubexcedantSeq {
    fn unrank(n: usize, mut rank: u64) -> Self {
        let mut entries = vec![0; n];
        for i in (0..n).rev() {
            let radix = i as u64 + 1;
            entries[i] = (rank % radix) as usize;
            rank /= radix;
        }
        SubexcedantSeq::from_entries_unchecked(entries)
    }

    fn advance(&mut self) -> bool {
        for (i, x) in self.entries_mut().iter_mut().enumerate().rev() {
            if *x < i {
                *x += 1;
                return true;
            }
            *x = 0;
        }
        false
    }

    fn rank(&self) -> u64 {
        self.entries()
            .iter()
            .enumerate()
            .fold(0, |r, (i, &x)| r * (i as u64 + 1) + x as u64)
    }
}

/// A contiguous run of words in enumeration order.
pub struct Words<W> {
    next: Option<W>,
    remaining: u64,
}

impl<W: Enumerable> Words<W> {
    pub fn all(n: usize) -> Self {
        Self::block(n, 0, factorial(n))
    }

    /// Words of ranks `start..end`.
    pub fn block(n: usize, start: u64, end: u64) -> Self {
        let remaining = end.saturating_sub(start);
        Self {
            next: (remaining > 0).then(|| W::unrank(n, start)),
            remaining,
        }
    }
}

impl<W: Enumerable> Iterator for Words<W> {
    type Item = W;

    fn next(&mut self) -> Option<W> {
        let current = self.next.take()?;
        self.remaining -= 1;
        if self.remaining > 0 {
            let mut succ = current.clone();
            if succ.advance() {
                self.next = Some(succ);
            }
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn gen_perms(n: usize, opts: &Options) -> Result<Words<Permutation>> {
    opts.check_n(n)?;
    Ok(Words::all(n))
}

/// All subexcedant sequences of length `n` in mixed-radix order.
pub fn gen_subexcedant(n: usize, opts: &Options) -> Result<Words<SubexcedantSeq>> {
    opts.check_n(n)?;
    Ok(Words::all(n))
}

/// Folds `step` over every word of length `n`, split into `jobs` contiguous
/// blocks run on separate threads, and combines the block results with
/// `merge` in block order.
pub fn par_fold<W, A, I, F, M>(n: usize, jobs: usize, init: I, step: F, merge: M) -> A
where
    W: Enumerable,
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, &W) + Sync,
    M: Fn(A, A) -> A,
{
    let total = factorial(n);
    let jobs = (jobs.max(1) as u64).min(total);
    let run = |start: u64, end: u64| {
        let mut acc = init();
        for (r, w) in (start..end).zip(Words::<W>::block(n, start, end)) {
            step(&mut acc, r, &w);
        }
        acc
    };
    let bounds: Vec<(u64, u64)> = (0..jobs)
        .map(|j| (total * j / jobs, total * (j + 1) / jobs))
        .collect();
    if jobs == 1 {
        return run(0, total);
    }
    let parts: Vec<A> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(s, e)| {
                let run = &run;
                scope.spawn(move || run(s, e))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    parts.into_iter().reduce(merge).expect("at least one block")
}

/// Keeps the failure with the smallest rank so that reports do not depend
/// on the partitioning.
#[derive(Clone, Debug, Default)]
struct FirstFailure(Option<(u64, String)>);

impl FirstFailure {
    fn record(&mut self, rank: u64, what: impl FnOnce() -> String) {
        if self.0.as_ref().is_none_or(|(r, _)| rank < *r) {
            self.0 = Some((rank, what()));
        }
    }

    fn merge(self, other: Self) -> Self {
        match (self.0, other.0) {
            (Some(a), Some(b)) => Self(Some(if a.0 <= b.0 { a } else { b })),
            (a, b) => Self(a.or(b)),
        }
    }

    fn message(self) -> Option<String> {
        self.0.map(|(_, m)| m)
    }
}

/// Counts indexed by a key, summing to `n!` when built over a full domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistTable<K: Ord> {
    pub n: usize,
    pub counts: BTreeMap<K, u64>,
}

impl<K: Ord> DistTable<K> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: K) {
        *self.counts.entry(key).or_default() += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Pointwise addition.
    pub fn merge(mut self, other: Self) -> Self {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_default() += c;
        }
        self
    }

    /// Some key whose counts differ, with both counts.
    pub fn first_difference<'a>(&'a self, other: &'a Self) -> Option<(&'a K, u64, u64)> {
        let keys: BTreeSet<&K> = self.counts.keys().chain(other.counts.keys()).collect();
        keys.into_iter()
            .map(|k| (k, self.get(k), other.get(k)))
            .find(|(_, a, b)| a != b)
    }
}

impl DistTable<(usize, usize)> {
    pub fn transpose(&self) -> Self {
        Self {
            n: self.n,
            counts: self
                .counts
                .iter()
                .map(|(&(d, e), &c)| ((e, d), c))
                .collect(),
        }
    }

    /// Rows indexed by the first statistic `0..n`, columns by the second.
    pub fn dense(&self) -> Vec<Vec<u64>> {
        let size = self.n.max(1);
        let mut m = vec![vec![0; size]; size];
        for (&(d, e), &c) in &self.counts {
            m[d][e] = c;
        }
        m
    }

    /// `sum c * u^(d+1) v^(e+1)`, ordered by `(d, e)`; unit coefficients omitted.
    pub fn polynomial(&self) -> String {
        let terms: Vec<String> = self
            .counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&(d, e), &c)| {
                let monomial = format!("u^{}v^{}", d + 1, e + 1);
                if c == 1 {
                    monomial
                } else {
                    format!("{c}{monomial}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Whether a table is built over permutations or subexcedant sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Perms,
    Seqs,
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "perms" => Ok(Self::Perms),
            "seqs" => Ok(Self::Seqs),
            _ => Err(format!("unknown side {s:?}, expected perms or seqs")),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Perms => "perms",
            Self::Seqs => "seqs",
        })
    }
}

/// Joint distribution of `(des, ides)` over permutations, or `(asc, row)`
/// over subexcedant sequences. Exponents are stored unshifted.
pub fn double_eulerian(n: usize, side: Side, opts: &Options) -> Result<DistTable<(usize, usize)>> {
    opts.check_n(n)?;
    let table = match side {
        Side::Perms => par_fold(
            n,
            opts.jobs,
            || DistTable::new(n),
            |t, _, p: &Permutation| t.add((p.des(), p.ides())),
            DistTable::merge,
        ),
        Side::Seqs => par_fold(
            n,
            opts.jobs,
            || DistTable::new(n),
            |t, _, s: &SubexcedantSeq| t.add((s.asc(), s.row())),
            DistTable::merge,
        ),
    };
    Ok(table)
}

/// Distribution of the five-tuple of set statistics, keyed canonically.
pub fn five_tuple_distribution(n: usize, side: Side, opts: &Options) -> Result<DistTable<String>> {
    opts.check_n(n)?;
    let table = match side {
        Side::Perms => par_fold(
            n,
            opts.jobs,
            || DistTable::new(n),
            |t, _, p: &Permutation| t.add(p.five_tuple().canonical_key()),
            DistTable::merge,
        ),
        Side::Seqs => par_fold(
            n,
            opts.jobs,
            || DistTable::new(n),
            |t, _, s: &SubexcedantSeq| t.add(s.five_tuple().canonical_key()),
            DistTable::merge,
        ),
    };
    Ok(table)
}

/// A dense double Eulerian table as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub side: Side,
    pub rows: Vec<Vec<u64>>,
    pub polynomial: String,
    pub total: u64,
}

impl TableReport {
    pub fn new(side: Side, table: &DistTable<(usize, usize)>) -> Self {
        Self {
            side,
            rows: table.dense(),
            polynomial: table.polynomial(),
            total: table.total(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub check: String,
    pub pass: bool,
    /// Number of words examined.
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableReport>,
    /// Named marginal distributions, indexed by statistic value.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub distributions: BTreeMap<String, Vec<u64>>,
    /// Corollary 2 read on the integer statistics `(asc, row)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bistatistic_pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    fn new(n: usize, check: Check) -> Self {
        Self {
            n,
            check: check.name().into(),
            pass: true,
            checked: 0,
            counterexample: None,
            table: None,
            distributions: BTreeMap::new(),
            bistatistic_pass: None,
            notes: Vec::new(),
        }
    }

    fn fail_with(&mut self, counterexample: Option<String>) {
        if let Some(c) = counterexample {
            self.pass = false;
            self.counterexample.get_or_insert(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{} n={}: {verdict} ({} checked)",
            self.check, self.n, self.checked
        )?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        if let Some(b) = self.bistatistic_pass {
            writeln!(
                f,
                "  (asc,row) vs (row,asc): {}",
                if b { "PASS" } else { "FAIL" }
            )?;
        }
        for (name, dist) in &self.distributions {
            let parts: Vec<String> = dist.iter().map(ToString::to_string).collect();
            writeln!(f, "  {name}: ({})", parts.join(","))?;
        }
        if let Some(t) = &self.table {
            writeln!(f, "  side: {}", t.side)?;
            for row in &t.rows {
                let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  {}", parts.join(" "))?;
            }
            writeln!(f, "  A(u,v) = {}", t.polynomial)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// The available exhaustive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// Pointwise five-tuple transport under `b`, and equal distributions.
    Theorem2,
    Bijection,
    Corollary2,
    Eulerian,
    /// Lambda from P1/P2, from R1/R2 on the code, and from the geometry agree.
    Lambda,
    /// Slice and profile invariants at every step.
    Slices,
    /// The decoder's chain agrees with the forward slices and profiles.
    Chain,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Theorem2,
        Check::Bijection,
        Check::Corollary2,
        Check::Eulerian,
        Check::Lambda,
        Check::Slices,
        Check::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem2 => "theorem2",
            Check::Bijection => "bijection",
            Check::Corollary2 => "corollary2",
            Check::Eulerian => "eulerian",
            Check::Lambda => "lambda",
            Check::Slices => "slices",
            Check::Chain => "chain",
        }
    }

    pub fn run(self, n: usize, opts: &Options) -> Result<Report> {
        match self {
            Check::Theorem2 => verify_theorem2(n, opts),
            Check::Bijection => verify_bijection(n, opts),
            Check::Corollary2 => verify_corollary2(n, opts),
            Check::Eulerian => eulerian_check(n, opts),
            Check::Lambda => verify_lambda(n, opts),
            Check::Slices => verify_slices(n, opts),
            Check::Chain => verify_chain(n, opts),
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "2" | "theorem2" => Ok(Check::Theorem2),
            _ => Check::ALL
                .into_iter()
                .find(|c| c.name() == s)
                .ok_or_else(|| format!("unknown check {s:?}")),
        }
    }
}

/// Runs `f` on every permutation and reports the lowest-ranked failure.
fn check_each_perm(
    n: usize,
    check: Check,
    opts: &Options,
    f: impl Fn(&Permutation) -> Option<String> + Sync,
) -> Result<Report> {
    opts.check_n(n)?;
    let failure = par_fold(
        n,
        opts.jobs,
        FirstFailure::default,
        |acc, rank, p: &Permutation| {
            if let Some(msg) = f(p) {
                acc.record(rank, || msg);
            }
        },
        FirstFailure::merge,
    );
    let mut report = Report::new(n, check);
    report.checked = factorial(n);
    report.fail_with(failure.message());
    Ok(report)
}

/// For every permutation `p`, `(Des, Ides, LrM, Lrm, RlM) p` equals
/// `(Asc, Row, Pos0, Max, Rlm) b(p)`; and the two five-tuple distributions
/// agree as multisets.
pub fn verify_theorem2(n: usize, opts: &Options) -> Result<Report> {
    let mut report = check_each_perm(n, Check::Theorem2, opts, |p| {
        let s = b_encode(p);
        let (tp, ts) = (p.five_tuple(), s.five_tuple());
        (tp != ts).then(|| format!("p = {p}, b(p) = {s}: {tp} vs {ts}"))
    })?;
    let perms = five_tuple_distribution(n, Side::Perms, opts)?;
    let seqs = five_tuple_distribution(n, Side::Seqs, opts)?;
    report.fail_with(perms.first_difference(&seqs).map(|(k, a, b)| {
        format!("five-tuple {k} occurs {a} times over permutations, {b} over sequences")
    }));
    Ok(report)
}

#[derive(Clone, Debug)]
struct ImageBits {
    bits: Vec<u64>,
    hits: u64,
    repeats: u64,
    failure: FirstFailure,
}

impl ImageBits {
    fn new(total: u64) -> Self {
        Self {
            bits: vec![0; total.div_ceil(64) as usize],
            hits: 0,
            repeats: 0,
            failure: FirstFailure::default(),
        }
    }

    fn set(&mut self, r: u64) {
        let (w, b) = ((r / 64) as usize, r % 64);
        if self.bits[w] >> b & 1 == 1 {
            self.repeats += 1;
        }
        self.bits[w] |= 1 << b;
        self.hits += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            self.repeats += u64::from((*a & b).count_ones());
            *a |= b;
        }
        self.hits += other.hits;
        self.repeats += other.repeats;
        self.failure = self.failure.merge(other.failure);
        self
    }

    fn distinct(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

/// `b` maps the `n!` permutations onto the `n!` subexcedant sequences
/// without repeats, and both round trips are identities.
pub fn verify_bijection(n: usize, opts: &Options) -> Result<Report> {
    opts.check_n(n)?;
    let total = factorial(n);
    let image = par_fold(
        n,
        opts.jobs,
        || ImageBits::new(total),
        |acc, rank, p: &Permutation| {
            let s = b_encode(p);
            acc.set(s.rank());
            let back = b_decode(&s);
            if back != *p {
                acc.failure
                    .record(rank, || format!("p = {p}: b(p) = {s} decodes to {back}"));
            }
        },
        ImageBits::merge,
    );
    let seq_failure = par_fold(
        n,
        opts.jobs,
        FirstFailure::default,
        |acc, rank, s: &SubexcedantSeq| {
            let p = b_decode(s);
            let again = b_encode(&p);
            if again != *s {
                acc.record(rank, || {
                    format!("s = {s}: b^-1(s) = {p} encodes to {again}")
                });
            }
        },
        FirstFailure::merge,
    );
    let mut report = Report::new(n, Check::Bijection);
    report.checked = 2 * total;
    let distinct = image.distinct();
    report.notes.push(format!(
        "{distinct} distinct images of {total} permutations"
    ));
    if image.repeats > 0 || distinct != total {
        report.fail_with(Some(format!(
            "{} repeated images; {distinct} of {total} sequences reached",
            image.repeats
        )));
    }
    report.fail_with(image.failure.message());
    report.fail_with(seq_failure.message());
    Ok(report)
}

fn set_pair_key(a: &PositionSet, b: &PositionSet) -> String {
    format!("({a},{b})")
}

#[derive(Clone, Debug)]
struct Cor2Acc {
    sets_asc_row: DistTable<String>,
    sets_row_asc: DistTable<String>,
    counts: DistTable<(usize, usize)>,
    set_witness: FirstFailure,
    count_witness: FirstFailure,
}

impl Cor2Acc {
    fn new(n: usize) -> Self {
        Self {
            sets_asc_row: DistTable::new(n),
            sets_row_asc: DistTable::new(n),
            counts: DistTable::new(n),
            set_witness: FirstFailure::default(),
            count_witness: FirstFailure::default(),
        }
    }

    fn merge(self, o: Self) -> Self {
        Self {
            sets_asc_row: self.sets_asc_row.merge(o.sets_asc_row),
            sets_row_asc: self.sets_row_asc.merge(o.sets_row_asc),
            counts: self.counts.merge(o.counts),
            set_witness: self.set_witness.merge(o.set_witness),
            count_witness: self.count_witness.merge(o.count_witness),
        }
    }
}

/// `(Asc, Row)` against `(Row, Asc)` over subexcedant sequences, both as
/// multisets of set pairs and per element through the witness
/// `t = b(p^-1)` with `p = b^-1(s)`.
///
/// `pass` is the set-valued claim. It fails for every `n >= 2`: `Asc s`
/// never contains `n` while `Row t` can. `bistatistic_pass` is the claim on
/// the integer statistics `(asc, row)`, which does hold.
pub fn verify_corollary2(n: usize, opts: &Options) -> Result<Report> {
    opts.check_n(n)?;
    let acc = par_fold(
        n,
        opts.jobs,
        || Cor2Acc::new(n),
        |acc, rank, s: &SubexcedantSeq| {
            let (asc, row) = (s.asc_set(), s.row_set());
            acc.sets_asc_row.add(set_pair_key(&asc, &row));
            acc.sets_row_asc.add(set_pair_key(&row, &asc));
            acc.counts.add((asc.len(), row.len()));
            let t = b_encode(&b_decode(s).inverse());
            let (t_asc, t_row) = (t.asc_set(), t.row_set());
            if (&asc, &row) != (&t_row, &t_asc) {
                acc.set_witness.record(rank, || {
                    format!(
                        "s = {s}: (Asc,Row) s = {} but t = {t} has (Row,Asc) t = {}",
                        set_pair_key(&asc, &row),
                        set_pair_key(&t_row, &t_asc)
                    )
                });
            }
            if (asc.len(), row.len()) != (t_row.len(), t_asc.len()) {
                acc.count_witness.record(rank, || {
                    format!(
                        "s = {s}: (asc,row) s = ({},{}) but t = {t} has (row,asc) = ({},{})",
                        asc.len(),
                        row.len(),
                        t_row.len(),
                        t_asc.len()
                    )
                });
            }
        },
        Cor2Acc::merge,
    );
    let mut report = Report::new(n, Check::Corollary2);
    report.checked = factorial(n);
    report.fail_with(
        acc.sets_asc_row
            .first_difference(&acc.sets_row_asc)
            .map(|(k, a, b)| {
                format!("set pair {k} occurs {a} times as (Asc,Row) and {b} times as (Row,Asc)")
            }),
    );
    report.fail_with(acc.set_witness.message());
    let bistat = acc.counts == acc.counts.transpose() && acc.count_witness.0.is_none();
    report.bistatistic_pass = Some(bistat);
    if let Some(m) = acc.count_witness.message() {
        report
            .notes
            .push(format!("bistatistic witness failure: {m}"));
    }
    Ok(report)
}

/// des and ides over permutations, asc and row over subexcedant sequences,
/// and Dumont's statistic over permutations share one distribution.
pub fn eulerian_check(n: usize, opts: &Options) -> Result<Report> {
    opts.check_n(n)?;
    let add = |a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        a.into_iter()
            .zip(b)
            .map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| p + q).collect())
            .collect()
    };
    let perm_side = par_fold(
        n,
        opts.jobs,
        || vec![vec![0u64; n]; 3],
        |h, _, p: &Permutation| {
            h[0][p.des()] += 1;
            h[1][p.ides()] += 1;
            h[2][dumont_stat(p)] += 1;
        },
        add,
    );
    let seq_side = par_fold(
        n,
        opts.jobs,
        || vec![vec![0u64; n]; 2],
        |h, _, s: &SubexcedantSeq| {
            h[0][s.asc()] += 1;
            h[1][s.row()] += 1;
        },
        add,
    );
    let mut report = Report::new(n, Check::Eulerian);
    report.checked = 2 * factorial(n);
    let names = ["des", "ides", "dumont", "asc", "row"];
    let dists: Vec<Vec<u64>> = perm_side.into_iter().chain(seq_side).collect();
    for (name, d) in names.iter().zip(&dists) {
        report.distributions.insert((*name).into(), d.clone());
    }
    for (name, d) in names.iter().zip(&dists).skip(1) {
        if *d != dists[0] {
            report.fail_with(Some(format!(
                "{name} distribution {d:?} differs from des {:?}",
                dists[0]
            )));
        }
    }
    Ok(report)
}

/// `lambda_perm(p) = lambda_seq(b(p))`, and both agree with the case the
/// slice process applies.
pub fn verify_lambda(n: usize, opts: &Options) -> Result<Report> {
    check_each_perm(n, Check::Lambda, opts, |p| {
        let s = b_encode(p);
        let (lp, ls) = (lambda_perm(p), lambda_seq(&s));
        (lp != ls).then(|| {
            format!(
                "p = {p}: lambda {} but b(p) = {s} gives {}",
                format_lambda(&lp),
                format_lambda(&ls)
            )
        })
    })
}

/// Every slice and profile of every permutation satisfies its invariants.
pub fn verify_slices(n: usize, opts: &Options) -> Result<Report> {
    check_each_perm(n, Check::Slices, opts, |p| {
        checked_trace(p).err().map(|e| format!("p = {p}: {e}"))
    })
}

/// The decoder's segment chain reproduces, step by step, the slice labels
/// and profile sizes of the permutation it decodes to, and emits its
/// Lehmer code.
pub fn verify_chain(n: usize, opts: &Options) -> Result<Report> {
    check_each_perm(n, Check::Chain, opts, |p| {
        let trace = match decode_trace(&b_encode(p)) {
            Ok(t) => t,
            Err(e) => return Some(format!("p = {p}: {e}")),
        };
        if trace.lehmer != lehmer_encode(p) {
            return Some(format!(
                "p = {p}: decoder emitted {} as Lehmer code",
                trace.lehmer
            ));
        }
        let sl = slices(p);
        let pr = profiles(p);
        for i in 1..p.len() {
            let chain = &trace.chains[i];
            if chain.labels() != sl[i].labels()
                || chain.profile_sizes() != pr[i - 1].cardinalities()
            {
                return Some(format!(
                    "p = {p}: step {i} chain {chain} vs slice {} profile {}",
                    sl[i],
                    pr[i - 1]
                ));
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words<W: Enumerable>(n: usize) -> Vec<W> {
        Words::all(n).collect()
    }

    #[test]
    fn permutations_lexicographic() {
        let all: Vec<String> = words::<Permutation>(3)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(all, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2", "3 2 1"]);
        assert_eq!(words::<Permutation>(1).len(), 1);
        assert_eq!(gen_perms(8, &Options::default()).unwrap().count(), 40320);
    }

    #[test]
    fn subexcedant_mixed_radix() {
        let all: Vec<String> = words::<SubexcedantSeq>(2)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(all, ["0 0", "0 1"]);
        let three = words::<SubexcedantSeq>(3);
        assert_eq!(three.len(), 6);
        assert_eq!(three.last().unwrap().to_string(), "0 1 2");
        assert_eq!(
            gen_subexcedant(8, &Options::default()).unwrap().count(),
            40320
        );
    }

    #[test]
    fn ranks_match_positions() {
        for (r, p) in words::<Permutation>(5).iter().enumerate() {
            assert_eq!(p.rank(), r as u64);
            assert_eq!(Permutation::unrank(5, r as u64), *p);
        }
        for (r, s) in words::<SubexcedantSeq>(5).iter().enumerate() {
            assert_eq!(s.rank(), r as u64);
            assert_eq!(SubexcedantSeq::unrank(5, r as u64), *s);
        }
    }

    #[test]
    fn blocks_concatenate() {
        let whole = words::<Permutation>(4);
        let parts: Vec<Permutation> = Words::block(4, 0, 7)
            .chain(Words::block(4, 7, 24))
            .collect();
        assert_eq!(whole, parts);
        assert_eq!(Words::<Permutation>::block(4, 5, 5).count(), 0);
    }

    #[test]
    fn cap_enforced() {
        let opts = Options::default();
        assert_eq!(
            gen_perms(0, &opts).err(),
            Some(Error::EnumerationCap { n: 0, cap: 10 })
        );
        assert!(gen_perms(11, &opts).is_err());
        assert!(gen_subexcedant(11, &opts).is_err());
        assert!(verify_theorem2(11, &opts).is_err());
        let wide = Options { cap: 12, jobs: 1 };
        assert!(gen_perms(11, &wide).is_ok());
    }

    #[test]
    fn double_eulerian_small() {
        let opts = Options::default();
        let t1 = double_eulerian(1, Side::Perms, &opts).unwrap();
        assert_eq!(t1.counts, BTreeMap::from([((0, 0), 1)]));
        let t3 = double_eulerian(3, Side::Perms, &opts).unwrap();
        assert_eq!(
            t3.counts,
            BTreeMap::from([((0, 0), 1), ((1, 1), 4), ((2, 2), 1)])
        );
        assert_eq!(double_eulerian(3, Side::Seqs, &opts).unwrap(), t3);
        assert_eq!(t3.polynomial(), "u^1v^1 + 4u^2v^2 + u^3v^3");
        assert_eq!(
            t3.dense(),
            vec![vec![1, 0, 0], vec![0, 4, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn small_verifiers() {
        let opts = Options::default();
        for n in 1..=5 {
            for check in Check::ALL {
                let r = check.run(n, &opts).unwrap();
                let expected = check != Check::Corollary2 || n == 1;
                assert_eq!(r.pass, expected, "{check:?} n={n}: {r}");
            }
        }
    }

    #[test]
    fn corollary2_counterexample_and_bistatistic() {
        let r = verify_corollary2(2, &Options::default()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.bistatistic_pass, Some(true));
        assert!(r.counterexample.unwrap().contains("({1},{2})"));
    }

    #[test]
    fn eulerian_n3() {
        let r = eulerian_check(3, &Options::default()).unwrap();
        for d in r.distributions.values() {
            assert_eq!(d, &vec![1, 4, 1]);
        }
        assert_eq!(r.distributions.len(), 5);
    }

    #[test]
    fn partition_independent() {
        let one = Options::with_jobs(1);
        for jobs in [2, 3, 7, 50] {
            let many = Options::with_jobs(jobs);
            assert_eq!(
                double_eulerian(6, Side::Seqs, &one).unwrap(),
                double_eulerian(6, Side::Seqs, &many).unwrap()
            );
            assert_eq!(
                verify_bijection(5, &one).unwrap(),
                verify_bijection(5, &many).unwrap()
            );
            assert_eq!(
                verify_corollary2(5, &one).unwrap(),
                verify_corollary2(5, &many).unwrap()
            );
        }
    }

    #[test]
    fn report_json_shape() {
        let r = verify_theorem2(1, &Options::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 1);
        assert_eq!(v["check"], "theorem2");
        assert_eq!(v["pass"], true);
        assert!(v.get("counterexample").is_none());
    }

    #[test]
    fn check_names_parse() {
        assert_eq!("2".parse::<Check>(), Ok(Check::Theorem2));
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
        }
        assert!("3".parse::<Check>().is_err());
    }
}
