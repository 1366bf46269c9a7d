mod common;

use common::*;
use permcode::enumerate::{double_eulerian, gen_perms, gen_subexcedant, Side};
use permcode::slicer::geometric_lambda;
use permcode::{
    b_decode, b_encode, dumont_stat, lambda_perm, lehmer_decode, lehmer_encode, Permutation,
    SubexcedantSeq,
};

#[test]
fn generators_agree_with_independent_listings() {
    for n in 1..=7 {
        let mut ours: Vec<Vec<usize>> = gen_perms(n, &opts())
            .unwrap()
            .map(|p| p.entries().to_vec())
            .collect();
        let mut sorted = ours.clone();
        sorted.sort();
        assert_eq!(ours, sorted, "not lexicographic at n={n}");
        let mut reference = all_perms(n);
        reference.sort();
        ours.dedup();
        assert_eq!(ours, reference);

        let seqs: Vec<Vec<usize>> = gen_subexcedant(n, &opts())
            .unwrap()
            .map(|s| s.entries().to_vec())
            .collect();
        assert_eq!(seqs, all_seqs(n));
    }
}

#[test]
fn lehmer_round_trips_and_matches_naive_count() {
    for n in 1..=8 {
        for p in gen_perms(n, &opts()).unwrap() {
            let code = lehmer_encode(&p);
            assert_eq!(code.entries(), naive_lehmer(p.entries()).as_slice());
            assert_eq!(lehmer_decode(&code), p);
        }
        for s in gen_subexcedant(n, &opts()).unwrap() {
            assert_eq!(lehmer_encode(&lehmer_decode(&s)), s);
        }
    }
}

#[test]
fn lehmer_code_transports_four_statistics() {
    for n in 1..=8 {
        for p in gen_perms(n, &opts()).unwrap() {
            let l = lehmer_encode(&p);
            assert_eq!(p.des_set(), l.asc_set(), "{p}");
            assert_eq!(p.lrmax_set(), l.pos0_set(), "{p}");
            assert_eq!(p.lrmin_set(), l.max_set(), "{p}");
            assert_eq!(p.rlmax_set(), l.rlmin_set(), "{p}");
        }
    }
}

#[test]
fn b_transports_each_statistic() {
    for n in 1..=8 {
        for p in gen_perms(n, &opts()).unwrap() {
            let b = b_encode(&p);
            assert_eq!(p.des_set(), b.asc_set(), "{p}");
            assert_eq!(p.ides_set(), b.row_set(), "{p}");
            assert_eq!(p.lrmax_set(), b.pos0_set(), "{p}");
            assert_eq!(p.lrmin_set(), b.max_set(), "{p}");
            assert_eq!(p.rlmax_set(), b.rlmin_set(), "{p}");
        }
    }
}

#[test]
fn dumont_statistic_is_eulerian() {
    for n in 1..=8 {
        let mut dumont = vec![0u64; n];
        let mut des = vec![0u64; n];
        for p in gen_perms(n, &opts()).unwrap() {
            dumont[dumont_stat(&p)] += 1;
            des[p.des()] += 1;
        }
        assert_eq!(dumont, des);
        assert_eq!(des, eulerian_numbers(n));
    }
}

#[test]
fn decoder_matches_preimage_table() {
    for n in 1..=7 {
        let table = preimage_table(n);
        assert_eq!(table.len() as u64, permcode::enumerate::factorial(n));
        for (s, p) in &table {
            assert_eq!(b_decode(s), *p, "s = {s}");
        }
    }
}

#[test]
fn lambda_boundary_positions() {
    for n in 2..=7 {
        for p in gen_perms(n, &opts()).unwrap() {
            let lambda = lambda_perm(&p);
            let first = if p.at(1) == n { 1 } else { 0 };
            assert_eq!(lambda[0].value(), first, "{p}");
            let last = if p.at(n) == 1 { 1 } else { 3 };
            assert_eq!(lambda[n - 1].value(), last, "{p}");
            assert_eq!(geometric_lambda(&p), lambda, "{p}");
        }
    }
}

#[test]
fn double_eulerian_matches_brute_force() {
    for n in 1..=7 {
        let reference = brute_double_eulerian(n);
        for side in [Side::Perms, Side::Seqs] {
            let t = double_eulerian(n, side, &opts()).unwrap();
            assert_eq!(t.counts, reference, "n={n} side={side}");
            assert_eq!(t.transpose(), t);
        }
    }
}

#[test]
fn subexcedant_sequence_statistics_match_naive() {
    for n in 1..=7 {
        for w in all_seqs(n) {
            let s = SubexcedantSeq::new(w.clone()).unwrap();
            assert_eq!(s.asc(), naive_asc(&w));
            assert_eq!(s.row(), naive_row(&w));
            assert!(s.pos0_set().contains(1) && s.max_set().contains(1));
            assert!(!s.row_set().contains(1));
        }
        for w in all_perms(n) {
            let p = Permutation::new(w.clone()).unwrap();
            assert_eq!(p.des(), naive_des(&w));
            assert_eq!(p.ides(), naive_ides(&w));
        }
    }
}
