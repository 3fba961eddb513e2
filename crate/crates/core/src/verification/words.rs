//! Word sources for the census.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::normal_form::NormalForm;
use crate::words::{Letter, Word};

/// Every freely reduced word of rank `rank` with at most `max_len`
/// syllables and exponents in `[-max_exp, max_exp]`, shortest first.
pub fn enumerate_words(rank: usize, max_len: usize, max_exp: i64) -> Vec<Word> {
    let exps: Vec<i64> = (-max_exp..=max_exp).filter(|&e| e != 0).collect();
    let mut out = vec![Word::empty(rank)];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            let last = prefix.last().map(|l| l.gen);
            for gen in (1..=rank).filter(|&g| Some(g) != last) {
                for &e in &exps {
                    let mut w = prefix.clone();
                    w.push(Letter::new(gen, e));
                    next.push(w);
                }
            }
        }
        out.extend(
            next.iter()
                .map(|ls| Word::new(rank, ls.iter().cloned()).expect("indices within rank")),
        );
        layer = next;
    }
    out
}

/// Keeps the first word of each collected form. Words with the same form
/// agree on every class-2 group, so nothing is lost there.
pub fn dedupe_by_collection(words: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    words
        .into_iter()
        .filter(|w| seen.insert(NormalForm::collect(w)))
        .collect()
}

/// `count` seeded random words, each of rank uniform in `1..=max_rank`
/// with up to `max_len` syllables and exponents in `[-max_exp, max_exp]`.
pub fn random_words(count: usize, max_rank: usize, max_len: usize, max_exp: i64, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rank = rng.gen_range(1..=max_rank);
            let len = rng.gen_range(0..=max_len);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let gen = rng.gen_range(1..=rank);
                    let mut e = rng.gen_range(-max_exp..max_exp);
                    if e >= 0 {
                        e += 1;
                    }
                    Letter::new(gen, e)
                })
                .collect();
            Word::new(rank, letters).expect("indices within rank")
        })
        .collect()
}
