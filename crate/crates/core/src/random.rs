//! Deterministic pseudo-random inputs for the randomized checks.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group_algebra::GroupAlgebraElement;
use crate::scalar::{rat, Rational};
use crate::series::Series;
use crate::word::GroupWord;

pub struct Sampler {
    rng: ChaCha8Rng,
    rank: usize,
}

impl Sampler {
    pub fn new(seed: u64, rank: usize) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// A reduced word of length at most `max_len`.
    pub fn word(&mut self, max_len: usize) -> GroupWord {
        let len = self.rng.gen_range(0..=max_len);
        self.word_of_length(len)
    }

    /// A reduced word of exactly `len` letters.
    pub fn word_of_length(&mut self, len: usize) -> GroupWord {
        let mut letters: Vec<i32> = Vec::with_capacity(len);
        while letters.len() < len {
            let gen = self.rng.gen_range(1..=self.rank) as i32;
            let letter = if self.rng.gen_bool(0.5) { gen } else { -gen };
            if letters.last() != Some(&-letter) {
                letters.push(letter);
            }
        }
        GroupWord::from_letters(self.rank, &letters).expect("letters in range")
    }

    /// A small nonzero rational with numerator in `-3..=3` and denominator in `1..=3`.
    pub fn coefficient(&mut self) -> Rational {
        loop {
            let q = rat(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3));
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn element(&mut self, terms: usize, max_len: usize) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.rank);
        for _ in 0..terms {
            let w = self.word(max_len);
            let k = self.coefficient();
            out = &out + &GroupAlgebraElement::monomial(w, k);
        }
        out
    }

    /// A series with `terms` random monomials of lengths in `min_len..cap`.
    pub fn series(&mut self, cap: usize, terms: usize, min_len: usize) -> Series {
        let mut out = Series::zero(self.rank, cap);
        if min_len >= cap {
            return out;
        }
        for _ in 0..terms {
            let len = self.rng.gen_range(min_len..cap);
            let letters: Vec<u8> = (0..len).map(|_| self.rng.gen_range(1..=self.rank) as u8).collect();
            let k = self.coefficient();
            out = &out + &Series::monomial(self.rank, cap, &letters, k);
        }
        out
    }

    /// `(w_1 - 1) ... (w_m - 1)` for random nontrivial words, an element of `I^m`.
    pub fn augmentation_product(&mut self, m: usize, max_len: usize) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::one(self.rank);
        for _ in 0..m {
            let mut w = self.word(max_len);
            while w.is_identity() {
                w = self.word(max_len);
            }
            let factor = &GroupAlgebraElement::word(&w) - &GroupAlgebraElement::one(self.rank);
            out = &out * &factor;
        }
        out
    }
}
