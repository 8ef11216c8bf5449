//! Reduced words in a free group of rank `n`.
//!
//! A letter is a signed generator index: `+i` is `x_i`, `-i` is `x_i^{-1}`, with `i` in `1..=n`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{check_rank, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    rank: usize,
    letters: Vec<i32>,
}

/// Letter order used for cyclic normal forms: by generator index, then `x_i` before `x_i^{-1}`.
fn letter_key(letter: i32) -> (u32, bool) {
    (letter.unsigned_abs(), letter < 0)
}

fn cmp_letters(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l))))
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| cmp_letters(&self.letters, &other.letters))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMode {
    Product,
    InverseOfU,
    ConjugateUByV,
    CyclicNormalFormOfU,
}

/// Dispatches the four word operations by mode; `v` is ignored by the unary modes.
pub fn word_compose(u: &GroupWord, v: &GroupWord, mode: WordMode) -> Result<GroupWord> {
    match mode {
        WordMode::Product => u.checked_mul(v),
        WordMode::InverseOfU => Ok(u.inverse()),
        WordMode::ConjugateUByV => {
            check_rank(u.rank, v.rank)?;
            Ok(u.conjugate_by(v))
        }
        WordMode::CyclicNormalFormOfU => Ok(u.cyclic_normal_form()),
    }
}

impl GroupWord {
    pub fn identity(rank: usize) -> Self {
        GroupWord { rank, letters: Vec::new() }
    }

    /// The generator `x_i` for `i` in `1..=rank`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator index {i} out of range 1..={rank}");
        GroupWord { rank, letters: vec![i as i32] }
    }

    /// Builds a word from signed letters, freely reducing them.
    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::Parse(format!("letter {l} out of range for rank {rank}")));
            }
            push_reduced(&mut out, l);
        }
        Ok(GroupWord { rank, letters: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        Ok(self.mul(other))
    }

    /// Free reduction of the concatenation. Panics on rank mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "word rank mismatch");
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        GroupWord { rank: self.rank, letters: out }
    }

    pub fn inverse(&self) -> Self {
        GroupWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `v^{-1} u v`.
    pub fn conjugate_by(&self, v: &Self) -> Self {
        v.inverse().mul(self).mul(v)
    }

    /// `u v u^{-1} v^{-1}`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Least cyclic rotation of the cyclically reduced form.
    pub fn cyclic_normal_form(&self) -> Self {
        let mut core: &[i32] = &self.letters;
        while core.len() >= 2 && core[0] == -core[core.len() - 1] {
            core = &core[1..core.len() - 1];
        }
        let n = core.len();
        let mut best: Vec<i32> = core.to_vec();
        for shift in 1..n {
            let candidate: Vec<i32> = core[shift..].iter().chain(&core[..shift]).copied().collect();
            if cmp_letters(&candidate, &best) == Ordering::Less {
                best = candidate;
            }
        }
        GroupWord { rank: self.rank, letters: best }
    }

    /// Exponent sums, the image in `H_1 = Z^n`.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for &l in &self.letters {
            out[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        out
    }
}

/// Generator names for parsing and printing words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// `x1..xn`.
    pub fn standard(rank: usize) -> Self {
        Alphabet { names: (1..=rank).map(|i| format!("x{i}")).collect() }
    }

    pub fn from_names(names: Vec<String>) -> Self {
        Alphabet { names }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    /// Parses whitespace-separated tokens `name` or `name^-1`. The standard names `x1..xn` are
    /// always accepted. Empty text is the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let rank = self.rank();
        let standard = Alphabet::standard(rank);
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(stem) => (stem, true),
                None => (token, false),
            };
            let index = self
                .names
                .iter()
                .position(|n| n == name)
                .or_else(|| standard.names.iter().position(|n| n == name))
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            let letter = index as i32 + 1;
            letters.push(if inverse { -letter } else { letter });
        }
        GroupWord::from_letters(rank, &letters)
    }

    pub fn format_word(&self, word: &GroupWord) -> String {
        word.letters
            .iter()
            .map(|&l| {
                let name = self.name(l.unsigned_abs() as usize);
                if l < 0 {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", Alphabet::standard(self.rank).format_word(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[i32]) -> GroupWord {
        GroupWord::from_letters(2, letters).unwrap()
    }

    #[test]
    fn compose_modes() {
        let x1 = w(&[1]);
        let x2 = w(&[2]);
        assert!(word_compose(&x1, &w(&[-1]), WordMode::Product).unwrap().is_identity());
        assert_eq!(word_compose(&x1, &x2, WordMode::ConjugateUByV).unwrap().letters(), &[-2, 1, 2]);
        let conj = w(&[-2, 1, 2]);
        assert_eq!(word_compose(&conj, &x1, WordMode::CyclicNormalFormOfU).unwrap(), x1);
        assert_eq!(word_compose(&w(&[1, 2]), &x1, WordMode::InverseOfU).unwrap().letters(), &[-2, -1]);
    }

    #[test]
    fn cyclic_normal_form_picks_least_rotation() {
        assert_eq!(w(&[2, -1, 1, 1]).cyclic_normal_form().letters(), &[1, 2]);
        assert_eq!(w(&[2, 1, -2, -1]).cyclic_normal_form().letters(), &[1, -2, -1, 2]);
        assert_eq!(w(&[2, -1]).cyclic_normal_form().letters(), &[-1, 2]);
    }

    #[test]
    fn parse_and_format() {
        let alphabet = Alphabet::from_names(vec!["a".into(), "b".into()]);
        let word = alphabet.parse_word("a b a^-1 x2^-1").unwrap();
        assert_eq!(word.letters(), &[1, 2, -1, -2]);
        assert_eq!(alphabet.format_word(&word), "a b a^-1 b^-1");
        assert!(alphabet.parse_word("").unwrap().is_identity());
        assert!(alphabet.parse_word("c").is_err());
        assert_eq!(word.abelianization(), vec![0, 0]);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = GroupWord::generator(2, 1);
        let b = GroupWord::generator(3, 1);
        assert!(matches!(a.checked_mul(&b), Err(Error::RankMismatch { .. })));
    }

    fn letters() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3), Just(-3)], 0..8)
    }

    proptest! {
        #[test]
        fn reduction_is_associative(a in letters(), b in letters(), c in letters()) {
            let (a, b, c) = (
                GroupWord::from_letters(3, &a).unwrap(),
                GroupWord::from_letters(3, &b).unwrap(),
                GroupWord::from_letters(3, &c).unwrap(),
            );
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
        }

        #[test]
        fn cyclic_normal_form_is_a_conjugacy_invariant(a in letters(), c in letters()) {
            let a = GroupWord::from_letters(3, &a).unwrap();
            let c = GroupWord::from_letters(3, &c).unwrap();
            prop_assert_eq!(a.conjugate_by(&c).cyclic_normal_form(), a.cyclic_normal_form());
        }
    }
}
