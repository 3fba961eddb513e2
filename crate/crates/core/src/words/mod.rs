//! Elements of the free group `F_n` in syllable form.
//!
//! A [`Word`] is a freely reduced sequence of syllables `x_g^e` with
//! `e != 0` and no two adjacent syllables on the same generator. The rank
//! is carried explicitly: a word in `x1` may live in `F_3`, and solution
//! counts depend on that.

mod parser;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use parser::parse_word;

/// Upper bound on syllables produced by [`Word::pow`] and substitution.
pub const MAX_SYLLABLES: u128 = 10_000_000;

/// One syllable `x_gen^exp`; `gen` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub exp: BigInt,
}

impl Letter {
    pub fn new(gen: usize, exp: impl Into<BigInt>) -> Self {
        Self {
            gen,
            exp: exp.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_gen` in `F_rank`.
    pub fn generator(rank: usize, gen: usize) -> Result<Self> {
        Self::new(rank, vec![Letter::new(gen, 1)])
    }

    /// Builds a word from syllables, freely reducing them.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Self::empty(rank);
        for l in letters {
            if l.gen == 0 || l.gen > rank {
                return Err(Error::IndexExceedsRank { index: l.gen, rank });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Convenience constructor from small `(gen, exp)` pairs.
    pub fn from_pairs(rank: usize, pairs: &[(usize, i64)]) -> Result<Self> {
        Self::new(rank, pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    fn push(&mut self, l: Letter) {
        if l.exp.is_zero() {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == l.gen => {
                last.exp += l.exp;
                if last.exp.is_zero() {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Largest generator index occurring, 0 for the empty word.
    pub fn max_gen(&self) -> usize {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    /// Generators occurring in the word, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.gen).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Same letters in `F_rank`.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        let max = self.max_gen();
        if max > rank {
            return Err(Error::IndexExceedsRank { index: max, rank });
        }
        Ok(Self {
            rank,
            letters: self.letters.clone(),
        })
    }

    /// Exponent sum of each generator (the image in the abelianisation).
    pub fn exponent_sums(&self) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); self.rank];
        for l in &self.letters {
            sums[l.gen - 1] += &l.exp;
        }
        sums
    }

    pub fn invert(&self) -> Self {
        Self {
            rank: self.rank,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.gen, -&l.exp))
                .collect(),
        }
    }

    /// Freely reduced product; the rank is promoted to the larger one.
    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    fn extend(&mut self, other: &Self) {
        self.rank = self.rank.max(other.rank);
        for l in &other.letters {
            self.push(l.clone());
        }
    }

    /// `self^k`. Powers of a single syllable stay one syllable; otherwise
    /// the cyclically reduced core is repeated.
    pub fn pow(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() || self.is_empty() {
            return Ok(Self::empty(self.rank));
        }
        if k.is_negative() {
            return self.invert().pow(&-k);
        }
        if self.letters.len() == 1 {
            let l = &self.letters[0];
            return Ok(Self {
                rank: self.rank,
                letters: vec![Letter::new(l.gen, &l.exp * k)],
            });
        }
        // w = u c u^-1 with c cyclically reduced, so w^k = u c^k u^-1.
        let (prefix, core) = self.cyclic_core();
        let reps = k.to_u128().unwrap_or(u128::MAX);
        let size = reps.saturating_mul(core.letters.len() as u128);
        if size > MAX_SYLLABLES {
            return Err(Error::WordTooLong(size));
        }
        let mut body = Self::empty(self.rank);
        for _ in 0..reps {
            body.extend(&core);
        }
        Ok(prefix.concat(&body).concat(&prefix.invert()))
    }

    fn cyclic_core(&self) -> (Self, Self) {
        let ls = &self.letters;
        let mut i = 0;
        let mut j = ls.len();
        while j - i >= 2 && ls[i].gen == ls[j - 1].gen && ls[i].exp == -&ls[j - 1].exp {
            i += 1;
            j -= 1;
        }
        let prefix = Self {
            rank: self.rank,
            letters: ls[..i].to_vec(),
        };
        let mut core = Self::empty(self.rank);
        for l in &ls[i..j] {
            core.push(l.clone());
        }
        // g^a M g^b = g^a (M g^{a+b}) g^-a
        if core.letters.len() >= 2 && core.letters[0].gen == core.letters[core.letters.len() - 1].gen
        {
            let first = core.letters.remove(0);
            let conj = Self {
                rank: self.rank,
                letters: vec![first],
            };
            let rotated = core.concat(&conj);
            return (prefix.concat(&conj), rotated);
        }
        (prefix, core)
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.invert().concat(&b.invert()).concat(a).concat(b)
    }

    /// Replaces every `x_g` by `images[g - 1]` and freely reduces. The
    /// result lives in the rank of the images.
    pub fn substitute(&self, images: &[Word]) -> Result<Self> {
        let rank = images.iter().map(Word::rank).max().unwrap_or(self.rank);
        let mut out = Self::empty(rank);
        for l in &self.letters {
            let image = images.get(l.gen - 1).ok_or(Error::MissingGenerator(l.gen))?;
            let piece = image.pow(&l.exp)?;
            if (out.letters.len() + piece.letters.len()) as u128 > MAX_SYLLABLES {
                return Err(Error::WordTooLong(
                    (out.letters.len() + piece.letters.len()) as u128,
                ));
            }
            out.extend(&piece);
        }
        Ok(out)
    }

    /// Product of generator powers `x_1^{c_1} ... x_n^{c_n}` in index order.
    pub fn from_exponent_vector(coeffs: &[BigInt]) -> Self {
        let rank = coeffs.len();
        let mut w = Self::empty(rank);
        for (i, c) in coeffs.iter().enumerate() {
            w.push(Letter::new(i + 1, c.clone()));
        }
        w
    }

    /// Renames generators: `x_i` becomes `x_{perm[i-1]}`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let rank = self.rank;
        let images = perm
            .iter()
            .map(|&g| Word::generator(rank, g))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&images)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if l.exp.is_one() {
                write!(f, "x{}", l.gen)?;
            } else {
                write!(f, "x{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}
