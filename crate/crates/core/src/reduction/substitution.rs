use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{big_rem_u64, is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::groups::{evaluate, FiniteGroup};
use crate::words::Word;

/// A change of variables `y_j = images[j-1](x_1, ..., x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    rank: usize,
    images: Vec<Word>,
    prime: u64,
}

impl Substitution {
    /// Requires one image per variable, each a word of the same rank.
    pub fn new(images: Vec<Word>, prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let rank = images.len();
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch(rank, w.rank()));
        }
        Ok(Self {
            rank,
            images,
            prime,
        })
    }

    pub fn identity(rank: usize, prime: u64) -> Self {
        let images = (1..=rank)
            .map(|i| Word::generator(rank, i).expect("index within rank"))
            .collect();
        Self {
            rank,
            images,
            prime,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank, self.prime)
    }

    /// `v(y_1, ..., y_n)` written in the `x_i`.
    pub fn apply(&self, v: &Word) -> Result<Word> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch(v.rank(), self.rank));
        }
        v.substitute(&self.images)
    }

    /// `M[j][i]` = exponent sum of `x_i` in `y_j`, reduced mod `p`.
    pub fn exponent_matrix(&self) -> Vec<Vec<u64>> {
        self.images
            .iter()
            .map(|w| {
                w.exponent_sums()
                    .iter()
                    .map(|e| big_rem_u64(e, self.prime))
                    .collect()
            })
            .collect()
    }

    /// Whether the `y_j` map onto a basis of the Frattini quotient, i.e.
    /// the exponent matrix is invertible over `F_p`.
    pub fn is_burnside_valid(&self) -> bool {
        let p = self.prime as i128;
        let mut m: Vec<Vec<i128>> = self
            .exponent_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x as i128).collect())
            .collect();
        let n = self.rank;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
                return false;
            };
            m.swap(col, pivot);
            let inv = mod_inverse(m[col][col], p).expect("nonzero mod p");
            for r in 0..n {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col] * inv % p;
                    for c in col..n {
                        m[r][c] = (m[r][c] - f * m[col][c]).rem_euclid(p);
                    }
                }
            }
        }
        true
    }

    /// `self` after `inner`: `z_j -> inner.images[j](y) -> ...(x)`.
    pub fn compose(&self, inner: &Substitution) -> Result<Substitution> {
        if inner.rank != self.rank {
            return Err(Error::RankMismatch(inner.rank, self.rank));
        }
        let images = inner
            .images
            .iter()
            .map(|w| w.substitute(&self.images))
            .collect::<Result<_>>()?;
        Substitution::new(images, self.prime)
    }

    /// The `y`-tuple corresponding to an `x`-tuple of group elements.
    pub fn map_tuple(&self, g: &FiniteGroup, xs: &[usize]) -> Result<Vec<usize>> {
        self.images.iter().map(|w| evaluate(w, g, xs)).collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.images.iter().map(|w| w.to_string()).collect()
    }
}

/// Free-function form of [`Substitution::is_burnside_valid`].
pub fn burnside_valid(s: &Substitution) -> bool {
    s.is_burnside_valid()
}

#[derive(Serialize)]
pub(crate) struct SubstitutionReport {
    pub prime: u64,
    pub images: Vec<String>,
    pub burnside_valid: bool,
}

impl From<&Substitution> for SubstitutionReport {
    fn from(s: &Substitution) -> Self {
        Self {
            prime: s.prime,
            images: s.render(),
            burnside_valid: s.is_burnside_valid(),
        }
    }
}

pub(crate) fn word_from_coeffs(coeffs: &[i128]) -> Word {
    Word::from_exponent_vector(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}
