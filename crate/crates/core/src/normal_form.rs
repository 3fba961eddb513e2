//! Collected form of a word modulo the third term of the lower central
//! series:
//!
//! ```text
//! w = x_1^{a_1} ... x_n^{a_n} * prod_{i<j} [x_i, x_j]^{b_ij}   (mod gamma_3)
//! ```
//!
//! with `[x, y] = x^-1 y^-1 x y`. Reducing the exponents modulo `p^m`
//! additionally works modulo the `p^m`-th powers, which is sound for every
//! class-2 group of exponent dividing `p^m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::PrimePower;
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    rank: usize,
    alpha: Vec<BigInt>,
    /// Upper triangle of the commutator exponents, row-major.
    beta: Vec<BigInt>,
    modulus: Option<PrimePower>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl NormalForm {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            alpha: vec![BigInt::zero(); rank],
            beta: vec![BigInt::zero(); rank * rank.saturating_sub(1) / 2],
            modulus: None,
        }
    }

    /// Builds a form from an exponent vector and an upper-triangular list of
    /// `(i, j, b_ij)` with 1-based `i < j`.
    pub fn from_parts(alpha: Vec<BigInt>, beta: &[(usize, usize, BigInt)]) -> Self {
        let mut nf = Self::zero(alpha.len());
        nf.alpha = alpha;
        for (i, j, b) in beta {
            nf.set_beta(*i, *j, b.clone());
        }
        nf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alpha(&self) -> &[BigInt] {
        &self.alpha
    }

    pub fn modulus(&self) -> Option<PrimePower> {
        self.modulus
    }

    /// `b_ij` for 1-based `i < j`.
    pub fn beta(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < j, "beta is indexed by i < j");
        &self.beta[tri_index(self.rank, i - 1, j - 1)]
    }

    pub fn set_beta(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < j, "beta is indexed by i < j");
        let k = tri_index(self.rank, i - 1, j - 1);
        self.beta[k] = value;
    }

    /// Alternating form: `b_ij` above the diagonal, `-b_ji` below.
    pub fn form(&self, i: usize, j: usize) -> BigInt {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.beta(i, j).clone(),
            Greater => -self.beta(j, i),
            Equal => BigInt::zero(),
        }
    }

    /// Iterates `(i, j, b_ij)` in row-major order, 1-based.
    pub fn beta_entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let n = self.rank;
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j, self.beta(i, j))))
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero) && self.beta.iter().all(Zero::is_zero)
    }

    pub fn alpha_is_zero(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    /// Hall collection of `w`. Every syllable `x_i^f` that has to move left
    /// past an earlier `x_j^e` with `j > i` contributes `[x_i, x_j]^{-ef}`,
    /// since `x_j^e x_i^f = x_i^f x_j^e [x_j, x_i]^{ef}` modulo `gamma_3`.
    pub fn collect(w: &Word) -> Self {
        let n = w.rank();
        let mut nf = Self::zero(n);
        // prefix[j] = exponent sum of x_{j+1} seen so far
        let mut prefix = vec![BigInt::zero(); n];
        for Letter { gen, exp } in w.letters() {
            let i = gen - 1;
            for (j, seen) in prefix.iter().enumerate().skip(i + 1) {
                if !seen.is_zero() {
                    nf.beta[tri_index(n, i, j)] -= seen * exp;
                }
            }
            prefix[i] += exp;
        }
        nf.alpha = prefix;
        nf
    }

    /// The word `x_1^{a_1} ... x_n^{a_n} prod_{i<j} [x_i, x_j^{b_ij}]`.
    ///
    /// `[x_i, x_j^b]` is congruent to `[x_i, x_j]^b` modulo `gamma_3` and
    /// stays four syllables long for any `b`; for `b = 1` it is the
    /// commutator itself.
    pub fn to_word(&self) -> Word {
        let n = self.rank;
        let mut letters: Vec<Letter> = self
            .alpha
            .iter()
            .enumerate()
            .map(|(i, a)| Letter::new(i + 1, a.clone()))
            .collect();
        for (i, j, b) in self.beta_entries() {
            if b.is_zero() {
                continue;
            }
            letters.extend([
                Letter::new(i, -1),
                Letter::new(j, -b),
                Letter::new(i, 1),
                Letter::new(j, b.clone()),
            ]);
        }
        Word::new(n, letters).expect("indices within rank")
    }

    /// Reduces all exponents into `[0, p^m)`.
    pub fn reduce_mod_r(&self, q: PrimePower) -> Self {
        Self {
            rank: self.rank,
            alpha: self.alpha.iter().map(|a| q.reduce(a)).collect(),
            beta: self.beta.iter().map(|b| q.reduce(b)).collect(),
            modulus: Some(q),
        }
    }

    pub fn equal_mod_r(&self, other: &Self, q: PrimePower) -> bool {
        self.rank == other.rank && self.reduce_mod_r(q) == other.reduce_mod_r(q)
    }

    /// Product in `F_n / gamma_3`: moving `x^{a'}` left past the `x_j` of
    /// `x^a` with `j > i` costs `[x_i, x_j]^{-a_j a'_i}`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let n = self.rank;
        let mut out = Self::zero(n);
        for i in 0..n {
            out.alpha[i] = &self.alpha[i] + &other.alpha[i];
            for j in i + 1..n {
                let k = tri_index(n, i, j);
                out.beta[k] =
                    &self.beta[k] + &other.beta[k] - &self.alpha[j] * &other.alpha[i];
            }
        }
        out
    }

    /// `u^k` for any integer `k`:
    /// `alpha = k a`, `beta_ij = k b_ij - C(k, 2) a_i a_j`.
    pub fn pow(&self, k: &BigInt) -> Self {
        let n = self.rank;
        let choose2 = k * (k - 1) / 2;
        let mut out = Self::zero(n);
        for i in 0..n {
            out.alpha[i] = k * &self.alpha[i];
            for j in i + 1..n {
                let t = tri_index(n, i, j);
                out.beta[t] = k * &self.beta[t] - &choose2 * &self.alpha[i] * &self.alpha[j];
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        self.pow(&BigInt::from(-1))
    }

    /// Membership in `R = gamma_3 F^{p^m}`: `alpha = 0 mod p^m` and
    /// `beta = 0` modulo `p^m`, or `2^{m-1}` when `p = 2`, since then
    /// `(xy)^{2^m}` contributes `[y,x]^{2^{m-1}}`.
    pub fn in_r(&self, q: PrimePower) -> bool {
        let qa = q.modulus_big();
        let qb = if q.p() == 2 { &qa / 2 } else { qa.clone() };
        self.alpha.iter().all(|a| (a % &qa).is_zero())
            && self.beta.iter().all(|b| (b % &qb).is_zero())
    }

    /// `self = other` modulo `R`.
    pub fn congruent_mod_r(&self, other: &Self, q: PrimePower) -> bool {
        self.rank == other.rank && self.mul(&other.inverse()).in_r(q)
    }

    /// Canonical text in the word grammar.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, a) in self.alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if a.is_one() {
                parts.push(format!("x{}", i + 1));
            } else {
                parts.push(format!("x{}^{}", i + 1, a));
            }
        }
        for (i, j, b) in self.beta_entries() {
            if b.is_zero() {
                continue;
            }
            if b.is_one() {
                parts.push(format!("[x{i},x{j}]"));
            } else {
                parts.push(format!("[x{i},x{j}]^{b}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Free-function form of [`NormalForm::collect`].
pub fn collect(w: &Word) -> NormalForm {
    NormalForm::collect(w)
}

pub fn nf_to_word(nf: &NormalForm) -> Word {
    nf.to_word()
}

pub fn reduce_mod_r(nf: &NormalForm, q: PrimePower) -> NormalForm {
    nf.reduce_mod_r(q)
}

pub fn nf_equal_mod_r(a: &NormalForm, b: &NormalForm, q: PrimePower) -> bool {
    a.equal_mod_r(b, q)
}
