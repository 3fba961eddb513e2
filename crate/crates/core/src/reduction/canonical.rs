use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{rem, sym_rem, PrimePower};
use crate::error::{Error, Result};
use crate::normal_form::NormalForm;
use crate::words::Word;

use super::form::{ChainTrace, FormReducer};
use super::substitution::{word_from_coeffs, Substitution, SubstitutionReport};
use super::{alternating_form, power_step};

/// `y^{p^l} * prod [u_i, v_i]^{e_i} * [y, h]` in new variables, together
/// with the substitution that writes each new variable in the old ones.
///
/// Indices are 1-based. `residual` is `(y, h)` with `h` a word in the
/// other variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWord {
    pub rank: usize,
    pub modulus: PrimePower,
    pub power_part: Option<(usize, u64)>,
    pub pairs: Vec<(usize, usize, u64)>,
    pub residual: Option<(usize, Word)>,
    pub substitution: Substitution,
    pub trace: Vec<ChainTrace>,
}

impl CanonicalWord {
    fn empty(rank: usize, q: PrimePower) -> Self {
        Self {
            rank,
            modulus: q,
            power_part: None,
            pairs: Vec::new(),
            residual: None,
            substitution: Substitution::identity(rank, q.p()),
            trace: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.power_part.is_none() && self.pairs.is_empty() && self.residual.is_none()
    }

    /// The canonical word itself, in the new variables. Pair powers are
    /// written out literally.
    pub fn word_of(&self) -> Result<Word> {
        let n = self.rank;
        let g = |i: usize| Word::generator(n, i);
        let mut w = Word::empty(n);
        if let Some((y, e)) = self.power_part {
            w = w.concat(&Word::from_pairs(n, &[(y, 1)])?.pow(&BigInt::from(e))?);
        }
        for &(a, b, e) in &self.pairs {
            w = w.concat(&Word::commutator(&g(a)?, &g(b)?).pow(&BigInt::from(e))?);
        }
        if let Some((y, h)) = &self.residual {
            w = w.concat(&Word::commutator(&g(*y)?, h));
        }
        Ok(w)
    }

    /// Text in the word grammar, e.g. `x1^4*[x2,x3]^2*[x1,x2^-1*x4]`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if let Some((y, e)) = self.power_part {
            parts.push(if e == 1 {
                format!("x{y}")
            } else {
                format!("x{y}^{e}")
            });
        }
        for &(a, b, e) in &self.pairs {
            parts.push(if e == 1 {
                format!("[x{a},x{b}]")
            } else {
                format!("[x{a},x{b}]^{e}")
            });
        }
        if let Some((y, h)) = &self.residual {
            parts.push(format!("[x{y},{h}]"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Every index used by a pair or the power part, which must be
    /// pairwise distinct.
    pub fn indices_disjoint(&self) -> bool {
        let mut seen = vec![false; self.rank + 1];
        let mut mark = |i: usize| !std::mem::replace(&mut seen[i], true);
        self.power_part.is_none_or(|(y, _)| mark(y))
            && self.pairs.iter().all(|&(a, b, _)| mark(a) && mark(b))
    }

    pub fn report(&self) -> CanonicalReport {
        CanonicalReport {
            p: self.modulus.p(),
            m: self.modulus.m(),
            rank: self.rank,
            canonical: self.render(),
            power_part: self.power_part.map(|(variable, exponent)| PowerReport {
                variable,
                exponent,
            }),
            pairs: self
                .pairs
                .iter()
                .map(|&(u, v, exponent)| PairReport { u, v, exponent })
                .collect(),
            residual: self.residual.as_ref().map(|(variable, h)| ResidualReport {
                variable: *variable,
                h: h.to_string(),
            }),
            substitution: (&self.substitution).into(),
            trace: self.trace.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CanonicalReport {
    p: u64,
    m: u32,
    rank: usize,
    canonical: String,
    power_part: Option<PowerReport>,
    pairs: Vec<PairReport>,
    residual: Option<ResidualReport>,
    substitution: SubstitutionReport,
    trace: Vec<ChainTrace>,
}

#[derive(Serialize)]
struct PowerReport {
    variable: usize,
    exponent: u64,
}

#[derive(Serialize)]
struct PairReport {
    u: usize,
    v: usize,
    exponent: u64,
}

#[derive(Serialize)]
struct ResidualReport {
    variable: usize,
    h: String,
}

fn images_from_basis(basis: &[Vec<i128>], q: i128) -> Vec<Word> {
    basis
        .iter()
        .map(|row| word_from_coeffs(&row.iter().map(|&c| sym_rem(c, q)).collect::<Vec<_>>()))
        .collect()
}

fn pairs_out(pairs: Vec<(usize, usize, i128)>) -> Vec<(usize, usize, u64)> {
    pairs
        .into_iter()
        .map(|(a, b, e)| (a + 1, b + 1, e as u64))
        .collect()
}

/// Pairs a purely commutator form into disjoint commutators
/// `prod [y_a, y_b]^{p^L}`.
///
/// Requires every exponent of `nf` to vanish mod `p^m`.
pub fn lemma_commutator_pairing(
    nf: &NormalForm,
    q: PrimePower,
) -> Result<(Substitution, CanonicalWord)> {
    let qb = q.modulus_big();
    if nf.alpha().iter().any(|a| !(a % &qb).is_zero()) {
        return Err(Error::Precondition(
            "commutator pairing needs every exponent sum divisible by p^m".into(),
        ));
    }
    let n = nf.rank();
    let qi = q.modulus() as i128;
    let mut reducer = FormReducer::new(alternating_form(nf, q), q.p() as i128, qi);
    let (pairs, trace) = reducer.pair(&vec![true; n]);
    let substitution = Substitution::new(images_from_basis(&reducer.basis, qi), q.p())?;
    let out = CanonicalWord {
        pairs: pairs_out(pairs),
        substitution: substitution.clone(),
        trace,
        ..CanonicalWord::empty(n, q)
    };
    Ok((substitution, out))
}

/// Collect, isolate the power part, split off `[y, h]`, pair the rest.
///
/// The result is `G`-equivalent to `w` for every class-2 `p`-group of
/// exponent dividing `p^m`.
pub fn canonicalize(w: &Word, q: PrimePower) -> Result<CanonicalWord> {
    let n = w.rank();
    let qi = q.modulus() as i128;
    let nf = NormalForm::collect(w);
    let (step, form) = power_step(&nf, q);
    let mut reducer = FormReducer::new(form, q.p() as i128, qi);
    let mut active = vec![true; n];
    let mut h = None;
    if let Some(step) = &step {
        let t = step.slot;
        reducer.replace(t, &step.coeffs);
        h = Some(reducer.form[t].clone());
        for i in 0..n {
            reducer.form[t][i] = 0;
            reducer.form[i][t] = 0;
        }
        active[t] = false;
    }
    let (pairs, trace) = reducer.pair(&active);

    let mut images = images_from_basis(&reducer.basis, qi);
    let mut out = CanonicalWord {
        pairs: pairs_out(pairs),
        trace,
        ..CanonicalWord::empty(n, q)
    };
    if let Some(step) = step {
        let t = step.slot;
        images[t] = step.y;
        out.power_part = Some((t + 1, q.p().pow(step.l)));
        // h in the old slots, rewritten in the new ones
        let hz = h.expect("set with the power step");
        let hu: Vec<i128> = (0..n)
            .map(|k| {
                let s = (0..n)
                    .filter(|&j| j != t)
                    .fold(0, |acc, j| rem(acc + hz[j] * reducer.inverse[j][k], qi));
                sym_rem(s, qi)
            })
            .collect();
        debug_assert_eq!(hu[t], 0);
        if hu.iter().any(|&c| c != 0) {
            out.residual = Some((t + 1, word_from_coeffs(&hu)));
        }
    }
    out.substitution = Substitution::new(images, q.p())?;
    Ok(out)
}
