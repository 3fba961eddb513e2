//! Rewriting a collected word, through Burnside-valid changes of
//! variables, into `y^{p^l} * prod [u_i, v_i]^{e_i} * [y, h]`.

mod canonical;
mod form;
mod substitution;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::PrimePower;
use crate::error::{Error, Result};
use crate::normal_form::NormalForm;
use crate::words::Word;

pub use canonical::{canonicalize, lemma_commutator_pairing, CanonicalWord};
pub use form::ChainTrace;
pub use substitution::{burnside_valid, Substitution};

/// `a = p^l * u` with `p` not dividing `u`.
pub fn decompose_exponent(a: &BigInt, p: u64) -> Result<(u32, BigInt)> {
    if a.is_zero() {
        return Err(Error::ZeroExponent);
    }
    let p = BigInt::from(p);
    let mut u = a.clone();
    let mut l = 0;
    loop {
        let (d, r) = u.div_rem(&p);
        if !r.is_zero() {
            return Ok((l, u));
        }
        u = d;
        l += 1;
    }
}

/// Output of the power step, in the original variables.
#[derive(Clone, Debug)]
pub(crate) struct PowerStep {
    /// 0-based slot `i_t` taken over by `y`.
    pub slot: usize,
    pub l: u32,
    /// `y` exactly as built from the undivided exponents.
    pub y: Word,
    /// Exponent vector of `y` modulo `p^m`.
    pub coeffs: Vec<i128>,
}

/// Splits `nf` into the power step (if some exponent survives mod `p^m`)
/// and the alternating form, mod `p^m`, of what is left once `y^{p^l}` is
/// divided off on the left.
pub(crate) fn power_step(nf: &NormalForm, q: PrimePower) -> (Option<PowerStep>, Vec<Vec<i128>>) {
    let n = nf.rank();
    let qb = q.modulus_big();
    if nf.alpha().iter().all(|a| (a % &qb).is_zero()) {
        return (None, alternating_form(nf, q));
    }
    let support: Vec<usize> = (0..n).filter(|&j| !nf.alpha()[j].is_zero()).collect();
    let parts: Vec<(usize, u32, BigInt)> = support
        .iter()
        .map(|&j| {
            let (l, u) = decompose_exponent(&nf.alpha()[j], q.p()).expect("nonzero");
            (j, l, u)
        })
        .collect();
    let &(slot, l, _) = parts.iter().min_by_key(|(j, l, _)| (*l, *j)).expect("nonempty");
    let p = BigInt::from(q.p());
    let exps: Vec<(usize, BigInt)> = parts
        .iter()
        .map(|(j, lj, u)| (*j, num_traits::pow(p.clone(), (lj - l) as usize) * u))
        .collect();
    let y = Word::new(
        n,
        exps.iter()
            .map(|(j, e)| crate::words::Letter::new(j + 1, e.clone())),
    )
    .expect("indices within rank");
    let coeffs: Vec<i128> = (0..n)
        .map(|j| {
            exps.iter()
                .find(|(i, _)| *i == j)
                .map_or(0, |(_, e)| to_residue(e, q))
        })
        .collect();
    let pl = num_traits::pow(p, l as usize);
    // w = y^{p^l} * (y^{-p^l} w) exactly
    let rest = NormalForm::collect(&y).pow(&-pl).mul(nf);
    debug_assert!(rest.alpha_is_zero());
    (
        Some(PowerStep {
            slot,
            l,
            y,
            coeffs,
        }),
        alternating_form(&rest, q),
    )
}

fn to_residue(a: &BigInt, q: PrimePower) -> i128 {
    let r = q.reduce(a);
    i128::try_from(&r).expect("residue below 2^40")
}

/// The commutator exponents of `nf` as an alternating matrix mod `p^m`.
pub(crate) fn alternating_form(nf: &NormalForm, q: PrimePower) -> Vec<Vec<i128>> {
    let n = nf.rank();
    let qi = q.modulus() as i128;
    let mut b = vec![vec![0i128; n]; n];
    for (i, j, v) in nf.beta_entries() {
        let r = to_residue(v, q);
        b[i - 1][j - 1] = r;
        b[j - 1][i - 1] = (qi - r) % qi;
    }
    b
}

/// Isolates the power part of `nf` into one `p`-power of a new variable.
///
/// Unless every exponent sum vanishes mod `p^m`, write the nonzero ones as
/// `alpha_j = p^{l_j} m_j` with `l_t` least (smallest index on ties), the new variable is
/// `y = prod_j x_j^{p^{l_j - l_t} m_j}` and takes slot `i_t`. The returned
/// form is in the new variables: `alpha = p^{l_t} e_{i_t}` and the
/// commutator exponents, reduced mod `p^m`, of `y^{-p^{l_t}} w` after
/// substituting `x_{i_t} = (P^{-1} y S^{-1})^r`, `r = m_t^{-1} mod p^m`.
/// When no exponent survives the substitution is the identity.
pub fn lemma_power_reduce(nf: &NormalForm, q: PrimePower) -> Result<(Substitution, NormalForm)> {
    if nf.modulus().is_some() {
        return Err(Error::Precondition("expects an exact normal form".into()));
    }
    let n = nf.rank();
    let (step, form) = power_step(nf, q);
    let Some(step) = step else {
        return Ok((Substitution::identity(n, q.p()), nf.reduce_mod_r(q)));
    };
    let mut reducer = form::FormReducer::new(form, q.p() as i128, q.modulus() as i128);
    reducer.replace(step.slot, &step.coeffs);
    let mut alpha = vec![BigInt::zero(); n];
    alpha[step.slot] = BigInt::from(q.p()).pow(step.l);
    let beta: Vec<(usize, usize, BigInt)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i + 1, j + 1, BigInt::from(reducer.form[i][j])))
        .collect();
    let out = NormalForm::from_parts(alpha, &beta).reduce_mod_r(q);
    let mut images: Vec<Word> = (1..=n)
        .map(|i| Word::generator(n, i).expect("index within rank"))
        .collect();
    images[step.slot] = step.y;
    Ok((Substitution::new(images, q.p())?, out))
}
