use crate::arith::big_rem_u64;
use crate::error::{Error, Result};
use crate::groups::{CompiledWord, FiniteGroup, Semidirect};
use crate::words::Word;

use super::{enumerate, power_count, Budget, Distribution};

/// For abelian `G` the word map is the homomorphism
/// `(g_i) -> sum_i alpha_i g_i`, so every value in its image is hit
/// `|G|^n / |Im|` times.
pub fn abelian_count(g: &FiniteGroup, w: &Word) -> Result<Distribution> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian(g.order()));
    }
    let n = w.rank();
    let e = g.exponent();
    let mut images = Vec::new();
    for a in w.exponent_sums() {
        let k = big_rem_u64(&a, e);
        for &x in &g.generating_set() {
            images.push(g.pow(x, k));
        }
    }
    let image = g.subgroup_generated(&images);
    let each = power_count(g.order(), n)? / image.len() as u128;
    let mut counts = vec![0u128; g.order()];
    for c in image {
        counts[c] = each;
    }
    Ok(Distribution {
        order: g.order(),
        rank: n,
        counts,
    })
}

/// `N(G1 x G2, w = (c1, c2)) = N(G1, w = c1) N(G2, w = c2)`, laid out like
/// [`crate::groups::direct_product`].
pub fn direct_product_distribution(d1: &Distribution, d2: &Distribution) -> Result<Distribution> {
    if d1.rank != d2.rank {
        return Err(Error::RankMismatch(d1.rank, d2.rank));
    }
    let mut counts = Vec::with_capacity(d1.order * d2.order);
    for &a in &d1.counts {
        for &b in &d2.counts {
            counts.push(a.checked_mul(b).ok_or(Error::Overflow)?);
        }
    }
    Ok(Distribution {
        order: d1.order * d2.order,
        rank: d1.rank,
        counts,
    })
}

/// Counts on a nilpotent group through its Sylow subgroups: each factor is
/// enumerated on its own and the results are multiplied along the
/// embeddings.
pub fn distribution_via_sylow(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<Distribution> {
    let factors = g.sylow_decomposition()?;
    let parts: Vec<Distribution> = factors
        .iter()
        .map(|f| enumerate(&f.group, &CompiledWord::new(w, &f.group), budget))
        .collect::<Result<_>>()?;
    // running product over the factors: (element of G, count)
    let mut acc: Vec<(usize, u128)> = vec![(0, 1)];
    for (f, d) in factors.iter().zip(&parts) {
        let mut next = Vec::with_capacity(acc.len() * f.group.order());
        for &(x, cx) in &acc {
            for (y, &cy) in d.counts.iter().enumerate() {
                if cy != 0 {
                    let c = cx.checked_mul(cy).ok_or(Error::Overflow)?;
                    next.push((g.mul(x, f.embedding[y]), c));
                }
            }
        }
        acc = next;
    }
    let mut counts = vec![0u128; g.order()];
    for (x, c) in acc {
        counts[x] += c;
    }
    Ok(Distribution {
        order: g.order(),
        rank: w.rank(),
        counts,
    })
}

/// Exact `N(A ⋊ H, w = 1)` and the lower bound the factorisation
/// certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectCount {
    pub count: u128,
    /// `h`-tuples with `w(h) = 1`.
    pub satisfying: u128,
    /// `satisfying * |A|^{n-1}`.
    pub certificate: u128,
}

/// Writes `g_i = a_i h_i`. Pushing every `a_i` to the left through the
/// `h`-letters gives `w(g) = (T_h(a), w(h))` with
/// `T_h(a) = sum_i psi_i(a_i)` and each `psi_i` a sum of the automorphisms
/// `φ_π` for the `H`-prefixes `π` in front of the occurrences of `x_i`.
/// So `N(w = 1)` is the sum of `|Ker T_h| = |A|^n / |Im T_h|` over the
/// `h` with `w(h) = 1`.
pub fn semidirect_count(sd: &Semidirect, w: &Word, budget: Budget) -> Result<SemidirectCount> {
    let (a, h) = (&sd.normal, &sd.acting);
    if !a.is_abelian() {
        return Err(Error::NotAbelian(a.order()));
    }
    let n = w.rank();
    let (na, nh) = (a.order(), h.order());
    let tuples = power_count(nh, n)?;
    budget.check(tuples.checked_mul(na as u128 * (w.len() as u128 + 1)).ok_or(Error::Overflow)?)?;
    let e = sd.group.exponent();
    let letters: Vec<(usize, u64)> = w
        .letters()
        .iter()
        .map(|l| (l.gen - 1, big_rem_u64(&l.exp, e)))
        .collect();
    let a_gens = a.generating_set();
    let a_n = power_count(na, n)?;

    let mut satisfying = 0u128;
    let mut count = 0u128;
    let mut hs = vec![0usize; n];
    let mut psi = vec![vec![0usize; na]; n];
    for _ in 0..tuples {
        for p in psi.iter_mut() {
            p.iter_mut().for_each(|x| *x = 0);
        }
        let mut prefix = 0usize;
        for &(i, k) in &letters {
            let hi = hs[i];
            // (a, h)^k = (a φ_h(a) ... φ_{h^{k-1}}(a), h^k)
            for _ in 0..k {
                let phi = &sd.action[prefix];
                for (x, slot) in psi[i].iter_mut().enumerate() {
                    *slot = a.mul(*slot, phi[x]);
                }
                prefix = h.mul(prefix, hi);
            }
        }
        if prefix == 0 {
            satisfying += 1;
            let images: Vec<usize> = psi
                .iter()
                .flat_map(|p| a_gens.iter().map(move |&x| p[x]))
                .collect();
            count += a_n / a.subgroup_generated(&images).len() as u128;
        }
        for slot in hs.iter_mut() {
            *slot += 1;
            if *slot < nh {
                break;
            }
            *slot = 0;
        }
    }
    let certificate = if n == 0 {
        satisfying
    } else {
        satisfying * power_count(na, n - 1)?
    };
    Ok(SemidirectCount {
        count,
        satisfying,
        certificate,
    })
}
