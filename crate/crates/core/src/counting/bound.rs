use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{CompiledWord, FiniteGroup};
use crate::reduction::CanonicalWord;

use super::{enumerate, power_count, Budget};

/// `N(G, v = 1)` against `|G|^{n-1}` for a canonical word `v`, plus the
/// fibre-by-fibre kernel count behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub order: usize,
    pub rank: usize,
    pub count: u128,
    /// `|G|^{n-1}`, or 1 for a word in no variables.
    pub bound: u128,
    /// Sum over the second members of the pairs of the kernel of the
    /// restricted map.
    pub kernel_sum: u128,
    /// Every restricted map was a homomorphism.
    pub linear: bool,
    pub holds: bool,
}

/// Checks `N(G, v) >= |G|^{n-1}` by enumeration and re-derives it from
/// the fibration: with the second member of every pair fixed and `y`
/// restricted to `G'`, the remaining map into `G'` must be a homomorphism,
/// and its kernels must add up to at least `|G|^{n-1}` without exceeding
/// the count.
pub fn theorem_count_bound(g: &FiniteGroup, v: &CanonicalWord, budget: Budget) -> Result<BoundReport> {
    match g.nilpotency_class() {
        Some(c) if c <= 2 => {}
        Some(c) => return Err(Error::ClassTooLarge(format!("class {c}"))),
        None => return Err(Error::ClassTooLarge("not nilpotent".into())),
    }
    let n = v.rank;
    let word = v.word_of()?;
    let cw = CompiledWord::new(&word, g);
    let count = enumerate(g, &cw, budget)?.at(0);
    let bound = if n == 0 { 1 } else { power_count(g.order(), n - 1)? };

    let derived = g.derived_subgroup();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in derived.iter().enumerate() {
        pos[x] = i;
    }
    // coordinates of the fibre: (variable, allowed elements)
    let y = v.power_part.map(|(y, _)| y - 1);
    let fixed: Vec<usize> = v.pairs.iter().map(|&(_, b, _)| b - 1).collect();
    let all: Vec<usize> = (0..g.order()).collect();
    let coords: Vec<(usize, &[usize])> = (0..n)
        .filter(|i| !fixed.contains(i))
        .map(|i| (i, if Some(i) == y { &derived[..] } else { &all[..] }))
        .collect();
    let fibre: u128 = coords.iter().map(|(_, s)| s.len() as u128).product();
    let gens_g = g.generating_set();
    let gens_d = g.generating_set_of(&derived);
    let checks: u128 = coords
        .iter()
        .map(|&(i, _)| if Some(i) == y { gens_d.len() } else { gens_g.len() } as u128)
        .sum::<u128>()
        + 1;
    let fibres = power_count(g.order(), fixed.len())?;
    budget.check(
        fibres
            .checked_mul(fibre)
            .and_then(|x| x.checked_mul(checks))
            .ok_or(Error::Overflow)?,
    )?;

    let mut linear = true;
    let mut kernel_sum = 0u128;
    let mut tuple = vec![0u32; n];
    let mut zs = vec![0usize; fixed.len()];
    let mut values = vec![0usize; fibre as usize];
    for _ in 0..fibres {
        for (&i, &z) in fixed.iter().zip(&zs) {
            tuple[i] = z as u32;
        }
        // values of the fibre in mixed radix over `coords`, first fastest
        for (idx, slot) in values.iter_mut().enumerate() {
            let mut r = idx;
            for &(i, set) in &coords {
                tuple[i] = set[r % set.len()] as u32;
                r /= set.len();
            }
            *slot = cw.eval(g, &tuple);
        }
        kernel_sum += values.iter().filter(|&&x| x == 0).count() as u128;
        'check: for (c, &(i, set)) in coords.iter().enumerate() {
            let stride: usize = coords[..c].iter().map(|(_, s)| s.len()).product();
            let gens = if Some(i) == y { &gens_d } else { &gens_g };
            for &d in gens.iter() {
                let d_idx = if Some(i) == y { pos[d] } else { d };
                let d_val = values[d_idx * stride];
                for (idx, &val) in values.iter().enumerate() {
                    let digit = (idx / stride) % set.len();
                    let moved = g.mul(set[digit], d);
                    let moved_digit = if Some(i) == y { pos[moved] } else { moved };
                    let other = idx - digit * stride + moved_digit * stride;
                    if values[other] != g.mul(val, d_val) {
                        linear = false;
                        break 'check;
                    }
                }
            }
        }
        for z in zs.iter_mut() {
            *z += 1;
            if *z < g.order() {
                break;
            }
            *z = 0;
        }
    }
    let holds = linear && count >= bound && kernel_sum >= bound && kernel_sum <= count;
    Ok(BoundReport {
        order: g.order(),
        rank: n,
        count,
        bound,
        kernel_sum,
        linear,
        holds,
    })
}
