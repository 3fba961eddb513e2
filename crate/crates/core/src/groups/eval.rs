use std::collections::HashMap;

use crate::arith::big_rem_u64;
use crate::error::{Error, Result};
use crate::words::Word;

use super::FiniteGroup;

/// A word specialised to one group: exponents reduced modulo the group
/// exponent and each distinct power map tabulated.
#[derive(Clone, Debug)]
pub struct CompiledWord {
    rank: usize,
    order: usize,
    /// `(variable, power table)` per syllable; variables 0-based.
    syllables: Vec<(usize, usize)>,
    powers: Vec<Vec<u32>>,
}

impl CompiledWord {
    pub fn new(w: &Word, g: &FiniteGroup) -> Self {
        let e = g.exponent();
        let mut by_exp: HashMap<u64, usize> = HashMap::new();
        let mut powers = Vec::new();
        let mut syllables = Vec::new();
        for l in w.letters() {
            let k = big_rem_u64(&l.exp, e);
            if k == 0 {
                // x^k = 1 identically
                continue;
            }
            let t = *by_exp.entry(k).or_insert_with(|| {
                powers.push((0..g.order()).map(|a| g.pow(a, k) as u32).collect());
                powers.len() - 1
            });
            syllables.push((l.gen - 1, t));
        }
        Self {
            rank: w.rank(),
            order: g.order(),
            syllables,
            powers,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 0-based variables that still occur after reduction, ascending.
    pub fn used_variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.syllables.iter().map(|s| s.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Unchecked evaluation; `tuple` must have `rank` valid entries.
    #[inline]
    pub fn eval(&self, g: &FiniteGroup, tuple: &[u32]) -> usize {
        debug_assert_eq!(g.order(), self.order);
        let table = g.table();
        let mut acc = 0usize;
        for &(var, t) in &self.syllables {
            let x = self.powers[t][tuple[var] as usize] as usize;
            acc = table[acc * self.order + x] as usize;
        }
        acc
    }
}

/// `w(g_1, ..., g_n)` in `G`.
pub fn evaluate(w: &Word, g: &FiniteGroup, tuple: &[usize]) -> Result<usize> {
    if tuple.len() != w.rank() {
        return Err(Error::TupleLength {
            expected: w.rank(),
            got: tuple.len(),
        });
    }
    for &x in tuple {
        g.check_element(x)?;
    }
    let e = g.exponent();
    let mut acc = 0;
    for l in w.letters() {
        let x = g.pow(tuple[l.gen - 1], big_rem_u64(&l.exp, e));
        acc = g.mul(acc, x);
    }
    Ok(acc)
}
