//! Brute-force oracles that share no code with the library: groups are
//! built by closing concrete elements under their own multiplication, and
//! words are evaluated one letter at a time.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use wordmap::groups::FiniteGroup;
use wordmap::words::Word;

pub struct Oracle {
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl Oracle {
    /// Closes `gens` under `op`; `id` becomes element 0.
    pub fn generate<T: Clone + Eq + Hash>(id: T, gens: &[T], op: impl Fn(&T, &T) -> T) -> Self {
        let mut elems = vec![id];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = op(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let mul: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&op(a, b)]).collect())
            .collect();
        let inv = (0..elems.len())
            .map(|a| (0..elems.len()).find(|&b| mul[a][b] == 0).unwrap())
            .collect();
        Self { mul, inv }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn to_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(self.mul.clone(), None).unwrap()
    }

    pub fn eval(&self, w: &Word, xs: &[usize]) -> usize {
        let n = self.order() as i64;
        let mut acc = 0;
        for l in w.letters() {
            let e = (&l.exp % BigInt::from(n)).to_i64().unwrap().rem_euclid(n);
            for _ in 0..e {
                acc = self.mul[acc][xs[l.gen - 1]];
            }
        }
        acc
    }

    /// Counts by value over every tuple, by odometer.
    pub fn distribution(&self, w: &Word) -> Vec<u128> {
        let n = w.rank();
        let mut counts = vec![0u128; self.order()];
        let mut xs = vec![0usize; n];
        loop {
            counts[self.eval(w, &xs)] += 1;
            let mut i = 0;
            loop {
                if i == n {
                    return counts;
                }
                xs[i] += 1;
                if xs[i] < self.order() {
                    break;
                }
                xs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn class_count(&self) -> usize {
        let mut seen = vec![false; self.order()];
        let mut classes = 0;
        for a in 0..self.order() {
            if !seen[a] {
                classes += 1;
                for g in 0..self.order() {
                    seen[self.mul[self.mul[self.inv[g]][a]][g]] = true;
                }
            }
        }
        classes
    }
}

/// Symmetries of a regular `n`-gon as vertex permutations.
pub fn dihedral(n: u8) -> Oracle {
    let id: Vec<u8> = (0..n).collect();
    let r: Vec<u8> = (0..n).map(|i| (i + 1) % n).collect();
    let s: Vec<u8> = (0..n).map(|i| (n - i) % n).collect();
    Oracle::generate(id, &[r, s], |p: &Vec<u8>, q: &Vec<u8>| {
        q.iter().map(|&i| p[i as usize]).collect()
    })
}

/// Unit quaternions `±1, ±i, ±j, ±k` as (sign, basis index).
pub fn quaternion() -> Oracle {
    // basis products: TABLE[a][b] = (sign, index) with 0 = 1, 1 = i, 2 = j, 3 = k
    const TABLE: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let op = |a: &(i8, u8), b: &(i8, u8)| {
        let (s, k) = TABLE[a.1 as usize][b.1 as usize];
        (a.0 * b.0 * s, k)
    };
    Oracle::generate((1, 0), &[(1, 1), (1, 2)], op)
}

/// Upper unitriangular 3x3 matrices over `Z/p`, as `(a, b, c)` for
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
pub fn heisenberg(p: u64) -> Oracle {
    let op = move |x: &(u64, u64, u64), y: &(u64, u64, u64)| {
        ((x.0 + y.0) % p, (x.1 + y.1) % p, (x.2 + y.2 + x.0 * y.1) % p)
    };
    Oracle::generate((0, 0, 0), &[(1, 0, 0), (0, 1, 0)], op)
}

/// `Z/k_1 x ... x Z/k_r`.
pub fn abelian(ks: &[u64]) -> Oracle {
    let ks = ks.to_vec();
    let gens: Vec<Vec<u64>> = (0..ks.len())
        .map(|i| (0..ks.len()).map(|j| u64::from(i == j)).collect())
        .collect();
    let op = move |a: &Vec<u64>, b: &Vec<u64>| {
        a.iter().zip(b).zip(&ks).map(|((x, y), k)| (x + y) % k).collect()
    };
    Oracle::generate(vec![0; gens.len()], &gens, op)
}

/// `G x H` on pairs of oracle indices.
pub fn product(g: &Oracle, h: &Oracle) -> Oracle {
    let gens: Vec<(usize, usize)> = (0..g.order())
        .map(|a| (a, 0))
        .chain((0..h.order()).map(|b| (0, b)))
        .collect();
    Oracle::generate((0, 0), &gens, |x, y| (g.mul[x.0][y.0], h.mul[x.1][y.1]))
}

/// The count multiset, which does not depend on how elements are numbered.
pub fn sorted(mut counts: Vec<u128>) -> Vec<u128> {
    counts.sort_unstable();
    counts
}
