//! The commutator part of a collected word as an alternating form over
//! `Z/p^m`, rewritten by unimodular changes of one variable at a time.
//!
//! Slots `0..n` hold the current variables. `basis[k]` is slot `k` as an
//! exponent vector in the input variables; `inverse[i]` is input variable
//! `i` in terms of the slots. Both are kept modulo `q = p^m`.

use serde::Serialize;

use crate::arith::{mod_inverse, rem, valuation};

/// One pass of the pairing chain: the valuation of the leading pair after
/// each shift, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTrace {
    /// 1-based slot whose row started the chain.
    pub start: usize,
    pub valuations: Vec<u32>,
}

#[derive(Clone, Debug)]
pub(crate) struct FormReducer {
    p: i128,
    q: i128,
    pub form: Vec<Vec<i128>>,
    pub basis: Vec<Vec<i128>>,
    pub inverse: Vec<Vec<i128>>,
}

/// A disjoint pair `[u_a, u_b]^e`, 0-based.
pub(crate) type Pair = (usize, usize, i128);

impl FormReducer {
    pub fn new(form: Vec<Vec<i128>>, p: i128, q: i128) -> Self {
        let n = form.len();
        let unit = |i: usize| (0..n).map(|j| i128::from(i == j)).collect::<Vec<_>>();
        Self {
            p,
            q,
            form,
            basis: (0..n).map(unit).collect(),
            inverse: (0..n).map(unit).collect(),
        }
    }

    fn n(&self) -> usize {
        self.form.len()
    }

    fn pow_p(&self, e: u32) -> i128 {
        self.p.pow(e)
    }

    /// New slot `k` = `sum_j coeffs[j] * slot_j`; `coeffs[k]` must be a unit.
    ///
    /// The old slot `k` is `r (new_k - sum_{j != k} c_j slot_j)` with
    /// `r = c_k^{-1}`; writing that as a matrix `S`, the form becomes
    /// `S^T B S` and the inverse `inverse * S`.
    pub fn replace(&mut self, k: usize, coeffs: &[i128]) {
        let (n, q) = (self.n(), self.q);
        let r = mod_inverse(rem(coeffs[k], q), q).expect("pivot coefficient is a unit");
        // d = row k of S minus e_k
        let d: Vec<i128> = (0..n)
            .map(|j| {
                if j == k {
                    rem(r - 1, q)
                } else {
                    rem(-r * rem(coeffs[j], q), q)
                }
            })
            .collect();
        let col_k: Vec<i128> = (0..n).map(|i| self.form[i][k]).collect();
        for (i, row) in self.form.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = rem(*x + col_k[i] * d[j], q);
            }
        }
        let row_k = self.form[k].clone();
        for (i, row) in self.form.iter_mut().enumerate() {
            if d[i] != 0 {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = rem(*x + d[i] * row_k[j], q);
                }
            }
        }
        debug_assert!((0..n).all(|i| self.form[i][i] == 0));

        let mut new_row = vec![0i128; n];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (t, x) in new_row.iter_mut().enumerate() {
                    *x = rem(*x + c * self.basis[j][t], q);
                }
            }
        }
        self.basis[k] = new_row;
        for row in &mut self.inverse {
            let a = row[k];
            if a != 0 {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = rem(*x + a * d[j], q);
                }
            }
        }
    }

    /// Partner of `r` of least valuation among the free slots outside
    /// `exclude`, smallest index on ties.
    fn min_partner(&self, r: usize, free: &[bool], exclude: &[usize]) -> Option<(usize, u32)> {
        (0..self.n())
            .filter(|&j| free[j] && j != r && !exclude.contains(&j) && self.form[r][j] != 0)
            .map(|j| (j, valuation(self.form[r][j], self.p)))
            .min_by_key(|&(j, l)| (l, j))
    }

    /// Replaces slot `target` by `sum_j (B[r][j] / p^l) slot_j` over the free
    /// slots outside `exclude`, leaving row `r` with the single entry
    /// `B[r][target] = p^l` there.
    fn gather_row(&mut self, r: usize, target: usize, l: u32, free: &[bool], exclude: &[usize]) {
        let pl = self.pow_p(l);
        let coeffs: Vec<i128> = (0..self.n())
            .map(|j| {
                if free[j] && j != r && !exclude.contains(&j) {
                    self.form[r][j] / pl
                } else {
                    0
                }
            })
            .collect();
        self.replace(target, &coeffs);
        debug_assert_eq!(self.form[r][target], pl);
    }

    /// Rewrites the form restricted to `active` slots as a sum of disjoint
    /// hyperbolic pairs.
    ///
    /// Take the first active row that is nonzero and gather it onto its
    /// least-valuation partner `b`, giving `[a, b]^{p^L}`. If `b` meets
    /// other slots, gather its row onto `c` with valuation `L'`. When
    /// `L <= L'` the term `p^{L'} [b, c]` is absorbed by replacing `a` with
    /// `-a + p^{L'-L} c` and the pair `(b, a)` is done. Otherwise `c` is
    /// replaced by `c - p^{L-L'} a`, which clears `[b, a]`, and the chain
    /// continues from `(b, c)` with the smaller valuation `L'`.
    pub fn pair(&mut self, active: &[bool]) -> (Vec<Pair>, Vec<ChainTrace>) {
        let n = self.n();
        let mut free = active.to_vec();
        let mut pairs = Vec::new();
        let mut traces = Vec::new();
        loop {
            let start = (0..n).find(|&s| {
                free[s] && (0..n).any(|j| free[j] && self.form[s][j] != 0)
            });
            let Some(s) = start else { break };
            let (u, l) = self.min_partner(s, &free, &[]).expect("row is nonzero");
            self.gather_row(s, u, l, &free, &[]);
            let (mut a, mut b, mut l) = (s, u, l);
            let mut valuations = vec![l];
            loop {
                let Some((c, l2)) = self.min_partner(b, &free, &[a]) else {
                    pairs.push((a, b, self.pow_p(l)));
                    free[a] = false;
                    free[b] = false;
                    break;
                };
                self.gather_row(b, c, l2, &free, &[a]);
                if l <= l2 {
                    let mut coeffs = vec![0; n];
                    coeffs[a] = -1;
                    coeffs[c] = self.pow_p(l2 - l);
                    self.replace(a, &coeffs);
                    debug_assert_eq!(self.form[b][a], self.pow_p(l));
                    pairs.push((b, a, self.pow_p(l)));
                    free[a] = false;
                    free[b] = false;
                    break;
                }
                let mut coeffs = vec![0; n];
                coeffs[c] = 1;
                coeffs[a] = -self.pow_p(l - l2);
                self.replace(c, &coeffs);
                valuations.push(l2);
                (a, b, l) = (b, c, l2);
            }
            traces.push(ChainTrace {
                start: s + 1,
                valuations,
            });
        }
        (pairs, traces)
    }
}
