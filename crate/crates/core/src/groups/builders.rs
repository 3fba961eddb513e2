use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

use super::FiniteGroup;

/// `Z/k` with element `i` the residue `i`.
pub fn cyclic(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidGroupSpec {
            spec: "cyclic:0".into(),
            reason: "order must be positive".into(),
        });
    }
    let labels = (0..k).map(|i| i.to_string()).collect();
    let g = FiniteGroup::from_fn(k, labels, |a, b| (a + b) % k)?;
    Ok(if k > 1 { g.with_generators(vec![1]) } else { g })
}

/// `Z/k_1 x ... x Z/k_r`, mixed radix with the first factor most
/// significant (the same layout as [`direct_product`]).
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::InvalidGroupSpec {
            spec: format!("abelian:{factors:?}"),
            reason: "factors must be positive".into(),
        });
    }
    let order: usize = factors
        .iter()
        .try_fold(1usize, |acc, &k| acc.checked_mul(k))
        .filter(|&o| o <= super::MAX_ORDER)
        .ok_or_else(|| Error::InvalidTable("order too large".into()))?;
    let digits = |mut x: usize| {
        let mut d = vec![0; factors.len()];
        for (slot, &k) in d.iter_mut().zip(factors).rev() {
            *slot = x % k;
            x /= k;
        }
        d
    };
    let pack = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &k)| acc * k + x);
    let labels = (0..order)
        .map(|x| {
            let d = digits(x);
            if factors.len() == 1 {
                d[0].to_string()
            } else {
                let parts: Vec<String> = d.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let g = FiniteGroup::from_fn(order, labels, |a, b| {
        let (da, db) = (digits(a), digits(b));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(factors)
            .map(|((x, y), k)| (x + y) % k)
            .collect();
        pack(&sum)
    })?;
    let gens = (0..factors.len())
        .filter(|&i| factors[i] > 1)
        .map(|i| {
            let mut d = vec![0; factors.len()];
            d[i] = 1;
            pack(&d)
        })
        .collect();
    Ok(g.with_generators(gens))
}

/// Elementary-divisor lists of every abelian group of order `n`, one per
/// isomorphism class.
pub fn abelian_invariant_lists(n: usize) -> Vec<Vec<usize>> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut lists: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in prime_factors(n as u64) {
        let mut next = Vec::new();
        for part in partitions(e, e) {
            for base in &lists {
                let mut l = base.clone();
                l.extend(part.iter().map(|&k| (p as usize).pow(k)));
                next.push(l);
            }
        }
        lists = next;
    }
    lists
}

/// Upper unitriangular 3x3 matrices over `Z/p^k`, stored as `(a, b, c)`
/// for `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
pub fn heisenberg(p: u64, k: u32) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidPrimePower { p, m: k });
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q * q * q <= super::MAX_ORDER as u64)
        .ok_or_else(|| Error::InvalidTable("heisenberg group too large".into()))? as usize;
    let split = |x: usize| (x / (q * q), (x / q) % q, x % q);
    let labels = (0..q * q * q)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("({a},{b},{c})")
        })
        .collect();
    let g = FiniteGroup::from_fn(q * q * q, labels, |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        let (ra, rb, rc) = ((a + a2) % q, (b + b2) % q, (c + c2 + a * b2) % q);
        ra * q * q + rb * q + rc
    })?;
    Ok(g.with_generators(vec![q * q, q]))
}

fn power_label(parts: &[(&str, usize)]) -> String {
    let s: String = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}{e}") })
        .collect();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// Dihedral group of the given order `2n`: elements `r^i s^j` at index
/// `i + n j`, with `s r s = r^-1`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidGroupSpec {
            spec: format!("dihedral:{order}"),
            reason: "order must be even and at least 2".into(),
        });
    }
    let n = order / 2;
    let labels = (0..order)
        .map(|x| power_label(&[("r", x % n), ("s", x / n)]))
        .collect();
    let g = FiniteGroup::from_fn(order, labels, |x, y| {
        let (i, a) = (x % n, x / n);
        let (j, b) = (y % n, y / n);
        let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
        rot + n * ((a + b) % 2)
    })?;
    Ok(g.with_generators(if n > 1 { vec![1, n] } else { vec![n] }))
}

/// Quaternion group as `<a, b | a^4, b^2 = a^2, b^-1 a b = a^-1>`, element
/// `a^i b^j` at index `i + 4 j`.
pub fn quaternion8() -> Result<FiniteGroup> {
    let labels = (0..8)
        .map(|x| power_label(&[("a", x % 4), ("b", x / 4)]))
        .collect();
    let g = FiniteGroup::from_fn(8, labels, |x, y| {
        let (i, j) = (x % 4, x / 4);
        let (k, l) = (y % 4, y / 4);
        // b a^k = a^-k b
        let mut rot = if j == 0 { i + k } else { i + 4 - k };
        let mut bs = j + l;
        if bs == 2 {
            rot += 2;
            bs = 0;
        }
        rot % 4 + 4 * bs
    })?;
    Ok(g.with_generators(vec![1, 4]))
}

/// Modular group of order 16, `<a, b | a^8, b^2, b a b^-1 = a^5>`, element
/// `a^i b^j` at index `i + 8 j`.
pub fn modular16() -> Result<FiniteGroup> {
    let labels = (0..16)
        .map(|x| power_label(&[("a", x % 8), ("b", x / 8)]))
        .collect();
    let g = FiniteGroup::from_fn(16, labels, |x, y| {
        let (i, j) = (x % 8, x / 8);
        let (k, l) = (y % 8, y / 8);
        let twist = if j == 0 { k } else { 5 * k };
        (i + twist) % 8 + 8 * ((j + l) % 2)
    })?;
    Ok(g.with_generators(vec![1, 8]))
}

/// `G1 x G2` with `(g1, g2)` at index `g1 * |G2| + g2`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let n2 = g2.order();
    let order = g1
        .order()
        .checked_mul(n2)
        .filter(|&o| o <= super::MAX_ORDER)
        .ok_or_else(|| Error::InvalidTable("product too large".into()))?;
    let labels = (0..order)
        .map(|x| format!("({},{})", g1.label(x / n2), g2.label(x % n2)))
        .collect();
    let g = FiniteGroup::from_fn(order, labels, |x, y| {
        g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2)
    })?;
    Ok(match (g1.generators(), g2.generators()) {
        (Some(a), Some(b)) => {
            let gens = a.iter().map(|&x| x * n2).chain(b.iter().copied()).collect();
            g.with_generators(gens)
        }
        _ => g,
    })
}

/// `A ⋊ H` for abelian `A`, with `action[h][a] = φ_h(a)`.
///
/// Elements are pairs `(a, h)` read as the product `a h`, stored at index
/// `a * |H| + h`. Multiplication is
///
/// ```text
/// (a, h) (a', h') = (a φ_h(a'), h h'),   φ_h(a) = h a h^-1,
/// ```
///
/// so `φ` must satisfy `φ_{h h'} = φ_h ∘ φ_{h'}`. A trivial action gives
/// exactly the table of [`direct_product`].
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub normal: FiniteGroup,
    pub acting: FiniteGroup,
    pub action: Vec<Vec<usize>>,
    pub group: FiniteGroup,
}

impl Semidirect {
    /// `φ_h(a)`.
    pub fn act(&self, h: usize, a: usize) -> usize {
        self.action[h][a]
    }

    pub fn pair(&self, a: usize, h: usize) -> usize {
        a * self.acting.order() + h
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.acting.order(), g % self.acting.order())
    }
}

pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: Vec<Vec<usize>>,
) -> Result<Semidirect> {
    let na = normal.order();
    let nh = acting.order();
    if !normal.is_abelian() {
        return Err(Error::NotAbelian(na));
    }
    if action.len() != nh {
        return Err(Error::InvalidAction(format!(
            "{} maps given for a group of order {nh}",
            action.len()
        )));
    }
    for (h, phi) in action.iter().enumerate() {
        if phi.len() != na {
            return Err(Error::InvalidAction(format!("map for {h} has wrong length")));
        }
        let mut seen = vec![false; na];
        for &x in phi {
            if x >= na || seen[x] {
                return Err(Error::InvalidAction(format!("map for {h} is not a permutation")));
            }
            seen[x] = true;
        }
        for a in 0..na {
            for b in 0..na {
                if phi[normal.mul(a, b)] != normal.mul(phi[a], phi[b]) {
                    return Err(Error::InvalidAction(format!(
                        "map for {h} is not an automorphism"
                    )));
                }
            }
        }
    }
    for h in 0..nh {
        for k in 0..nh {
            let hk = acting.mul(h, k);
            if (0..na).any(|a| action[hk][a] != action[h][action[k][a]]) {
                return Err(Error::InvalidAction(format!(
                    "action is not a homomorphism at ({h}, {k})"
                )));
            }
        }
    }
    let labels = (0..na * nh)
        .map(|x| format!("({};{})", normal.label(x / nh), acting.label(x % nh)))
        .collect();
    let group = FiniteGroup::from_fn(na * nh, labels, |x, y| {
        let (a, h) = (x / nh, x % nh);
        let (a2, h2) = (y / nh, y % nh);
        normal.mul(a, action[h][a2]) * nh + acting.mul(h, h2)
    })?;
    group.validate()?;
    Ok(Semidirect {
        normal: normal.clone(),
        acting: acting.clone(),
        action,
        group,
    })
}

/// Action of `Z/2` on an abelian group by inversion.
pub fn inversion_action(normal: &FiniteGroup) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..normal.order()).collect();
    let inv: Vec<usize> = (0..normal.order()).map(|a| normal.inv(a)).collect();
    vec![id, inv]
}
