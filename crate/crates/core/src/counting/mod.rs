//! Exact counts `N(G, w = c)` by enumeration, and the structural shortcuts
//! that must agree with it.

mod bound;
mod structured;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{CompiledWord, FiniteGroup};
use crate::words::Word;

pub use bound::{theorem_count_bound, BoundReport};
pub use structured::{
    abelian_count, direct_product_distribution, distribution_via_sylow, semidirect_count,
    SemidirectCount,
};

/// Cap on word evaluations for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `|G|^k`, or an overflow error.
pub fn power_count(order: usize, k: usize) -> Result<u128> {
    (order as u128)
        .checked_pow(u32::try_from(k).map_err(|_| Error::Overflow)?)
        .ok_or(Error::Overflow)
}

/// `n / total` in lowest terms.
pub fn ratio(n: u128, total: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(total))
}

/// `counts[c] = N(G, w = c)` over the element indices of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub order: usize,
    pub rank: usize,
    pub counts: Vec<u128>,
}

impl Distribution {
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn at(&self, c: usize) -> u128 {
        self.counts[c]
    }

    /// `N(G, w = c) / |G|^n` in lowest terms.
    pub fn probability(&self, c: usize) -> BigRational {
        ratio(self.counts[c], self.total())
    }

    /// The distribution of the same word read in rank `rank + extra`.
    pub fn padded(&self, extra: usize) -> Result<Distribution> {
        let f = power_count(self.order, extra)?;
        let counts = self
            .counts
            .iter()
            .map(|&c| c.checked_mul(f).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Distribution {
            order: self.order,
            rank: self.rank + extra,
            counts,
        })
    }

    pub fn report(&self, g: &FiniteGroup, group: &str, word: &str) -> DistributionReport {
        DistributionReport {
            group: group.to_string(),
            word: word.to_string(),
            rank: self.rank,
            order: self.order,
            counts: g
                .labels()
                .iter()
                .zip(&self.counts)
                .map(|(l, &c)| (l.clone(), c))
                .collect(),
            probability_identity: self.probability(0).to_string(),
        }
    }

    /// `label,count` rows with a header.
    pub fn to_csv(&self, g: &FiniteGroup) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["element", "count"]).map_err(csv_err)?;
        for (l, c) in g.labels().iter().zip(&self.counts) {
            w.write_record([l.as_str(), &c.to_string()]).map_err(csv_err)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
            .map_err(|e| Error::Io(e.to_string()))
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[derive(Serialize)]
pub struct DistributionReport {
    pub group: String,
    pub word: String,
    pub rank: usize,
    pub order: usize,
    /// Element label to count, in element order.
    #[serde(serialize_with = "ordered_map")]
    pub counts: Vec<(String, u128)>,
    pub probability_identity: String,
}

fn ordered_map<S: serde::Serializer>(v: &[(String, u128)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (k, c) in v {
        m.serialize_entry(k, c)?;
    }
    m.end()
}

/// Enumerates the variables that occur in `cw` (after reduction modulo the
/// exponent) and scales by `|G|` for each one that does not. The tuple
/// space is split across threads by the first occurring variable.
pub(crate) fn enumerate(g: &FiniteGroup, cw: &CompiledWord, budget: Budget) -> Result<Distribution> {
    let n = cw.rank();
    let used = cw.used_variables();
    let order = g.order();
    let required = power_count(order, used.len())?;
    budget.check(required)?;
    let scale = power_count(order, n - used.len())?;
    let mut counts = if used.is_empty() {
        let mut c = vec![0u128; order];
        c[cw.eval(g, &vec![0; n])] = 1;
        c
    } else {
        (0..order as u32)
            .into_par_iter()
            .map(|first| {
                let mut local = vec![0u128; order];
                let mut tuple = vec![0u32; n];
                tuple[used[0]] = first;
                let rest = &used[1..];
                loop {
                    local[cw.eval(g, &tuple)] += 1;
                    // odometer over the remaining used variables
                    let mut i = 0;
                    loop {
                        if i == rest.len() {
                            return local;
                        }
                        let v = &mut tuple[rest[i]];
                        *v += 1;
                        if (*v as usize) < order {
                            break;
                        }
                        *v = 0;
                        i += 1;
                    }
                }
            })
            .reduce(
                || vec![0u128; order],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    for c in &mut counts {
        *c = c.checked_mul(scale).ok_or(Error::Overflow)?;
    }
    Ok(Distribution {
        order,
        rank: n,
        counts,
    })
}

/// The full distribution of `w` on `G` by enumeration.
pub fn distribution(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<Distribution> {
    enumerate(g, &CompiledWord::new(w, g), budget)
}

/// `N(G, w = c)`.
pub fn count_solutions(g: &FiniteGroup, w: &Word, c: usize, budget: Budget) -> Result<u128> {
    g.check_element(c)?;
    Ok(distribution(g, w, budget)?.at(c))
}

/// `P(G, w = c)` as an exact fraction.
pub fn probability(g: &FiniteGroup, w: &Word, c: usize, budget: Budget) -> Result<BigRational> {
    g.check_element(c)?;
    Ok(distribution(g, w, budget)?.probability(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, dihedral, heisenberg};
    use crate::words::parse_word;

    fn word(s: &str, rank: usize) -> Word {
        parse_word(s, Some(rank)).unwrap()
    }

    #[test]
    fn small_counts() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(count_solutions(&z2, &word("x1^2", 1), 0, Budget::DEFAULT).unwrap(), 2);
        let d4 = dihedral(8).unwrap();
        assert_eq!(count_solutions(&d4, &word("[x1,x2]", 2), 0, Budget::DEFAULT).unwrap(), 40);
        assert_eq!(count_solutions(&d4, &word("x1^2", 1), 0, Budget::DEFAULT).unwrap(), 6);
        assert_eq!(
            probability(&d4, &word("x1^2", 1), 0, Budget::DEFAULT).unwrap(),
            BigRational::new(3.into(), 4.into())
        );
        let h = heisenberg(3, 1).unwrap();
        assert_eq!(count_solutions(&h, &word("x1^3", 1), 0, Budget::DEFAULT).unwrap(), 27);
    }

    #[test]
    fn totals_and_padding() {
        let d4 = dihedral(8).unwrap();
        let d = distribution(&d4, &word("x1^2*x3", 3), Budget::DEFAULT).unwrap();
        assert_eq!(d.total(), 512);
        let narrow = distribution(&d4, &word("x1^2", 1), Budget::DEFAULT).unwrap();
        assert_eq!(narrow.padded(2).unwrap().probability(0), narrow.probability(0));
        let empty = distribution(&d4, &word("1", 2), Budget::DEFAULT).unwrap();
        assert_eq!(empty.at(0), 64);
    }

    #[test]
    fn budget_is_enforced() {
        let d4 = dihedral(8).unwrap();
        let err = distribution(&d4, &word("x1*x2*x3", 3), Budget(100)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { required: 512, budget: 100 });
        // x2^4 vanishes on D4, so only x1 is enumerated
        assert!(distribution(&d4, &word("x1*x2^4", 2), Budget(8)).is_ok());
    }

    #[test]
    fn report_shapes() {
        let z3 = cyclic(3).unwrap();
        let d = distribution(&z3, &word("x1^3", 1), Budget::DEFAULT).unwrap();
        let json = serde_json::to_value(d.report(&z3, "cyclic:3", "x1^3")).unwrap();
        assert_eq!(json["counts"]["0"], 3);
        assert_eq!(json["probability_identity"], "1");
        assert!(d.to_csv(&z3).unwrap().starts_with("element,count\n0,3\n"));
    }
}
