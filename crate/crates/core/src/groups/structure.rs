//! Structural queries by exhaustive computation over the table.

use num_integer::Integer;

use crate::arith::{prime_factors, prime_power_base};
use crate::error::{Error, Result};

use super::FiniteGroup;

/// A Sylow subgroup as a standalone group, with its embedding into the
/// parent (`embedding[i]` is the parent index of element `i`).
#[derive(Clone, Debug)]
pub struct SylowFactor {
    pub prime: u64,
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
}

impl FiniteGroup {
    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        *self.exponent.get_or_init(|| {
            (0..self.order).fold(1u64, |acc, a| acc.lcm(&self.element_order(a)))
        })
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// A small generating set, chosen greedily in index order unless the
    /// constructor supplied one.
    pub fn generating_set(&self) -> Vec<usize> {
        if let Some(g) = self.generators() {
            return g.to_vec();
        }
        generating_subset(self, &(0..self.order).collect::<Vec<_>>())
    }

    /// A generating set of the subgroup with the given sorted elements.
    pub fn generating_set_of(&self, elements: &[usize]) -> Vec<usize> {
        generating_subset(self, elements)
    }

    /// `[G, H]` for a subgroup `H` given by its elements.
    fn commutator_with(&self, sub: &[usize]) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in sub {
            for g in 0..self.order {
                let c = self.commutator(x, g);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_generated(&comms)
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        self.commutator_with(&(0..self.order).collect::<Vec<_>>())
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// `gamma_1 = G, gamma_{i+1} = [gamma_i, G]`, stopped once a term
    /// repeats.
    pub fn lower_central_series(&self) -> Vec<Vec<usize>> {
        let mut series = vec![(0..self.order).collect::<Vec<_>>()];
        loop {
            let next = self.commutator_with(series.last().unwrap());
            if next == *series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class, `None` if the lower central series stalls above
    /// the trivial group. The trivial group has class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        if series.last().unwrap().len() == 1 {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if done[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(a, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                done[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn conjugacy_class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// `Some(p)` if the order is a power of the prime `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        prime_power_base(self.order as u64).map(|(p, _)| p)
    }

    /// Subgroup given by its (sorted, identity-first) elements as a group
    /// of its own, plus the embedding.
    pub fn subgroup_as_group(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if elements.first() != Some(&0) {
            return Err(Error::InvalidTable("subgroup must start at the identity".into()));
        }
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        for &x in elements {
            for &y in elements {
                if local[self.mul(x, y)] == usize::MAX {
                    return Err(Error::InvalidTable("elements are not closed".into()));
                }
            }
        }
        let labels = elements.iter().map(|&x| self.label(x).to_string()).collect();
        let g = FiniteGroup::from_fn(elements.len(), labels, |a, b| {
            local[self.mul(elements[a], elements[b])]
        })?;
        Ok((g, elements.to_vec()))
    }

    /// For nilpotent `G`, the Sylow subgroups (elements of `p`-power order)
    /// for each prime divisor of `|G|`, ascending in `p`.
    pub fn sylow_decomposition(&self) -> Result<Vec<SylowFactor>> {
        let mut factors = Vec::new();
        for (p, e) in prime_factors(self.order as u64) {
            let part: Vec<usize> = (0..self.order)
                .filter(|&a| prime_power_base(self.element_order(a)).map_or(a == 0, |(q, _)| q == p))
                .collect();
            let expected = p.pow(e) as usize;
            if part.len() != expected {
                return Err(Error::NotNilpotent(format!(
                    "{} elements of {p}-power order, Sylow subgroup has {expected}",
                    part.len()
                )));
            }
            let (group, embedding) = self.subgroup_as_group(&part).map_err(|_| {
                Error::NotNilpotent(format!("{p}-elements are not closed under multiplication"))
            })?;
            factors.push(SylowFactor {
                prime: p,
                group,
                embedding,
            });
        }
        Ok(factors)
    }
}

/// Greedy generating set of the subgroup whose elements are `elements`.
pub(crate) fn generating_subset(g: &FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in elements {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.subgroup_generated(&gens);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn abelian_and_trivial_classes() {
        assert_eq!(cyclic(1).unwrap().nilpotency_class(), Some(0));
        assert_eq!(cyclic(6).unwrap().nilpotency_class(), Some(1));
        assert_eq!(abelian(&[2, 4]).unwrap().exponent(), 4);
    }

    #[test]
    fn dihedral_eight() {
        let d4 = dihedral(8).unwrap();
        assert_eq!(d4.nilpotency_class(), Some(2));
        assert_eq!(d4.exponent(), 4);
        assert_eq!(d4.derived_subgroup().len(), 2);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(d4.conjugacy_class_count(), 5);
        assert_eq!(d4.pow(1, 2), 2); // r^2
    }

    #[test]
    fn extraspecial_and_heisenberg() {
        assert_eq!(quaternion8().unwrap().conjugacy_class_count(), 5);
        let h = heisenberg(3, 1).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert_eq!(h.derived_subgroup().len(), 3);
        assert_eq!(h.center().len(), 3);
        for p in [2, 3, 5] {
            assert_eq!(heisenberg(p, 1).unwrap().nilpotency_class(), Some(2));
        }
        assert_eq!(heisenberg(2, 1).unwrap().exponent(), 4);
    }

    #[test]
    fn class_three_and_non_nilpotent() {
        assert_eq!(dihedral(16).unwrap().nilpotency_class(), Some(3));
        let s3 = dihedral(6).unwrap();
        assert_eq!(s3.nilpotency_class(), None);
        assert_eq!(s3.conjugacy_class_count(), 3);
        assert_eq!(modular16().unwrap().nilpotency_class(), Some(2));
        assert_eq!(modular16().unwrap().exponent(), 8);
    }

    #[test]
    fn sylow_factors() {
        let z12 = cyclic(12).unwrap();
        let parts = z12.sylow_decomposition().unwrap();
        assert_eq!(parts.iter().map(|f| (f.prime, f.group.order())).collect::<Vec<_>>(), vec![(2, 4), (3, 3)]);
        assert_eq!(parts[0].group.exponent(), 4);

        let g = direct_product(&dihedral(8).unwrap(), &cyclic(9).unwrap()).unwrap();
        let parts = g.sylow_decomposition().unwrap();
        assert_eq!(parts[0].group.order(), 8);
        assert_eq!(parts[0].group.nilpotency_class(), Some(2));
        assert_eq!(parts[1].group.order(), 9);
        assert!(parts[1].group.is_abelian());
        assert_eq!(parts[1].group.exponent(), 9);

        assert!(matches!(
            dihedral(6).unwrap().sylow_decomposition(),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn generating_sets_generate() {
        for g in [heisenberg(3, 1).unwrap(), quaternion8().unwrap(), abelian(&[2, 2, 4]).unwrap()] {
            assert_eq!(g.subgroup_generated(&g.generating_set()).len(), g.order());
        }
        let g = direct_product(&dihedral(8).unwrap(), &cyclic(3).unwrap())
            .unwrap()
            .sylow_decomposition()
            .unwrap()
            .remove(0)
            .group;
        assert_eq!(g.subgroup_generated(&g.generating_set()).len(), 8);
    }
}
