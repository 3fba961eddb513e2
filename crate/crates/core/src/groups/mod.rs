//! Finite groups as dense Cayley tables.
//!
//! Elements are indices `0..order` with `0` the identity. Every structured
//! constructor compiles down to a table, so one evaluation path serves all
//! groups.

mod builders;
mod eval;
mod spec;
mod structure;

use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use builders::{
    abelian, abelian_invariant_lists, cyclic, dihedral, direct_product, heisenberg,
    inversion_action, modular16, quaternion8, semidirect_product, Semidirect,
};
pub use eval::{evaluate, CompiledWord};
pub use spec::{parse_group_spec, GroupSpec};
pub use structure::SylowFactor;

/// Largest order accepted by the table constructors.
pub const MAX_ORDER: usize = 4096;

/// Tables up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    labels: Vec<String>,
    generators: Option<Vec<usize>>,
    exponent: OnceLock<u64>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .finish()
    }
}

impl FiniteGroup {
    /// Validated construction from `table[i][j] = i * j`. Element 0 must be
    /// the identity.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::InvalidTable(format!(
                "order {order} exceeds {MAX_ORDER}"
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        let g = Self::from_flat(order, flat, labels)?;
        g.validate()?;
        Ok(g)
    }

    /// Builds the table from a multiplication function. Used by the
    /// structured constructors, whose axioms hold by construction.
    pub(crate) fn from_fn(
        order: usize,
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidTable(format!("unsupported order {order}")));
        }
        let mut flat = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                flat.push(mul(a, b) as u32);
            }
        }
        Self::from_flat(order, flat, Some(labels))
    }

    fn from_flat(order: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::InvalidTable(format!(
                    "{} labels for {order} elements",
                    l.len()
                )))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        for i in 0..order {
            if table[i] as usize != i || table[i * order] as usize != i {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
            if inverses[a] == u32::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        Ok(Self {
            order,
            table,
            inverses,
            labels,
            generators: None,
            exponent: OnceLock::new(),
        })
    }

    /// Latin-square and associativity checks; exhaustive for small tables,
    /// a fixed-seed sample of triples otherwise.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] {
                    return Err(Error::InvalidTable(format!("row {a} repeats {c}")));
                }
                seen[c] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] {
                    return Err(Error::InvalidTable(format!("column {b} repeats {c}")));
                }
                seen[c] = true;
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::InvalidTable(format!(
                    "not associative at ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Element with the given label, or the given decimal index.
    pub fn find(&self, text: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == text)
            .or_else(|| text.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub(crate) fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.generators = Some(gens);
        self
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(a, g))
    }

    pub fn elem(&self, index: usize) -> Result<GroupElement<'_>> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(GroupElement { group: self, index })
    }

    pub fn check_element(&self, index: usize) -> Result<()> {
        self.elem(index).map(|_| ())
    }
}

/// An element together with the group it lives in.
#[derive(Clone, Copy)]
pub struct GroupElement<'g> {
    group: &'g FiniteGroup,
    index: usize,
}

impl<'g> GroupElement<'g> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn inverse(&self) -> Self {
        Self {
            group: self.group,
            index: self.group.inv(self.index),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.index == other.index
    }
}

impl Eq for GroupElement<'_> {}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group.label(self.index))
    }
}

impl<'g> Mul for GroupElement<'g> {
    type Output = GroupElement<'g>;

    fn mul(self, rhs: Self) -> Self::Output {
        assert!(std::ptr::eq(self.group, rhs.group), "elements of different groups");
        GroupElement {
            group: self.group,
            index: self.group.mul(self.index, rhs.index),
        }
    }
}
