//! G-equivalence, canonicalization checks and the census harness.

mod census;
mod words;

use serde::Serialize;

use crate::arith::PrimePower;
use crate::counting::{distribution, theorem_count_bound, Budget, BoundReport};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::reduction::canonicalize;
use crate::words::Word;

pub use census::{run_census, CensusConfig, CensusGroup, CensusReport, CensusRow, CensusSummary};
pub use words::{dedupe_by_collection, enumerate_words, random_words};

/// Equal distributions of `w1` and `w2` on `G`, compared over every
/// element. The word of smaller rank is padded with unused variables.
pub fn g_equivalent(g: &FiniteGroup, w1: &Word, w2: &Word, budget: Budget) -> Result<bool> {
    let n = w1.rank().max(w2.rank());
    let d1 = distribution(g, &w1.with_rank(n)?, budget)?;
    let d2 = distribution(g, &w2.with_rank(n)?, budget)?;
    Ok(d1 == d2)
}

/// Checks that `G` has class at most 2 and exponent dividing `p^m`.
pub fn check_variety(g: &FiniteGroup, q: PrimePower) -> Result<()> {
    let outside = |reason: String| Error::OutsideVariety {
        p: q.p(),
        modulus: q.modulus(),
        reason,
    };
    match g.nilpotency_class() {
        None => return Err(outside("not nilpotent".into())),
        Some(c) if c > 2 => return Err(outside(format!("nilpotency class {c}"))),
        _ => {}
    }
    if !q.modulus().is_multiple_of(g.exponent()) {
        return Err(outside(format!("exponent {}", g.exponent())));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub p: u64,
    pub m: u32,
    pub order: usize,
    pub word: String,
    pub canonical: String,
    pub equivalent: bool,
    pub burnside_valid: bool,
    pub indices_disjoint: bool,
    pub bound: BoundReport,
    pub passed: bool,
}

/// Canonicalizes `w` modulo `p^m` and checks the result against `G` by
/// enumeration: equal distributions, and the count bound on the canonical
/// word.
pub fn verify_canonicalization(
    g: &FiniteGroup,
    w: &Word,
    q: PrimePower,
    budget: Budget,
) -> Result<VerificationReport> {
    check_variety(g, q)?;
    let v = canonicalize(w, q)?;
    let equivalent = g_equivalent(g, w, &v.word_of()?, budget)?;
    let bound = theorem_count_bound(g, &v, budget)?;
    let burnside_valid = v.substitution.is_burnside_valid();
    let indices_disjoint = v.indices_disjoint();
    Ok(VerificationReport {
        p: q.p(),
        m: q.m(),
        order: g.order(),
        word: w.to_string(),
        canonical: v.render(),
        passed: equivalent && bound.holds && burnside_valid && indices_disjoint,
        equivalent,
        burnside_valid,
        indices_disjoint,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, dihedral, heisenberg};
    use crate::words::parse_word;

    fn word(s: &str, rank: usize) -> Word {
        parse_word(s, Some(rank)).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let b = Budget::DEFAULT;
        let d4 = dihedral(8).unwrap();
        assert!(g_equivalent(&d4, &word("x2*x1", 2), &word("x1*x2*[x2,x1]", 2), b).unwrap());
        let h = heisenberg(3, 1).unwrap();
        assert!(g_equivalent(&h, &word("x1", 1), &word("x1^4", 1), b).unwrap());
        assert!(g_equivalent(&h, &word("x1", 1), &word("x1^2", 1), b).unwrap());
        assert!(!g_equivalent(&h, &word("[x1,x2]", 2), &word("x1^3", 1), b).unwrap());
    }

    #[test]
    fn verification_examples() {
        let b = Budget::DEFAULT;
        let g = abelian(&[4, 4]).unwrap();
        let q = PrimePower::new(2, 2).unwrap();
        let r = verify_canonicalization(&g, &word("x1^2*x2^2*[x1,x2]", 2), q, b).unwrap();
        assert!(r.passed, "{r:?}");
        let d8 = dihedral(16).unwrap();
        assert!(matches!(
            verify_canonicalization(&d8, &word("x1", 1), PrimePower::new(2, 3).unwrap(), b),
            Err(Error::OutsideVariety { .. })
        ));
        // exponent 4 does not divide 2
        let d4 = dihedral(8).unwrap();
        assert!(matches!(
            verify_canonicalization(&d4, &word("x1", 1), PrimePower::new(2, 1).unwrap(), b),
            Err(Error::OutsideVariety { .. })
        ));
    }
}
