//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p wordmap-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordmap::arith::PrimePower;
use wordmap::counting::{
    abelian_count, count_solutions, direct_product_distribution, distribution,
    distribution_via_sylow, semidirect_count, Budget,
};
use wordmap::groups::{
    abelian, abelian_invariant_lists, cyclic, dihedral, direct_product, heisenberg,
    inversion_action, modular16, quaternion8, semidirect_product, FiniteGroup,
};
use wordmap::normal_form::{collect, nf_to_word};
use wordmap::reduction::{canonicalize, lemma_commutator_pairing, lemma_power_reduce};
use wordmap::verification::{
    dedupe_by_collection, enumerate_words, random_words, run_census, verify_canonicalization,
    CensusConfig, CensusGroup,
};
use wordmap::words::parse_word;
use wordmap::Result;

const B: Budget = Budget::DEFAULT;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        ok,
        detail: detail.into(),
    })
}

fn ac1() -> Result<Outcome> {
    let mut groups = Vec::new();
    for n in 1..=16 {
        for ks in abelian_invariant_lists(n) {
            let name = format!("abelian:{}", ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","));
            groups.push(CensusGroup::new(name, abelian(&ks)?));
        }
    }
    let abelian_groups = groups.len();
    groups.push(CensusGroup::new("dihedral:8", dihedral(8)?));
    groups.push(CensusGroup::new("quaternion:8", quaternion8()?));
    groups.push(CensusGroup::new("modular:16", modular16()?));
    groups.push(CensusGroup::new("heisenberg:p=3,k=1", heisenberg(3, 1)?));
    groups.push(CensusGroup::new("heisenberg:p=2,k=1", heisenberg(2, 1)?));
    groups.push(CensusGroup::new(
        "product:(dihedral:8)x(cyclic:3)",
        direct_product(&dihedral(8)?, &cyclic(3)?)?,
    ));
    groups.push(CensusGroup::new("product:(cyclic:4)x(cyclic:4)", abelian(&[4, 4])?));
    let words = dedupe_by_collection(enumerate_words(2, 4, 4));
    let report = run_census(&groups, &words, CensusConfig::default());
    let s = &report.summary;
    let consistent = report.rows.iter().all(|r| r.pass.is_some() && r.pass == r.recompute_pass());
    outcome(
        s.violations == 0 && s.errors == 0 && consistent && abelian_groups == 25,
        format!(
            "{} groups ({abelian_groups} abelian) x {} words: {} rows, {} violations, {} errors, {} canonical checks",
            groups.len(),
            words.len(),
            s.rows,
            s.violations,
            s.errors,
            s.canonical_checked
        ),
    )
}

fn ac2() -> Result<Outcome> {
    let cases: [(&str, FiniteGroup, PrimePower); 4] = [
        ("D4", dihedral(8)?, PrimePower::new(2, 2)?),
        ("Q8", quaternion8()?, PrimePower::new(2, 2)?),
        ("Z4xZ2", abelian(&[4, 2])?, PrimePower::new(2, 2)?),
        ("heisenberg(3,1)", heisenberg(3, 1)?, PrimePower::new(3, 1)?),
    ];
    let mut failures = Vec::new();
    let mut checked = 0;
    for (seed, (name, g, q)) in cases.iter().enumerate() {
        for w in random_words(500, 3, 10, 9, 1000 + seed as u64) {
            let r = verify_canonicalization(g, &w, *q, B)?;
            checked += 1;
            if !(r.passed && r.bound.count >= r.bound.bound) {
                failures.push(format!("{name}: {w}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} words, {} failures {:?}", failures.len(), failures.iter().take(3).collect::<Vec<_>>()),
    )
}

fn ac3() -> Result<Outcome> {
    let mut mismatches = 0;
    let mut tuples = 0u64;
    let cases = [
        (common::heisenberg(3), heisenberg(3, 1)?, 2),
        (common::dihedral(4), dihedral(8)?, 3),
    ];
    for (seed, (oracle, g, max_rank)) in cases.iter().enumerate() {
        let words = random_words(500, *max_rank, 10, 9, 2000 + seed as u64);
        for w in &words {
            let v = nf_to_word(&collect(w));
            let direct = distribution(g, w, B)?;
            let collected = distribution(g, &v, B)?;
            let n = w.rank();
            let mut xs = vec![0usize; n];
            for idx in 0..oracle.order().pow(n as u32) {
                let mut r = idx;
                for x in xs.iter_mut() {
                    *x = r % oracle.order();
                    r /= oracle.order();
                }
                tuples += 1;
                if oracle.eval(w, &xs) != oracle.eval(&v, &xs) {
                    mismatches += 1;
                }
            }
            if direct != collected {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("1000 words, {tuples} tuples, {mismatches} mismatches"))
}

fn ac4() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for i in 0..50 {
        let n = rng.gen_range(1..=16);
        let lists = abelian_invariant_lists(n);
        let ks = &lists[rng.gen_range(0..lists.len())];
        let g = abelian(ks)?;
        let w = random_words(1, 3, 8, 9, 4000 + i).remove(0);
        let closed = abelian_count(&g, &w)?;
        let oracle = common::abelian(&ks.iter().map(|&k| k as u64).collect::<Vec<_>>());
        let image = oracle.distribution(&w).iter().filter(|&&c| c > 0).count() as u128;
        let n_direct = count_solutions(&g, &w, 0, B)?;
        let p_ok = closed.probability(0) == wordmap::counting::ratio(1, image);
        if closed != distribution(&g, &w, B)? || closed.at(0) != n_direct || !p_ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("50 pairs, {bad} disagreements"))
}

fn ac5() -> Result<Outcome> {
    let mut bad = 0;
    for (i, (a, b)) in [(dihedral(8)?, cyclic(3)?), (quaternion8()?, cyclic(2)?)].iter().enumerate() {
        let g = direct_product(a, b)?;
        for w in random_words(20, 3, 8, 9, 5000 + i as u64) {
            let lhs = distribution(&g, &w, B)?;
            let rhs = direct_product_distribution(&distribution(a, &w, B)?, &distribution(b, &w, B)?)?;
            bad += usize::from(lhs != rhs);
        }
    }
    outcome(bad == 0, format!("40 words, {bad} disagreements"))
}

fn ac6() -> Result<Outcome> {
    let z4 = cyclic(4)?;
    let z3 = cyclic(3)?;
    let z2 = cyclic(2)?;
    let d4 = semidirect_product(&z4, &z2, inversion_action(&z4))?;
    let s3 = semidirect_product(&z3, &z2, inversion_action(&z3))?;
    let oracles = [common::dihedral(4), common::dihedral(3)];
    let mut bad = 0;
    let mut s3_bound = true;
    for (i, (sd, oracle)) in [d4, s3].iter().zip(&oracles).enumerate() {
        for w in random_words(20, 3, 8, 9, 6000 + i as u64) {
            let r = semidirect_count(sd, &w, B)?;
            let brute = distribution(&sd.group, &w, B)?.at(0);
            if r.count != brute || r.count != oracle.distribution(&w)[0] || r.certificate > r.count {
                bad += 1;
            }
            if i == 1 {
                let total = 6u128.pow(w.rank() as u32);
                s3_bound &= r.certificate * 6 >= total && r.count * 6 >= total;
            }
        }
    }
    outcome(bad == 0 && s3_bound, format!("40 words, {bad} disagreements, S3 bound certified: {s3_bound}"))
}

fn ac7() -> Result<Outcome> {
    let g = direct_product(&dihedral(8)?, &cyclic(9)?)?;
    let factors = g.sylow_decomposition()?;
    let mut bad = 0;
    for w in random_words(10, 2, 8, 9, 7000) {
        bad += usize::from(distribution_via_sylow(&g, &w, B)? != distribution(&g, &w, B)?);
    }
    let orders: Vec<usize> = factors.iter().map(|f| f.group.order()).collect();
    outcome(bad == 0 && orders == [8, 9], format!("Sylow orders {orders:?}, 10 words, {bad} disagreements"))
}

fn ac8() -> Result<Outcome> {
    let d4 = dihedral(8)?;
    let h = heisenberg(3, 1)?;
    let comm = count_solutions(&d4, &parse_word("[x1,x2]", Some(2))?, 0, B)?;
    let square = count_solutions(&d4, &parse_word("x1^2", Some(1))?, 0, B)?;
    let cube = count_solutions(&h, &parse_word("x1^3", Some(1))?, 0, B)?;
    let od4 = common::dihedral(4);
    let cross = comm == 8 * d4.conjugacy_class_count() as u128
        && comm == 8 * od4.class_count() as u128
        && comm == od4.distribution(&parse_word("[x1,x2]", Some(2))?)[0]
        && square == od4.distribution(&parse_word("x1^2", Some(1))?)[0]
        && cube == common::heisenberg(3).distribution(&parse_word("x1^3", Some(1))?)[0]
        && h.exponent() == 3;
    outcome(
        comm == 40 && square == 6 && cube == 27 && cross,
        format!("N(D4,[x,y])={comm}, N(D4,x^2)={square}, N(H3,x^3)={cube}, cross-checks {cross}"),
    )
}

fn ac9() -> Result<Outcome> {
    let mut substitutions = 0;
    let mut chains = 0;
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..600u64 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let q = PrimePower::new(p, rng.gen_range(1..=3))?;
        let w = random_words(1, 6, 14, 12, 9000 + i).remove(0);
        let c = canonicalize(&w, q)?;
        let nf = collect(&w);
        let (s1, _) = lemma_power_reduce(&nf, q)?;
        let comm = wordmap::normal_form::NormalForm::from_parts(
            vec![0.into(); w.rank()],
            &nf.beta_entries().map(|(a, b, e)| (a, b, e.clone())).collect::<Vec<_>>(),
        );
        let (s2, pairing) = lemma_commutator_pairing(&comm, q)?;
        substitutions += 3;
        chains += c.trace.len() + pairing.trace.len();
        let decreasing = c
            .trace
            .iter()
            .chain(&pairing.trace)
            .all(|t| !t.valuations.is_empty() && t.valuations.windows(2).all(|v| v[0] > v[1]));
        let valid = [&c.substitution, &s1, &s2].iter().all(|s| s.is_burnside_valid());
        if !(valid && decreasing && c.indices_disjoint() && pairing.indices_disjoint()) {
            bad.push(format!("{w} mod {}^{}", q.p(), q.m()));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{substitutions} substitutions, {chains} chains, {} failures {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = match check() {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "{name} {} {detail} ({:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
