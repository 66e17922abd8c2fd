//! End-to-end acceptance battery. Each test prints one summary line,
//! `criterion N: pass - ...` or `criterion N: fail - ...`, and enforces the
//! wall-clock budget pinned next to it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use commutant::centralizer::{center_codes, centralizer, nilpotent_codes};
use commutant::graph::{
    certify_distance_ge4, BuildMode, CommutingGraph, Distance, GraphBudget,
};
use commutant::matrix::{space_size, FinMatrix};
use commutant::semiring::{
    boolean, chain, modular, ElementId, SemiringTable, TableSelector,
};
use commutant::witness::verify::{verify, CheckStatus, VerifyConfig};
use commutant::witness::{
    boolean_witness_pair, expected_neighbor_sets_n3, jn_pair, nonentire_connect,
};

const ENUM_BUDGET: u64 = 1 << 24;

fn criterion(
    number: u32,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!(
                "criterion {number}: pass - {detail} ({} ms)",
                elapsed.as_millis()
            );
            if let Some(cap) = budget {
                assert!(
                    elapsed <= cap,
                    "criterion {number}: exceeded the {cap:?} budget ({elapsed:?})"
                );
            }
        }
        Err(message) => {
            println!("criterion {number}: fail - {message}");
            panic!("criterion {number}: {message}");
        }
    }
}

fn build(
    semiring: std::sync::Arc<SemiringTable>,
    n: usize,
) -> Result<CommutingGraph, String> {
    CommutingGraph::build(semiring, n, BuildMode::Materialized, &GraphBudget::default())
        .map_err(|e| e.to_string())
}

#[test]
fn c01_boolean_n3_diameter_is_four() {
    criterion(1, Some(Duration::from_secs(10)), || {
        let g = build(boolean(), 3)?;
        if g.vertex_count() != 510 {
            return Err(format!("{} vertices instead of 510", g.vertex_count()));
        }
        let d = g.diameter().map_err(|e| e.to_string())?;
        if d.value != Distance::Finite(4) {
            return Err(format!("diameter {} instead of 4", d.value));
        }
        Ok("diameter 4 on the 510-vertex materialized graph".into())
    });
}

#[test]
fn c02_boolean_n2_graph_is_disconnected() {
    criterion(2, Some(Duration::from_secs(1)), || {
        let g = build(boolean(), 2)?;
        let d = g.diameter().map_err(|e| e.to_string())?;
        if d.value != Distance::Infinite {
            return Err(format!("diameter {} instead of infinity", d.value));
        }
        Ok(format!(
            "disconnected with infinite diameter on {} vertices",
            g.vertex_count()
        ))
    });
}

#[test]
fn c03_displayed_neighbor_sets_match_exactly() {
    criterion(3, None, || {
        let (a, b) = boolean_witness_pair(3).map_err(|e| e.to_string())?;
        let (expect_a, expect_b) = expected_neighbor_sets_n3();
        let center = center_codes(&boolean(), 3, ENUM_BUDGET).map_err(|e| e.to_string())?;
        let neighborhood = |m: &FinMatrix| -> Result<Vec<u64>, String> {
            Ok(centralizer(m, ENUM_BUDGET)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|x| x.code())
                .filter(|&c| c != m.code() && center.binary_search(&c).is_err())
                .collect())
        };
        let na = neighborhood(&a)?;
        let nb = neighborhood(&b)?;
        let want_a: Vec<u64> = expect_a.iter().map(|m| m.code()).collect();
        let want_b: Vec<u64> = expect_b.iter().map(|m| m.code()).collect();
        if na != want_a {
            return Err(format!("neighborhood {na:?} differs from {want_a:?}"));
        }
        if nb != want_b {
            return Err(format!("neighborhood {nb:?} differs from {want_b:?}"));
        }
        let mut cross = 0u32;
        for x in &expect_a {
            for y in &expect_b {
                if x.commutes(y).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "cross pair ({}, {}) commutes",
                        x.code(),
                        y.code()
                    ));
                }
                cross += 1;
            }
        }
        Ok(format!(
            "both 5-matrix neighborhoods match and all {cross} cross pairs fail to commute"
        ))
    });
}

#[test]
fn c04_distance_certificate_holds_at_n4() {
    criterion(4, Some(Duration::from_secs(300)), || {
        let (a, b) = boolean_witness_pair(4).map_err(|e| e.to_string())?;
        let cert = certify_distance_ge4(&boolean(), 4, &a, &b, &GraphBudget::default())
            .map_err(|e| e.to_string())?;
        if !cert.holds {
            return Err(format!(
                "certificate refuted by witness {:?}",
                cert.counterexample
            ));
        }
        if cert.scanned != 2 * 65_536 {
            return Err(format!(
                "scanned {} matrices instead of 131072",
                cert.scanned
            ));
        }
        Ok(format!(
            "distance >= 4 certified; 65536 matrices scanned per neighborhood, \
             {} cross pairs checked",
            cert.cross_pairs_checked
        ))
    });
}

#[test]
fn c05_shift_centralizers_match_polynomial_sets() {
    criterion(5, None, || {
        let report = verify("lemma-2.1", &VerifyConfig::default()).map_err(|e| e.to_string())?;
        if report.status != CheckStatus::Pass {
            let failing = report
                .checks
                .iter()
                .find(|c| c.status != CheckStatus::Pass)
                .map(|c| c.name.clone())
                .unwrap_or_default();
            return Err(format!("check {failing} did not pass"));
        }
        let scanned: u64 = report
            .checks
            .iter()
            .map(|c| c.counters.get("scanned").copied().unwrap_or(0))
            .sum();
        Ok(format!(
            "exact set equality for 4 semiring/dimension combinations, both orientations \
             ({scanned} matrices scanned)"
        ))
    });
}

#[test]
fn c06_modular_diameters_are_three() {
    criterion(6, Some(Duration::from_secs(60)), || {
        for m in [4usize, 6] {
            let semiring = modular(m).map_err(|e| e.to_string())?;
            let g = build(semiring.clone(), 2)?;
            let d = g.diameter().map_err(|e| e.to_string())?;
            if d.value != Distance::Finite(3) {
                return Err(format!("modulus {m}: diameter {} instead of 3", d.value));
            }
            let (j, jt) = jn_pair(semiring, 2);
            let jd = g.distance(&j, &jt).map_err(|e| e.to_string())?;
            if jd.value != Distance::Finite(3) {
                return Err(format!(
                    "modulus {m}: shift pair at distance {} instead of 3",
                    jd.value
                ));
            }
        }
        Ok("diameter 3 over both moduli; the shift pair realizes distance 3".into())
    });
}

#[test]
fn c07_zero_divisor_paths_cover_every_ordered_pair() {
    criterion(7, Some(Duration::from_secs(120)), || {
        let semiring = modular(4).map_err(|e| e.to_string())?;
        let space = space_size(4, 2).expect("256");
        let center = center_codes(&semiring, 2, ENUM_BUDGET).map_err(|e| e.to_string())?;
        let verts: Vec<u64> = (0..space)
            .filter(|c| center.binary_search(c).is_err())
            .collect();
        if verts.len() != 252 {
            return Err(format!("{} vertices instead of 252", verts.len()));
        }
        let mut pairs = 0u64;
        let mut max_len = 0usize;
        for &ca in &verts {
            let a = FinMatrix::from_code(semiring.clone(), 2, ca).expect("in range");
            for &cb in &verts {
                let b = FinMatrix::from_code(semiring.clone(), 2, cb).expect("in range");
                let path = nonentire_connect(&a, &b, &center)
                    .map_err(|e| format!("pair ({ca}, {cb}): {e}"))?;
                if path.witness.length() > 3 {
                    return Err(format!(
                        "pair ({ca}, {cb}) needed length {}",
                        path.witness.length()
                    ));
                }
                max_len = max_len.max(path.witness.length());
                pairs += 1;
            }
        }
        Ok(format!(
            "verified paths for all {pairs} ordered pairs, maximum length {max_len}"
        ))
    });
}

#[test]
fn c08_all_units_commutation_equivalence() {
    criterion(8, None, || {
        let report = verify("lemma-3.1", &VerifyConfig::default()).map_err(|e| e.to_string())?;
        if report.status != CheckStatus::Pass {
            return Err("equivalence battery did not pass".into());
        }
        let samples = report.checks[0].counters["samples"];
        let scanned = report.checks[1].counters["scanned"];
        Ok(format!(
            "{samples} seeded samples across n in {{3,4,5}} plus {scanned} exhaustive \
             grid matrices, zero discrepancies"
        ))
    });
}

#[test]
fn c09_tropical_paths_cover_all_branches() {
    criterion(9, None, || {
        let report = verify("thm-3.2", &VerifyConfig::default()).map_err(|e| e.to_string())?;
        if report.status != CheckStatus::Pass {
            return Err("path battery did not pass".into());
        }
        let paths = &report.checks[0];
        for key in [
            "branch-nondiagonal",
            "branch-repeated-diagonal",
            "branch-distinct-diagonal",
        ] {
            if paths.counters[key] < 50 {
                return Err(format!("{key} exercised only {} times", paths.counters[key]));
            }
        }
        Ok(format!(
            "{} verified paths of length <= {}; branches exercised {} / {} / {} times",
            paths.counters["pairs"],
            paths.counters["max-length"],
            paths.counters["branch-nondiagonal"],
            paths.counters["branch-repeated-diagonal"],
            paths.counters["branch-distinct-diagonal"],
        ))
    });
}

#[test]
fn c10_support_functoriality_and_chain_diameter() {
    criterion(10, Some(Duration::from_secs(900)), || {
        let report = verify("cor-2.3", &VerifyConfig::default()).map_err(|e| e.to_string())?;
        if report.status != CheckStatus::Pass {
            let failing = report
                .checks
                .iter()
                .find(|c| c.status != CheckStatus::Pass)
                .and_then(|c| c.counterexample.clone())
                .unwrap_or_default();
            return Err(format!("battery did not pass: {failing}"));
        }
        let pairs = report.checks[0].counters["pairs"];
        let diameter = report.checks[1].counters["diameter"];
        let vertices = report.checks[1].counters["vertices"];
        // The exact value is this run's derived artifact.
        Ok(format!(
            "support transfer holds for all {pairs} pairs; exact diameter {diameter} \
             (>= 4) on the {vertices}-vertex chain graph"
        ))
    });
}

#[test]
fn c11_nilpotent_ground_set_components() {
    criterion(11, None, || {
        let mut details = Vec::new();
        for (semiring, label) in [(boolean(), "boolean"), (chain(3).map_err(|e| e.to_string())?, "chain:3")] {
            let expected = semiring.order() - 1;
            let nil = nilpotent_codes(&semiring, 2, ENUM_BUDGET).map_err(|e| e.to_string())?;
            let g = CommutingGraph::from_ground_set(
                semiring.clone(),
                2,
                &nil,
                BuildMode::Materialized,
                &GraphBudget::default(),
            )
            .map_err(|e| e.to_string())?;
            let comps = g.components().map_err(|e| e.to_string())?;
            if comps.len() != 2 {
                return Err(format!("{label}: {} components instead of 2", comps.len()));
            }
            for comp in &comps {
                if comp.len() != expected {
                    return Err(format!(
                        "{label}: component of size {} instead of {expected}",
                        comp.len()
                    ));
                }
                for (i, &u) in comp.iter().enumerate() {
                    for &v in &comp[i + 1..] {
                        let mu = FinMatrix::from_code(semiring.clone(), 2, u).expect("in range");
                        let mv = FinMatrix::from_code(semiring.clone(), 2, v).expect("in range");
                        if !mu.commutes(&mv).map_err(|e| e.to_string())? {
                            return Err(format!("{label}: pair ({u}, {v}) does not commute"));
                        }
                    }
                }
            }
            details.push(format!("{label}: 2 complete components of size {expected}"));
        }
        Ok(details.join("; "))
    });
}

// Independent re-check of every axiom, written against the raw tables.
fn naive_axiom_scan(t: &SemiringTable) -> bool {
    let k = t.order() as ElementId;
    let elems: Vec<ElementId> = (0..k).collect();
    for &a in &elems {
        if t.add(a, 0) != a || t.add(0, a) != a {
            return false;
        }
        if t.mul(a, 1) != a || t.mul(1, a) != a {
            return false;
        }
        if t.mul(a, 0) != 0 || t.mul(0, a) != 0 {
            return false;
        }
        for &b in &elems {
            if t.add(a, b) != t.add(b, a) {
                return false;
            }
            for &c in &elems {
                if t.add(t.add(a, b), c) != t.add(a, t.add(b, c)) {
                    return false;
                }
                if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                    return false;
                }
                if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)) {
                    return false;
                }
                if t.mul(t.add(a, b), c) != t.add(t.mul(a, c), t.mul(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn c12_axiom_fuzzing_has_zero_false_passes() {
    criterion(12, None, || {
        let bases = [
            boolean(),
            modular(4).map_err(|e| e.to_string())?,
            modular(6).map_err(|e| e.to_string())?,
            chain(3).map_err(|e| e.to_string())?,
            chain(4).map_err(|e| e.to_string())?,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0xf022);
        let mut tallies: BTreeMap<&str, u64> = BTreeMap::new();
        for round in 0..1_000u32 {
            let base = &bases[round as usize % bases.len()];
            let k = base.order() as ElementId;
            let selector = if rng.random_bool(0.5) {
                TableSelector::Add
            } else {
                TableSelector::Mul
            };
            let a = rng.random_range(0..k);
            let b = rng.random_range(0..k);
            let v = rng.random_range(0..k);
            let old = match selector {
                TableSelector::Add => base.add(a, b),
                TableSelector::Mul => base.mul(a, b),
            };
            let mut mutated = (**base).clone();
            mutated.set_cell(selector, a, b, v);
            let flagged = !mutated.validate_axioms().is_valid();
            let truly_valid = naive_axiom_scan(&mutated);
            if flagged == truly_valid {
                return Err(format!(
                    "round {round}: {} cell ({a}, {b}) set to {v} on {}: validator and \
                     independent scan disagree",
                    match selector {
                        TableSelector::Add => "add",
                        TableSelector::Mul => "mul",
                    },
                    base.name()
                ));
            }
            let bucket = if v == old {
                "identity"
            } else if flagged {
                "violation-flagged"
            } else {
                // A non-identity rewrite that lands on another valid
                // semiring; both checkers agree it satisfies the axioms.
                "still-valid"
            };
            *tallies.entry(bucket).or_insert(0) += 1;
        }
        Ok(format!(
            "1000 mutations: {} flagged, {} identity, {} landed on another valid table; \
             zero false passes against the independent scan",
            tallies.get("violation-flagged").unwrap_or(&0),
            tallies.get("identity").unwrap_or(&0),
            tallies.get("still-valid").unwrap_or(&0),
        ))
    });
}
