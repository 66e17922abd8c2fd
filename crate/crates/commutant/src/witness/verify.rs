//! Claim-by-claim verification: each theorem id runs a fixed battery of
//! exhaustive or seeded checks and returns a structured report. Reports are
//! deterministic for a given seed and budget (the wall-time field aside),
//! regardless of worker count.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::centralizer::{
    center_codes, centralizer, nilpotent_codes, polynomial_centralizer_j,
};
use crate::error::Error;
use crate::graph::{certify_distance_ge4, BuildMode, CommutingGraph, Distance, GraphBudget};
use crate::matrix::{space_size, FinMatrix, TropMatrix};
use crate::semiring::{boolean, chain, modular, SemiringTable};
use crate::tropical::TropicalScalar;
use crate::witness::{
    boolean_witness_pair, expected_neighbor_sets_n3, jn_pair, nonentire_connect,
    tropical_connect, NonentireCase, TropicalBranch,
};
use crate::Result;

/// The claims this module can check, in report order.
pub const THEOREM_IDS: [&str; 8] = [
    "lemma-2.1",
    "thm-2.2",
    "cor-2.3",
    "lemma-3.1",
    "thm-3.2",
    "prop-4.1",
    "thm-4.2",
    "intro-example",
];

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Cap on the enumeration or sample count any single check may use.
    pub budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The budget did not cover the check; never silently passed.
    Incomplete,
    /// Not checkable at desk scale; the claim rests on another verified one.
    CrossReference,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub status: CheckStatus,
    pub checks: Vec<CheckResult>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn counters<const N: usize>(pairs: [(&str, u64); N]) -> BTreeMap<String, u64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn pass(name: &str, counters: BTreeMap<String, u64>) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: CheckStatus::Pass,
        counters,
        counterexample: None,
    }
}

fn fail(name: &str, counters: BTreeMap<String, u64>, witness: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: CheckStatus::Fail,
        counters,
        counterexample: Some(witness),
    }
}

/// Wraps a check body behind the work budget; bodies only run when the
/// budget covers their enumeration or sample count.
fn gated(
    name: &str,
    required: u64,
    config: &VerifyConfig,
    body: impl FnOnce() -> CheckResult,
) -> CheckResult {
    if config.budget < required {
        return CheckResult {
            name: name.into(),
            status: CheckStatus::Incomplete,
            counters: counters([("required", required), ("budget", config.budget)]),
            counterexample: Some(format!(
                "budget {} is below the {} units of work this check needs",
                config.budget, required
            )),
        };
    }
    body()
}

fn graph_budget(config: &VerifyConfig) -> GraphBudget {
    GraphBudget {
        max_enumeration: config.budget,
        ..GraphBudget::default()
    }
}

fn aggregate(checks: &[CheckResult]) -> CheckStatus {
    if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if checks.iter().any(|c| c.status == CheckStatus::Incomplete) {
        CheckStatus::Incomplete
    } else {
        CheckStatus::Pass
    }
}

/// Runs the battery for one theorem id.
pub fn verify(theorem: &str, config: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = match theorem {
        "lemma-2.1" => lemma_2_1(config),
        "thm-2.2" => thm_2_2(config),
        "cor-2.3" => cor_2_3(config),
        "lemma-3.1" => lemma_3_1(config),
        "thm-3.2" => thm_3_2(config),
        "prop-4.1" => prop_4_1(config),
        "thm-4.2" => thm_4_2(config),
        "intro-example" => intro_example(config),
        other => {
            return Err(Error::Domain(format!(
                "unknown theorem id {other:?}; expected one of {}",
                THEOREM_IDS.join(", ")
            )))
        }
    };
    Ok(VerificationReport {
        theorem: theorem.into(),
        status: aggregate(&checks),
        checks,
        seed: config.seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every theorem battery in id order.
pub fn verify_all(config: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    THEOREM_IDS.iter().map(|id| verify(id, config)).collect()
}

fn rng_for(config: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt)
}

// Shift-matrix centralizers equal the polynomial sets, both orientations.
fn lemma_2_1(config: &VerifyConfig) -> Vec<CheckResult> {
    let combos: [(Arc<SemiringTable>, usize); 4] = [
        (boolean(), 2),
        (boolean(), 3),
        (modular(4).expect("4 >= 2"), 2),
        (chain(3).expect("3 >= 2"), 2),
    ];
    combos
        .into_iter()
        .map(|(semiring, n)| {
            let name = format!("centralizer-equality-{}-n{}", semiring.name(), n);
            let space = space_size(semiring.order(), n).expect("small space");
            gated(&name, space, config, || {
                for transposed in [false, true] {
                    let j = if transposed {
                        FinMatrix::jordan(semiring.clone(), n).transpose()
                    } else {
                        FinMatrix::jordan(semiring.clone(), n)
                    };
                    let enumerated: Vec<u64> = match centralizer(&j, config.budget) {
                        Ok(v) => v.iter().map(|m| m.code()).collect(),
                        Err(e) => return fail(&name, counters([("scanned", 0)]), e.to_string()),
                    };
                    let poly: Vec<u64> =
                        match polynomial_centralizer_j(semiring.clone(), n, transposed) {
                            Ok(v) => v.iter().map(|m| m.code()).collect(),
                            Err(e) => {
                                return fail(&name, counters([("scanned", 0)]), e.to_string())
                            }
                        };
                    if enumerated != poly {
                        let diff = enumerated
                            .iter()
                            .find(|c| !poly.contains(c))
                            .or_else(|| poly.iter().find(|c| !enumerated.contains(c)))
                            .copied()
                            .unwrap_or(0);
                        return fail(
                            &name,
                            counters([("scanned", space), ("transposed", transposed as u64)]),
                            format!(
                                "matrix code {diff} separates the enumerated centralizer from the polynomial set"
                            ),
                        );
                    }
                }
                pass(
                    &name,
                    counters([("scanned", 2 * space), ("orientations", 2)]),
                )
            })
        })
        .collect()
}

// Boolean diameter-4 witnesses, certificates, and the exact diameters.
fn thm_2_2(config: &VerifyConfig) -> Vec<CheckResult> {
    let b = boolean();
    let mut checks = Vec::new();

    let space3 = space_size(2, 3).expect("512");
    checks.push(gated("neighbor-sets-n3", space3, config, || {
        let name = "neighbor-sets-n3";
        let (a, bm) = boolean_witness_pair(3).expect("n = 3");
        let (expect_a, expect_b) = expected_neighbor_sets_n3();
        let center = match center_codes(&b, 3, config.budget) {
            Ok(c) => c,
            Err(e) => return fail(name, counters([]), e.to_string()),
        };
        let scan = |target: &FinMatrix| -> Vec<u64> {
            (0..space3)
                .filter(|&code| {
                    code != target.code()
                        && center.binary_search(&code).is_err()
                        && FinMatrix::from_code(b.clone(), 3, code)
                            .expect("code in range")
                            .commutes(target)
                            .expect("same space")
                })
                .collect()
        };
        let na = scan(&a);
        let nb = scan(&bm);
        let want_a: Vec<u64> = expect_a.iter().map(|m| m.code()).collect();
        let want_b: Vec<u64> = expect_b.iter().map(|m| m.code()).collect();
        if na != want_a || nb != want_b {
            return fail(
                name,
                counters([("neighborhood-a", na.len() as u64), ("neighborhood-b", nb.len() as u64)]),
                "a computed neighborhood differs from the displayed set".into(),
            );
        }
        let mut cross = 0;
        for x in &expect_a {
            for y in &expect_b {
                cross += 1;
                if x.commutes(y).expect("same space") {
                    return fail(
                        name,
                        counters([("cross-pairs", cross)]),
                        format!("displayed matrices {} and {} commute", x.code(), y.code()),
                    );
                }
            }
        }
        pass(
            name,
            counters([
                ("neighborhood-a", 5),
                ("neighborhood-b", 5),
                ("cross-pairs", cross),
            ]),
        )
    }));

    for n in [3usize, 4] {
        let name = format!("certificate-n{n}");
        let space = space_size(2, n).expect("boolean space");
        checks.push(gated(&name, space, config, || {
            let (a, bm) = boolean_witness_pair(n).expect("n >= 3");
            match certify_distance_ge4(&b, n, &a, &bm, &graph_budget(config)) {
                Ok(cert) if cert.holds => pass(
                    &name,
                    counters([
                        ("neighborhood-a", cert.neighborhood_a),
                        ("neighborhood-b", cert.neighborhood_b),
                        ("cross-pairs", cert.cross_pairs_checked),
                        ("scanned", cert.scanned),
                    ]),
                ),
                Ok(cert) => fail(
                    &name,
                    counters([
                        ("neighborhood-a", cert.neighborhood_a),
                        ("neighborhood-b", cert.neighborhood_b),
                    ]),
                    format!("certificate failed with witness {:?}", cert.counterexample),
                ),
                Err(e) => fail(&name, counters([]), e.to_string()),
            }
        }));
    }

    checks.push(gated("all-units-radius-n3", space3, config, || {
        // Every vertex lies within two steps of the all-units matrix.
        let name = "all-units-radius-n3";
        let g = match CommutingGraph::build(b.clone(), 3, BuildMode::Materialized, &graph_budget(config))
        {
            Ok(g) => g,
            Err(e) => return fail(name, counters([]), e.to_string()),
        };
        let e_code = FinMatrix::all_units(b.clone(), 3).code();
        let Ok(source) = g.vertex_codes().binary_search(&e_code) else {
            return fail(name, counters([]), "all-units matrix is not a vertex".into());
        };
        let v = g.vertex_count();
        let mut seen = vec![false; v];
        seen[source] = true;
        let mut frontier = vec![source];
        for _ in 0..2 {
            let mut next = Vec::new();
            for &u in &frontier {
                for w in g.neighbor_indices(u) {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        match seen.iter().position(|s| !s) {
            None => pass(name, counters([("vertices", v as u64), ("radius-bound", 2)])),
            Some(missed) => fail(
                name,
                counters([("vertices", v as u64)]),
                format!(
                    "vertex code {} is more than two steps from the all-units matrix",
                    g.vertex_codes()[missed]
                ),
            ),
        }
    }));

    checks.push(gated("diameter-n3", space3, config, || {
        let name = "diameter-n3";
        match CommutingGraph::build(b.clone(), 3, BuildMode::Materialized, &graph_budget(config))
            .and_then(|g| Ok((g.vertex_count(), g.diameter()?)))
        {
            Ok((v, d)) if d.value == Distance::Finite(4) => pass(
                name,
                counters([("vertices", v as u64), ("diameter", 4)]),
            ),
            Ok((v, d)) => fail(
                name,
                counters([("vertices", v as u64)]),
                format!("diameter {} instead of 4", d.value),
            ),
            Err(e) => fail(name, counters([]), e.to_string()),
        }
    }));

    checks.push(gated("disconnected-n2", 16, config, || {
        let name = "disconnected-n2";
        match CommutingGraph::build(b.clone(), 2, BuildMode::Materialized, &graph_budget(config))
            .and_then(|g| Ok((g.vertex_count(), g.diameter()?)))
        {
            Ok((v, d)) if d.value == Distance::Infinite => {
                pass(name, counters([("vertices", v as u64)]))
            }
            Ok((v, d)) => fail(
                name,
                counters([("vertices", v as u64)]),
                format!("diameter {} instead of infinity", d.value),
            ),
            Err(e) => fail(name, counters([]), e.to_string()),
        }
    }));

    checks
}

// Support functoriality over the chain semiring, and the chain diameter run.
fn cor_2_3(config: &VerifyConfig) -> Vec<CheckResult> {
    let c3 = chain(3).expect("3 >= 2");
    let mut checks = Vec::new();

    let space2 = space_size(3, 2).expect("81");
    checks.push(gated("supp-functoriality-c3-n2", space2 * space2, config, || {
        let name = "supp-functoriality-c3-n2";
        let all: Vec<FinMatrix> = (0..space2)
            .map(|c| FinMatrix::from_code(c3.clone(), 2, c).expect("code in range"))
            .collect();
        let supp: Vec<FinMatrix> = all.iter().map(|m| m.supp()).collect();
        let mut pairs = 0;
        for (i, a) in all.iter().enumerate() {
            for (j, bm) in all.iter().enumerate() {
                pairs += 1;
                let prod = a.mul(bm).expect("same space").supp();
                let prod_supp = supp[i].mul(&supp[j]).expect("same space");
                let sum = a.add(bm).expect("same space").supp();
                let sum_supp = supp[i].add(&supp[j]).expect("same space");
                let commute_transfer = !a.commutes(bm).expect("same space")
                    || supp[i].commutes(&supp[j]).expect("same space");
                if prod != prod_supp || sum != sum_supp || !commute_transfer {
                    return fail(
                        name,
                        counters([("pairs", pairs)]),
                        format!("support transfer fails for codes ({}, {})", a.code(), bm.code()),
                    );
                }
            }
        }
        pass(name, counters([("pairs", pairs)]))
    }));

    let space3 = space_size(3, 3).expect("19683");
    checks.push(gated("chain-diameter-n3", space3, config, || {
        let name = "chain-diameter-n3";
        match CommutingGraph::build(c3.clone(), 3, BuildMode::Materialized, &graph_budget(config))
            .and_then(|g| Ok((g.vertex_count(), g.diameter()?)))
        {
            Ok((v, d)) => match d.value {
                Distance::Finite(diam) if diam >= 4 => pass(
                    name,
                    counters([("vertices", v as u64), ("diameter", diam as u64)]),
                ),
                Distance::Finite(diam) => fail(
                    name,
                    counters([("vertices", v as u64), ("diameter", diam as u64)]),
                    format!("diameter {diam} is below the lower bound 4"),
                ),
                // A disconnected graph trivially satisfies a lower bound,
                // but would contradict the expected structure; report it.
                Distance::Infinite => fail(
                    name,
                    counters([("vertices", v as u64)]),
                    "graph is disconnected".into(),
                ),
            },
            Err(e) => fail(name, counters([]), e.to_string()),
        }
    }));

    checks
}

fn grid_scalar(rng: &mut ChaCha8Rng) -> TropicalScalar {
    if rng.random_range(0..4u8) == 0 {
        TropicalScalar::zero()
    } else {
        finite_scalar(rng)
    }
}

fn finite_scalar(rng: &mut ChaCha8Rng) -> TropicalScalar {
    let numer = rng.random_range(-4..=4i64);
    let denom = if rng.random_bool(0.5) { 1 } else { 2 };
    TropicalScalar::finite(numer, denom)
}

fn sample_any(rng: &mut ChaCha8Rng, n: usize) -> TropMatrix {
    let entries: Vec<TropicalScalar> = (0..n * n).map(|_| grid_scalar(rng)).collect();
    TropMatrix::new(n, entries).expect("entry count matches")
}

// Equivalence of commuting with the all-units matrix and the uniform
// row/column maximum predicate.
fn lemma_3_1(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(gated("random-equivalence", 30_000, config, || {
        let name = "random-equivalence";
        let mut rng = rng_for(config, 0x31);
        let mut samples = 0;
        for n in [3usize, 4, 5] {
            let e = TropMatrix::all_units(n);
            for _ in 0..10_000 {
                samples += 1;
                let a = sample_any(&mut rng, n);
                let commutes = a.commutes(&e).expect("same dimension");
                let predicate = a.uniform_row_col_max().is_some();
                if commutes != predicate {
                    return fail(
                        name,
                        counters([("samples", samples)]),
                        format!(
                            "{} commutes={commutes} predicate={predicate}",
                            a.to_literal()
                        ),
                    );
                }
            }
        }
        pass(name, counters([("samples", samples)]))
    }));

    checks.push(gated("grid-exhaustive-n3", 19_683, config, || {
        let name = "grid-exhaustive-n3";
        let e = TropMatrix::all_units(3);
        let grid = [
            TropicalScalar::zero(),
            TropicalScalar::integer(0),
            TropicalScalar::integer(1),
        ];
        let mut scanned = 0;
        let mut digits = [0usize; 9];
        loop {
            scanned += 1;
            let entries: Vec<TropicalScalar> = digits.iter().map(|&d| grid[d]).collect();
            let a = TropMatrix::new(3, entries).expect("nine entries");
            let commutes = a.commutes(&e).expect("same dimension");
            let predicate = a.uniform_row_col_max().is_some();
            if commutes != predicate {
                return fail(
                    name,
                    counters([("scanned", scanned)]),
                    format!(
                        "{} commutes={commutes} predicate={predicate}",
                        a.to_literal()
                    ),
                );
            }
            let mut pos = 8;
            loop {
                digits[pos] += 1;
                if digits[pos] < 3 {
                    break;
                }
                digits[pos] = 0;
                if pos == 0 {
                    return pass(name, counters([("scanned", scanned)]));
                }
                pos -= 1;
            }
        }
    }));

    checks
}

#[derive(Clone, Copy)]
enum TropClass {
    Nondiagonal,
    RepeatedDiagonal,
    DistinctDiagonal,
}

fn sample_class(rng: &mut ChaCha8Rng, n: usize, class: TropClass) -> TropMatrix {
    match class {
        TropClass::Nondiagonal => {
            let mut m = sample_any(rng, n);
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            m.set(i, j, finite_scalar(rng));
            m
        }
        TropClass::RepeatedDiagonal => {
            let mut values: Vec<TropicalScalar> = (0..n).map(|_| grid_scalar(rng)).collect();
            let i = rng.random_range(0..n - 1);
            let j = rng.random_range(i + 1..n);
            values[j] = values[i];
            let k = (0..n).find(|x| *x != i && *x != j).expect("n >= 3");
            if values.iter().all(|v| *v == values[i]) {
                values[k] = if values[i] == TropicalScalar::integer(3) {
                    TropicalScalar::integer(4)
                } else {
                    TropicalScalar::integer(3)
                };
            }
            TropMatrix::diagonal(&values)
        }
        TropClass::DistinctDiagonal => loop {
            let mut values: Vec<TropicalScalar> = (0..n).map(|_| finite_scalar(rng)).collect();
            if rng.random_range(0..8u8) == 0 {
                let slot = rng.random_range(0..n);
                values[slot] = TropicalScalar::zero();
            }
            let mut sorted = values.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() == n {
                return TropMatrix::diagonal(&values);
            }
        },
    }
}

// Seeded connection paths across the three constructions.
fn thm_3_2(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(gated("random-paths", 2_000, config, || {
        let name = "random-paths";
        let mut rng = rng_for(config, 0x32);
        let combos = [
            (TropClass::Nondiagonal, TropClass::Nondiagonal),
            (TropClass::RepeatedDiagonal, TropClass::Nondiagonal),
            (TropClass::DistinctDiagonal, TropClass::Nondiagonal),
            (TropClass::RepeatedDiagonal, TropClass::RepeatedDiagonal),
            (TropClass::Nondiagonal, TropClass::RepeatedDiagonal),
            (TropClass::DistinctDiagonal, TropClass::Nondiagonal),
        ];
        let mut tallies: BTreeMap<TropicalBranch, u64> = BTreeMap::new();
        let mut pairs = 0;
        let mut max_len = 0u64;
        for n in [3usize, 4] {
            for round in 0..1_000 {
                let (cx, cy) = combos[round % combos.len()];
                let x = sample_class(&mut rng, n, cx);
                let y = sample_class(&mut rng, n, cy);
                pairs += 1;
                match tropical_connect(&x, &y) {
                    Ok(p) => {
                        if p.witness.validate().is_err() || p.witness.length() > 4 {
                            return fail(
                                name,
                                counters([("pairs", pairs)]),
                                format!(
                                    "invalid path between {} and {}",
                                    x.to_literal(),
                                    y.to_literal()
                                ),
                            );
                        }
                        max_len = max_len.max(p.witness.length() as u64);
                        for b in p.branches {
                            *tallies.entry(b).or_insert(0) += 1;
                        }
                    }
                    Err(e) => {
                        return fail(
                            name,
                            counters([("pairs", pairs)]),
                            format!(
                                "no path between {} and {}: {e}",
                                x.to_literal(),
                                y.to_literal()
                            ),
                        )
                    }
                }
            }
        }
        let branch = |b: TropicalBranch| tallies.get(&b).copied().unwrap_or(0);
        let c = counters([
            ("pairs", pairs),
            ("max-length", max_len),
            ("branch-nondiagonal", branch(TropicalBranch::Nondiagonal)),
            (
                "branch-repeated-diagonal",
                branch(TropicalBranch::RepeatedDiagonal),
            ),
            (
                "branch-distinct-diagonal",
                branch(TropicalBranch::DistinctDiagonal),
            ),
        ]);
        for (key, count) in [
            ("branch-nondiagonal", branch(TropicalBranch::Nondiagonal)),
            (
                "branch-repeated-diagonal",
                branch(TropicalBranch::RepeatedDiagonal),
            ),
            (
                "branch-distinct-diagonal",
                branch(TropicalBranch::DistinctDiagonal),
            ),
        ] {
            if count < 50 {
                return fail(
                    name,
                    c,
                    format!("construction {key} exercised only {count} times, below 50"),
                );
            }
        }
        pass(name, c)
    }));

    checks.push(CheckResult {
        name: "diameter-lower-bound".into(),
        status: CheckStatus::CrossReference,
        counters: counters([]),
        counterexample: Some(
            "the lower bound 4 follows from the support argument; see cor-2.3".into(),
        ),
    });

    checks
}

// Centralizer intersections of the shift pair, and realized distances.
fn prop_4_1(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let combos: [(Arc<SemiringTable>, usize); 4] = [
        (boolean(), 2),
        (boolean(), 3),
        (modular(4).expect("4 >= 2"), 2),
        (chain(3).expect("3 >= 2"), 2),
    ];
    for (semiring, n) in combos {
        let name = format!("scalar-intersection-{}-n{}", semiring.name(), n);
        let space = space_size(semiring.order(), n).expect("small space");
        checks.push(gated(&name, space, config, || {
            let (j, jt) = jn_pair(semiring.clone(), n);
            let cj: Vec<u64> = match centralizer(&j, config.budget) {
                Ok(v) => v.iter().map(|m| m.code()).collect(),
                Err(e) => return fail(&name, counters([]), e.to_string()),
            };
            let cjt: Vec<u64> = match centralizer(&jt, config.budget) {
                Ok(v) => v.iter().map(|m| m.code()).collect(),
                Err(e) => return fail(&name, counters([]), e.to_string()),
            };
            let inter: Vec<u64> = cj.iter().filter(|c| cjt.binary_search(c).is_ok()).copied().collect();
            let scalars: Vec<u64> = {
                let mut v: Vec<u64> = (0..semiring.order() as u8)
                    .map(|a| {
                        FinMatrix::identity(semiring.clone(), n)
                            .scalar_mul(a)
                            .expect("element in range")
                            .code()
                    })
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            if inter == scalars {
                pass(
                    &name,
                    counters([
                        ("intersection", inter.len() as u64),
                        ("scalars", scalars.len() as u64),
                    ]),
                )
            } else {
                let diff = inter
                    .iter()
                    .find(|c| scalars.binary_search(c).is_err())
                    .or_else(|| scalars.iter().find(|c| inter.binary_search(c).is_err()))
                    .copied()
                    .unwrap_or(0);
                fail(
                    &name,
                    counters([("intersection", inter.len() as u64)]),
                    format!("matrix code {diff} separates the intersection from the scalar set"),
                )
            }
        }));
    }

    checks.push(gated("realized-distances", 1 << 16, config, || {
        let name = "realized-distances";
        let budget = graph_budget(config);
        let combos: [(Arc<SemiringTable>, usize, &str); 3] = [
            (boolean(), 2, "boolean-n2-distance"),
            (boolean(), 3, "boolean-n3-distance"),
            (modular(4).expect("4 >= 2"), 2, "modular4-distance"),
        ];
        let mut recorded = BTreeMap::new();
        for (semiring, n, key) in combos {
            let g = match CommutingGraph::build(semiring.clone(), n, BuildMode::Materialized, &budget) {
                Ok(g) => g,
                Err(e) => return fail(name, counters([]), e.to_string()),
            };
            let (j, jt) = jn_pair(semiring, n);
            match g.distance(&j, &jt) {
                Ok(r) => match r.value {
                    Distance::Finite(d) if d >= 3 => {
                        recorded.insert(key.to_string(), d as u64);
                    }
                    Distance::Infinite => {
                        recorded.insert(format!("{key}-unreachable"), 1);
                    }
                    other => {
                        return fail(
                            name,
                            recorded,
                            format!("{key} is {other}, below the lower bound 3"),
                        )
                    }
                },
                Err(e) => return fail(name, counters([]), e.to_string()),
            }
        }
        // The modulus-4 semiring realizes the bound exactly.
        if recorded.get("modular4-distance") != Some(&3) {
            return fail(
                name,
                recorded,
                "shift pair over the modulus-4 semiring does not realize distance 3".into(),
            );
        }
        pass(name, recorded)
    }));

    checks
}

// Zero-divisor paths for every ordered vertex pair, plus exact diameters.
fn thm_4_2(config: &VerifyConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for m in [4usize, 6] {
        let semiring = modular(m).expect("m >= 2");
        let name = format!("paths-modular{m}");
        let space = space_size(m, 2).expect("small space");
        checks.push(gated(&name, space * space, config, || {
            let center = match center_codes(&semiring, 2, config.budget) {
                Ok(c) => c,
                Err(e) => return fail(&name, counters([]), e.to_string()),
            };
            let verts: Vec<u64> =
                (0..space).filter(|c| center.binary_search(c).is_err()).collect();
            struct Tally {
                cases: [u64; 3],
                max_len: u64,
                first_failure: Option<(u64, u64, String)>,
            }
            let per_a: Vec<Tally> = verts
                .par_iter()
                .map(|&ca| {
                    let a = FinMatrix::from_code(semiring.clone(), 2, ca).expect("in range");
                    let mut t = Tally {
                        cases: [0; 3],
                        max_len: 0,
                        first_failure: None,
                    };
                    for &cb in &verts {
                        let bm = FinMatrix::from_code(semiring.clone(), 2, cb).expect("in range");
                        match nonentire_connect(&a, &bm, &center) {
                            Ok(p) => {
                                t.max_len = t.max_len.max(p.witness.length() as u64);
                                let slot = match p.case {
                                    NonentireCase::BothNoncentral => 0,
                                    NonentireCase::OneCentral => 1,
                                    NonentireCase::BothCentral => 2,
                                };
                                t.cases[slot] += 1;
                            }
                            Err(e) => {
                                if t.first_failure.is_none() {
                                    t.first_failure = Some((ca, cb, e.to_string()));
                                }
                            }
                        }
                    }
                    t
                })
                .collect();
            let mut cases = [0u64; 3];
            let mut max_len = 0;
            for t in &per_a {
                if let Some((ca, cb, e)) = &t.first_failure {
                    return fail(
                        &name,
                        counters([("pairs", (verts.len() * verts.len()) as u64)]),
                        format!("no path for codes ({ca}, {cb}): {e}"),
                    );
                }
                for (acc, c) in cases.iter_mut().zip(t.cases) {
                    *acc += c;
                }
                max_len = max_len.max(t.max_len);
            }
            if max_len > 3 {
                return fail(
                    &name,
                    counters([("max-length", max_len)]),
                    "a path exceeded length 3".into(),
                );
            }
            pass(
                &name,
                counters([
                    ("pairs", (verts.len() * verts.len()) as u64),
                    ("max-length", max_len),
                    ("case-both-noncentral", cases[0]),
                    ("case-one-central", cases[1]),
                    ("case-both-central", cases[2]),
                ]),
            )
        }));
    }

    checks.push(gated("diameters", 1 << 16, config, || {
        let name = "diameters";
        let budget = graph_budget(config);
        let mut recorded = Vec::new();
        for m in [4usize, 6] {
            let semiring = modular(m).expect("m >= 2");
            match CommutingGraph::build(semiring, 2, BuildMode::Materialized, &budget)
                .and_then(|g| g.diameter())
            {
                Ok(d) if d.value == Distance::Finite(3) => recorded.push((m, 3u64)),
                Ok(d) => {
                    return fail(
                        name,
                        counters([]),
                        format!("modulus {m} diameter {} instead of 3", d.value),
                    )
                }
                Err(e) => return fail(name, counters([]), e.to_string()),
            }
        }
        pass(
            name,
            counters([("modular4-diameter", 3), ("modular6-diameter", 3)]),
        )
    }));

    checks
}

// The nilpotent 2x2 ground-set graphs: two complete components of size
// |S| - 1.
fn intro_example(config: &VerifyConfig) -> Vec<CheckResult> {
    let combos: [(Arc<SemiringTable>, &str); 2] = [
        (boolean(), "boolean"),
        (chain(3).expect("3 >= 2"), "chain3"),
    ];
    combos
        .into_iter()
        .map(|(semiring, label)| {
            let name = format!("nilpotent-components-{label}");
            let space = space_size(semiring.order(), 2).expect("small space");
            gated(&name, space, config, || {
                let expected = semiring.order() as u64 - 1;
                let nil = match nilpotent_codes(&semiring, 2, config.budget) {
                    Ok(v) => v,
                    Err(e) => return fail(&name, counters([]), e.to_string()),
                };
                let g = match CommutingGraph::from_ground_set(
                    semiring.clone(),
                    2,
                    &nil,
                    BuildMode::Materialized,
                    &graph_budget(config),
                ) {
                    Ok(g) => g,
                    Err(e) => return fail(&name, counters([]), e.to_string()),
                };
                let comps = match g.components() {
                    Ok(c) => c,
                    Err(e) => return fail(&name, counters([]), e.to_string()),
                };
                if comps.len() != 2 {
                    return fail(
                        &name,
                        counters([("components", comps.len() as u64)]),
                        format!("{} components instead of 2", comps.len()),
                    );
                }
                for comp in &comps {
                    if comp.len() as u64 != expected {
                        return fail(
                            &name,
                            counters([("component-size", comp.len() as u64)]),
                            format!("component of size {} instead of {expected}", comp.len()),
                        );
                    }
                    for (i, &u) in comp.iter().enumerate() {
                        for &v in &comp[i + 1..] {
                            let mu = FinMatrix::from_code(semiring.clone(), 2, u).expect("in range");
                            let mv = FinMatrix::from_code(semiring.clone(), 2, v).expect("in range");
                            if !mu.commutes(&mv).expect("same space") {
                                return fail(
                                    &name,
                                    counters([]),
                                    format!("component pair ({u}, {v}) does not commute"),
                                );
                            }
                        }
                    }
                }
                pass(
                    &name,
                    counters([
                        ("components", 2),
                        ("component-size", expected),
                        ("nilpotent-matrices", nil.len() as u64),
                    ]),
                )
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_2_1_passes() {
        let r = verify("lemma-2.1", &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn lemma_3_1_is_deterministic_and_passes() {
        let config = VerifyConfig::default();
        let a = verify("lemma-3.1", &config).unwrap();
        let b = verify("lemma-3.1", &config).unwrap();
        assert_eq!(a.status, CheckStatus::Pass);
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn thm_3_2_covers_all_branches() {
        let r = verify("thm-3.2", &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        let paths = &r.checks[0];
        for key in [
            "branch-nondiagonal",
            "branch-repeated-diagonal",
            "branch-distinct-diagonal",
        ] {
            assert!(paths.counters[key] >= 50, "{key}: {:?}", paths.counters);
        }
        assert_eq!(r.checks[1].status, CheckStatus::CrossReference);
    }

    #[test]
    fn prop_4_1_passes() {
        let r = verify("prop-4.1", &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
    }

    #[test]
    fn intro_example_passes() {
        let r = verify("intro-example", &VerifyConfig::default()).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
    }

    #[test]
    fn starved_budget_reports_incomplete() {
        let config = VerifyConfig {
            seed: DEFAULT_SEED,
            budget: 4,
        };
        let r = verify("lemma-2.1", &config).unwrap();
        assert_eq!(r.status, CheckStatus::Incomplete);
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Incomplete));
    }

    #[test]
    fn unknown_theorem_is_rejected() {
        assert!(verify("thm-9.9", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn report_json_has_stable_shape() {
        let r = verify("intro-example", &VerifyConfig::default()).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"theorem\": \"intro-example\""));
        assert!(json.contains("\"status\": \"pass\""));
        assert!(json.contains("\"seed\": 1729"));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(parsed["checks"].as_array().unwrap().len() == 2);
    }
}
