//! Named verification suites over the whole library: preservation laws,
//! detection round-trips, lattice axioms, behaviour tables, and the
//! extension-property machinery. Each suite reports one line per check with
//! counterexample detail on failure; the CLI and the acceptance tests both
//! run these.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::behavior::{
    classify_behavior, classify_two_orbit, enumerate_behaviors, enumerate_two_orbit_behaviors,
    find_alignment_witness, find_edge_deletion_witness, TwoOrbitVerdictKind, VerdictKind,
};
use crate::digraph::{Digraph, PairType, TriangleCode};
use crate::ep::{
    back_and_forth, check_graph_k_ep_over, check_k_ep_over_with, embed_maximal_tournament,
    extend_to_ep, is_maximal_tournament_in, random_digraph,
};
use crate::error::Result;
use crate::exec::{map_range_with, Parallelism};
use crate::lattice::{classify_map, join, leq, meet, signature, ReductNode};
use crate::relations::{eval, rot_orbit_table, RelationId};
use crate::transform::{
    detect_rot_partition, detect_switch_set, reduce_edges_via_sw_rot, Transform,
};

/// Shared knobs for the seeded suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    pub k: usize,
    pub mode: Parallelism,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            trials: 100,
            n: 10,
            k: 2,
            mode: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<CheckOutcome>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let status = if check.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("[{status}] {}: {}\n", self.suite, check.name));
            if !check.pass && !check.detail.is_empty() {
                out.push_str(&format!("       {}\n", check.detail));
            }
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.suite,
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

fn check(name: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn merge(name: &str, outcomes: Vec<CheckOutcome>) -> SuiteReport {
    SuiteReport::new(name, outcomes)
}

/// Orbit structure of the 27 triangle codes under the rotation actions.
pub fn suite_rot_orbits() -> SuiteReport {
    let table = rot_orbit_table();
    let sizes = table.orbit_sizes();
    let mut checks = vec![
        check(
            "3 orbits, sizes 9/9/9",
            sizes == [9, 9, 9],
            format!("sizes {sizes:?}"),
        ),
        check(
            "empty triple in orbit 3",
            table.label(TriangleCode(PairType::None, PairType::None, PairType::None)) == 3,
            String::new(),
        ),
        check(
            "transitive tournament in orbit 1",
            table.label(TriangleCode(PairType::Out, PairType::Out, PairType::Out)) == 1,
            String::new(),
        ),
    ];
    let mut violations = Vec::new();
    for code in TriangleCode::all() {
        for pos in 0..3 {
            for replacement in PairType::ALL {
                let mut parts = [code.0, code.1, code.2];
                if parts[pos] == replacement {
                    continue;
                }
                parts[pos] = replacement;
                let changed = TriangleCode(parts[0], parts[1], parts[2]);
                if table.label(code) == table.label(changed) {
                    violations.push(format!("{code} vs {changed}"));
                }
            }
        }
    }
    checks.push(check(
        "change-one-pair changes orbit (27x3x2)",
        violations.is_empty(),
        violations.join("; "),
    ));
    merge("rot-orbits", checks)
}

/// The census of P_sw over the triangle codes.
pub fn suite_psw_census() -> SuiteReport {
    let tournaments: Vec<TriangleCode> =
        TriangleCode::all().filter(|c| c.is_tournament()).collect();
    let satisfying = tournaments
        .iter()
        .filter(|c| crate::relations::psw_code(**c))
        .count();
    let none_pair_false = TriangleCode::all()
        .filter(|c| !c.is_tournament())
        .all(|c| !crate::relations::psw_code(c));
    merge(
        "psw-census",
        vec![
            check(
                "exactly 4 of 8 tournament codes satisfy P_sw",
                tournaments.len() == 8 && satisfying == 4,
                format!("{satisfying} of {}", tournaments.len()),
            ),
            check(
                "false on every code with a non-edge",
                none_pair_false,
                String::new(),
            ),
        ],
    )
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> [Vec<usize>; 3] {
    let mut pieces: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for v in 0..n {
        pieces[rng.gen_range(0..3usize)].push(v);
    }
    pieces
}

struct TrialFailure(String);

fn run_trials<F>(cfg: &VerifyConfig, body: F) -> (usize, Vec<String>)
where
    F: Fn(u64) -> std::result::Result<(), TrialFailure> + Sync + Send,
{
    let failures: Vec<String> = map_range_with(cfg.mode, cfg.trials, |i| {
        body(cfg.seed + i as u64)
            .err()
            .map(|TrialFailure(msg)| format!("trial {i}: {msg}"))
    })
    .into_iter()
    .flatten()
    .collect();
    (cfg.trials, failures)
}

fn all_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x != y && y != z && x != z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Switching preserves P_sw on every ordered triple, checked by literal
/// enumeration on seeded random digraphs with random cuts.
pub fn suite_psw_preservation(cfg: &VerifyConfig) -> SuiteReport {
    let n = cfg.n;
    let triples = all_triples(n);
    let (trials, switch_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
        let a = random_subset(&mut rng, n);
        let h = Transform::switch(a.clone()).apply(&g).expect("valid set");
        for t in &triples {
            if eval(RelationId::Psw, &g, t).unwrap() != eval(RelationId::Psw, &h, t).unwrap() {
                return Err(TrialFailure(format!("Psw broken at {t:?} with A={a:?}")));
            }
        }
        Ok(())
    });
    merge(
        "psw-preservation",
        vec![check(
            &format!("Switch preserves P_sw on all ordered triples ({trials} trials)"),
            switch_failures.is_empty(),
            switch_failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// Rotation preserves each of the three orbit relations on every triple.
pub fn suite_rot_preservation(cfg: &VerifyConfig) -> SuiteReport {
    let n = cfg.n;
    let triples = all_triples(n);
    let (trials, rot_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5A5A);
        let [a, b, c] = random_partition(&mut rng, n);
        let h = Transform::rot(a, b, c).apply(&g).expect("valid partition");
        for t in &triples {
            for rel in [RelationId::Prot1, RelationId::Prot2, RelationId::Prot3] {
                if eval(rel, &g, t).unwrap() != eval(rel, &h, t).unwrap() {
                    return Err(TrialFailure(format!("{rel:?} broken at {t:?}")));
                }
            }
        }
        Ok(())
    });
    merge(
        "rot-preservation",
        vec![check(
            &format!("Rot preserves P_rot,1/2/3 on all ordered triples ({trials} trials)"),
            rot_failures.is_empty(),
            rot_failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// Reversal preserves the weak edge relation on every distinct 4-tuple and
/// keeps non-edges.
pub fn suite_reverse_preservation(cfg: &VerifyConfig) -> SuiteReport {
    let n = cfg.n;
    let (trials, reverse_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let h = Transform::Reverse.apply(&g).expect("reverse");
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                if eval(RelationId::N, &g, &[x, y]).unwrap()
                    != eval(RelationId::N, &h, &[x, y]).unwrap()
                {
                    return Err(TrialFailure(format!("N broken at ({x},{y})")));
                }
                for a in 0..n {
                    for b in 0..n {
                        if a == b || a == x || a == y || b == x || b == y {
                            continue;
                        }
                        let t = [x, y, a, b];
                        if eval(RelationId::Ew, &g, &t).unwrap()
                            != eval(RelationId::Ew, &h, &t).unwrap()
                        {
                            return Err(TrialFailure(format!("Ew broken at {t:?}")));
                        }
                    }
                }
            }
        }
        Ok(())
    });
    merge(
        "reverse-preservation",
        vec![check(
            &format!("Reverse preserves E_w on all 4-tuples and N ({trials} trials)"),
            reverse_failures.is_empty(),
            reverse_failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// Graph-level switching preserves the triangle edge-count parity.
pub fn suite_graph_parity_preservation(cfg: &VerifyConfig) -> SuiteReport {
    let n = cfg.n;
    let triples = all_triples(n);
    let (trials, parity_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x33CC);
        let a = random_subset(&mut rng, n);
        let h = Transform::GraphSwitch { a }.apply(&g).expect("valid set");
        for t in &triples {
            if eval(RelationId::GammaTriParity, &g, t).unwrap()
                != eval(RelationId::GammaTriParity, &h, t).unwrap()
            {
                return Err(TrialFailure(format!("triangle parity broken at {t:?}")));
            }
        }
        Ok(())
    });
    merge(
        "graph-parity-preservation",
        vec![check(
            &format!("GraphSwitch preserves triangle parity ({trials} trials)"),
            parity_failures.is_empty(),
            parity_failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// All four preservation families together.
pub fn suite_preservation(cfg: &VerifyConfig) -> SuiteReport {
    let mut checks = Vec::new();
    for suite in [
        suite_psw_preservation(cfg),
        suite_rot_preservation(cfg),
        suite_reverse_preservation(cfg),
        suite_graph_parity_preservation(cfg),
    ] {
        checks.extend(suite.checks);
    }
    merge("preservation", checks)
}

/// Detection round-trips and the rejection of reversal realizations.
pub fn suite_detection(cfg: &VerifyConfig) -> SuiteReport {
    let n = cfg.n;
    let (trials, switch_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
        let a = random_subset(&mut rng, n);
        let h = Transform::switch(a.clone()).apply(&g).expect("valid set");
        let id: Vec<usize> = (0..n).collect();
        let detection = detect_switch_set(&g, &h, &id).expect("bijection");
        let Some(found) = detection.set else {
            return Err(TrialFailure(format!("no set found for A={a:?}")));
        };
        let complement: Vec<usize> = (0..n).filter(|v| !a.contains(v)).collect();
        if found != a && found != complement {
            return Err(TrialFailure(format!(
                "found {found:?}, expected {a:?} or complement"
            )));
        }
        Ok(())
    });
    let switch_check = check(
        &format!("detect_switch_set recovers A or its complement ({trials} trials)"),
        switch_failures.is_empty(),
        switch_failures.first().cloned().unwrap_or_default(),
    );

    let (trials, rot_failures) = run_trials(cfg, |seed| {
        let g = random_digraph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x88);
        let [a, b, c] = random_partition(&mut rng, n);
        let h = Transform::rot(a.clone(), b.clone(), c.clone())
            .apply(&g)
            .expect("valid partition");
        let id: Vec<usize> = (0..n).collect();
        let Some((da, db)) = detect_rot_partition(&g, &h, &id).expect("bijection") else {
            return Err(TrialFailure(format!(
                "no partition found for ({a:?}, {b:?}, {c:?})"
            )));
        };
        let dc: Vec<usize> = (0..n)
            .filter(|v| !da.contains(v) && !db.contains(v))
            .collect();
        let detected = [da, db, dc];
        let original = [a, b, c];
        let cyclic = (0..3).any(|s| (0..3).all(|i| detected[i] == original[(i + s) % 3]));
        if !cyclic {
            return Err(TrialFailure(format!(
                "{detected:?} not a cyclic rotation of {original:?}"
            )));
        }
        Ok(())
    });
    let rot_check = check(
        &format!("detect_rot_partition recovers the partition up to cycle ({trials} trials)"),
        rot_failures.is_empty(),
        rot_failures.first().cloned().unwrap_or_default(),
    );

    // Reversal of a digraph containing a tournament triangle fools neither
    // detector.
    let triangle = Digraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let g = extend_to_ep(&triangle, 2, cfg.seed);
    let h = Transform::Reverse.apply(&g).unwrap();
    let id: Vec<usize> = (0..g.vertex_count()).collect();
    let sw_none = detect_switch_set(&g, &h, &id).unwrap().set.is_none();
    let rot_none = detect_rot_partition(&g, &h, &id).unwrap().is_none();
    merge(
        "detection",
        vec![
            switch_check,
            rot_check,
            check(
                "both detectors reject a reversal realization",
                sw_none && rot_none,
                String::new(),
            ),
        ],
    )
}

/// The switch/rotate edge-deletion procedure.
pub fn suite_edge_deletion(cfg: &VerifyConfig) -> SuiteReport {
    let (trials, failures) = run_trials(cfg, |seed| {
        let n = 4 + (seed as usize % 9); // n <= 12
        let g = random_digraph(n, seed);
        let Some(anchor) = (0..n).find(|&v| g.out_degree(v) + g.in_degree(v) > 0) else {
            return Ok(()); // no non-isolated anchor in this sample
        };
        let (result, transform) = reduce_edges_via_sw_rot(&g, anchor)
            .map_err(|e| TrialFailure(format!("procedure failed: {e}")))?;
        if result.edge_count() >= g.edge_count() {
            return Err(TrialFailure(format!(
                "edge count {} -> {}",
                g.edge_count(),
                result.edge_count()
            )));
        }
        if transform.apply(&g).expect("composite applies") != result {
            return Err(TrialFailure(
                "returned transform does not reproduce result".into(),
            ));
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if x == anchor || y == anchor {
                    if result.pair_type(x, y).unwrap() != PairType::None {
                        return Err(TrialFailure(format!(
                            "pair at anchor ({x},{y}) not deleted"
                        )));
                    }
                } else if result.pair_type(x, y).unwrap() != g.pair_type(x, y).unwrap() {
                    return Err(TrialFailure(format!("non-incident pair ({x},{y}) changed")));
                }
            }
        }
        Ok(())
    });
    merge(
        "edge-deletion",
        vec![check(
            &format!("strict decrease, non-incident pairs fixed ({trials} trials, n <= 12)"),
            failures.is_empty(),
            failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// Lattice axioms over all pairs and triples, plus the pinned values.
pub fn suite_lattice_axioms() -> SuiteReport {
    let mut failures = Vec::new();
    for a in ReductNode::ALL {
        if meet(a, a) != a || join(a, a) != a {
            failures.push(format!("idempotence at {a}"));
        }
        for b in ReductNode::ALL {
            if meet(a, b) != meet(b, a) || join(a, b) != join(b, a) {
                failures.push(format!("commutativity at ({a}, {b})"));
            }
            if meet(a, join(a, b)) != a || join(a, meet(a, b)) != a {
                failures.push(format!("absorption at ({a}, {b})"));
            }
            if leq(a, b) != (meet(a, b) == a) {
                failures.push(format!("order/meet mismatch at ({a}, {b})"));
            }
            for c in ReductNode::ALL {
                if meet(meet(a, b), c) != meet(a, meet(b, c))
                    || join(join(a, b), c) != join(a, join(b, c))
                {
                    failures.push(format!("associativity at ({a}, {b}, {c})"));
                }
            }
        }
    }
    let pinned = meet(ReductNode::Sw, ReductNode::Minus) == ReductNode::AutDE
        && join(ReductNode::Rot, ReductNode::Sw) == ReductNode::SymD
        && meet(ReductNode::Rot, ReductNode::SwMinusGamma) == ReductNode::AutDE
        && meet(ReductNode::MinusRot, ReductNode::SwMinusGamma) == ReductNode::Minus;
    let mut monotone = Vec::new();
    for a in ReductNode::ALL {
        for b in ReductNode::ALL {
            if leq(a, b) && !signature(b).iter().all(|r| signature(a).contains(r)) {
                monotone.push(format!("signature not monotone at ({a}, {b})"));
            }
        }
    }
    merge(
        "lattice-axioms",
        vec![
            check("11 nodes", ReductNode::ALL.len() == 11, String::new()),
            check(
                "axioms over 11^2 and 11^3 enumerations",
                failures.is_empty(),
                failures.first().cloned().unwrap_or_default(),
            ),
            check("four pinned meet/join values", pinned, String::new()),
            check(
                "signature monotonicity",
                monotone.is_empty(),
                monotone.first().cloned().unwrap_or_default(),
            ),
        ],
    )
}

/// Classification of identity, reversal, switch, and rotation realizations
/// on extension-certified samples.
pub fn suite_classification(cfg: &VerifyConfig) -> SuiteReport {
    let (trials, failures) = run_trials(cfg, |seed| {
        let g = extend_to_ep(&random_digraph(6, seed), 2, seed);
        let n = g.vertex_count();
        let id: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xBEEF);

        let c = classify_map(&g, &g, &id).expect("bijection");
        if c.node != ReductNode::AutDE {
            return Err(TrialFailure(format!("identity classified as {}", c.node)));
        }

        let h = Transform::Reverse.apply(&g).expect("reverse");
        let c = classify_map(&g, &h, &id).expect("bijection");
        if c.node != ReductNode::Minus {
            return Err(TrialFailure(format!(
                "reversal classified as {} (preserved {:?})",
                c.node, c.preserved
            )));
        }

        // A switching set with at least one cut-crossing edge.
        let a = loop {
            let a = random_subset(&mut rng, n);
            let crossing = g
                .edges()
                .iter()
                .any(|&(u, v)| a.contains(&u) != a.contains(&v));
            if crossing && !a.is_empty() && a.len() < n {
                break a;
            }
        };
        let h = Transform::switch(a.clone()).apply(&g).expect("valid set");
        let c = classify_map(&g, &h, &id).expect("bijection");
        if c.node != ReductNode::Sw {
            return Err(TrialFailure(format!(
                "switch about {a:?} classified as {} (preserved {:?})",
                c.node, c.preserved
            )));
        }

        let [pa, pb, pc] = random_partition(&mut rng, n);
        let h = Transform::rot(pa, pb, pc)
            .apply(&g)
            .expect("valid partition");
        let c = classify_map(&g, &h, &id).expect("bijection");
        if !leq(c.node, ReductNode::Rot) {
            return Err(TrialFailure(format!("rotation classified as {}", c.node)));
        }
        Ok(())
    });
    merge(
        "classification",
        vec![check(
            &format!("identity/reverse/switch/rot verdicts ({trials} seeds)"),
            failures.is_empty(),
            failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// The behaviour tables with their empirical witnesses.
pub fn suite_behaviors(cfg: &VerifyConfig) -> SuiteReport {
    let behaviors = enumerate_behaviors();
    let mut checks = Vec::new();
    checks.push(check("27 rows", behaviors.len() == 27, String::new()));
    let ids = behaviors
        .iter()
        .filter(|b| classify_behavior(b).kind == VerdictKind::BehavesLikeId)
        .count();
    let minuses = behaviors
        .iter()
        .filter(|b| classify_behavior(b).kind == VerdictKind::BehavesLikeMinus)
        .count();
    checks.push(check(
        "exactly one BehavesLikeId and one BehavesLikeMinus",
        ids == 1 && minuses == 1,
        format!("id {ids}, minus {minuses}"),
    ));
    let mirror_ok = behaviors.iter().all(|b| {
        let v = classify_behavior(b);
        let vm = classify_behavior(&b.mirrored());
        let mirrored_case: String = v
            .case
            .chars()
            .map(|c| match c {
                '2' => '3',
                '3' => '2',
                other => other,
            })
            .collect();
        v.kind == vm.kind && mirrored_case == vm.case
    });
    checks.push(check(
        "mirror symmetry between cases 2 and 3",
        mirror_ok,
        String::new(),
    ));

    let sym_rows: Vec<_> = behaviors
        .iter()
        .filter(|b| classify_behavior(b).kind == VerdictKind::EqualsSymD)
        .collect();
    let deletion_failures: Vec<String> = map_range_with(cfg.mode, sym_rows.len(), |i| {
        let b = sym_rows[i];
        let g = extend_to_ep(
            &random_digraph(6, cfg.seed + i as u64),
            2,
            cfg.seed + i as u64,
        );
        if find_edge_deletion_witness(b, &g, 4).is_none() {
            Some(format!("{b}"))
        } else {
            None
        }
    })
    .into_iter()
    .flatten()
    .collect();
    checks.push(check(
        &format!(
            "edge-deletion witness for all {} EqualsSymD rows",
            sym_rows.len()
        ),
        deletion_failures.is_empty(),
        deletion_failures.join("; "),
    ));

    let case_1c: Vec<_> = behaviors
        .iter()
        .filter(|b| classify_behavior(b).case == "1c")
        .collect();
    let alignment_failures: Vec<String> = case_1c
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            (0..3u64).filter_map(move |j| {
                let g = random_digraph(5 + (j as usize % 4), cfg.seed + 31 * i as u64 + j);
                if find_alignment_witness(b, &g).is_none() {
                    Some(format!("{b} on seed {j}"))
                } else {
                    None
                }
            })
        })
        .collect();
    checks.push(check(
        "edge-alignment witness for all case-1c rows (n <= 8)",
        alignment_failures.is_empty(),
        alignment_failures.join("; "),
    ));

    let two_orbit = enumerate_two_orbit_behaviors();
    let has_minus_rot = two_orbit
        .iter()
        .any(|b| classify_two_orbit(b).kind == TwoOrbitVerdictKind::MinusRotCombined);
    checks.push(check(
        "two-orbit table contains a MinusRotCombined row",
        has_minus_rot,
        String::new(),
    ));
    merge("behaviors", checks)
}

/// Extension-property machinery: certification, the graph-side corollary,
/// and tournament maximality.
pub fn suite_ep(cfg: &VerifyConfig) -> SuiteReport {
    let (trials, extension_failures) = run_trials(cfg, |seed| {
        let base = random_digraph(8, seed);
        let extended = extend_to_ep(&base, 2, seed);
        let scope: Vec<usize> = (0..8).collect();
        if extended.induced(&scope).expect("originals kept") != base {
            return Err(TrialFailure("original pairs changed".into()));
        }
        let report = check_k_ep_over_with(&extended, 2, &scope, Parallelism::Sequential);
        if !report.pass {
            return Err(TrialFailure(format!(
                "{} digraph EP failures",
                report.failures.len()
            )));
        }
        let graph_report = check_graph_k_ep_over(&extended.underlying_graph(), 2, &scope);
        if !graph_report.pass {
            return Err(TrialFailure(format!(
                "{} graph EP failures",
                graph_report.failures.len()
            )));
        }
        Ok(())
    });
    let extension_check = check(
        &format!("level-2 extension certifies digraph and graph EP ({trials} seeds)"),
        extension_failures.is_empty(),
        extension_failures.first().cloned().unwrap_or_default(),
    );

    let mut embedding_failures = Vec::new();
    for size in 1..=5usize {
        for seed in 0..4u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed + 100 * size as u64 + seed);
            let mut t = Digraph::empty(size);
            for x in 0..size {
                for y in (x + 1)..size {
                    t = t
                        .set_pair(
                            x,
                            y,
                            if rng.gen_bool(0.5) {
                                PairType::Out
                            } else {
                                PairType::In
                            },
                        )
                        .unwrap();
                }
            }
            match embed_maximal_tournament(&t, cfg.k, cfg.seed) {
                Ok(embedding) => {
                    let maximal =
                        is_maximal_tournament_in(&embedding.digraph, &embedding.tournament)
                            .unwrap();
                    if !maximal {
                        embedding_failures.push(format!("size {size} seed {seed}: not maximal"));
                    }
                    if embedding.digraph.induced(&embedding.tournament).unwrap() != t {
                        embedding_failures
                            .push(format!("size {size} seed {seed}: tournament changed"));
                    }
                    if size > cfg.k && !embedding.skipped.is_empty() {
                        embedding_failures.push(format!(
                            "size {size} seed {seed}: unexpected skipped demands"
                        ));
                    }
                }
                Err(e) => embedding_failures.push(format!("size {size} seed {seed}: {e}")),
            }
        }
    }
    let embedding_check = check(
        "maximal tournament embedding (sizes 1..=5)",
        embedding_failures.is_empty(),
        embedding_failures.join("; "),
    );
    merge("ep", vec![extension_check, embedding_check])
}

/// Back-and-forth between independently generated level-3 certified
/// digraphs.
pub fn suite_back_and_forth(cfg: &VerifyConfig) -> SuiteReport {
    let (trials, failures) = run_trials(cfg, |seed| {
        let g = extend_to_ep(&random_digraph(8, seed), 3, seed);
        let h = extend_to_ep(&random_digraph(8, seed + 5000), 3, seed + 5000);
        let run = back_and_forth(&g, &h, &[(0, 0)], 3).map_err(|e| TrialFailure(e.to_string()))?;
        if let Some(blocked) = run.blocked {
            return Err(TrialFailure(format!(
                "blocked {} at {:?}",
                if blocked.forward {
                    "forward"
                } else {
                    "backward"
                },
                blocked.triple
            )));
        }
        if run.map.len() < 4 {
            return Err(TrialFailure(format!("only reached size {}", run.map.len())));
        }
        let dom: Vec<usize> = run.map.iter().map(|&(x, _)| x).collect();
        let img: Vec<usize> = run.map.iter().map(|&(_, y)| y).collect();
        let a = g.induced(&dom).expect("domain in range");
        let b = h.induced(&img).expect("image in range");
        if a.is_isomorphic(&b).is_none() {
            return Err(TrialFailure("induced substructures not isomorphic".into()));
        }
        Ok(())
    });
    merge(
        "back-and-forth",
        vec![check(
            &format!("size-1 map extends to size >= 4 partial iso ({trials} seeds)"),
            failures.is_empty(),
            failures.first().cloned().unwrap_or_default(),
        )],
    )
}

/// All suite names accepted by [`run_suite`].
pub const SUITES: [&str; 13] = [
    "rot-orbits",
    "psw-census",
    "psw-preservation",
    "rot-preservation",
    "reverse-preservation",
    "graph-parity-preservation",
    "detection",
    "edge-deletion",
    "lattice-axioms",
    "classification",
    "behaviors",
    "ep",
    "back-and-forth",
];

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let one = |r: SuiteReport| Ok(vec![r]);
    match name {
        "rot-orbits" => one(suite_rot_orbits()),
        "psw-census" => one(suite_psw_census()),
        "psw-preservation" => one(suite_psw_preservation(cfg)),
        "rot-preservation" => one(suite_rot_preservation(cfg)),
        "reverse-preservation" => one(suite_reverse_preservation(cfg)),
        "graph-parity-preservation" => one(suite_graph_parity_preservation(cfg)),
        "preservation" => one(suite_preservation(cfg)),
        "detection" => one(suite_detection(cfg)),
        "edge-deletion" => one(suite_edge_deletion(cfg)),
        "lattice-axioms" => one(suite_lattice_axioms()),
        "classification" => one(suite_classification(cfg)),
        "behaviors" => one(suite_behaviors(cfg)),
        "ep" => one(suite_ep(cfg)),
        "back-and-forth" => one(suite_back_and_forth(cfg)),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITES {
                out.extend(run_suite(suite, cfg)?);
            }
            Ok(out)
        }
        other => Err(crate::error::Error::UnknownSuite(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            seed: 7,
            trials: 5,
            n: 7,
            k: 2,
            mode: Parallelism::default(),
        }
    }

    #[test]
    fn every_named_suite_passes_at_small_scale() {
        for suite in SUITES {
            let reports = run_suite(suite, &small()).unwrap();
            for report in &reports {
                assert!(report.pass, "{suite} failed:\n{}", report.to_text());
            }
        }
    }

    #[test]
    fn all_runs_every_suite() {
        let reports = run_suite("all", &small()).unwrap();
        assert_eq!(reports.len(), SUITES.len());
        let names: Vec<&str> = reports.iter().map(|r| r.suite.as_str()).collect();
        assert_eq!(names, SUITES.to_vec());
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nonsense", &small()),
            Err(crate::error::Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn failure_reporting_carries_detail() {
        // A deliberately broken check renders its counterexample line.
        let report = SuiteReport::new(
            "demo",
            vec![check("always fails", false, "witness (0, 1)".into())],
        );
        assert!(!report.pass);
        let text = report.to_text();
        assert!(text.contains("[FAIL]"));
        assert!(text.contains("witness (0, 1)"));
    }
}
