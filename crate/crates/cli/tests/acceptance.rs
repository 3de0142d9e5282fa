//! End-to-end acceptance checks. Each test covers one shipped guarantee and
//! prints a single pass/fail line (visible with `--nocapture`) before
//! asserting it.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use towerlab::entries::{build_catalog, CatalogEntry};
use towerlab::suites::run_suite;
use towerlab_core::aut::automorphism_group;
use towerlab_core::catalog;
use towerlab_core::encode::{
    choose_markers, decode_word, encode_word, pair_code, seq_code, seq_decode, unpair,
};
use towerlab_core::error::Error;
use towerlab_core::group::subgroup_generated;
use towerlab_core::kernel::{
    check_well_definedness, kernel_injectivity, verify_reconstruction, KernelOracle,
};
use towerlab_core::oracle::{fragment_scan, FRAGMENT_SWEEP_REFERENCE};
use towerlab_core::special::{
    are_equivalent, build_example4_auto, check_special_ind, example4_search, is_special_pair,
    restriction_injectivity, weakly_special_in_tower,
};
use towerlab_core::tower::{
    automorphism_tower, check_norm_tower_identities, normalizer_tower, rank_image_is_exact,
    tower_rank,
};
use towerlab_core::word::{pm, xv, yv, Token, Word};

fn conclude(name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] {name}: {detail}");
    assert!(ok, "{name}: {detail}");
}

fn centerless(max_order: usize) -> Vec<CatalogEntry> {
    build_catalog(max_order)
        .unwrap()
        .into_iter()
        .filter(|e| e.centerless)
        .collect()
}

#[test]
fn towers_of_small_centerless_groups_terminate() {
    let mut taus: BTreeMap<String, usize> = BTreeMap::new();
    for e in centerless(60) {
        let started = Instant::now();
        let tower = automorphism_tower(&e.group, 10).unwrap();
        let elapsed = started.elapsed();
        assert!(
            elapsed < Duration::from_secs(60),
            "{} took {elapsed:?} to stabilize",
            e.name
        );
        assert!(tower.tau() <= 10);
        taus.insert(e.name, tower.tau());
    }
    let ok = taus["S3"] == 0 && taus["D5"] == 1 && taus.values().all(|&t| t <= 3);
    conclude(
        "tower termination",
        ok,
        &format!(
            "{} centerless groups stabilize, max height {}",
            taus.len(),
            taus.values().max().unwrap()
        ),
    );
}

#[test]
fn tower_identities_hold_with_zero_failures() {
    let mut failures = 0usize;
    let mut towers = 0usize;
    for e in centerless(60) {
        let tower = automorphism_tower(&e.group, 10).unwrap();
        if !check_norm_tower_identities(&tower).all_pass() {
            failures += 1;
        }
        towers += 1;
    }
    conclude(
        "normalizer-tower identities",
        failures == 0 && towers > 0,
        &format!("{towers} towers, {failures} identity failures"),
    );
}

#[test]
fn rank_images_are_exact_on_many_subgroup_chains() {
    let mut chains = 0usize;
    let mut exact = true;
    for e in build_catalog(24).unwrap() {
        for g in e.group.elements() {
            let h = subgroup_generated(&e.group, &[g]).unwrap();
            let chain = normalizer_tower(&e.group, &h).unwrap();
            if !rank_image_is_exact(&chain, &tower_rank(&chain)) {
                exact = false;
            }
            chains += 1;
        }
    }
    conclude(
        "rank image exactness",
        exact && chains >= 30,
        &format!("{chains} subgroup chains, all rank images exact"),
    );
}

#[test]
fn equivalence_scan_agrees_with_the_decision_everywhere() {
    let started = Instant::now();
    let reference: BTreeMap<&str, (usize, usize)> = FRAGMENT_SWEEP_REFERENCE
        .iter()
        .map(|&(name, layer, pairs)| (name, (layer, pairs)))
        .collect();
    let entries = build_catalog(16).unwrap();
    assert_eq!(entries.len(), reference.len(), "sweep covers the whole catalog slice");
    let mut scanned = 0usize;
    for e in &entries {
        let n = e.order;
        let mut sets: Vec<Vec<usize>> = vec![Vec::new()];
        for a in 0..n {
            sets.push(vec![a]);
            for b in a + 1..n {
                sets.push(vec![a, b]);
            }
        }
        let mut max_layer = 0usize;
        let mut equiv = 0usize;
        for a_set in sets {
            for x in 0..n {
                for y in x + 1..n {
                    let scan = fragment_scan(&e.group, &a_set, x, y).unwrap();
                    assert_eq!(
                        scan.equivalent,
                        are_equivalent(&e.group, &a_set, x, y).unwrap(),
                        "{}: scan disagrees at A={a_set:?} x={x} y={y}",
                        e.name
                    );
                    assert!(scan.layer <= 2 * n, "{}: layer {} past 2n", e.name, scan.layer);
                    max_layer = max_layer.max(scan.layer);
                    equiv += scan.equivalent as usize;
                    scanned += 1;
                }
            }
        }
        assert_eq!((max_layer, equiv), reference[e.name.as_str()], "{} sweep totals", e.name);
    }
    let elapsed = started.elapsed();
    conclude(
        "equivalence scan agreement",
        elapsed < Duration::from_secs(600),
        &format!(
            "{scanned} scans across {} groups agree and stabilize, {elapsed:?}",
            entries.len()
        ),
    );
}

#[test]
fn seeded_extension_instances_have_no_counterexamples() {
    let report = run_suite("mylemma", 0).unwrap();
    let instances = &report.checks[0];
    let mut all_levels_special = true;
    let mut towers = 0usize;
    for e in centerless(60) {
        let tower = automorphism_tower(&e.group, 10).unwrap();
        let full: Vec<usize> = e.group.elements().collect();
        if !check_special_ind(&tower, &full).unwrap().all_pass {
            all_levels_special = false;
        }
        towers += 1;
    }
    conclude(
        "extension lemma instances",
        instances.pass && all_levels_special,
        &format!("{}; every level of {towers} towers stays special", instances.detail),
    );
}

#[test]
fn specialness_implies_the_weak_form_with_injective_restrictions() {
    let mut combos = 0usize;
    let mut ok = true;
    for e in centerless(24) {
        let tower = automorphism_tower(&e.group, 10).unwrap();
        let n = e.order;
        let mut a_sets: Vec<Vec<usize>> = vec![(0..n).collect()];
        'outer: for a in 0..n {
            for b in a + 1..n {
                if subgroup_generated(&e.group, &[a, b]).unwrap().order() == n {
                    a_sets.push(vec![a, b]);
                    break 'outer;
                }
            }
        }
        for a_set in a_sets {
            match restriction_injectivity(&tower, &a_set) {
                Ok(injective) => {
                    let special = is_special_pair(&e.group, &a_set).unwrap();
                    let weak = weakly_special_in_tower(&tower, &a_set).unwrap();
                    if !injective || (special && !weak) {
                        ok = false;
                    }
                    combos += 1;
                }
                // the guarantee is conditional on a trivial centralizer
                Err(Error::CentralizerNontrivial(_)) => {}
                Err(other) => panic!("{}: {other}", e.name),
            }
        }
    }
    conclude(
        "weak specialness and restriction",
        ok && combos >= 15,
        &format!("{combos} (tower, parameter-set) combinations"),
    );
}

#[test]
fn the_witness_search_finds_and_verifies_the_wreath_pair() {
    let witness = example4_search(100).unwrap();
    let ok = match &witness {
        Some(w) => {
            w.base == "S3wrC2"
                && w.witnesses_nonspecial
                && w.distinct
                && w.x1_is_automorphism
                && w.x2_is_automorphism
                && !w.x1_inner
                && !w.x2_inner
                && w.equivalent_over_inner
        }
        None => false,
    };
    // the named group must also verify end to end on its own
    let direct = build_example4_auto(&catalog::build("S3wrC2").unwrap()).unwrap();
    conclude(
        "non-special witness search",
        ok && direct.witnesses_nonspecial,
        &match witness {
            Some(w) => format!(
                "base={} extended={} ambient={} inner={}",
                w.base, w.extended_order, w.ambient_order, w.inner_order
            ),
            None => "no witness found in range".to_string(),
        },
    );
}

#[test]
fn codes_are_injective_and_round_trip() {
    let mut pair_codes = BTreeSet::new();
    for x in 0..100u128 {
        for y in 0..100u128 {
            let c = pair_code(x, y);
            assert_eq!(unpair(c), (x, y));
            pair_codes.insert(c);
        }
    }
    assert_eq!(pair_codes.len(), 10_000);

    let mut seqs: Vec<Vec<u128>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u128>> = vec![Vec::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in &frontier {
            for v in 0..6u128 {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        seqs.extend(next.iter().cloned());
        frontier = next;
    }
    let seq_codes: BTreeSet<u128> = seqs.iter().map(|s| seq_code(s)).collect();
    assert_eq!(seqs.len(), 1555);
    assert_eq!(seq_codes.len(), 1555);
    for s in &seqs {
        assert_eq!(seq_decode(seq_code(s)), *s);
    }

    let (a, b) = choose_markers(&[4, 5, 6]).unwrap();
    let letters = [xv(1), xv(-1), pm(4), pm(5), pm(6)];
    let mut words: BTreeSet<Word> = BTreeSet::new();
    let mut stack: Vec<Vec<Token>> = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        words.insert(Word::from_tokens(seq.clone()));
        if seq.len() < 6 {
            for letter in letters {
                let mut t = seq.clone();
                t.push(letter);
                stack.push(t);
            }
        }
    }
    let mut codes = BTreeSet::new();
    for w in &words {
        let code = encode_word(w, a, b).unwrap();
        assert_eq!(decode_word(&code).unwrap(), *w);
        codes.insert((code.k, code.m, code.params));
    }
    assert_eq!(codes.len(), words.len(), "word codes collide");

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=8);
        let tokens: Vec<Token> = (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => xv(rng.gen_range(1..=3)),
                1 => xv(-rng.gen_range(1..=3)),
                _ => pm(rng.gen_range(1..=5)),
            })
            .collect();
        let w = Word::from_tokens(tokens);
        let code = encode_word(&w, 7, 9).unwrap();
        assert_eq!(decode_word(&code).unwrap(), w);
    }
    conclude(
        "code injectivity",
        true,
        &format!(
            "pairs and sequences exhaustive, {} short words injective, 10000 random round trips",
            words.len()
        ),
    );
}

#[test]
fn orbit_rewrites_preserve_automorphisms_on_seeded_structures() {
    let report = run_suite("structures", 0).unwrap();
    let orbit_checks: Vec<_> =
        report.checks.iter().filter(|c| c.name.starts_with("structures/orbit/")).collect();
    let ok = report.passed && orbit_checks.len() == 20;
    conclude(
        "orbit-rewrite invariance",
        ok,
        &format!("{} seeded structures keep their automorphism group", orbit_checks.len()),
    );
}

#[test]
fn kernels_separate_and_reconstruct() {
    let mut special_pairs = 0usize;
    for e in build_catalog(24).unwrap() {
        let full: Vec<usize> = e.group.elements().collect();
        if is_special_pair(&e.group, &full).unwrap() {
            assert!(
                kernel_injectivity(&e.group, &full).unwrap(),
                "{}: kernel fails to separate",
                e.name
            );
            special_pairs += 1;
        }
    }

    let mut rebuilt = 0usize;
    for name in ["S3", "D5"] {
        let g = catalog::build(name).unwrap();
        let full: Vec<usize> = g.elements().collect();
        let aut = automorphism_group(&g).unwrap();
        for i in 0..aut.order() {
            let report = verify_reconstruction(&g, &full, aut.perms().perm(i)).unwrap();
            assert!(report.union_total && report.union_consistent && report.union_matches_rho);
            for h in &report.per_h {
                assert_eq!(h.conditions, [true; 7], "{name}: condition failure at h={}", h.h);
                assert!(h.agrees_with_conjugation);
            }
            rebuilt += 1;
        }
    }

    let s3 = catalog::build("S3").unwrap();
    let oracle = KernelOracle::new(&s3, &[0], 3, Some(1)).unwrap();
    let forged =
        vec![(1usize, Word::from_tokens([yv(1)])), (2usize, Word::from_tokens([yv(1)]))];
    let violations = check_well_definedness(&oracle, &forged).unwrap();
    conclude(
        "kernel separation and reconstruction",
        special_pairs > 0 && rebuilt == 26 && violations == vec![(1, 2)],
        &format!(
            "{special_pairs} kernels injective, {rebuilt} automorphisms reconstructed, \
             forged witnesses flagged"
        ),
    );
}

#[test]
fn the_binary_passes_its_own_full_verification() {
    let started = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(["verify", "--suite", "all", "--seed", "0"])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let ok = output.status.success()
        && elapsed < Duration::from_secs(900)
        && stdout.contains("passed")
        && !stdout.contains("[FAIL]");
    conclude(
        "full self-verification",
        ok,
        &format!("exit={:?} in {elapsed:?}", output.status.code()),
    );
}
