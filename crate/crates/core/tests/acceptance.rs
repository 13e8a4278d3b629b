//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers. Run with `cargo test --test acceptance -- --nocapture`
//! to see them.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use common::{corpus, random_tree};
use ecc_core::analysis::antipode_closure_check;
use ecc_core::certificates::{verify_bundle, CertificateBundle, CertKind};
use ecc_core::chordal::{chordal_all_ecc, chordal_certificate_checks, chordal_diameter};
use ecc_core::generators::{gen_bowtie, gen_grid};
use ecc_core::graph::{Graph, Ranking};
use ecc_core::oracle::{self, DistanceMatrix};
use ecc_core::select::{arg_min_ecc, Score};
use ecc_core::solvers::{
    all_eccentricities, diameter, diameter_approx, diameter_doubling, radius, radius_approx,
    DiameterVariant, Frac, RadiusResult,
};
use ecc_core::traversal::QueryCounter;

const VARIANTS: [DiameterVariant; 4] = [
    DiameterVariant::Basic,
    DiameterVariant::CenterInit,
    DiameterVariant::Delegate,
    DiameterVariant::CenterInitDelegate,
];

fn rankings(n: usize) -> [Ranking; 2] {
    [Ranking::id(n), Ranking::random(n, 42)]
}

struct Bt500 {
    graph: Graph,
    radius: RadiusResult,
    diameter: ecc_core::solvers::DiameterResult,
    solve_secs: f64,
}

static BT500: OnceLock<Bt500> = OnceLock::new();

fn bt500() -> &'static Bt500 {
    BT500.get_or_init(|| {
        let graph = gen_bowtie(500, 500).unwrap();
        let ranking = Ranking::id(graph.n());
        let start = Instant::now();
        let r = radius(&graph, &ranking).unwrap();
        let d = diameter(&graph, &ranking, DiameterVariant::CenterInitDelegate).unwrap();
        let solve_secs = start.elapsed().as_secs_f64();
        Bt500 {
            graph,
            radius: r,
            diameter: d,
            solve_secs,
        }
    })
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let instances = corpus();
    assert!(
        instances.len() >= 200,
        "corpus has only {} instances",
        instances.len()
    );
    let alphas = [
        Frac::new(1, 4).unwrap(),
        Frac::new(1, 3).unwrap(),
        Frac::new(1, 2).unwrap(),
        Frac::new(3, 4).unwrap(),
    ];
    let mut runs = 0usize;
    for inst in &instances {
        let g = &inst.graph;
        let (_, ecc) = oracle::apsp(g).unwrap();
        let rad = oracle::radius_of(&ecc);
        let diam = oracle::diameter_of(&ecc);
        for ranking in rankings(g.n()) {
            let r = radius(g, &ranking).unwrap();
            assert_eq!(r.radius, rad, "radius on {}", inst.label);
            assert_eq!(ecc[r.center], rad, "center witness on {}", inst.label);
            runs += 1;
            for variant in VARIANTS {
                let d = diameter(g, &ranking, variant).unwrap();
                assert_eq!(d.diameter, diam, "diameter {variant:?} on {}", inst.label);
                assert_eq!(ecc[d.witness], diam, "diametral witness on {}", inst.label);
                runs += 1;
            }
            let a = all_eccentricities(g, &ranking).unwrap();
            assert_eq!(a.ecc, ecc, "all eccentricities on {}", inst.label);
            runs += 1;
        }
        let ranking = Ranking::id(g.n());
        for alpha in alphas {
            let d = diameter_doubling(g, &ranking, alpha).unwrap();
            assert_eq!(d.diameter, diam, "doubling {alpha} on {}", inst.label);
            runs += 1;
        }
        let shuffled = Ranking::random(g.n(), 42);
        let d = diameter_doubling(g, &shuffled, Frac::new(1, 2).unwrap()).unwrap();
        assert_eq!(d.diameter, diam, "doubling random ranking on {}", inst.label);
        runs += 1;
        if inst.chordal {
            let d = chordal_diameter(g, &ranking).unwrap();
            assert_eq!(d.diameter, diam, "chordal diameter on {}", inst.label);
            let a = chordal_all_ecc(g, &ranking).unwrap();
            assert_eq!(a.ecc, ecc, "chordal eccentricities on {}", inst.label);
            runs += 2;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "criterion 1 took {secs:.1}s");
    println!(
        "criterion 1 (oracle equivalence): PASS — {} instances, {runs} solver runs, {secs:.1}s",
        instances.len()
    );
}

/// Removal of `drop_idx` from the radius certificate breaks coverage?
fn radius_removal_breaks(m: &DistanceMatrix, lower: &[usize], r: u64, drop_idx: usize) -> bool {
    (0..m.n()).any(|u| {
        lower
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop_idx)
            .all(|(_, &x)| m.dist(u, x) < r)
    })
}

fn diameter_removal_breaks(
    m: &DistanceMatrix,
    upper: &[(usize, u64)],
    d: u64,
    drop_idx: usize,
) -> bool {
    (0..m.n()).any(|u| {
        upper
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop_idx)
            .all(|(_, &(x, ex))| m.dist(u, x) + ex > d)
    })
}

#[test]
fn criterion_02_certificate_soundness_and_mutation_detection() {
    let instances = corpus();
    let mut bundles_checked = 0usize;
    let mut mutations = 0usize;
    let mut detected = 0usize;

    for inst in &instances {
        let g = &inst.graph;
        let ranking = Ranking::id(g.n());
        let (m, _) = oracle::apsp(g).unwrap();
        let r = radius(g, &ranking).unwrap();
        let d = diameter(g, &ranking, DiameterVariant::CenterInitDelegate).unwrap();
        let a = all_eccentricities(g, &ranking).unwrap();
        let a_bundle = a.bundle.clone().unwrap();

        for bundle in [&r.bundle, &d.bundle, &a_bundle] {
            let mut counter = QueryCounter::new();
            let verdict = verify_bundle(g, &ranking, bundle, &mut counter).unwrap();
            assert!(
                verdict.accepted,
                "genuine bundle rejected on {}: {:?}",
                inst.label, verdict.reason
            );
            bundles_checked += 1;
        }

        let mut try_mutation = |bundle: CertificateBundle| {
            if mutations >= 100 {
                return;
            }
            mutations += 1;
            let mut counter = QueryCounter::new();
            match verify_bundle(g, &ranking, &bundle, &mut counter) {
                Ok(verdict) if !verdict.accepted => detected += 1,
                Ok(_) => panic!("mutated bundle accepted on {}", inst.label),
                // Structural damage also counts as detection.
                Err(_) => detected += 1,
            }
        };

        // Value + 1.
        let mut tampered = r.bundle.clone();
        tampered.r = Some(tampered.r.unwrap() + 1);
        try_mutation(tampered);
        let mut tampered = d.bundle.clone();
        tampered.diam = Some(tampered.diam.unwrap() + 1);
        try_mutation(tampered);
        let mut tampered = a_bundle.clone();
        if let Some(ecc) = tampered.ecc.as_mut() {
            ecc[0] += 1;
        }
        try_mutation(tampered);

        // Drop a certificate node whose removal breaks coverage.
        if let Some(idx) = (0..r.bundle.lower.len())
            .find(|&i| radius_removal_breaks(&m, &r.bundle.lower, r.radius, i))
        {
            let mut tampered = r.bundle.clone();
            tampered.lower.remove(idx);
            try_mutation(tampered);
        }
        let pairs: Vec<(usize, u64)> = d.bundle.upper.iter().map(|e| (e.node, e.ecc)).collect();
        if let Some(idx) =
            (0..pairs.len()).find(|&i| diameter_removal_breaks(&m, &pairs, d.diameter, i))
        {
            let mut tampered = d.bundle.clone();
            tampered.upper.remove(idx);
            try_mutation(tampered);
        }
        if mutations >= 100 && bundles_checked >= 100 {
            break;
        }
    }
    assert!(mutations >= 100, "only {mutations} mutations exercised");
    assert_eq!(detected, mutations, "every mutation must be detected");
    println!(
        "criterion 2 (certificate soundness): PASS — {bundles_checked} genuine bundles accepted, {detected}/{mutations} mutations rejected"
    );
}

#[test]
fn criterion_03_query_budgets() {
    let instances = corpus();
    let mut radius_runs = 0usize;
    let mut allecc_runs = 0usize;
    let mut select_batches = 0usize;
    for inst in &instances {
        let g = &inst.graph;
        for ranking in rankings(g.n()) {
            let r = radius(g, &ranking).unwrap();
            assert!(
                r.report.sweeps <= 2 * r.lower.len() as u64 + 1,
                "radius budget on {}: {} > 2*{}+1",
                inst.label,
                r.report.sweeps,
                r.lower.len()
            );
            radius_runs += 1;

            let a = all_eccentricities(g, &ranking).unwrap();
            // The stated bound is one sweep per certificate member; on
            // directed graphs each upper member needs a second, backward,
            // sweep for its covering distances.
            let upper_cost = if g.directed() { 2 } else { 1 } * a.upper.len() as u64;
            assert!(
                a.report.sweeps <= upper_cost + 2 * a.lower.len() as u64,
                "all-ecc budget on {}: {} sweeps, |U|={}, |L|={}",
                inst.label,
                a.report.sweeps,
                a.upper.len(),
                a.lower.len()
            );
            allecc_runs += 1;
        }

        // Amortized selection budget: k selections sharing one bound state
        // cost at most k + 2 |added lower members| sweeps.
        let ranking = Ranking::id(g.n());
        let mut bounds = ecc_core::certificates::BoundState::new(g);
        let mut counter = QueryCounter::new();
        let k = 5.min(g.n());
        for i in 0..k {
            let w = (i * g.n()) / k;
            let sel = arg_min_ecc(
                g,
                &ranking,
                &mut bounds,
                &mut |v, l, _| {
                    if v >= w {
                        Score::Finite(l as i64)
                    } else {
                        Score::Infinite
                    }
                },
                &mut counter,
            )
            .unwrap();
            assert!(sel.is_some());
        }
        let added = bounds.lower_members().len() as u64;
        assert!(
            counter.sweeps() <= k as u64 + 2 * added,
            "selection budget on {}: {} > {} + 2*{added}",
            inst.label,
            counter.sweeps(),
            k
        );
        select_batches += 1;
    }
    println!(
        "criterion 3 (query budgets): PASS — {radius_runs} radius runs, {allecc_runs} all-ecc runs, {select_batches} selection batches, zero violations"
    );
}

#[test]
fn criterion_04_optimal_upper_certificate() {
    let instances = corpus();
    let mut checked = 0usize;
    for inst in &instances {
        let g = &inst.graph;
        let (m, ecc) = oracle::apsp(g).unwrap();
        let expected = oracle::preceq_maximals(&m, &ecc)
            .unwrap_or_else(|e| panic!("order violated on {}: {e}", inst.label));
        for ranking in rankings(g.n()) {
            let a = all_eccentricities(g, &ranking).unwrap();
            let mut got: Vec<usize> = a.upper.iter().map(|&(v, _)| v).collect();
            got.sort_unstable();
            assert_eq!(got, expected, "upper certificate on {}", inst.label);
            checked += 1;
        }
    }
    println!(
        "criterion 4 (minimum tight upper certificate): PASS — {checked} runs match the order-maximal set exactly"
    );
}

#[test]
fn criterion_05_bowtie_family() {
    for &p in &[2usize, 5, 20] {
        for &q in &[6usize, 10, 20] {
            let g = gen_bowtie(p, q).unwrap();
            let ranking = Ranking::id(g.n());
            let r = radius(&g, &ranking).unwrap();
            assert_eq!(r.radius, (2 * q + 1) as u64, "radius at ({p},{q})");
            assert!(
                r.report.sweeps <= 30,
                "radius sweeps at ({p},{q}): {}",
                r.report.sweeps
            );
            let d = diameter(&g, &ranking, DiameterVariant::CenterInitDelegate).unwrap();
            assert_eq!(d.diameter, (4 * q - 2) as u64, "diameter at ({p},{q})");
            assert!(
                d.report.sweeps <= 30,
                "center-initialized sweeps at ({p},{q}): {}",
                d.report.sweeps
            );
        }
        // The basic variant pays per pendant leaf.
        for &q in &[6usize, 10, 20] {
            let small = diameter(
                &gen_bowtie(2, q).unwrap(),
                &Ranking::id(gen_bowtie(2, q).unwrap().n()),
                DiameterVariant::Basic,
            )
            .unwrap();
            let large = diameter(
                &gen_bowtie(20, q).unwrap(),
                &Ranking::id(gen_bowtie(20, q).unwrap().n()),
                DiameterVariant::Basic,
            )
            .unwrap();
            assert!(
                large.report.sweeps > small.report.sweeps,
                "basic sweeps should grow with p at q={q}: {} vs {}",
                large.report.sweeps,
                small.report.sweeps
            );
        }
    }
    let big = bt500();
    assert_eq!(big.graph.n(), 505002);
    assert_eq!(big.radius.radius, 1001);
    assert_eq!(big.diameter.diameter, 1998);
    assert!(
        big.solve_secs < 60.0,
        "bt500 solves took {:.1}s",
        big.solve_secs
    );
    println!(
        "criterion 5 (bow-tie family): PASS — formulas hold on the grid; n(500,500)={}, solved in {:.2}s",
        big.graph.n(),
        big.solve_secs
    );
}

#[test]
fn criterion_06_table_style_rows() {
    let big = bt500();
    let r_size = big.radius.lower.len();
    let d_size = big.diameter.upper.len();
    assert!(r_size <= 10, "bt500 radius certificate size {r_size}");
    assert!(d_size <= 6, "bt500 diameter certificate size {d_size}");

    let g = gen_grid(101, 0.1, 1).unwrap().restrict_to_core().unwrap().graph;
    let ranking = Ranking::id(g.n());
    let d = diameter(&g, &ranking, DiameterVariant::CenterInitDelegate).unwrap();
    let seed = d.seed_radius.as_ref().unwrap();
    let ratio = d.diameter as f64 / seed.radius as f64;
    assert!(
        d.upper.len() <= 3,
        "grid diameter certificate size {}",
        d.upper.len()
    );
    assert!(
        (ratio - 2.0).abs() <= 0.05,
        "grid diam/rad ratio {ratio:.3}"
    );
    println!(
        "criterion 6 (desk-scale table rows): PASS — bt500 R={r_size} D={d_size}; 101x101 grid D={} ratio={ratio:.3}",
        d.upper.len()
    );
}

#[test]
fn criterion_07_tree_two_sweep_exactness() {
    let mut checked = 0usize;
    for seed in 0..100u64 {
        let n = 2 + (seed as usize * 7) % 199;
        let g = random_tree(n, 7000 + seed);
        let (_, ecc) = oracle::apsp(&g).unwrap();
        let diam = oracle::diameter_of(&ecc);
        let ranking = Ranking::id(n);
        let r = radius(&g, &ranking).unwrap();
        assert_eq!(r.radius, oracle::radius_of(&ecc), "radius on tree {seed}");
        assert!(
            r.lower.len() <= 2,
            "tree {seed}: |L| = {}",
            r.lower.len()
        );
        // The first iteration finds an antipode, the second sweeps it and
        // realizes the exact diameter.
        let trace = &r.report.trace;
        assert!(trace.len() >= 2, "tree {seed}: trace too short");
        let a1 = trace[0].lower_added.expect("first iteration adds its antipode");
        assert_eq!(trace[1].selected, a1, "tree {seed}");
        assert_eq!(trace[1].ecc, diam, "tree {seed}: first antipode pair misses the diameter");
        checked += 1;
    }
    println!(
        "criterion 7 (two-sweep exactness on trees): PASS — {checked} trees, first antipode pair always diametral, |L| <= 2"
    );
}

#[test]
fn criterion_08_antipode_closure() {
    let instances = corpus();
    let mut checked = 0usize;
    for inst in &instances {
        let g = &inst.graph;
        for ranking in rankings(g.n()) {
            let r = radius(g, &ranking).unwrap();
            let mut counter = QueryCounter::new();
            let audit =
                antipode_closure_check(g, &ranking, &r.report.queried, r.radius, &mut counter)
                    .unwrap();
            assert!(
                audit.accepted,
                "closure fails on {} (uncovered {:?})",
                inst.label, audit.first_uncovered
            );
            checked += 1;
        }
    }
    // The bow-tie runs from criterion 5, at desk scale.
    for &(p, q) in &[(2usize, 6usize), (5, 10), (20, 20)] {
        let g = gen_bowtie(p, q).unwrap();
        let ranking = Ranking::id(g.n());
        let r = radius(&g, &ranking).unwrap();
        let mut counter = QueryCounter::new();
        let audit =
            antipode_closure_check(&g, &ranking, &r.report.queried, r.radius, &mut counter)
                .unwrap();
        assert!(audit.accepted, "closure fails on bowtie({p},{q})");
        checked += 1;
    }
    let big = bt500();
    let ranking = Ranking::id(big.graph.n());
    let mut counter = QueryCounter::new();
    let audit = antipode_closure_check(
        &big.graph,
        &ranking,
        &big.radius.report.queried,
        big.radius.radius,
        &mut counter,
    )
    .unwrap();
    assert!(audit.accepted, "closure fails on bt500");
    checked += 1;
    println!(
        "criterion 8 (queried set plus antipodes certifies the radius): PASS — {checked} runs, zero failures"
    );
}

#[test]
fn criterion_09_chordal_propositions() {
    use ecc_core::generators::{gen_chordal, ChordalKind};
    let mut checked = 0usize;
    let mut pair_rule_seen = 0usize;
    for seed in 0..50u64 {
        let n = 10 + (seed as usize % 8) * 5;
        let k = 1 + (seed as usize % 4);
        let g = gen_chordal(ChordalKind::KTree, n, k, 900 + seed).unwrap();
        let report = chordal_certificate_checks(&g).unwrap();
        assert!(report.passed(), "ktree seed {seed}: {report:?}");
        if report.pair_rule_applies {
            pair_rule_seen += 1;
        }
        checked += 1;
    }
    for seed in 0..30u64 {
        let g = gen_chordal(ChordalKind::Interval, 40, 0, 500 + seed)
            .unwrap()
            .restrict_to_core()
            .unwrap()
            .graph;
        if g.n() < 3 {
            continue;
        }
        let report = chordal_certificate_checks(&g).unwrap();
        assert!(report.passed(), "interval seed {seed}: {report:?}");
        if report.pair_rule_applies {
            pair_rule_seen += 1;
        }
        checked += 1;
    }
    for seed in 0..20u64 {
        let g = random_tree(30 + (seed as usize) * 5, 600 + seed);
        let report = chordal_certificate_checks(&g).unwrap();
        assert!(report.passed(), "tree seed {seed}: {report:?}");
        if report.pair_rule_applies {
            pair_rule_seen += 1;
        }
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} chordal instances");
    assert!(pair_rule_seen > 0, "the diametral-pair rule never applied");
    println!(
        "criterion 9 (chordal certificate propositions): PASS — {checked} instances, pair rule exercised {pair_rule_seen} times"
    );
}

#[test]
fn criterion_10_approximation_modes() {
    let mut checked = 0usize;
    for &k in &[9usize, 11, 13, 15] {
        let g = gen_grid(k, 0.0, 0).unwrap();
        let (_, ecc) = oracle::apsp(&g).unwrap();
        let rad = oracle::radius_of(&ecc);
        let diam = oracle::diameter_of(&ecc);
        let ranking = Ranking::id(g.n());
        let a = radius_approx(&g, &ranking, 0.25, 16).unwrap();
        assert!(
            (a.ecc as f64) <= 1.25 * rad as f64,
            "radius approx on {k}x{k}: {} vs rad {rad}",
            a.ecc
        );
        assert_eq!(ecc[a.node], a.ecc);
        let b = diameter_approx(&g, &ranking, 0.25, 16).unwrap();
        assert!(
            (b.ecc as f64) >= 0.75 * diam as f64,
            "diameter approx on {k}x{k}: {} vs diam {diam}",
            b.ecc
        );
        assert_eq!(ecc[b.node], b.ecc);
        checked += 1;
    }
    println!(
        "criterion 10 (budgeted approximation): PASS — {checked} grids within (1+eps) / (1-eps) bounds"
    );
}

#[test]
fn bundle_kind_round_trip() {
    // Sanity for the JSON surface used by the other criteria.
    let g = gen_grid(3, 0.0, 0).unwrap();
    let ranking = Ranking::id(9);
    let r = radius(&g, &ranking).unwrap();
    let json = r.bundle.to_json().unwrap();
    let back = CertificateBundle::from_json(&json).unwrap();
    assert_eq!(back.kind, CertKind::Radius);
    assert_eq!(back, r.bundle);
}
