//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use mkg_core::coloring::{chromatic_number, DEFAULT_NODE_BUDGET};
use mkg_core::edge_coloring::{chromatic_index, is_snark};
use mkg_core::extremal::ex_exact;
use mkg_core::generators::{complete, cycle, disjoint_matching, petersen, star};
use mkg_core::kneser::{
    build_kneser, build_matching_kneser, find_isomorphism, structurally_equivalent,
};
use mkg_core::matchings::{
    enumerate_perfect_matchings, matching_number, perfect_matchings_pairwise_intersect,
    schonberger_check,
};
use mkg_core::verifier::{revalidate, verify_conjecture, ConjectureReport, Verdict};
use mkg_core::{parse_graph6, write_graph6, Graph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn report(g: &Graph, r: usize) -> Result<ConjectureReport, String> {
    verify_conjecture(g, r, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = petersen();
    let rep = report(&g, 5)?;
    let t = within(start, Duration::from_secs(1))?;
    ensure(brute_count_matchings(&g, 5) == 6, || "oracle count".into())?;
    let got = (
        rep.num_r_matchings,
        rep.kneser_vertices,
        rep.kneser_edges,
        rep.chromatic_number,
        rep.ex_value,
        rep.rhs,
    );
    ensure(got == (6, 6, 0, Some(1), Some(12), Some(3)), || {
        format!("got {got:?}")
    })?;
    ensure(
        rep.verdict == Verdict::Counterexample && rep.is_snark,
        || format!("verdict {} snark {}", rep.verdict, rep.is_snark),
    )?;
    ensure(brute_ex(&g, 5) == 12, || "oracle ex".into())?;
    revalidate(&rep, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    Ok(format!(
        "6 perfect matchings, KG 6/0, chi 1, ex 12, rhs 3 in {t:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let mut graphs = read_fixture("blanusa.g6");
    graphs.extend(read_fixture("flower_j5.g6"));
    ensure(graphs.len() == 3, || "expected three snark fixtures".into())?;
    ensure(
        find_isomorphism(&graphs[0].1, &graphs[1].1).is_none(),
        || "the two Blanusa fixtures are isomorphic".into(),
    )?;
    let expected = [(18, 27), (18, 27), (20, 30)];
    let mut notes = Vec::new();
    for ((line, g), (n, m)) in graphs.iter().zip(expected) {
        ensure((g.n(), g.m()) == (n, m), || format!("{line}: order/size"))?;
        let start = Instant::now();
        let rep = report(g, n / 2)?;
        let t = within(start, Duration::from_secs(60))?;
        ensure(rep.is_snark, || format!("{line}: not a snark"))?;
        ensure(rep.kneser_edges == 0 && rep.kneser_vertices > 0, || {
            format!("{line}: KG has {} edges", rep.kneser_edges)
        })?;
        ensure(rep.chromatic_number == Some(1), || {
            format!("{line}: chi {:?}", rep.chromatic_number)
        })?;
        ensure(rep.ex_value == Some(m - 3) && rep.rhs == Some(3), || {
            format!("{line}: ex {:?}", rep.ex_value)
        })?;
        ensure(rep.verdict == Verdict::Counterexample, || {
            format!("{line}: {}", rep.verdict)
        })?;
        // any nonempty edgeless KG has chi 1, so independence of perfect
        // matchings from the chromatic search is checked directly
        ensure(
            brute_pairwise_intersecting(&enumerate_perfect_matchings(g)),
            || format!("{line}: perfect matchings not pairwise intersecting"),
        )?;
        revalidate(&rep, DEFAULT_NODE_BUDGET).map_err(|e| format!("{line}: {e}"))?;
        notes.push(format!("n={n} {t:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_3() -> Outcome {
    let graphs = read_fixture("connected_le7.g6");
    ensure(graphs.len() == 996, || {
        format!("catalog has {} graphs", graphs.len())
    })?;
    let start = Instant::now();
    let (mut checked, mut violations, mut counterexamples) = (0, 0, 0);
    for (line, g) in &graphs {
        ensure(g.is_connected() && g.n() <= 7, || {
            format!("{line}: not in scope")
        })?;
        for r in [2, 3] {
            let rep = report(g, r)?;
            checked += 1;
            let (chi, rhs) = match (rep.chromatic_number, rep.rhs) {
                (Some(c), Some(h)) => (c, h),
                _ => return Err(format!("{line} r={r}: undecided")),
            };
            if chi > rhs {
                violations += 1;
            }
            if rep.verdict == Verdict::Counterexample {
                counterexamples += 1;
                revalidate(&rep, DEFAULT_NODE_BUDGET).map_err(|e| format!("{line} r={r}: {e}"))?;
            }
        }
    }
    let t = within(start, Duration::from_secs(600))?;
    ensure(violations == 0, || {
        format!("{violations} reports with chi > m - ex")
    })?;
    Ok(format!(
        "{checked} reports, 0 violations, {counterexamples} revalidated counterexamples in {t:.2?}"
    ))
}

fn criterion_4() -> Outcome {
    let cases = [
        ("C5", cycle(5).unwrap(), 3),
        ("star(3)", star(3), 0),
        ("K4", complete(4), 3),
    ];
    for (name, g, want) in cases {
        let rep = report(&g, 2)?;
        let oracle_rhs = g.m() - brute_ex(&g, 2);
        let oracle_chi = kneser_chi_oracle(&g, 2);
        ensure(
            rep.chromatic_number == Some(want) && rep.rhs == Some(want),
            || format!("{name}: chi {:?} rhs {:?}", rep.chromatic_number, rep.rhs),
        )?;
        ensure(oracle_rhs == want && oracle_chi == want, || {
            format!("{name}: oracle disagrees")
        })?;
        ensure(rep.verdict == Verdict::Holds, || {
            format!("{name}: {}", rep.verdict)
        })?;
    }
    Ok("C5 3=3, star(3) 0=0, K4 3=3".into())
}

fn criterion_5() -> Outcome {
    let mut exact = 0;
    let mut total = 0;
    for n in 0..=8 {
        for r in 1..=4 {
            let a = build_matching_kneser(&disjoint_matching(n), r).map_err(|e| e.to_string())?;
            let b = build_kneser(n, r).map_err(|e| e.to_string())?;
            let eq = structurally_equivalent(&a, &b);
            let small = a.vertex_count() <= 12;
            ensure(eq.equivalent && eq.exact == small, || {
                format!("n={n} r={r}: {eq:?}")
            })?;
            let oracle = subset_kneser(n, r);
            // lexicographic r-matchings of nK2 are the lexicographic r-subsets
            ensure(a.graph() == &oracle, || {
                format!("n={n} r={r}: differs from the subset oracle")
            })?;
            if small {
                exact += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} pairs equivalent, {exact} decided exactly"))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x6d6b67);
    for i in 0..200 {
        let g = random_graph(&mut rng, 12);
        let (fast, slow) = (matching_number(&g), brute_matching_number(&g));
        ensure(fast == slow, || {
            format!("random graph {i}: nu {fast} vs {slow}")
        })?;
    }

    let mut ex_cases = 0;
    let mut fixtures = Vec::new();
    for name in [
        "petersen.g6",
        "c5_k4.g6",
        "cubic_small.g6",
        "connected_le7.g6",
    ] {
        fixtures.extend(read_fixture(name));
    }
    for (line, g) in fixtures.iter().filter(|(_, g)| g.m() <= 16) {
        let profile = brute_ex_profile(g);
        for (r, &oracle) in profile.iter().enumerate().skip(1) {
            let cert = ex_exact(g, r).map_err(|e| e.to_string())?;
            ensure(cert.value == oracle, || {
                format!("{line} r={r}: ex {} vs {oracle}", cert.value)
            })?;
            ex_cases += 1;
        }
    }

    let mut chi_cases = 0;
    let mut bases: Vec<Graph> = fixtures.iter().map(|(_, g)| g.clone()).collect();
    bases.extend((1..=8).map(disjoint_matching));
    for g in &bases {
        for r in 1..=4 {
            let kg = build_matching_kneser(g, r).map_err(|e| e.to_string())?;
            if kg.vertex_count() > 12 {
                continue;
            }
            let fast = chromatic_number(kg.graph(), DEFAULT_NODE_BUDGET)
                .map_err(|e| e.to_string())?
                .chromatic_number;
            let slow = brute_chromatic_number(kg.graph());
            ensure(fast == slow, || {
                format!("{} r={r}: chi {fast} vs {slow}", write_graph6(g).unwrap())
            })?;
            chi_cases += 1;
        }
    }
    Ok(format!(
        "200 matching numbers, {ex_cases} ex values, {chi_cases} chromatic numbers agree"
    ))
}

fn criterion_7() -> Outcome {
    let mut cubic = read_fixture("cubic_small.g6");
    cubic.extend(read_fixture("snarks.g6"));
    let (mut bridgeless, mut class_two) = (0, 0);
    for (line, g) in &cubic {
        ensure(g.is_cubic(), || format!("{line}: not cubic"))?;
        let pms = enumerate_perfect_matchings(g);
        if g.n() <= 14 && g.is_connected() && brute_bridges(g).is_empty() {
            ensure(!pms.is_empty(), || format!("{line}: no perfect matching"))?;
            ensure(brute_matching_number(g) * 2 == g.n(), || {
                format!("{line}: oracle nu")
            })?;
            let outcome = schonberger_check(g).map_err(|e| e.to_string())?;
            ensure(outcome.holds(), || {
                format!("{line}: fails {:?}", outcome.failing_pair)
            })?;
            bridgeless += 1;
        }
        if chromatic_index(g).chromatic_index == 4 {
            ensure(!brute_three_edge_colorable(g), || {
                format!("{line}: oracle finds 3 colors")
            })?;
            ensure(perfect_matchings_pairwise_intersect(g), || {
                format!("{line}: disjoint perfect matchings")
            })?;
            ensure(brute_pairwise_intersecting(&pms), || {
                format!("{line}: oracle disagrees")
            })?;
            class_two += 1;
        }
    }
    ensure(class_two >= 5, || {
        format!("only {class_two} class-two fixtures")
    })?;
    let snarks = cubic.iter().filter(|(_, g)| is_snark(g).is_snark).count();
    Ok(format!(
        "{bridgeless} bridgeless fixtures pass, {class_two} class-two fixtures ({snarks} snarks) pass"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x673636);
    for i in 0..1000 {
        let n = rng.gen_range(0..=62);
        let g = random_graph_of_order(&mut rng, n);
        let text = write_graph6(&g).map_err(|e| e.to_string())?;
        let back = parse_graph6(&text).map_err(|e| format!("graph {i}: {e}"))?;
        let again = write_graph6(&back).map_err(|e| e.to_string())?;
        ensure(back == g && again == text, || {
            format!("graph {i} (n={n}) differs")
        })?;
        ensure(text == oracle_graph6(&g), || {
            format!("graph {i}: differs from oracle encoder")
        })?;
    }
    // fixtures were written by an external encoder
    let mut external = 0;
    for name in ["connected_le7.g6", "cubic_small.g6", "snarks.g6"] {
        for (line, g) in read_fixture(name) {
            ensure(write_graph6(&g).unwrap() == line, || {
                format!("{line} re-encodes differently")
            })?;
            external += 1;
        }
    }
    Ok(format!(
        "1000 random graphs and {external} external lines byte-identical"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("petersen counterexample", criterion_1),
        ("blanusa and flower snarks", criterion_2),
        ("sweep of connected graphs n<=7", criterion_3),
        ("small equalities", criterion_4),
        ("classical kneser equivalence", criterion_5),
        ("oracle suites", criterion_6),
        ("cubic perfect matchings", criterion_7),
        ("graph6 round trip", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
