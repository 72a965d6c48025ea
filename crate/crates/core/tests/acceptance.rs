//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use associahedra::analysis::{equivalence_search, Verdict};
use associahedra::io::ConstructionParams;
use associahedra::polygon::{all_subdivisions, PolygonSize};
use associahedra::polytope::ConstructionTag;
use associahedra::verify::{run_check, CheckKind, CheckRow, CheckSpec};

const SEED: u64 = 42;
const DRAWS: usize = 3;

fn check(kind: CheckKind, n_min: usize, n_max: usize, draws: usize) -> CheckRow {
    let spec = CheckSpec {
        name: format!("{kind:?}"),
        anchor: String::new(),
        kind,
        n_min,
        n_max,
        draws,
        expect_pass: true,
    };
    run_check(&spec, n_max, SEED)
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_rows(rows: &[CheckRow]) -> Outcome {
    match rows.iter().find(|r| !r.passed) {
        Some(r) => Outcome {
            passed: false,
            detail: format!(
                "{}: {}{}",
                r.name,
                r.detail,
                r.counterexample.as_ref().map(|c| format!(" {c}")).unwrap_or_default()
            ),
        },
        None => Outcome {
            passed: true,
            detail: rows.iter().map(|r| r.detail.clone()).collect::<Vec<_>>().join("; "),
        },
    }
}

fn timed(limit: Duration, what: &str, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.passed = false;
        out.detail = format!("{what} took {took:.1?}, limit {limit:?}; {}", out.detail);
    } else {
        out.detail = format!("{} ({took:.1?})", out.detail);
    }
    out
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(60), "vertex counts", || {
        from_rows(&[check(CheckKind::VertexCounts, 1, 5, 0)])
    })
}

fn criterion_2() -> Outcome {
    from_rows(&[check(CheckKind::FacetCounts, 1, 5, 0)])
}

fn criterion_3() -> Outcome {
    from_rows(&[check(CheckKind::SecondaryNoParallel, 2, 5, DRAWS)])
}

fn criterion_4() -> Outcome {
    from_rows(&[check(CheckKind::ClusterParallelRoots, 2, 5, DRAWS)])
}

fn criterion_5() -> Outcome {
    from_rows(&[check(CheckKind::MinkowskiParallel, 2, 5, DRAWS)])
}

fn criterion_6() -> Outcome {
    let mut out = from_rows(&[check(CheckKind::FaceCorrespondence, 1, 5, 0)]);
    let subdivisions = all_subdivisions(PolygonSize::new(3)).len();
    if subdivisions != 45 || !out.detail.contains("(14,21,9,1)") {
        out.passed = false;
        out.detail = format!("n=3: {subdivisions} subdivisions; {}", out.detail);
    }
    out
}

fn criterion_7() -> Outcome {
    from_rows(&[check(CheckKind::SpecialFacets, 2, 5, 0)])
}

fn criterion_8() -> Outcome {
    let mut out = from_rows(&[check(CheckKind::NonEquivalence, 2, 4, DRAWS)]);
    // per-comparison runtime at n = 4
    let limit = Duration::from_secs(30);
    let built: Vec<_> = ConstructionTag::ALL
        .iter()
        .map(|&t| ConstructionParams::default_for(t, 4).and_then(|p| p.build()))
        .collect::<Result<_, _>>()
        .expect("defaults build");
    let mut slowest = Duration::ZERO;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let start = Instant::now();
        let r = equivalence_search(&built[i], &built[j]);
        let took = start.elapsed();
        slowest = slowest.max(took);
        let ok = matches!(&r, Ok(r) if r.verdict == Verdict::NonEquivalent);
        if !ok || took > limit {
            out.passed = false;
            out.detail = format!("n=4 comparison {i}-{j}: {:?} in {took:.1?}; {}", r.map(|r| r.verdict), out.detail);
        }
    }
    out.detail = format!("{} (slowest n=4 comparison {slowest:.1?})", out.detail);
    out
}

fn criterion_9() -> Outcome {
    from_rows(&[check(CheckKind::LodayRegression, 1, 2, 0)])
}

fn criterion_10() -> Outcome {
    from_rows(&[check(CheckKind::ExactInvariants, 1, 5, DRAWS)])
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("vertex counts are Catalan numbers, n = 1..5", criterion_1),
        ("n(n+3)/2 certified facets, n = 1..5", criterion_2),
        ("secondary polytope has no parallel facets", criterion_3),
        ("cluster polytope parallel pairs are {alpha_i, -alpha_i}", criterion_4),
        ("Minkowski parallel pairs ({n+2,i}, {0,i+1}) with block directions", criterion_5),
        ("faces correspond to subdivisions", criterion_6),
        ("special facet counts and profiles", criterion_7),
        ("pairwise affine non-equivalence", criterion_8),
        ("Loday vertices for a = 1", criterion_9),
        ("exact sums and affine invariance", criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        if !out.passed {
            failures += 1;
        }
        println!(
            "criterion {:2}: {}  {name}: {}",
            k + 1,
            if out.passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
