//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when an outcome differs from the expected one.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dblcat::category::fixtures;
use dblcat::copower::{check_adjoint_equivalence, check_extensive, ExtensivityMode};
use dblcat::double::check_coherence_with;
use dblcat::monad::{decode, encode, morphism_correspondence, transport_monad, Along, Host};
use dblcat::span::{identity_span, Spans};
use dblcat::transport::{
    all_matrices, check_double_equivalence, finset_spans_up_to_iso, roundtrip_check, roundtrip_matrix, roundtrip_span,
    Horizontal,
};
use dblcat::{find_isomorphism, FiniteCategory, matrix, mutants, span, validate_instance, BaseCategory, FinPointedSet, FinSet, IndexSet};
use serde_json::{json, Value};

const CAP: usize = dblcat::DEFAULT_ENUMERATION_CAP;

const VALIDATE_BOUND: usize = 3;
const VALIDATE_LIMIT: Duration = Duration::from_secs(30);
const EXTENSIVE_LIMIT: Duration = Duration::from_secs(60);
const ADJOINT_INDEX_BOUND: usize = 3;
const ADJOINT_TOTAL_BOUND: usize = 3;
const COHERENCE_TRIALS: usize = 100;
const COHERENCE_SEED: u64 = 2024;
const COHERENCE_BOUND: usize = 4;
const ROUNDTRIP_INDEX_BOUND: usize = 3;
const MATRIX_ENTRY_BOUND: usize = 3;
const SPAN_APEX_BOUND: usize = 6;
const AGREEMENT_BOUNDS: (usize, usize) = (2, 2);
const MONAD_MAX_OBJECTS: usize = 3;
const MONAD_MAX_ARROWS: usize = 6;
const MONAD_LIMIT: Duration = Duration::from_secs(300);

/// Criteria that do not hold as stated. Criterion 5 asks for a failing
/// round trip on the two-index identity span over pointed sets, but that
/// span has a one-point apex and its round trip is an isomorphism.
const EXPECTED_FAILURES: &[u32] = &[5];

struct Outcome {
    pass: bool,
    summary: String,
    report: Value,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn instance_validity() -> Outcome {
    let (report, t) = timed(|| validate_instance(&FinSet, VALIDATE_BOUND, CAP).unwrap());
    let failures: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    Outcome {
        pass: report.passed() && t < VALIDATE_LIMIT,
        summary: format!(
            "{} checks over {} objects, failures {:?}, {} (limit {})",
            report.checks.len(),
            report.objects,
            failures,
            secs(t),
            secs(VALIDATE_LIMIT)
        ),
        report: serde_json::to_value(&report).unwrap(),
    }
}

fn extensivity() -> Outcome {
    let mode = ExtensivityMode::PointwiseTerminal;
    let (fin, t_fin) = timed(|| check_extensive(&FinSet, 3, 3, mode, CAP).unwrap());
    let (pointed, t_pointed) = timed(|| check_extensive(&FinPointedSet, 2, 2, mode, CAP).unwrap());
    let witness = pointed.verdict.first();
    let hom_count = witness.is_some_and(|w| {
        w.check == "hom-count" && w.detail["paired_maps"] == 4 && w.detail["amalgamated_maps"] == 9
    });
    Outcome {
        pass: fin.extensive()
            && fin.verdict.informative
            && !pointed.extensive()
            && hom_count
            && t_fin < EXTENSIVE_LIMIT
            && t_pointed < EXTENSIVE_LIMIT,
        summary: format!(
            "finset(3,3) {} in {}, pointed(2,2) {} with {} in {} (limit {} each)",
            fin.label,
            secs(t_fin),
            pointed.label,
            witness.map_or("no witness".to_string(), |w| format!(
                "{} {} paired vs {} amalgamated",
                w.check, w.detail["paired_maps"], w.detail["amalgamated_maps"]
            )),
            secs(t_pointed),
            secs(EXTENSIVE_LIMIT)
        ),
        report: json!({ "finset": fin, "pointed": pointed }),
    }
}

fn adjoint_equivalence() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=ADJOINT_INDEX_BOUND {
        let verdict = check_adjoint_equivalence(&FinSet, &IndexSet::standard(n), ADJOINT_TOTAL_BOUND, CAP).unwrap();
        cases += verdict.cases;
        if !verdict.holds {
            failures.push(json!({ "index_size": n, "verdict": verdict }));
        }
    }
    Outcome {
        pass: failures.is_empty() && cases > 0,
        summary: format!("{cases} slice objects, {} failing index sizes", failures.len()),
        report: json!({ "cases": cases, "failures": failures }),
    }
}

fn coherence() -> Outcome {
    let spans = span::check_coherence(&FinSet, COHERENCE_TRIALS, COHERENCE_SEED, COHERENCE_BOUND, CAP).unwrap();
    let matrices = matrix::check_coherence(&FinSet, COHERENCE_TRIALS, COHERENCE_SEED, COHERENCE_BOUND, CAP).unwrap();
    let span_mutant = check_coherence_with::<FinSet, Spans>(
        &FinSet,
        COHERENCE_TRIALS,
        COHERENCE_SEED,
        COHERENCE_BOUND,
        CAP,
        &mutants::span_associator,
    )
    .unwrap();
    let matrix_mutant = matrix::check_coherence_with_dist(
        &FinSet,
        COHERENCE_TRIALS,
        COHERENCE_SEED,
        COHERENCE_BOUND,
        CAP,
        &mutants::matrix_dist,
    )
    .unwrap();
    Outcome {
        pass: spans.holds && matrices.holds && !span_mutant.holds && !matrix_mutant.holds,
        summary: format!(
            "spans {} cases {}, matrices {} cases {}, mutants rejected: span {}, matrix {}",
            spans.cases,
            if spans.holds { "hold" } else { "fail" },
            matrices.cases,
            if matrices.holds { "hold" } else { "fail" },
            !span_mutant.holds,
            !matrix_mutant.holds
        ),
        report: json!({
            "spans": spans,
            "matrices": matrices,
            "span_mutant_witness": span_mutant.first().map(|w| &w.check),
            "matrix_mutant_witness": matrix_mutant.first().map(|w| &w.check),
        }),
    }
}

fn round_trips() -> Outcome {
    let mut matrices = 0u64;
    let mut spans = 0u64;
    let mut failures = Vec::new();
    for r in 0..=ROUNDTRIP_INDEX_BOUND {
        for c in 0..=ROUNDTRIP_INDEX_BOUND {
            let (rows, cols) = (IndexSet::standard(r), IndexSet::standard(c));
            for m in all_matrices(&FinSet, &rows, &cols, MATRIX_ENTRY_BOUND) {
                matrices += 1;
                if !roundtrip_matrix(&FinSet, &m).unwrap().holds() {
                    failures.push(m.describe(&FinSet));
                }
            }
            for s in finset_spans_up_to_iso(&rows, &cols, SPAN_APEX_BOUND).unwrap() {
                spans += 1;
                if !roundtrip_span(&FinSet, &s).unwrap().holds() {
                    failures.push(s.describe(&FinSet));
                }
            }
        }
    }
    let v = FinPointedSet;
    let id = identity_span(&v, &IndexSet::standard(2));
    let pointed = roundtrip_check(&v, &Horizontal::Span(id.clone())).unwrap();
    let apex = v.size_hint(&id.apex);
    Outcome {
        pass: failures.is_empty() && !pointed.holds,
        summary: format!(
            "finset: {matrices} matrices and {spans} spans up to iso, {} failures; pointed 2-index identity span (apex size {apex}) round trip {}",
            failures.len(),
            if pointed.holds { "holds, expected to fail" } else { "fails" }
        ),
        report: json!({
            "matrices": matrices,
            "spans": spans,
            "failures": failures,
            "pointed_identity_span": { "holds": pointed.holds, "witness": pointed.witness },
        }),
    }
}

fn verdict_agreement() -> Outcome {
    let (ib, sb) = AGREEMENT_BOUNDS;
    let mode = ExtensivityMode::PointwiseTerminal;
    let fin_eq = check_double_equivalence(&FinSet, ib, sb, CAP).unwrap();
    let fin_ext = check_extensive(&FinSet, ib, sb, mode, CAP).unwrap();
    let pt_eq = check_double_equivalence(&FinPointedSet, ib, sb, CAP).unwrap();
    let pt_ext = check_extensive(&FinPointedSet, ib, sb, mode, CAP).unwrap();
    let agree_fin = fin_eq.verdict.holds == fin_ext.extensive() && fin_eq.verdict.informative;
    let agree_pt = pt_eq.verdict.holds == pt_ext.extensive() && pt_eq.verdict.informative;
    Outcome {
        pass: agree_fin && agree_pt,
        summary: format!(
            "finset: {} / {}, pointed: {} / {} at bounds ({ib},{sb})",
            fin_eq.label, fin_ext.label, pt_eq.label, pt_ext.label
        ),
        report: json!({
            "finset": { "double_equivalence": fin_eq.label, "extensivity": fin_ext.label, "cases": fin_eq.verdict.cases },
            "pointed": {
                "double_equivalence": pt_eq.label,
                "extensivity": pt_ext.label,
                "witness": pt_eq.verdict.first(),
            },
        }),
    }
}

fn monad_correspondence() -> Outcome {
    let start = Instant::now();
    let cats: Vec<_> = fixtures::all()
        .into_iter()
        .filter(|(_, c)| c.objects().len() <= MONAD_MAX_OBJECTS && c.arrow_count() <= MONAD_MAX_ARROWS)
        .collect();
    let iso = |a: &FiniteCategory, b: &FiniteCategory| find_isomorphism(a, b, CAP).unwrap().is_some();
    let mut failures = Vec::new();
    for (name, c) in &cats {
        for host in [Host::Matrix, Host::Span] {
            let m = encode(c, host).unwrap();
            let direct = decode(&m).unwrap();
            if !iso(c, &direct) {
                failures.push(json!({ "check": "decode-encode", "category": name, "host": host }));
            }
            let along = match host {
                Host::Matrix => Along::Int,
                Host::Span => Along::En,
            };
            let moved = decode(&transport_monad(&FinSet, &m, along).unwrap()).unwrap();
            if !iso(&direct, &moved) {
                failures.push(json!({ "check": "transport", "category": name, "along": along }));
            }
        }
    }
    let mut pairs = 0;
    let mut functors = 0;
    for (cn, c) in &cats {
        for (dn, d) in &cats {
            for host in [Host::Matrix, Host::Span] {
                pairs += 1;
                let r = morphism_correspondence(c, d, host, CAP).unwrap();
                functors += r.functors;
                if !(r.bijective && r.respects_composition && r.verdict.holds) {
                    failures.push(json!({ "check": "correspondence", "from": cn, "to": dn, "report": r }));
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: failures.is_empty() && t < MONAD_LIMIT,
        summary: format!(
            "{} categories, {pairs} correspondences covering {functors} functors, {} failures, {} (limit {})",
            cats.len(),
            failures.len(),
            secs(t),
            secs(MONAD_LIMIT)
        ),
        report: json!({ "categories": cats.len(), "pairs": pairs, "functors": functors, "failures": failures }),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "instance validity", instance_validity),
    (2, "extensivity", extensivity),
    (3, "adjoint equivalence", adjoint_equivalence),
    (4, "coherence", coherence),
    (5, "round trips", round_trips),
    (6, "verdict agreement", verdict_agreement),
    (7, "monad correspondence", monad_correspondence),
];

fn report_line(id: u32, name: &str, pass: bool, summary: &str) -> bool {
    let expected = !EXPECTED_FAILURES.contains(&id);
    let status = if pass { "PASS" } else { "FAIL" };
    let note = match (pass, expected) {
        (true, false) => " [expected FAIL]",
        (false, false) => " [known: does not hold as stated]",
        _ => "",
    };
    println!("{status} {id} {name}: {summary}{note}");
    pass == expected
}

fn main() -> ExitCode {
    let mut as_expected = true;
    let mut first = Vec::new();
    for &(id, name, run) in CRITERIA {
        let (outcome, t) = timed(run);
        as_expected &= report_line(id, name, outcome.pass, &format!("{} [{}]", outcome.summary, secs(t)));
        first.push(json!({ "criterion": id, "pass": outcome.pass, "report": outcome.report }));
    }
    let second: Vec<Value> = CRITERIA
        .iter()
        .map(|&(id, _, run)| {
            let outcome = run();
            json!({ "criterion": id, "pass": outcome.pass, "report": outcome.report })
        })
        .collect();
    let a = serde_json::to_string(&first).unwrap();
    let b = serde_json::to_string(&second).unwrap();
    let same = a == b;
    as_expected &= report_line(
        8,
        "determinism",
        same,
        &format!("two runs produced {} reports of {} bytes", if same { "identical" } else { "different" }, a.len()),
    );
    if as_expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
