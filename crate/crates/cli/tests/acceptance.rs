//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::*;
use latnull_core::{
    build_skeleton, check_associative, check_comparable_corollary, check_ia_lemma,
    check_pro_special, classify_uniqueness, construct_variant, decide_existence,
    enumerate_idempotent_nullnorms, enumerate_idempotent_nullnorms_with, fill_variant, fixtures,
    is_idempotent_nullnorm, CharacterizationError, ConstructionError, Execution, Lattice,
    SearchSpace, UniquenessKind, Variant, ZeroPoint,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const CORPUS_SIZE: usize = 1000;
const MAX_SIZE: usize = 9;

fn criterion_1(corpus: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut negatives = 0;
    for inst in corpus {
        let (l, a) = (&inst.lattice, inst.a());
        let exists = decide_existence(l, a).map_err(|e| e.to_string())?.exists;
        let found = enumerate_idempotent_nullnorms(l, a, SearchSpace::LemmaRestricted)
            .map_err(|e| e.to_string())?;
        ensure(exists == !found.is_empty(), || {
            format!("seed {} zero {}: decision {exists}, oracle {}", inst.seed, l.label(inst.zero), found.len())
        })?;
        negatives += usize::from(!exists);
    }
    let elapsed = start.elapsed();
    ensure(corpus.len() >= 200, || format!("corpus has only {} instances", corpus.len()))?;
    ensure(negatives > 0 && negatives < corpus.len(), || {
        format!("corpus lacks one verdict class ({negatives} negatives)")
    })?;
    ensure(elapsed.as_secs_f64() < 10.0, || format!("took {elapsed:.2?}"))?;
    Ok(format!(
        "{} instances (n <= {MAX_SIZE}), {} exist, {negatives} do not, 100% agreement in {elapsed:.2?}",
        corpus.len(),
        corpus.len() - negatives
    ))
}

fn fixture_zero(text: &str) -> (Lattice, ZeroPoint) {
    let (doc, l) = fixture(text);
    let a = zero_of(&doc, &l);
    (l, a)
}

fn criterion_2() -> Verdict {
    let (l, a) = fixture_zero(fixtures::M3);
    let found = enumerate_idempotent_nullnorms(&l, a, SearchSpace::LemmaRestricted).map_err(|e| e.to_string())?;
    let full = enumerate_idempotent_nullnorms(&l, a, SearchSpace::Full).map_err(|e| e.to_string())?;
    let v3 = construct_variant(&l, a, Variant::V3).map_err(|e| e.to_string())?;
    let v4 = construct_variant(&l, a, Variant::V4).map_err(|e| e.to_string())?;
    ensure(found.len() == 2, || format!("oracle found {}", found.len()))?;
    ensure(found.contains(&v3) && found.contains(&v4), || "tables differ from V3/V4".into())?;
    ensure(full == found, || "full search disagrees".into())?;
    Ok("M3: exactly 2 tables, equal to V3 and V4 (lemma and full search)".into())
}

fn criterion_3() -> Verdict {
    let (l, a) = fixture_zero(fixtures::GRID23);
    let class = classify_uniqueness(&l, a).map_err(|e| e.to_string())?;
    let found = enumerate_idempotent_nullnorms(&l, a, SearchSpace::Full).map_err(|e| e.to_string())?;
    let v3 = construct_variant(&l, a, Variant::V3).map_err(|e| e.to_string())?;
    ensure(class.kind == UniquenessKind::UniqueV3, || format!("classified {}", class.kind))?;
    ensure(found == [v3], || format!("oracle found {} tables", found.len()))?;
    ensure(l.is_distributive(), || "GRID23 not distributive".into())?;
    Ok("GRID23: unique_v3, oracle finds exactly the V3 table, lattice distributive".into())
}

fn criterion_4() -> Verdict {
    let (l, a) = fixture_zero(fixtures::OBSTRUCT9);
    let v = decide_existence(&l, a).map_err(|e| e.to_string())?;
    ensure(!v.exists, || "decided EXISTS".into())?;
    ensure(v.conditions.iter().all(|c| !c.holds), || format!("holding: {:?}", v.holding()))?;
    let found = enumerate_idempotent_nullnorms(&l, a, SearchSpace::Full).map_err(|e| e.to_string())?;
    ensure(found.is_empty(), || format!("full oracle found {}", found.len()))?;
    Ok("OBSTRUCT9: NOT EXISTS, conditions (i)-(iv) all false, full search finds 0 tables".into())
}

fn criterion_5() -> Verdict {
    let cases = [
        ("KITE7", fixtures::KITE7, Variant::V1),
        ("KITE7D", fixtures::KITE7D, Variant::V2),
        ("GRID23", fixtures::GRID23, Variant::V3),
        ("M3", fixtures::M3, Variant::V3),
        ("M3", fixtures::M3, Variant::V4),
        ("LADDER7", fixtures::LADDER7, Variant::V5),
        ("LADDER7", fixtures::LADDER7, Variant::V6),
        ("LADDER8", fixtures::LADDER8, Variant::V6),
    ];
    for (name, text, v) in cases {
        let (l, a) = fixture_zero(text);
        let t = construct_variant(&l, a, v).map_err(|e| format!("{v}@{name}: {e}"))?;
        let (ok, reports) = is_idempotent_nullnorm(&t, a);
        ensure(ok, || format!("{v}@{name} fails: {reports:?}"))?;
    }
    let (kite, _) = fixture_zero(fixtures::KITE7);
    let dual = kite.dual();
    let a = ZeroPoint::from_label(&dual, "a").map_err(|e| e.to_string())?;
    let t = construct_variant(&dual, a, Variant::V2).map_err(|e| format!("V2@dual(KITE7): {e}"))?;
    ensure(is_idempotent_nullnorm(&t, a).0, || "V2@dual(KITE7) fails".into())?;

    let (l, a) = fixture_zero(fixtures::LADDER8);
    match construct_variant(&l, a, Variant::V5) {
        Err(ConstructionError::PreconditionFailed { .. }) => {}
        other => return Err(format!("V5@LADDER8 gave {:?}", other.map(|_| ()))),
    }
    let t = fill_variant(&l, a, Variant::V5).map_err(|e| e.to_string())?;
    let r = check_associative(&t);
    let labels = r.witness_labels(&l);
    ensure(labels.as_deref() == Some(&["1".to_string(), "p".into(), "q".into()][..]), || {
        format!("witness {labels:?}")
    })?;
    let desc = r.witness.as_ref().unwrap().describe(&t);
    ensure(desc == "V(1,V(p,q)) = w but V(V(1,p),q) = r", || desc.clone())?;
    Ok(format!("9 constructions (incl. V2 on the computed dual of KITE7) pass all axioms; V5@LADDER8 rejected; hand-built V5 fails at (1,p,q): {desc}"))
}

fn criterion_6(corpus: &[Instance]) -> Verdict {
    let (mut tables, mut small, mut definitional) = (0, 0, 0);
    for inst in corpus {
        let (l, a) = (&inst.lattice, inst.a());
        let skeleton = build_skeleton(l, a);
        let lemma = enumerate_idempotent_nullnorms(l, a, SearchSpace::LemmaRestricted).map_err(|e| e.to_string())?;
        for t in &lemma {
            ensure(skeleton.agrees_with(t), || format!("seed {}: table off skeleton", inst.seed))?;
        }
        tables += lemma.len();
        if l.len() <= 7 {
            let full = enumerate_idempotent_nullnorms(l, a, SearchSpace::Full).map_err(|e| e.to_string())?;
            ensure(full == lemma, || format!("seed {}: full {} vs lemma {}", inst.seed, full.len(), lemma.len()))?;
            small += 1;
            let mut lemma_cells: Vec<_> = lemma.iter().map(|t| t.cells().to_vec()).collect();
            lemma_cells.sort();
            ensure(definitional_search(l, a) == lemma_cells, || {
                format!("seed {}: definitional search disagrees", inst.seed)
            })?;
            definitional += 1;
        }
    }
    Ok(format!(
        "{tables} oracle tables match the skeleton; full = lemma on {small} instances with n <= 7 \
         (also equal to an axiom-only search on {definitional})"
    ))
}

fn criterion_7(corpus: &[Instance]) -> Verdict {
    let (mut lemma, mut corollary, mut special) = (0, 0, 0);
    for inst in corpus {
        let (l, a) = (&inst.lattice, inst.a());
        ensure(check_ia_lemma(l, a).map_err(|e| e.to_string())?, || format!("seed {}: I_a lemma", inst.seed))?;
        lemma += 1;
        match check_comparable_corollary(l, a) {
            Ok(true) => corollary += 1,
            Ok(false) => return Err(format!("seed {}: comparable corollary", inst.seed)),
            Err(CharacterizationError::NotApplicable(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
        let ia = l.incomparables(a);
        for (p, q) in [(ia[0], ia[1]), (ia[1], ia[0])] {
            match check_pro_special(l, a, p, q) {
                Ok(true) => special += 1,
                Ok(false) => return Err(format!("seed {}: special proposition", inst.seed)),
                Err(CharacterizationError::NotApplicable(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    ensure(corollary > 0 && special > 0, || "auxiliary checks never applicable".into())?;
    Ok(format!("I_a lemma on {lemma}, comparable corollary on {corollary}, special proposition on {special} applicable instances"))
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn run_cli(args: &[&str]) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_latnull")).args(args).output().expect("latnull runs");
    (out.status.code(), out.stdout, out.stderr)
}

fn criterion_8(corpus: &[Instance]) -> Verdict {
    let dir = fixture_dir();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for (name, _) in fixtures::ALL {
        let file = dir.join(format!("{name}.lat"));
        let file = file.to_str().unwrap();
        let mut commands: Vec<Vec<&str>> = vec![
            vec!["validate", file],
            vec!["analyze", file],
            vec!["decide", file],
            vec!["classify", file],
            vec!["enumerate", file],
            vec!["enumerate", file, "--parallel"],
            vec!["export-dot", file],
        ];
        for v in ["v1", "v2", "v3", "v4", "v5", "v6"] {
            commands.push(vec!["construct", file, "--variant", v]);
        }
        for args in &commands {
            let first = run_cli(args);
            let second = run_cli(args);
            ensure(first == second, || format!("`latnull {}` differs between runs", args.join(" ")))?;
            runs += 2;
        }
        let serial = run_cli(&["enumerate", file]);
        let parallel = run_cli(&["enumerate", file, "--parallel"]);
        ensure(serial == parallel, || format!("{name}: parallel CLI enumeration differs"))?;

        let mut written = Vec::new();
        for round in 0..2 {
            let out = tmp.path().join(format!("{name}_{round}"));
            let out = out.to_str().unwrap();
            run_cli(&["enumerate", file, "--out", out]);
            let mut files: Vec<_> = std::fs::read_dir(out).map_err(|e| e.to_string())?
                .map(|e| e.unwrap().path())
                .collect();
            files.sort();
            let contents: Vec<_> = files
                .iter()
                .map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap()))
                .collect();
            written.push(contents);
        }
        ensure(written[0] == written[1], || format!("{name}: enumerate --out files differ"))?;
    }
    for args in [
        vec!["gen", "--seed", "7", "--size", "9"],
        vec!["fuzz", "--seed", "3", "--count", "50", "--max-size", "8"],
    ] {
        ensure(run_cli(&args) == run_cli(&args), || format!("`latnull {}` differs", args.join(" ")))?;
        runs += 2;
    }

    for inst in corpus {
        let (l, a) = (&inst.lattice, inst.a());
        for space in [SearchSpace::LemmaRestricted, SearchSpace::Full] {
            if space == SearchSpace::Full && l.len() > 7 {
                continue;
            }
            let s = enumerate_idempotent_nullnorms_with(l, a, space, Execution::Serial).map_err(|e| e.to_string())?;
            let p = enumerate_idempotent_nullnorms_with(l, a, space, Execution::Parallel).map_err(|e| e.to_string())?;
            ensure(s == p, || format!("seed {}: parallel {space} enumeration differs", inst.seed))?;
        }
    }
    Ok(format!("{runs} CLI runs byte-identical in pairs; parallel = serial on {} corpus instances", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = fuzz_corpus(CORPUS_SIZE, MAX_SIZE);
    let results: Vec<(u32, Verdict)> = vec![
        (1, criterion_1(&corpus)),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6(&corpus)),
        (7, criterion_7(&corpus)),
        (8, criterion_8(&corpus)),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n} [PRIMARY] PASS: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} [PRIMARY] FAIL: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
