//! End-to-end acceptance run: the named corpus plus 200 seeded random
//! complexes over F2, F3, F5 and Q. Prints one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use srdepth::cohomology::{
    augmented_cochain_complex, reduced_cohomology, relative_cochain_complex,
};
use srdepth::corpus::{named_corpus, random_corpus, NamedComplex, DEFAULT_SEED};
use srdepth::depth::{betti_table, depth};
use srdepth::face_ring::{graded_dim, hilbert_series};
use srdepth::limits::{limits_complex, verify_srdec};
use srdepth::linalg::FieldSpec;
use srdepth::verify::{
    verify_criteria_equivalent, verify_key_lemma, verify_munkres, verify_star_link,
};
use srdepth_cli::AnalysisReport;

const FIELDS: [FieldSpec; 4] = [
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
    FieldSpec::Rationals,
];

const CRITERIA: [&str; 9] = [
    "engine agreement",
    "real projective plane depths",
    "limits decomposition",
    "link and topological criteria agree",
    "local cohomology shift",
    "star and link depths",
    "limit sequence detects depth",
    "structural properties",
    "CLI determinism",
];

/// First failure per criterion, plus how many checks ran.
struct Tally {
    checks: [usize; 9],
    failures: [Option<String>; 9],
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: [0; 9],
            failures: Default::default(),
        }
    }

    fn record(&mut self, criterion: usize, ok: bool, witness: impl FnOnce() -> String) {
        self.checks[criterion - 1] += 1;
        if !ok && self.failures[criterion - 1].is_none() {
            self.failures[criterion - 1] = Some(witness());
        }
    }

    fn merge(&mut self, other: Tally) {
        for i in 0..9 {
            self.checks[i] += other.checks[i];
            if self.failures[i].is_none() {
                self.failures[i] = other.failures[i].clone();
            }
        }
    }
}

fn corpus() -> Vec<NamedComplex> {
    let mut all = named_corpus();
    all.extend(random_corpus(200, 8, DEFAULT_SEED));
    all
}

/// Criteria 1 and 3 through 8 on one complex over every field.
fn check_complex(entry: &NamedComplex) -> Tally {
    let mut t = Tally::new();
    let k = &entry.complex;
    let name = &entry.name;
    let d_max = 4 * k.num_vertices() as u32;
    let mut depths = Vec::new();
    for f in FIELDS {
        let at = |what: &str| format!("{name} over {f}: {what}");
        match depth(k, f) {
            Ok(r) => {
                t.record(1, r.agree, || at(&r.to_string()));
                depths.push((f, r.depth()));
            }
            Err(e) => t.record(1, false, || at(&e.to_string())),
        }
        match verify_srdec(k, f, d_max) {
            Ok((r, _)) => t.record(3, r.passed(), || at(&r.to_string())),
            Err(e) => t.record(3, false, || at(&e.to_string())),
        }
        match verify_criteria_equivalent(k, f) {
            Ok(r) => t.record(4, r.passed(), || at(&r.to_string())),
            Err(e) => t.record(4, false, || at(&e.to_string())),
        }
        match verify_munkres(k, f) {
            Ok(r) => t.record(5, r.passed(), || at(&r.to_string())),
            Err(e) => t.record(5, false, || at(&e.to_string())),
        }
        match verify_star_link(k, f) {
            Ok(r) => t.record(6, r.passed(), || at(&r.to_string())),
            Err(e) => t.record(6, false, || at(&e.to_string())),
        }
        match verify_key_lemma(k, f) {
            Ok((r, _)) => t.record(7, r.passed(), || at(&r.to_string())),
            Err(e) => t.record(7, false, || at(&e.to_string())),
        }

        // coboundaries square to zero
        let aug = augmented_cochain_complex(k).check(f);
        t.record(8, aug.is_ok(), || {
            at(&format!("augmented complex: {aug:?}"))
        });
        for d in (0..=4).step_by(2) {
            let lim = limits_complex(k, d).map(|c| c.check(f));
            t.record(8, matches!(lim, Ok(Ok(()))), || {
                at(&format!("limits complex in degree {d}: {lim:?}"))
            });
        }
        for &s in k.nonempty_faces() {
            let rel = relative_cochain_complex(k, &k.cost(s).unwrap()).map(|c| c.check(f));
            t.record(8, matches!(rel, Ok(Ok(()))), || {
                at(&format!("relative complex of cost {s}: {rel:?}"))
            });
        }
        let euler = reduced_cohomology(k, f).map(|c| c.euler_characteristic());
        t.record(8, euler == Ok(k.euler_characteristic() - 1), || {
            at(&format!(
                "Euler characteristic {euler:?} vs f-vector {:?}",
                k.f_vector()
            ))
        });
    }
    let h = hilbert_series(k);
    for d in (0..=d_max).step_by(2) {
        let g = graded_dim(k, d).unwrap() as i64;
        t.record(8, h.coefficient(d) == g, || {
            format!(
                "{name}: Hilbert coefficient {} vs graded dim {g} at d = {d}",
                h.coefficient(d)
            )
        });
    }
    if let Some(&(_, q)) = depths.iter().find(|(f, _)| *f == FieldSpec::Rationals) {
        for &(f, p) in &depths {
            t.record(8, q >= p, || {
                format!("{name}: depth over q {q} < depth over {f} {p}")
            });
        }
    }
    t
}

fn check_rp2(t: &mut Tally) {
    let k = srdepth::generators::rp2_minimal();
    for (f, expect_depth, expect_cm) in [
        (FieldSpec::Prime(2), 2, false),
        (FieldSpec::Rationals, 3, true),
        (FieldSpec::Prime(3), 3, true),
    ] {
        let r = depth(&k, f).unwrap();
        t.record(
            2,
            r.depth() == expect_depth && r.cohen_macaulay == expect_cm,
            || format!("over {f}: {r}, CM {}", r.cohen_macaulay),
        );
    }
}

fn check_simplex_betti(t: &mut Tally) {
    for m in 1..=6 {
        let table = betti_table(
            &srdepth::generators::simplex(m).unwrap(),
            FieldSpec::Prime(2),
        )
        .unwrap();
        let only_origin = table.entries.len() == 1 && table.get(0, 0) == 1;
        t.record(8, only_origin, || {
            format!("simplex on {m} vertices: {table}")
        });
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_srdepth")
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Every file in `dir`, sorted by name, with contents.
fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn check_cli(t: &mut Tally) {
    let root = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let _ = std::fs::remove_dir_all(&root);
    let named = root.join("named");
    let random = root.join("random");
    let named_s = named.to_str().unwrap();
    let random_s = random.to_str().unwrap();

    let corpus_runs: [(&[&str], &Path); 2] = [
        (&["corpus", "named", named_s], &named),
        (
            &[
                "corpus", "random", "--m", "8", "--count", "200", "--seed", "20240101", random_s,
            ],
            &random,
        ),
    ];
    for (args, dir) in corpus_runs {
        let first = run(args);
        let files = snapshot(dir);
        let second = run(args);
        t.record(
            9,
            first.0 == 0 && first == second && files == snapshot(dir),
            || format!("{args:?} is not reproducible"),
        );
    }
    let count = snapshot(&random)
        .iter()
        .filter(|(n, _)| n.ends_with(".facets"))
        .count();
    t.record(9, count == 200, || {
        format!("random corpus wrote {count} complexes")
    });

    let inputs = [
        "rp2",
        "cycle5",
        "cone_cycle4",
        "disjoint_points3",
        "join_cycle3_disjoint_points2",
    ];
    let random_inputs = ["random_000", "random_101", "random_199"];
    let mut paths: Vec<PathBuf> = inputs
        .iter()
        .map(|n| named.join(format!("{n}.facets")))
        .collect();
    paths.extend(
        random_inputs
            .iter()
            .map(|n| random.join(format!("{n}.facets"))),
    );
    for path in &paths {
        let p = path.to_str().unwrap();
        for cmd in ["depth", "limits", "verify"] {
            for field in ["p=2", "p=3", "q"] {
                let text_args = [cmd, p, "--field", field];
                let json_args = [cmd, p, "--field", field, "--json"];
                let text = run(&text_args);
                t.record(9, text == run(&text_args), || {
                    format!("{text_args:?} is not reproducible")
                });
                let json = run(&json_args);
                t.record(9, json == run(&json_args), || {
                    format!("{json_args:?} is not reproducible")
                });
                // the JSON report round-trips and renders to the same text
                let parsed: Result<AnalysisReport, _> = serde_json::from_slice(&json.1);
                let agrees = parsed.as_ref().is_ok_and(|r| {
                    r.to_string().into_bytes() == text.1
                        && serde_json::to_string_pretty(r).unwrap() + "\n"
                            == String::from_utf8_lossy(&json.1)
                });
                t.record(9, agrees && text.0 == json.0, || {
                    format!("{json_args:?}: JSON and text reports differ ({parsed:?})")
                });
            }
        }
    }
}

fn main() {
    let start = Instant::now();
    let entries = corpus();
    let next = Mutex::new(0usize);
    let tallies: Mutex<Vec<(usize, Tally)>> = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = {
                    let mut n = next.lock().unwrap();
                    *n += 1;
                    *n - 1
                };
                let Some(entry) = entries.get(i) else { break };
                let tally = check_complex(entry);
                tallies.lock().unwrap().push((i, tally));
            });
        }
    });
    let mut tallies = tallies.into_inner().unwrap();
    // merge in corpus order so the reported witness is deterministic
    tallies.sort_by_key(|(i, _)| *i);
    let mut total = Tally::new();
    for (_, tally) in tallies {
        total.merge(tally);
    }
    check_rp2(&mut total);
    check_simplex_betti(&mut total);
    check_cli(&mut total);

    println!(
        "corpus: {} complexes, fields p=2, p=3, p=5, q",
        entries.len()
    );
    for (i, name) in CRITERIA.iter().enumerate() {
        let verdict = if total.failures[i].is_none() && total.checks[i] > 0 {
            "PASS"
        } else {
            "FAIL"
        };
        print!(
            "criterion {}: {verdict} {name} ({} checks)",
            i + 1,
            total.checks[i]
        );
        match &total.failures[i] {
            Some(w) => println!(": {w}"),
            None => println!(),
        }
    }
    println!("elapsed: {:.1}s", start.elapsed().as_secs_f64());
    let failed: Vec<usize> = (0..9)
        .filter(|&i| total.failures[i].is_some() || total.checks[i] == 0)
        .map(|i| i + 1)
        .collect();
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
