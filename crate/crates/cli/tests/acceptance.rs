//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero on any unexpected failure (runs without the libtest harness).

use std::path::PathBuf;
use std::time::{Duration, Instant};

use nilcx::ceq::{
    complex_equations, complex_forms, d_square_defect, family_case_check, family_instantiate, letras_parameters,
    real_equations, search_case, to_adapted_frame, CaseVerdict, FamilyId, FamilyParams, SearchOptions,
    DIM8_FAMILY_PAIRING,
};
use nilcx::cpx::{integrability_defect, j_compatible_series};
use nilcx::exactlin::int;
use nilcx::obstruct::{obstruction_report, theorem_audit, AuditStatus};
use nilcx::{Acs, JKind, LieAlgebra, Matrix, Subspace};
use nilcx_cli::{parse_nla, NlaDocument};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(name: &str) -> NlaDocument {
    let path = corpus_dir().join(format!("{name}.nla"));
    parse_nla(&std::fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn corpus() -> Vec<(String, NlaDocument)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "nla"))
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            (stem.clone(), load(&stem))
        })
        .collect()
}

fn acs(doc: &NlaDocument, name: &str) -> Acs {
    doc.structure(name).unwrap().acs().unwrap()
}

/// 1-based coordinate span.
fn coord(dim: usize, indices: &[usize]) -> Subspace {
    let idx: Vec<_> = indices.iter().map(|i| i - 1).collect();
    Subspace::coordinate(dim, &idx).unwrap()
}

fn case_file(family: FamilyId, label: &str) -> String {
    format!("{}_{label}", family.name())
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let doc = load("ex2_5");
    let g = doc.algebra().unwrap();
    let ty = g.ascending_type().unwrap();
    ensure!(ty == [3, 5, 8], "type {ty:?}");

    let c = j_compatible_series(&g, &acs(&doc, "J")).unwrap();
    ensure!(c.kind == JKind::WeaklyNonNilpotent, "J kind {:?}", c.kind);
    let stable = c.term(c.stabilization_index);
    ensure!(*stable == coord(8, &[7, 8]), "J stable term has dim {}", stable.dim());

    let h = j_compatible_series(&g, &acs(&doc, "Jhat")).unwrap();
    let dims: Vec<_> = (1..=3).map(|k| h.term(k).dim()).collect();
    ensure!(h.kind == JKind::Nilpotent && dims == [2, 4, 8], "Jhat {:?} dims {dims:?}", h.kind);

    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("type (3,5,8); J WNN stable at span{{e7,e8}}; Jhat nilpotent (2,4,8); {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let doc = load("ex2_6");
    let g = doc.algebra().unwrap();
    let series = g.ascending_central_series().unwrap();
    ensure!(series.ascending_type == Some(vec![2, 6, 10]), "type {:?}", series.ascending_type);

    let c = j_compatible_series(&g, &acs(&doc, "J")).unwrap();
    ensure!(c.kind == JKind::StronglyNonNilpotent && c.term(1).is_zero(), "J {:?}, dim a_1 = {}", c.kind, c.term(1).dim());

    let h = j_compatible_series(&g, &acs(&doc, "Jhat")).unwrap();
    ensure!(h.kind == JKind::Nilpotent, "Jhat {:?}", h.kind);
    ensure!(h.term(1) == series.term(1) && h.term(2) == series.term(2), "Jhat a_1, a_2 differ from g_1, g_2");
    ensure!(h.term(1).dim() == 2 && h.term(2).dim() == 6, "Jhat dims {:?}", h.dims());

    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("type (2,6,10); J SnN with a_1 = 0; Jhat nilpotent with a_1 = g_1, a_2 = g_2; {elapsed:?}"))
}

/// The quotient's series computed by hand from its four brackets
/// [1,2]=3, [1,3]=4, [1,4]=5, [2,3]=6: X5 and X6 are central, then X4, then
/// X3, then everything.
fn ex3_17_quotient_oracle() -> Vec<Subspace> {
    vec![coord(6, &[]), coord(6, &[5, 6]), coord(6, &[4, 5, 6]), coord(6, &[3, 4, 5, 6]), coord(6, &[1, 2, 3, 4, 5, 6])]
}

const EX3_17_STATED_QUOTIENT_TYPE: [usize; 5] = [1, 2, 3, 4, 6];

fn criterion_3() -> Outcome {
    let g = load("ex3_17").algebra().unwrap();
    let ty = g.ascending_type().unwrap();
    ensure!(ty == [2, 4, 5, 6, 8], "type {ty:?}");

    let q = g.quotient(&coord(8, &[7, 8])).unwrap();
    let mut expected = LieAlgebra::abelian(6);
    for (i, j, k) in [(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 6)] {
        expected.add_constant(i - 1, j - 1, k - 1, &int(1)).unwrap();
    }
    ensure!(q.algebra == expected, "quotient brackets differ: {:?}", q.algebra.nonzero_brackets().collect::<Vec<_>>());

    let series = q.algebra.ascending_central_series().unwrap();
    let oracle = ex3_17_quotient_oracle();
    ensure!(series.terms == oracle, "quotient series differs from the hand computation: {:?}", series.dims());
    let got = series.ascending_type.unwrap();
    ensure!(
        got == EX3_17_STATED_QUOTIENT_TYPE,
        "quotient brackets exact, but its type is {got:?} (center span{{X5,X6}}), not the stated {EX3_17_STATED_QUOTIENT_TYPE:?}"
    );
    Ok("type (2,4,5,6,8); quotient brackets and type exact".into())
}

fn criterion_4() -> Outcome {
    let doc = load("ex3_18");
    let g = doc.algebra().unwrap();
    let j = acs(&doc, "J");
    let defect = integrability_defect(&g, &j).unwrap();
    ensure!(defect.is_empty(), "{} Nijenhuis defects", defect.len());
    let c = j_compatible_series(&g, &j).unwrap();
    let center = g.center().unwrap();
    ensure!(*c.term(1) == center && center.dim() == 2, "a_1 dim {}, center dim {}", c.term(1).dim(), center.dim());
    ensure!(c.kind != JKind::StronglyNonNilpotent, "kind SnN");
    Ok(format!("integrable; a_1(J) = center (dim 2); kind {:?}", c.kind))
}

fn audit_fails(g: &LieAlgebra, j: &Acs) -> Vec<String> {
    theorem_audit(g, j)
        .unwrap()
        .into_iter()
        .filter(|c| c.status == AuditStatus::Fail)
        .map(|c| format!("{}: {}", c.rule, c.detail))
        .collect()
}

fn criterion_5(found: &[FamilyParams]) -> Outcome {
    let mut checked = 0;
    for (name, doc) in corpus() {
        let g = doc.algebra().unwrap();
        for (sname, j) in doc.acs_list() {
            let fails = audit_fails(&g, &j);
            ensure!(fails.is_empty(), "{name}/{sname}: {fails:?}");
            checked += 1;
        }
    }
    for p in found {
        let (g, j) = nilcx::ceq::realify_with(&family_instantiate(p), &DIM8_FAMILY_PAIRING).unwrap();
        let fails = audit_fails(&g, &j);
        ensure!(fails.is_empty(), "{p}: {fails:?}");
        checked += 1;
    }
    Ok(format!("{checked} (algebra, J) pairs audited, 0 FAIL"))
}

// --- criterion 6 -----------------------------------------------------------

const CASES: u32 = 200;

fn unit_triangular(n: usize) -> impl Strategy<Value = Matrix> {
    let entry = || prop_oneof![3 => Just(0i64), 1 => Just(1), 1 => Just(-1)];
    (proptest::collection::vec(entry(), n * n), proptest::collection::vec(entry(), n * n)).prop_map(move |(l, u)| {
        let (mut lo, mut up) = (Matrix::identity(n), Matrix::identity(n));
        for r in 0..n {
            for c in 0..n {
                if r > c {
                    lo[(r, c)] = int(l[r * n + c]);
                } else if r < c {
                    up[(r, c)] = int(u[r * n + c]);
                }
            }
        }
        lo.mul(&up).unwrap()
    })
}

fn integrable_corpus_pairs() -> Vec<(LieAlgebra, Acs)> {
    let mut out = Vec::new();
    for (_, doc) in corpus() {
        let g = doc.algebra().unwrap();
        if !g.is_lie_algebra() {
            continue;
        }
        for (_, j) in doc.acs_list() {
            if integrability_defect(&g, &j).unwrap().is_empty() {
                out.push((g.clone(), j));
            }
        }
    }
    out
}

fn moved_pairs(pool: Vec<(LieAlgebra, Acs)>) -> impl Strategy<Value = (LieAlgebra, Acs)> {
    (0..pool.len()).prop_flat_map(move |k| {
        let (g, j) = pool[k].clone();
        unit_triangular(g.dim()).prop_map(move |p| (g.change_basis(&p).unwrap(), j.change_basis(&p).unwrap()))
    })
}

/// Corpus algebras with `P J0 P⁻¹` for random `P`.
fn random_structures(pool: Vec<LieAlgebra>) -> impl Strategy<Value = (LieAlgebra, Acs)> {
    (0..pool.len()).prop_flat_map(move |k| {
        let g = pool[k].clone();
        let n = g.dim();
        unit_triangular(n).prop_map(move |p| (g.clone(), Acs::standard(n).unwrap().change_basis(&p).unwrap()))
    })
}

/// Tables with `[e_i, e_j]` in later coordinates; Jacobi holds only sometimes.
fn random_table() -> impl Strategy<Value = LieAlgebra> {
    (3usize..=7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 0..n, -2i64..=2), 1..=8).prop_map(move |entries| {
            let mut g = LieAlgebra::abelian(n);
            for (a, b, k, v) in entries {
                let (i, j) = (a.min(b), a.max(b));
                if i != j && k > j {
                    g.add_constant(i, j, k, &int(v)).unwrap();
                }
            }
            g
        })
    })
}

fn run<S: Strategy>(name: &str, strategy: S, mut check: impl FnMut(S::Value) -> Result<bool, String>) -> Result<(u32, u32), String> {
    let mut runner = TestRunner::new_with_rng(Config::default(), proptest::test_runner::TestRng::deterministic_rng(
        proptest::test_runner::RngAlgorithm::ChaCha,
    ));
    let mut positive = 0;
    for case in 0..CASES {
        let value = strategy.new_tree(&mut runner).map_err(|e| format!("{name}: {e}"))?.current();
        if check(value).map_err(|e| format!("{name} case {case}: {e}"))? {
            positive += 1;
        }
    }
    Ok((positive, CASES))
}

fn criterion_6() -> Outcome {
    let integrable = integrable_corpus_pairs();
    let even: Vec<LieAlgebra> = corpus()
        .into_iter()
        .map(|(_, d)| d.algebra().unwrap())
        .filter(|g| g.dim() % 2 == 0 && g.is_lie_algebra())
        .collect();

    let (lie, _) = run("d^2", prop_oneof![random_table(), moved_pairs(integrable.clone()).prop_map(|p| p.0)], |g| {
        let jac = g.jacobi_defect().is_empty();
        let d2 = d_square_defect(&real_equations(&g)).is_empty();
        if jac != d2 {
            return Err(format!("jacobi empty {jac}, d^2 empty {d2}"));
        }
        Ok(jac)
    })?;

    let (int_count, _) = run(
        "(0,2)",
        prop_oneof![moved_pairs(integrable.clone()), random_structures(even)],
        |(g, j)| {
            let nij = integrability_defect(&g, &j).unwrap().is_empty();
            let (g2, j2, pairing) = to_adapted_frame(&g, &j).unwrap();
            let no02 = complex_forms(&g2, &j2, &pairing).unwrap().has_no_02_part();
            if nij != no02 {
                return Err(format!("nijenhuis empty {nij}, no (0,2) part {no02}"));
            }
            Ok(nij)
        },
    )?;

    let subspace = || {
        proptest::collection::vec(proptest::collection::vec((-3i64..=3).prop_map(int), 6), 0..=6)
            .prop_map(|vs| Subspace::span(6, &vs).unwrap())
    };
    run("dimension formula", (subspace(), subspace()), |(a, b)| {
        let lhs = a.sum(&b).unwrap().dim() + a.intersect(&b).unwrap().dim();
        if lhs != a.dim() + b.dim() {
            return Err(format!("{lhs} != {} + {}", a.dim(), b.dim()));
        }
        Ok(true)
    })?;

    run("a_1", moved_pairs(integrable), |(g, j)| {
        let c = j_compatible_series(&g, &j).unwrap();
        let center = g.center().unwrap();
        let expected = center.intersect(&j.image(&center).unwrap()).unwrap();
        if *c.term(1) != expected {
            return Err(format!("dim a_1 {} vs {}", c.term(1).dim(), expected.dim()));
        }
        Ok(true)
    })?;

    ensure!(lie > 0 && lie < CASES, "d^2 sample one-sided: {lie} Lie of {CASES}");
    ensure!(int_count > 0 && int_count < CASES, "(0,2) sample one-sided: {int_count} integrable of {CASES}");
    Ok(format!(
        "4 equivalences x {CASES} cases (d^2: {lie} Lie / {} not; (0,2): {int_count} integrable / {} not)",
        CASES - lie,
        CASES - int_count
    ))
}

// ---------------------------------------------------------------------------

fn criterion_7() -> (Outcome, Vec<FamilyParams>) {
    let t = Instant::now();
    let opts = SearchOptions::small_rationals(6, 3);
    let mut found = Vec::new();
    let mut notes = Vec::new();
    for family in FamilyId::ALL {
        for case in family.cases() {
            let Some(p) = search_case(case, &opts) else {
                return (Err(format!("{family} ({}): no instance", case.label)), found);
            };
            let report = match family_case_check(&p, &family_instantiate(&p)) {
                Ok(r) => r,
                Err(e) => return (Err(format!("{p}: {e}")), found),
            };
            let ok = report.verdict == CaseVerdict::Consistent
                && report.ascending_type.as_deref() == Some(case.ascending_type)
                && report.kind == JKind::StronglyNonNilpotent
                && report.center_dim == 1;
            if !ok {
                return (Err(format!("{p}: {report:?}")), found);
            }
            let committed = load(&case_file(family, case.label)).family;
            if committed.as_ref() != Some(&p) {
                notes.push(format!("{family} ({}) committed instance differs from search", case.label));
            }
            found.push(p);
        }
    }
    let elapsed = t.elapsed();
    if elapsed > Duration::from_secs(600) {
        return (Err(format!("search took {elapsed:?}")), found);
    }
    if !notes.is_empty() {
        return (Err(notes.join("; ")), found);
    }
    (Ok(format!("{} cases found and committed; {elapsed:?}", found.len())), found)
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (name, doc) in corpus() {
        let Some(p) = doc.family.clone() else { continue };
        let g = doc.algebra().unwrap();
        let j = acs(&doc, "J");
        let eqs = complex_equations(&g, &j, &DIM8_FAMILY_PAIRING).unwrap();
        ensure!(eqs == family_instantiate(&p), "{name}: coefficient table differs");
        let back = letras_parameters(&g, p.family()).unwrap();
        ensure!(back == p, "{name}: parameters read back as {back}");
        n += 1;
    }
    ensure!(n == 8, "{n} family instances in the corpus");
    Ok(format!("{n} family instances round-trip exactly"))
}

fn criterion_9() -> Outcome {
    let g = load("filiform8").algebra().unwrap();
    let report = obstruction_report(&g).unwrap();
    for rule in ["filiform", "center-chain"] {
        ensure!(report.iter().any(|v| v.rule == rule && v.triggered), "rule {rule} not triggered");
    }
    let mut runner = TestRunner::new_with_rng(Config::default(), proptest::test_runner::TestRng::deterministic_rng(
        proptest::test_runner::RngAlgorithm::ChaCha,
    ));
    // Permuted coordinate pairings conjugated by random unit-triangular matrices.
    let strategy = (unit_triangular(8), Just((0..8).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(p, perm)| {
        let pairs: Vec<(usize, usize)> = perm.chunks(2).map(|c| (c[0], c[1])).collect();
        Acs::from_pairs(8, &pairs).unwrap().change_basis(&p).unwrap()
    });
    for k in 0..1000 {
        let j = strategy.new_tree(&mut runner).unwrap().current();
        ensure!(!integrability_defect(&g, &j).unwrap().is_empty(), "sample {k} is integrable");
    }
    Ok("filiform and center-chain rules trigger; 1000 random structures all non-integrable".into())
}

/// Criteria known not to be attainable as stated, with the reason they fail.
const KNOWN_FAILURES: &[(u32, &str)] = &[(3, "its type is [2, 3, 4, 6]")];

fn main() {
    let (c7, found) = criterion_7();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5(&found)),
        (6, criterion_6()),
        (7, c7),
        (8, criterion_8()),
        (9, criterion_9()),
    ];
    let mut unexpected = Vec::new();
    for (k, r) in &results {
        match r {
            Ok(detail) => println!("criterion {k}: PASS  {detail}"),
            Err(detail) => {
                println!("criterion {k}: FAIL  {detail}");
                let known = KNOWN_FAILURES.iter().any(|(n, why)| n == k && detail.contains(why));
                if !known {
                    unexpected.push(*k);
                }
            }
        }
    }
    for (k, _) in KNOWN_FAILURES {
        let passed = results.iter().any(|(n, r)| n == k && r.is_ok());
        if passed {
            println!("criterion {k} is listed as a known failure but passed; drop it from KNOWN_FAILURES");
            std::process::exit(1);
        }
    }
    if !unexpected.is_empty() {
        println!("criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
