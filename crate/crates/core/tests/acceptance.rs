//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always show up in
//! `cargo test` output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use skewbrace::catalog::BraceCatalog;
use skewbrace::constructors::{
    c4c2_input, example_c4c2, example_nonnilpotent_type, nonnilpotent_type_input, DerivationInput,
};
use skewbrace::enumerate::{
    dedup_by_isomorphism, enumerate_braces, enumerate_braces_direct, Dedup,
};
use skewbrace::group::{named_group, small_groups, SubSet};
use skewbrace::series::{
    abelian_type_check, kernel_chain_check, right_class_bound_check, SeriesReport, Verdict,
};
use skewbrace::ybe::solution_from_brace;
use skewbrace::SkewBrace;

type Outcome = Result<String, String>;
type Check = fn(&Corpus) -> Outcome;

struct Corpus {
    braces: Vec<(String, SkewBrace)>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(n: usize, xs: &[usize]) -> SubSet {
    SubSet::new(n, xs.iter().copied())
}

fn fixture_one(_: &Corpus) -> Outcome {
    let start = Instant::now();
    let b = example_nonnilpotent_type();
    let s = SeriesReport::compute(&b).map_err(|e| e.to_string())?;
    let sym3 = named_group("S3").unwrap();
    ensure(b.additive().is_isomorphic(&sym3).unwrap().is_some(), || {
        "(B,+) is not Sym(3)".into()
    })?;
    ensure(b.additive().nilpotency_class().is_none(), || {
        "(B,+) is nilpotent".into()
    })?;
    let sigma = set(6, &[0, 1, 2]);
    ensure(s.left_term(2) == &sigma, || {
        format!("B^2 = {:?}", s.left_term(2))
    })?;
    ensure(s.right_term(2) == &sigma, || {
        format!("B^(2) = {:?}", s.right_term(2))
    })?;
    ensure(s.left_term(3).is_zero(), || "B^3 is not zero".into())?;
    ensure(s.right_term(3) == s.right_term(2), || {
        "B^(3) differs from B^(2)".into()
    })?;
    ensure(b.kernel_lambda() == set(6, &[0, 3]), || {
        format!("Ker lambda = {:?}", b.kernel_lambda())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "B^2 = B^(2) = B^(3) = <sigma>, Ker lambda = {{0, tau}} in {elapsed:?}"
    ))
}

fn fixture_two(_: &Corpus) -> Outcome {
    let start = Instant::now();
    let b = example_c4c2();
    let s = SeriesReport::compute(&b).map_err(|e| e.to_string())?;
    ensure(s.left_term(2) == &set(8, &[0, 2, 4, 6]), || {
        format!("B^2 = {:?}", s.left_term(2))
    })?;
    ensure(s.left_term(3).is_zero(), || "B^3 is not zero".into())?;
    ensure(s.right_term(2) == &set(8, &[0, 2, 4, 6]), || {
        "B^(2) wrong".into()
    })?;
    ensure(s.right_term(3) == &set(8, &[0, 4]), || {
        format!("B^(3) = {:?}", s.right_term(3))
    })?;
    ensure(s.right_term(4).is_zero(), || "B^(4) is not zero".into())?;
    ensure(b.kernel_lambda() == set(8, &[0, 4]), || {
        "Ker lambda wrong".into()
    })?;
    let check = right_class_bound_check(&b).map_err(|e| e.to_string())?;
    ensure(check.verdict == Verdict::Pass, || {
        format!("verdict {:?}", check.verdict)
    })?;
    ensure(check.m == Some(1) && check.r == Some(1), || {
        "m, r wrong".into()
    })?;
    ensure(
        check.right_class == Some(3) && check.bound == Some(3),
        || {
            format!(
                "right class {:?}, bound {:?}",
                check.right_class, check.bound
            )
        },
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("m = r = 1, right class 3 = bound in {elapsed:?}"))
}

fn bound_sweep(corpus: &Corpus) -> Outcome {
    // both enumeration routes agree wherever the direct one runs
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 6) {
        let holo = enumerate_braces(&g, Dedup::None, 8).map_err(|e| e.to_string())?;
        let direct = enumerate_braces_direct(&g).map_err(|e| e.to_string())?;
        ensure(holo == direct, || {
            format!("{name}: {} vs {} braces", holo.len(), direct.len())
        })?;
        let auts = g.automorphisms().unwrap();
        let a = enumerate_braces(&g, Dedup::BraceIsomorphism, 8).unwrap();
        ensure(a == dedup_by_isomorphism(direct, &auts), || {
            format!("{name}: classes differ")
        })?;
    }
    let mut per_order = [0usize; 9];
    for (_, b) in &corpus.braces {
        per_order[b.order()] += 1;
    }
    ensure(per_order[1..] == [1, 1, 1, 4, 1, 6, 1, 47], || {
        format!("counts by order {:?}", &per_order[1..])
    })?;
    let mut applicable = 0;
    for (id, b) in &corpus.braces {
        let check = right_class_bound_check(b).map_err(|e| format!("{id}: {e}"))?;
        match check.verdict {
            Verdict::Fail(why) => return Err(format!("{id}: {why}")),
            Verdict::Pass => applicable += 1,
            Verdict::NotApplicable(_) => {}
        }
    }
    Ok(format!(
        "{} braces, {applicable} applicable, 0 failures",
        corpus.braces.len()
    ))
}

fn abelian_sweep(corpus: &Corpus) -> Outcome {
    let mut applicable = 0;
    for (id, b) in &corpus.braces {
        match abelian_type_check(b) {
            Verdict::Fail(why) => return Err(format!("{id}: {why}")),
            Verdict::Pass => applicable += 1,
            Verdict::NotApplicable(_) => {}
        }
    }
    Ok(format!(
        "{applicable} abelian-type braces with B^3 = 0 have B^(4) = 0"
    ))
}

fn kernel_chain_sweep(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (id, b) in &corpus.braces {
        if !right_class_bound_check(b).unwrap().verdict.is_applicable() {
            continue;
        }
        let report = kernel_chain_check(b).map_err(|e| format!("{id}: {e}"))?;
        ensure(report.all_pass(), || format!("{id}: {report:?}"))?;
        checked += 1;
    }
    Ok(format!("all containments hold on {checked} braces"))
}

fn star_identities(corpus: &Corpus) -> Outcome {
    let mut with_b3_zero = 0;
    for (id, b) in &corpus.braces {
        let report = b.star_identities_check();
        ensure(report.all_pass(), || format!("{id}: {report:?}"))?;
        if report.b_cubed_zero {
            with_b3_zero += 1;
        }
    }
    Ok(format!(
        "general identity on {} braces, B^3 = 0 identities on {with_b3_zero}",
        corpus.braces.len()
    ))
}

fn yang_baxter(corpus: &Corpus) -> Outcome {
    let mut nilpotent_type = 0;
    for (id, b) in &corpus.braces {
        let s = solution_from_brace(b).map_err(|e| format!("{id}: {e}"))?;
        let level = s
            .multipermutation_level()
            .map_err(|e| format!("{id}: {e}"))?;
        if b.additive().nilpotency_class().is_some() {
            nilpotent_type += 1;
            let right = SeriesReport::compute(b).unwrap().right_class;
            ensure(level.is_some() == right.is_some(), || {
                format!("{id}: level {level:?}, right class {right:?}")
            })?;
        }
    }
    let one = solution_from_brace(&example_nonnilpotent_type()).unwrap();
    ensure(one.multipermutation_level().unwrap().is_none(), || {
        "first fixture is multipermutation".into()
    })?;
    let two = solution_from_brace(&example_c4c2()).unwrap();
    let level = two.multipermutation_level().unwrap();
    ensure(level.is_some(), || {
        "second fixture is not multipermutation".into()
    })?;
    Ok(format!(
        "all solutions valid; level finite iff right nilpotent on {nilpotent_type} braces; \
         fixture levels none and {}",
        level.unwrap()
    ))
}

fn derivations(corpus: &Corpus) -> Outcome {
    for (id, b) in &corpus.braces {
        let d = DerivationInput::identity_of(b);
        d.check().map_err(|e| format!("{id}: {e}"))?;
        ensure(&d.brace().unwrap() == b, || {
            format!("{id}: round trip differs")
        })?;
    }
    let one = example_nonnilpotent_type();
    let phi = nonnilpotent_type_input().phi;
    // σ = 1, τ = 3; φ_g is phi[1]
    ensure(one.lambda_map(1) == phi[1], || {
        "lambda_sigma != phi_g".into()
    })?;
    ensure(one.lambda_map(2) == phi[2], || {
        "lambda_2sigma != phi_g^-1".into()
    })?;
    ensure(one.lambda_map(3) == phi[0], || "lambda_tau != id".into())?;
    let two = example_c4c2();
    let phi = c4c2_input().phi;
    // a = 1, b = 4; φ_σ is phi[1], φ_τ is phi[4]
    ensure(two.lambda_map(1) == phi[1], || {
        "lambda_a != phi_sigma".into()
    })?;
    ensure(two.lambda_map(5) == phi[1], || {
        "lambda_(a+b) != phi_sigma".into()
    })?;
    ensure(two.lambda_map(2) == phi[4], || {
        "lambda_2a != phi_tau".into()
    })?;
    ensure(two.lambda_map(4) == phi[0], || "lambda_b != id".into())?;
    Ok(format!(
        "{} braces re-derived; fixture lambda tables match",
        corpus.braces.len()
    ))
}

fn determinism(_: &Corpus) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_skewbrace"))
            .args(["enumerate", "C4xC2", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (first, second) = (run()?, run()?);
    ensure(first.status.success(), || {
        format!("exit {:?}", first.status.code())
    })?;
    ensure(!first.stdout.is_empty(), || "empty output".into())?;
    ensure(first.stdout == second.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let braces = BraceCatalog::small_corpus(8)
        .expect("corpus enumeration")
        .entries
        .into_iter()
        .map(|e| (e.id, e.brace))
        .collect();
    let corpus = Corpus { braces };
    println!("corpus of order <= 8 built in {:?}", start.elapsed());

    let criteria: [(&str, Check); 9] = [
        ("fixture on Sym(3) with C6 multiplication", fixture_one),
        ("fixture on C4xC2 with D8 multiplication", fixture_two),
        ("2 + mr right class bound sweep", bound_sweep),
        ("abelian type B^(4) = 0 sweep", abelian_sweep),
        ("kernel chain containments", kernel_chain_sweep),
        ("star product identities", star_identities),
        ("Yang-Baxter solutions and retractions", yang_baxter),
        ("derivation round trip", derivations),
        ("deterministic enumerate output", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&corpus)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({:?})", i + 1, t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
