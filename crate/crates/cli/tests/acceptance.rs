//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Every comparison is exact (rational or cyclotomic arithmetic), so the
//! tolerance printed for each criterion is zero.

use std::process::Command;
use std::time::Instant;

use zetaqva::cartan::{build_context, CartanType, RootUnityCtx};
use zetaqva::qcomb::{check_antisym, check_c_integrality, check_qb_mult, AntisymMode};
use zetaqva::qyb::{check_h_trivial, check_unitarity, check_ybe, SOperator, YbeSample};
use zetaqva::report::ContextEcho;
use zetaqva::symcomb::{check_sym_gps, Composition};
use zetaqva::tau::{check_group_law, check_kernel_equivalence, check_membership, check_zeta10, TauTuple};
use zetaqva::{dist, quiver, Check, Report};

const TOLERANCE: &str = "tol=0 (exact)";

fn ctx(t: CartanType, rank: usize, p: u32, l: i64) -> RootUnityCtx {
    build_context(t, rank, p, l).expect("valid acceptance context")
}

/// `{A1, A2, B2, G2} x {7, 8, 9} x {0, 1, 2}`.
fn grid() -> Vec<RootUnityCtx> {
    let mut out = Vec::new();
    for (t, rank) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2)] {
        for p in [7, 8, 9] {
            for l in 0..3 {
                out.push(ctx(t, rank, p, l));
            }
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(checks: impl IntoIterator<Item = Check>) -> Outcome {
    let mut total = 0;
    let mut failed: Vec<Check> = Vec::new();
    for c in checks {
        total += 1;
        if !c.passed() {
            failed.push(c);
        }
    }
    match failed.first() {
        None if total > 0 => Outcome {
            pass: true,
            detail: format!("{total} checks pass"),
        },
        None => Outcome {
            pass: false,
            detail: "no checks ran".into(),
        },
        Some(c) => Outcome {
            pass: false,
            detail: format!(
                "{} of {total} checks fail; first: {}/{} [{}] {}",
                failed.len(),
                c.suite,
                c.name,
                c.params,
                c.detail
            ),
        },
    }
}

fn c1() -> Outcome {
    summarize((1..=6).map(check_qb_mult))
}

fn c2() -> Outcome {
    summarize([check_c_integrality(30)])
}

fn c3(grid: &[(RootUnityCtx, TauTuple)]) -> Outcome {
    summarize(grid.iter().flat_map(|(_, t)| check_membership(t)))
}

fn c4() -> Outcome {
    let mut checks = Vec::new();
    for c in [ctx(CartanType::A, 1, 7, 1), ctx(CartanType::A, 2, 8, 1)] {
        checks.extend(check_group_law(&c, 12, [11, 12]));
    }
    summarize(checks)
}

fn c5() -> Outcome {
    let mut checks = Vec::new();
    for c in [ctx(CartanType::A, 1, 7, 1), ctx(CartanType::A, 2, 8, 1)] {
        checks.extend(check_kernel_equivalence(&TauTuple::canonical(&c, 12)));
    }
    summarize(checks)
}

fn c6(grid: &[(RootUnityCtx, TauTuple)]) -> Outcome {
    summarize(grid.iter().map(|(_, t)| check_zeta10(t)))
}

fn c7() -> Outcome {
    let a1 = TauTuple::canonical(&ctx(CartanType::A, 1, 7, 1), 12);
    let a2 = TauTuple::canonical(&ctx(CartanType::A, 2, 8, 1), 12);
    let (op1, op2) = (SOperator::new(&a1), SOperator::new(&a2));
    summarize([
        check_unitarity(&op1),
        check_unitarity(&op2),
        check_ybe(&op1, 6, YbeSample::AllUpToShift),
        check_ybe(&op2, 6, YbeSample::Seeded { count: 200, seed: 0 }),
    ])
}

fn c8() -> Outcome {
    let mut checks = check_h_trivial(&ctx(CartanType::A, 1, 7, 1), 12);
    checks.extend(check_h_trivial(&ctx(CartanType::B, 2, 9, 2), 12));
    summarize(checks)
}

fn c9(grid: &[(RootUnityCtx, TauTuple)]) -> Outcome {
    let a1 = ctx(CartanType::A, 1, 7, 1);
    let (gram, _) = quiver::heisenberg_gram(&a1);
    let worked = gram.get((0, 0), (0, 0)).cloned();
    let fourteen = zetaqva::CycloField::get(7).from_int(14);
    let mut out = summarize(grid.iter().flat_map(|(c, _)| {
        let (_, sym) = quiver::heisenberg_gram(c);
        std::iter::once(sym).chain(quiver::check_dft(c))
    }));
    if worked.as_ref() != Some(&fourteen) {
        out.pass = false;
        out.detail = format!("A1 p=7 l=1 Gram entry at m=n=0 is {worked:?}, expected 14");
    } else {
        out.detail.push_str("; A1 p=7 l=1 entry (0,0) = 14");
    }
    out
}

fn c10(grid: &[(RootUnityCtx, TauTuple)]) -> Outcome {
    summarize(grid.iter().flat_map(|(c, _)| {
        let q = quiver::build_quiver(c);
        let mut v = vec![q.check_equivariance(&c.name()), quiver::build_loops(c).1];
        v.extend(quiver::check_arrow_counts(c));
        v
    }))
}

fn c11() -> Outcome {
    let mut checks: Vec<Check> = (1..=5).map(|k| check_sym_gps(k, None)).collect();
    checks.push(check_sym_gps(6, Some(3)));
    summarize(checks)
}

fn c12() -> Outcome {
    let mut checks: Vec<Check> = (1..=5).map(|k| check_antisym(k, AntisymMode::ProductFormula, 0)).collect();
    checks.extend((1..=6).map(|m| check_antisym(m, AntisymMode::QbinomTheorem, 0)));
    summarize(checks)
}

fn c13() -> Outcome {
    let mut checks = Vec::new();
    for p in [5u32, 7] {
        for k in 0..=4 {
            for a in 0..p as i64 {
                checks.extend(dist::check_delta_decomposition(p, k, a, 16));
            }
        }
        for total in 1..=4 {
            for comp in Composition::all(total) {
                let roots: Vec<(i64, u32)> =
                    comp.parts().iter().enumerate().map(|(s, &n)| (2 * s as i64, n as u32)).collect();
                checks.push(dist::check_partial_fraction_delta(p, &roots, 16));
            }
        }
    }
    summarize(checks)
}

fn c14() -> Outcome {
    let mut checks = Vec::new();
    for k in 1..=4 {
        for comp in Composition::all(k) {
            checks.push(dist::check_normal_order(k, &comp, 16));
        }
    }
    summarize(checks)
}

fn c15() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_zetaqva");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let base = ["--cartan", "A2", "--p", "8", "--level", "1", "--suite", "dft,quiver,symcomb", "--format", "json"];
    let mut problems = Vec::new();

    let first = run(&base);
    let again = run(&base);
    let jobs: Vec<&str> = base.iter().copied().chain(["--jobs", "2"]).collect();
    let threaded = run(&jobs);
    if first.status.code() != Some(0) {
        problems.push(format!("passing run exited {:?}", first.status.code()));
    }
    if first.stdout != again.stdout || first.stdout != threaded.stdout {
        problems.push("JSON differs between identical runs".into());
    }
    match Report::from_json(&String::from_utf8_lossy(&first.stdout)) {
        Ok(r) if r.to_json().as_bytes() == &first.stdout[..] => {}
        _ => problems.push("JSON does not round-trip".into()),
    }

    let full = run(&["--cartan", "A1", "--p", "7", "--level", "1", "--suite", "all", "--format", "json"]);
    if full.status.code() != Some(0) {
        problems.push(format!("A1 p=7 l=1 full run exited {:?}", full.status.code()));
    }
    let code = run(&["--cartan", "A1", "--p", "2", "--level", "1"]).status.code();
    if code != Some(2) {
        problems.push(format!("p=2 exited {code:?}, expected 2"));
    }
    let code = run(&["--cartan", "A1", "--p", "7", "--level", "1", "--suite", "qcomb", "--out", "/nonexistent-dir/r.json"])
        .status
        .code();
    if code != Some(3) {
        problems.push(format!("unwritable --out exited {code:?}, expected 3"));
    }
    let code = run(&["--cartan", "A1", "--p", "7", "--level", "1", "--suite", ""]).status.code();
    if code != Some(0) {
        problems.push(format!("empty suite list exited {code:?}, expected 0"));
    }
    // A failing check is the only route to status 1; the binary returns
    // the report's exit code verbatim.
    let echo = ContextEcho {
        cartan_type: "A".into(),
        rank: 1,
        p: 7,
        level: 1,
        trunc: 12,
        seed: 0,
    };
    let failing = Report::new(echo, vec![Check::fail("tau", "membership", "", "first mismatch at z^3")]);
    if failing.exit_code() != 1 {
        problems.push("failing report does not map to exit code 1".into());
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            "byte-identical JSON across runs and --jobs; exit codes 0/1/2/3 as specified".into()
        } else {
            problems.join("; ")
        },
    }
}

type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    // The grid is shared by criteria 3, 6, 9 and 10.
    let grid: Vec<(RootUnityCtx, TauTuple)> = grid()
        .into_iter()
        .map(|c| {
            let t = TauTuple::canonical(&c, 12);
            (c, t)
        })
        .collect();
    let criteria: Vec<Criterion> = vec![
        (1, "divided-power identity, m <= 6", Box::new(c1)),
        (2, "cyclotomic integrality, k <= 30", Box::new(c2)),
        (3, "canonical tau membership, 36 contexts, N=12", Box::new(|| c3(&grid))),
        (4, "tau group law, canonical and perturbed", Box::new(c4)),
        (5, "kernel equivalence, A1/7/1 and A2/8/1", Box::new(c5)),
        (6, "zeta10 identity, 36 contexts", Box::new(|| c6(&grid))),
        (7, "unitarity and Yang-Baxter", Box::new(c7)),
        (8, "h-triviality, A1/7/1 and B2/9/2", Box::new(c8)),
        (9, "DFT against the Heisenberg Gram matrix", Box::new(|| c9(&grid))),
        (10, "quiver loops and arrow counts", Box::new(|| c10(&grid))),
        (11, "symmetric-group bijection", Box::new(c11)),
        (12, "antisymmetrization identities", Box::new(c12)),
        (13, "delta and partial-fraction decompositions", Box::new(c13)),
        (14, "normal-ordering identity, k <= 4", Box::new(c14)),
        (15, "CLI determinism and exit codes", Box::new(c15)),
    ];
    let mut failed = 0;
    for (n, title, f) in &criteria {
        let start = Instant::now();
        let out = f();
        let status = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "criterion {n:>2} {status} {title} [{TOLERANCE}, {:.1}s]: {}",
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
