//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use lacver::harness::{cross_checks, sweep, verify, ParamGrid, SweepTarget};
use lacver::identities::{closed_form_eq12, p2, p4, q3, rhs_terms, EvalParams, IdentityId};
use lacver::series::{sum_adaptive, TruncationPolicy};
use lacver::specfun::{laguerre, laguerre_sum};

use rand::{Rng, SeedableRng};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {}{}",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" ({detail})")
        }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn full_grid() -> ParamGrid {
    ParamGrid {
        x_values: vec![0.25, 0.5, 1.0, 2.0, 4.0, -1.0, -2.0],
        t_values: vec![0.05, 0.1, 0.2, 0.4],
        alpha_values: Some(vec![0.0, 1.0, 2.5]),
        k_values: Some(vec![0, 1, 3]),
        m_values: Some(vec![0, 1, 3]),
    }
}

#[test]
fn criterion_1_full_identity_sweep() {
    let start = std::time::Instant::now();
    let policy = TruncationPolicy::default();
    let report_res = sweep(SweepTarget::All, &full_grid(), 1e-8, &policy).unwrap();
    let elapsed = start.elapsed();

    // negative x applies only to the exponential identities and eq12
    let expected_records = 28 * 4 + 84 * 2 + 60 * 3 + 20 * 2 + 84;
    let mut worst = (0.0f64, String::new());
    for rec in &report_res.records {
        if rec.rel_err > worst.0 {
            worst = (rec.rel_err, format!("{} {:?}", rec.id, rec.params));
        }
    }
    let pass = report_res.records.len() == expected_records
        && report_res.failed() == 0
        && report_res.errored() == 0
        && report_res
            .records
            .iter()
            .all(|r| r.lhs.converged && r.rhs.converged && r.lhs.terms_used <= 400)
        && elapsed.as_secs_f64() < 10.0;
    report(
        "1 full-identity-sweep",
        pass,
        &format!(
            "{} records, {} passed, worst rel_err {:.2e} at {}, {:.2}s",
            report_res.records.len(),
            report_res.passed(),
            worst.0,
            worst.1,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_egf_extended_t() {
    let policy = TruncationPolicy::default();
    let grid = ParamGrid {
        t_values: vec![1.0, 2.0],
        ..full_grid()
    };
    let mut all_pass = true;
    let mut total = 0;
    let mut worst = 0.0f64;
    for id in [
        IdentityId::Eq1,
        IdentityId::Eq2,
        IdentityId::Eq3,
        IdentityId::Eq4,
        IdentityId::Eq5,
        IdentityId::Eq6,
    ] {
        let rep = sweep(SweepTarget::One(id), &grid, 1e-8, &policy).unwrap();
        total += rep.records.len();
        all_pass &= rep.failed() == 0 && rep.errored() == 0;
        worst = rep.records.iter().map(|r| r.rel_err).fold(worst, f64::max);
    }
    report(
        "2 egf-extended-t",
        all_pass && total == (28 + 28 + 28 + 84 + 84 + 28) / 2,
        &format!("{total} records, worst rel_err {worst:.2e}"),
    );
}

#[test]
fn criterion_3_oracle_equivalence() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1acf);
    let mut worst = 0.0f64;
    let mut pass = true;
    for _ in 0..200 {
        let alpha = rng.gen_range(-5.0..5.0);
        let x = rng.gen_range(-10.0..10.0);
        for n in 0..=30u32 {
            let a = laguerre(n, alpha, x);
            let b = laguerre_sum(n, alpha, x);
            let rel = (a - b).abs() / b.abs().max(1.0);
            worst = worst.max(rel);
            pass &= rel <= 1e-10;
        }
    }
    report(
        "3 oracle-equivalence",
        pass,
        &format!("200 random (alpha, x), n <= 30, worst rel diff {worst:.2e}"),
    );
}

#[test]
fn criterion_4_reduction_suite() {
    let records = cross_checks(&TruncationPolicy::default()).unwrap();
    // the first 30 records are checks (a), (b), (c) at 10 points each
    let reductions = &records[..30];
    let pass = reductions.iter().all(|r| r.pass);
    let worst = reductions.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    report(
        "4 reduction-suite",
        pass,
        &format!("30 checks, worst rel_err {worst:.2e}"),
    );
}

#[test]
fn criterion_5_eq12_branch_validation() {
    let records = cross_checks(&TruncationPolicy::default()).unwrap();
    let taylor = &records[30..];
    let mut pass = taylor.len() == 9 && taylor.iter().all(|r| r.pass);
    // the exact case: coefficient of t at alpha = 0 is L_2^{(-2)}(x) = x^2/2
    for &x in &[0.5, 1.0, 3.0] {
        let c = lacver::harness::eq12_taylor_coeff(1, 0.0, x);
        pass &= (c - x * x / 2.0).abs() <= 1e-12 * (x * x / 2.0).max(1.0);
    }
    let worst = taylor.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    report(
        "5 eq12-branch-validation",
        pass,
        &format!("9 (alpha, x) cells through t^3, worst rel_err {worst:.2e}"),
    );
}

#[test]
fn criterion_6_coefficient_polynomials() {
    let mut pass = true;
    for &x in &[-2.0, -1.0, 0.25, 0.5, 1.0, 2.0, 4.0] {
        pass &= p2(0, x, 0.0) == 6.0;
        pass &= p4(0, x, 0.0) == 720.0;
        pass &= q3(0, x, 0.0) == 24.0;
        // t = 0 right sides of eq2/eq3/eq6 reduce to 1
        let policy = TruncationPolicy::default();
        for id in [IdentityId::Eq2, IdentityId::Eq3, IdentityId::Eq6] {
            let p = EvalParams::new(x, 0.0);
            let r = sum_adaptive(rhs_terms(id, &p).unwrap(), &policy).unwrap();
            pass &= (r.value - 1.0).abs() <= 1e-14;
        }
    }
    report("6 coefficient-polynomials", pass, "");
}

#[test]
fn criterion_7_cli_contract() {
    let bin = env!("CARGO_BIN_EXE_lacver");
    let run = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .env_remove("LACVER_TOL")
            .env_remove("LACVER_MAX_TERMS")
            .output()
            .expect("binary runs")
    };

    let mut pass = true;
    let mut detail = Vec::new();

    // exit 0 on pass
    let out = run(&["verify", "--id", "eq1", "--x", "1", "--t", "0.3"]);
    if out.status.code() != Some(0) {
        pass = false;
        detail.push("verify pass should exit 0".to_string());
    }
    // exit 2 on missing required parameter
    let out = run(&["verify", "--id", "eq8", "--x", "1", "--t", "0.2"]);
    if out.status.code() != Some(2) {
        pass = false;
        detail.push("missing --m should exit 2".to_string());
    }
    // exit 1 on non-convergence
    let out = run(&[
        "verify",
        "--id",
        "eq10",
        "--x",
        "2",
        "--t",
        "0.999",
        "--max-terms",
        "50",
    ]);
    if out.status.code() != Some(1) {
        pass = false;
        detail.push("non-convergence should exit 1".to_string());
    }

    // CSV and JSON byte-stable across two identical runs
    let sweep_args = [
        "sweep",
        "--id",
        "all",
        "--x-grid",
        "0.25:4:5",
        "--t-grid",
        "0.05:0.45:5",
        "--alpha-grid",
        "0:2.5:3",
        "--k-set",
        "0,1,3",
        "--m-set",
        "0,1,3",
    ];
    for fmt in ["csv", "json"] {
        let mut args = sweep_args.to_vec();
        args.extend(["--format", fmt]);
        let a = run(&args);
        let b = run(&args);
        if a.stdout != b.stdout {
            pass = false;
            detail.push(format!("{fmt} output not byte-stable"));
        }
        if a.status.code() != Some(0) {
            pass = false;
            detail.push(format!("default {fmt} sweep should exit 0"));
        }
    }

    report("7 cli-contract", pass, &detail.join("; "));
}

#[test]
fn criterion_8_non_convergence_honesty() {
    let policy = TruncationPolicy {
        max_terms: 50,
        ..TruncationPolicy::default()
    };
    let rec = verify(
        IdentityId::Eq10,
        &EvalParams::new(2.0, 0.999),
        1e-9,
        &policy,
    )
    .unwrap();
    let pass = !rec.pass && (!rec.lhs.converged || !rec.rhs.converged);
    report(
        "8 non-convergence-honesty",
        pass,
        &format!(
            "pass={} lhs.converged={} rhs.converged={}",
            rec.pass, rec.lhs.converged, rec.rhs.converged
        ),
    );
}

#[test]
fn eq12_closed_form_taylor_example() {
    // alpha = 2: 1 + t (x^2/2 - 2x + 1) + O(t^2)
    let x = 1.3f64;
    let t = 1e-5f64;
    let p = EvalParams::new(x, t).with_alpha(2.0);
    let f = closed_form_eq12(&p).unwrap();
    let lin = 1.0 + t * (x * x / 2.0 - 2.0 * x + 1.0);
    assert!((f - lin).abs() <= 1e-9 * f.abs());
}
