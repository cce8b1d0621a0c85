//! One pass/fail line per acceptance criterion; run with `--nocapture` to see them.

use std::path::PathBuf;
use std::process::Command;

use wicklab::harness::{run_verify, wick_oracle, RunConfig, SweepResult};
use wicklab::lab::{
    counterexample_ratio, lieb_closed_form, sharp_young_constant, CheckReport, ExponentTuple,
};
use wicklab::Exponent;

fn pinned_config() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/verify_default.json")
}

fn verify() -> SweepResult {
    let config = RunConfig::load(&pinned_config()).expect("pinned config loads");
    run_verify(&config).expect("verify runs")
}

fn rows<'a>(result: &'a SweepResult, checks: &[&str]) -> Vec<&'a CheckReport> {
    result.reports.iter().filter(|r| checks.contains(&r.check.as_str())).collect()
}

fn all_pass(rows: &[&CheckReport]) -> bool {
    !rows.is_empty() && rows.iter().all(|r| r.pass)
}

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        name,
        pass,
        detail: detail.into(),
    }
}

fn count_line(rows: &[&CheckReport]) -> String {
    let passed = rows.iter().filter(|r| r.pass).count();
    format!("{passed}/{} rows", rows.len())
}

fn wick_equivalence() -> Outcome {
    let rows = wick_oracle(4).expect("wick oracle runs");
    let refs: Vec<&CheckReport> = rows.iter().collect();
    outcome("wick oracle equivalence", all_pass(&refs), count_line(&refs))
}

fn conv_wick(result: &SweepResult) -> Outcome {
    let r = rows(result, &["conv_wick"]);
    let worst = r.iter().filter_map(|r| r.residual).fold(0.0, f64::max);
    outcome(
        "convolution/Wick identity",
        all_pass(&r) && r.len() == 30 && worst <= 1e-6,
        format!("{}, max residual {worst:.2e}", count_line(&r)),
    )
}

fn holder(result: &SweepResult) -> Outcome {
    let r = rows(result, &["holder", "holder_sharpness"]);
    outcome("Wick Hölder inequality", all_pass(&r) && r.len() >= 800, count_line(&r))
}

fn nelson(result: &SweepResult) -> Outcome {
    let r = rows(result, &["nelson", "nelson_sharpness"]);
    outcome("hypercontractive Wick inequality", all_pass(&r) && r.len() >= 600, count_line(&r))
}

fn full_holder(result: &SweepResult) -> Outcome {
    let r = rows(
        result,
        &[
            "full_holder",
            "full_holder_vs_holder",
            "full_holder_vs_nelson",
            "sharpness",
            "sharpness_scaled",
            "sharpness_perturbed",
        ],
    );
    outcome("interpolated Wick Hölder inequality", all_pass(&r), count_line(&r))
}

fn lieb(result: &SweepResult) -> Outcome {
    let r = rows(result, &["lieb_sup", "lieb_argmax", "lieb_strict"]);
    let tuples = rows(result, &["lieb_sup"]).len();
    let worked = ExponentTuple::new(
        Exponent::Finite(2.0),
        Exponent::Finite(2.0),
        Exponent::Finite(2.0),
        Exponent::Finite(4.0),
        Exponent::Finite(2.5),
    )
    .and_then(|e| lieb_closed_form(&e))
    .expect("worked tuple is valid");
    let worked_ok = (worked - 2f64.powf(0.05)).abs() <= 1e-12 && (worked - 1.035265).abs() <= 1e-6;
    outcome(
        "Gaussian supremum",
        all_pass(&r) && tuples >= 12 && worked_ok,
        format!("{}, {tuples} tuples, worked value {worked:.6}", count_line(&r)),
    )
}

fn constants(result: &SweepResult) -> Outcome {
    let r = rows(
        result,
        &[
            "alpha_plus_gamma",
            "j1",
            "j2",
            "holder_square",
            "jensen_r",
            "jensen_r_conj",
            "nelson_constant",
            "nelson_square",
        ],
    );
    outcome("constant identities", all_pass(&r), count_line(&r))
}

fn young(result: &SweepResult) -> Outcome {
    let f = Exponent::Finite;
    let c = |p, q, r| sharp_young_constant(p, q, r, 1).expect("admissible triple");
    let trivial = c(f(2.0), f(1.0), f(2.0)) == 1.0
        && c(f(1.0), f(1.0), f(1.0)) == 1.0
        && c(f(1.0), Exponent::Infinite, Exponent::Infinite) == 1.0
        && c(f(2.0), f(2.0), Exponent::Infinite) == 1.0;
    let sharp = c(f(4.0 / 3.0), f(4.0 / 3.0), f(2.0));
    let r = rows(
        result,
        &["young_gaussian", "young_tent_box", "young_gaussian_box", "young_gaussian_extremal"],
    );
    outcome(
        "sharp Young constants",
        trivial && (sharp - 0.877383).abs() <= 1e-6 && all_pass(&r),
        format!("{}, C(4/3,4/3,2) = {sharp:.6}", count_line(&r)),
    )
}

fn minimality(result: &SweepResult) -> Outcome {
    let r = rows(result, &["minimality", "minimality_null", "minimality_found"]);
    let worked = counterexample_ratio(1.5, 1.5, 2.0, 1.0, (1.0, 1.0));
    let worked_ok = (worked - (1.0f64 / 3.0).exp()).abs() <= 1e-12 && (worked - 1.395612).abs() <= 1e-6;
    outcome(
        "minimality of the exponent condition",
        all_pass(&r) && worked_ok,
        format!("{}, ratio at u = v = 3/2 is {worked:.6}", count_line(&r)),
    )
}

fn tensorization(result: &SweepResult) -> Outcome {
    let r = rows(result, &["tensor_ratio", "tensor_kernel", "kernel_closed_form"]);
    outcome("tensorization", all_pass(&r), count_line(&r))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_wicklab"))
            .arg("verify")
            .arg("--config")
            .arg(pinned_config())
            .arg("--out")
            .arg(&out)
            .status()
            .expect("binary runs");
        (status.code(), std::fs::read(&out).expect("output written"))
    };
    let (code_a, a) = run("a.csv");
    let (code_b, b) = run("b.csv");
    outcome(
        "determinism",
        code_a == Some(0) && code_b == Some(0) && a == b,
        format!("{} bytes, exit codes {code_a:?} {code_b:?}", a.len()),
    )
}

#[test]
fn acceptance() {
    let result = verify();
    let outcomes = [
        wick_equivalence(),
        conv_wick(&result),
        holder(&result),
        nelson(&result),
        full_holder(&result),
        lieb(&result),
        constants(&result),
        young(&result),
        minimality(&result),
        tensorization(&result),
        determinism(),
    ];
    for (i, o) in outcomes.iter().enumerate() {
        println!("[{}] {:>2}. {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.name, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
    assert!(result.all_pass());
}
