//! Acceptance run: one pass/fail line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use fplct::bracket::BracketContext;
use fplct::combinat::{Basis, Diagram};
use fplct::fpl::{enumerate_fpl_square, enumerate_fpl_triangle, TriangleBoundary};
use fplct::harness::{
    matrix_from_json, summation_weights, vector_from_json, verify_all, verify_conjecture1,
    verify_lemma_suite, verify_matrix_suite, verify_recurrences, verify_rs, verify_summation,
    VerificationReport,
};
use fplct::opalgebra::Operators;
use fplct::tlmodel::{e_matrix, ground_state, hamiltonian};

type Q = BigRational;

fn q(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("fixture present")).expect("valid JSON")
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn passed(r: VerificationReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(r.to_string())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.1?}, limit {limit:?}"))
}

fn loop_model() -> Result<(), String> {
    let start = Instant::now();
    let f = fixture("loop_model_n3.json");
    let basis = Basis::new(3);
    for i in 1..=6 {
        let m = e_matrix::<Q>(i, &basis).map_err(|e| e.to_string())?;
        ensure(m == matrix_from_json(&f["data"][format!("e{i}")]).unwrap(), || format!("e{i}"))?;
    }
    ensure(hamiltonian::<Q>(3) == matrix_from_json(&f["data"]["H"]).unwrap(), || "H".into())?;
    let gs = ground_state(3).map_err(|e| e.to_string())?;
    ensure(gs == [1, 2, 1, 1, 2].map(BigInt::from).to_vec(), || format!("ground state {gs:?}"))?;
    within(start.elapsed(), Duration::from_secs(1), "loop model")
}

fn operator_tables() -> Result<(), String> {
    let start = Instant::now();
    let f = fixture("operators_n3.json");
    let d = &f["data"];
    let m = |v: &Value| matrix_from_json(v).unwrap();
    let ops = Operators::new(3, q(1, 1)).map_err(|e| e.to_string())?;
    ensure(ops.psi() == vector_from_json(&d["Psi"]).unwrap(), || "Ψ".into())?;
    ensure(ops.a_empty() == &m(&d["A_empty"]), || "A(∅)".into())?;
    ensure(ops.p() == &m(&d["P"]), || "P".into())?;
    ensure(ops.c() == m(&d["C"]), || "C".into())?;
    ensure(ops.phi() == &m(&d["Phi"]), || "Φ".into())?;
    for (i, l) in ops.basis().iter().enumerate() {
        let key = l.to_string();
        ensure(ops.a_tensor().abar_matrix(i) == m(&d["Abar"][&key]), || format!("Ā({l})"))?;
        ensure(ops.lr(l) == m(&d["LR"][&key]), || format!("LR({l})"))?;
        ensure(ops.c_matrix(l) == m(&d["C_lambda"][&key]), || format!("C({l})"))?;
    }
    within(start.elapsed(), Duration::from_secs(10), "operator tables")
}

fn summation() -> Result<(), String> {
    for n in 1..=4 {
        passed(verify_summation(n, -3, n as i64 + 3).map_err(|e| e.to_string())?)?;
    }
    let w = summation_weights(3);
    ensure(w == [1, -2, 1, 3, -2].map(|x| q(x, 1)).to_vec(), || format!("weights {w:?}"))
}

fn square_grid() -> Result<(), String> {
    for (n, asm) in [(1, 1u64), (2, 2), (3, 7), (4, 42)] {
        let start = Instant::now();
        let counts = enumerate_fpl_square(n).map_err(|e| e.to_string())?;
        let total: u64 = counts.values().sum();
        ensure(total == asm, || format!("n={n}: total {total}, expected {asm}"))?;
        passed(verify_rs(n, false).map_err(|e| e.to_string())?)?;
        if n == 4 {
            within(start.elapsed(), Duration::from_secs(120), "square n=4")?;
        }
    }
    Ok(())
}

fn triangle() -> Result<(), String> {
    let counts = enumerate_fpl_triangle(3).map_err(|e| e.to_string())?;
    let e = Diagram::empty(3);
    let row: Vec<u64> = Basis::new(3)
        .iter()
        .map(|d| {
            let key = TriangleBoundary {
                sigma: e.clone(),
                pi: d.to_link_pattern(),
                tau: e.clone(),
            };
            counts.get(&key).copied().unwrap_or(0)
        })
        .collect();
    ensure(row == [1, 4, 6, 6, 17], || format!("geometry oracle gave {row:?}"))?;
    for n in 1..=3 {
        passed(verify_conjecture1(n, false).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn lemmas() -> Result<(), String> {
    for n in 1..=4 {
        passed(verify_lemma_suite(n).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn matrices() -> Result<(), String> {
    for n in 1..=3 {
        passed(verify_matrix_suite(n, &q(1, 1)).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn recurrences() -> Result<(), String> {
    for n in 1..=4 {
        passed(verify_recurrences(n, &[q(1, 1)]).map_err(|e| e.to_string())?)?;
    }
    let others = [q(0, 1), q(2, 1), q(1, 2)];
    for n in 1..=3 {
        passed(verify_recurrences(n, &others).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn performance() -> Result<(), String> {
    let start = Instant::now();
    passed(verify_all(4, false).map_err(|e| e.to_string())?)?;
    let all = start.elapsed();
    within(all, Duration::from_secs(300), "verify all n=4")?;
    let start = Instant::now();
    let tensor = BracketContext::new(5, q(1, 1)).a_tensor();
    let a5 = start.elapsed();
    ensure(tensor.dim() == 42, || "n=5 basis size".into())?;
    within(a5, Duration::from_secs(600), "tensor n=5")?;
    println!("    verify all n=4: {all:.1?}; tensor n=5: {a5:.1?}");
    Ok(())
}

type Criterion = fn() -> Result<(), String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("loop model operators and ground state at n=3", loop_model),
        ("reference operator tables at n=3", operator_tables),
        ("summation identity independent of k, n <= 4", summation),
        ("square grid counts equal the ground state, n <= 4", square_grid),
        ("triangle counts equal the bracket side, n <= 3", triangle),
        ("lemma suite, n <= 4", lemmas),
        ("matrix suite at t = 1, n <= 3", matrices),
        ("recurrence suite", recurrences),
        ("performance envelope", performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({:.2?})", i + 1, start.elapsed());
        if let Err(why) = outcome {
            failed += 1;
            for line in why.lines() {
                println!("    {line}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
