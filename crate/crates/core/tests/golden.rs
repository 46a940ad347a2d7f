//! Bit-exact comparison with the committed n = 3 reference data.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use fplct::combinat::{Basis, Diagram};
use fplct::harness::{bigint_vec, matrix_from_json, summation_weights, vector_from_json};
use fplct::opalgebra::Operators;
use fplct::tlmodel::{e_matrix, ground_state, hamiltonian};
use fplct::Matrix;

type Q = BigRational;

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).expect("fixture is valid JSON")
}

fn matrix(v: &Value) -> Matrix<Q> {
    matrix_from_json(v).expect("fixture matrix")
}

fn check_header(v: &Value) -> Basis {
    let basis = Basis::new(3);
    assert_eq!(v["n"], 3);
    assert_eq!(v["t"], "1");
    let labels: Vec<String> = v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(labels, basis.labels());
    basis
}

fn ops() -> Operators<Q> {
    Operators::new(3, Q::from_integer(1.into())).unwrap()
}

#[test]
fn loop_model_operators() {
    let f = fixture("loop_model_n3.json");
    let basis = check_header(&f);
    for i in 1..=6 {
        let expected = matrix(&f["data"][format!("e{i}")]);
        assert_eq!(e_matrix::<Q>(i, &basis).unwrap(), expected, "e{i}");
    }
    assert_eq!(hamiltonian::<Q>(3), matrix(&f["data"]["H"]));
}

#[test]
fn loop_model_ground_state() {
    let f = fixture("loop_model_n3.json");
    let expected = vector_from_json(&f["data"]["ground_state"]).unwrap();
    let psi = ground_state(3).unwrap();
    assert_eq!(bigint_vec(&psi), expected);
    assert_eq!(psi, [1, 2, 1, 1, 2].map(BigInt::from).to_vec());
}

#[test]
fn psi_p_and_a_empty() {
    let f = fixture("operators_n3.json");
    check_header(&f);
    let o = ops();
    assert_eq!(o.psi(), vector_from_json(&f["data"]["Psi"]).unwrap());
    assert_eq!(o.p(), &matrix(&f["data"]["P"]));
    assert_eq!(o.a_empty(), &matrix(&f["data"]["A_empty"]));
}

#[test]
fn abar_matrices() {
    let f = fixture("operators_n3.json");
    let o = ops();
    let tensor = o.a_tensor();
    for (a, alpha) in o.basis().iter().enumerate() {
        let expected = matrix(&f["data"]["Abar"][alpha.to_string()]);
        assert_eq!(tensor.abar_matrix(a), expected, "α={alpha}");
    }
}

#[test]
fn lr_and_c_per_diagram() {
    let f = fixture("operators_n3.json");
    let o = ops();
    for lambda in o.basis().iter() {
        let key = lambda.to_string();
        assert_eq!(o.lr(lambda), matrix(&f["data"]["LR"][&key]), "LR λ={lambda}");
        assert_eq!(o.c_matrix(lambda), matrix(&f["data"]["C_lambda"][&key]), "C λ={lambda}");
    }
}

#[test]
fn c_and_phi() {
    let f = fixture("operators_n3.json");
    let o = ops();
    assert_eq!(o.c(), matrix(&f["data"]["C"]));
    assert_eq!(o.phi(), &matrix(&f["data"]["Phi"]));
}

#[test]
fn summation_weights_at_zero() {
    let f = fixture("operators_n3.json");
    let expected = vector_from_json(&f["data"]["summation_k0_weights"]).unwrap();
    assert_eq!(summation_weights(3), expected);
}

#[test]
fn empty_pair_slice_is_first_row_of_a_empty() {
    let o = ops();
    let e = Diagram::empty(3);
    let row = o.a_tensor().row(0, 0);
    assert_eq!(&row, o.a_empty().row(0));
    assert_eq!(o.a_tensor().get(&e, &e, &e), &Q::from_integer(1.into()));
}
