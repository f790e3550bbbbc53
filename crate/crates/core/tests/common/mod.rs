#![allow(dead_code)]

use std::path::PathBuf;

use pfss::field::{FieldCtx, FieldElement};
use pfss::io::{parse_input, Input};
use pfss::poly::Poly;
use pfss::{FFMatrix, Pfss};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load(name: &str) -> Input {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture");
    parse_input(&text).expect("valid fixture")
}

pub fn system(name: &str) -> Pfss {
    load(name).into_system().expect("system")
}

pub fn ints(ctx: &FieldCtx, rows: &[Vec<i64>]) -> FFMatrix {
    FFMatrix::from_ints(ctx, rows).unwrap()
}

pub fn codes(ctx: &FieldCtx, rows: &[Vec<u64>]) -> FFMatrix {
    FFMatrix::from_codes(ctx, rows).unwrap()
}

pub fn vec_of(xs: &[u64]) -> Vec<FieldElement> {
    xs.iter().map(|&c| FieldElement::from_encoding(c)).collect()
}

/// GF(2) -> GF(4) by t^2 + t + 1 (t encoded as 2) -> GF(64) by a^3 + t
/// (a encoded as 4). An element c0 + c1 a + c2 a^2 with ci in GF(4) has
/// code c0 + 4 c1 + 16 c2.
pub fn gf64() -> FieldCtx {
    let f2 = FieldCtx::prime(2).unwrap();
    let f4 = f2.extend(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
    let t = f4.step_generator(0);
    f4.extend(&Poly::new(vec![
        t,
        FieldElement::ZERO,
        FieldElement::ZERO,
        FieldElement::ONE,
    ]))
    .unwrap()
}
