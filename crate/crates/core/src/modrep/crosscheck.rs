use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{baby_verma_g0, induce_kac, simple_head, GModule, PChar, DEFAULT_LINE_CAP};
use crate::error::Result;
use crate::fq::{fq_make, FqElement};
use crate::matrix::Matrix;
use crate::rootdata::{Shape, Weight};
use crate::superpbw::{all_basis_elements, GlBasisElement, Straightener, SuperWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub seed: u64,
    pub lambdas: Vec<Vec<u64>>,
    pub words: Vec<String>,
    pub comparisons: usize,
    pub mismatches: usize,
}

impl CrossCheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn straightened_matrix(
    k: &GModule,
    st: &mut Straightener<BigInt>,
    word: &SuperWord,
) -> Result<Matrix<FqElement>> {
    let field = k.field();
    let elem = st.straighten_word(word)?;
    let mut acc = k.zero_matrix();
    for (factors, c) in elem.factor_terms(st.order()) {
        let m = k.word_matrix(&factors)?;
        acc = acc.add(&m.scale(&field.from_bigint(&c)));
    }
    Ok(acc)
}

/// Compares the action of random words on `K(λ)` with the action of their
/// straightened forms, for `lambda_count` random restricted `λ`.
pub fn cross_layer_check(
    shape: &Shape,
    p: u64,
    lambda_count: usize,
    word_count: usize,
    max_len: usize,
    seed: u64,
) -> Result<CrossCheckReport> {
    let field = fq_make(p, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = all_basis_elements(shape);
    let words: Vec<SuperWord> = (0..word_count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            SuperWord::new(
                (0..len)
                    .map(|_| units[rng.gen_range(0..units.len())])
                    .collect(),
            )
        })
        .collect();
    let lambdas: Vec<Vec<u64>> = (0..lambda_count)
        .map(|_| (0..shape.size()).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    let chi = PChar::zero(shape, field);
    let mut st = Straightener::new(*shape, BigInt::from(1));
    let mut comparisons = 0;
    let mut mismatches = 0;
    for lam in &lambdas {
        let w = Weight::new(lam.iter().map(|&x| field.element(x)).collect());
        let k = induce_kac(&simple_head(
            &baby_verma_g0(shape, &w, &chi)?,
            DEFAULT_LINE_CAP,
        )?)?;
        for word in &words {
            let raw = k.word_matrix(&word.factors)?;
            comparisons += 1;
            if raw != straightened_matrix(&k, &mut st, word)? {
                mismatches += 1;
            }
        }
    }
    let words = words
        .iter()
        .map(|w| {
            w.factors
                .iter()
                .map(GlBasisElement::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    Ok(CrossCheckReport {
        m: shape.m,
        n: shape.n,
        p,
        seed,
        lambdas,
        words,
        comparisons,
        mismatches,
    })
}
