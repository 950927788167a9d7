use rayon::prelude::*;
use serde::Serialize;

use super::{baby_verma_g0, induce_kac, invariants_g1, is_simple, simple_head, PChar};
use crate::error::{Error, Result};
use crate::fq::{artin_schreier_solve, fq_make, FqElement, FqField};
use crate::rootdata::{Shape, Weight};
use crate::superpbw::GlBasisElement;

/// Every `λ` with `λ_i^p − λ_i = χ_i^p`, lexicographic in element codes.
/// Empty if some coordinate has no solution in the field of `χ`.
pub fn admissible_lambdas(chi: &PChar) -> Vec<Weight<FqElement>> {
    let p = chi.field().characteristic();
    let roots: Vec<Vec<FqElement>> = chi
        .diag()
        .iter()
        .map(|c| artin_schreier_solve(c.pow(p)))
        .collect();
    if roots.iter().any(|r| r.is_empty()) {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for coord in &roots {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<FqElement>| {
                coord.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Smallest `𝔽_{p^k}`, `1 ≤ k ≤ kmax`, where every `λ_i^p − λ_i = χ_i^p`
/// is solvable.
pub fn smallest_admissible_field(p: u64, chi: &[i64], kmax: u32) -> Result<&'static FqField> {
    for k in 1..=kmax {
        let field = fq_make(p, k)?;
        if !admissible_lambdas(&PChar::from_ints(field, chi)).is_empty() {
            return Ok(field);
        }
    }
    Err(Error::Precondition(format!(
        "χ = {chi:?} has no admissible weights over 𝔽_{{{p}^k}} for k ≤ {kmax}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem53Row {
    pub lambda: Vec<String>,
    pub h_alpha_outside_prime: bool,
    pub dim_m: usize,
    pub dim_k: usize,
    pub kac_simple: bool,
    pub invariants_dim: usize,
    pub invariants_g0_stable: bool,
    /// The invariants carry the same weights, with multiplicity, as `M(λ)`.
    pub invariants_character_matches: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem53Report {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub k: u32,
    pub chi: Vec<i64>,
    pub rows: Vec<Theorem53Row>,
    pub failures: usize,
}

impl Theorem53Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "lambda",
            "h_alpha_outside_prime",
            "dim_m",
            "dim_k",
            "kac_simple",
            "invariants_dim",
            "invariants_g0_stable",
            "invariants_character_matches",
            "ok",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.lambda.join(";"),
                r.h_alpha_outside_prime.to_string(),
                r.dim_m.to_string(),
                r.dim_k.to_string(),
                r.kac_simple.to_string(),
                r.invariants_dim.to_string(),
                r.invariants_g0_stable.to_string(),
                r.invariants_character_matches.to_string(),
                r.ok.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

fn weight_multiset(ws: impl Iterator<Item = (Vec<FqElement>, usize)>) -> Vec<(Vec<u64>, usize)> {
    let mut out: Vec<(Vec<u64>, usize)> = Vec::new();
    for (w, d) in ws {
        let key: Vec<u64> = w.iter().map(|x| x.code()).collect();
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 += d,
            None => out.push((key, d)),
        }
    }
    out.sort();
    out
}

fn check_lambda(
    shape: &Shape,
    chi: &PChar,
    lambda: Weight<FqElement>,
    line_cap: u128,
) -> Result<Theorem53Row> {
    let h_alpha_outside_prime = shape
        .odd_pairs()
        .iter()
        .all(|a| !(lambda.coords[a.i - 1] + lambda.coords[a.j - 1]).in_prime_field());
    let m = simple_head(&baby_verma_g0(shape, &lambda, chi)?, line_cap)?;
    let k = induce_kac(&m)?;
    k.check_p_character()?;
    let kac_simple = is_simple(&k, line_cap)?;
    let inv = invariants_g1(&k)?;
    let invariants_dim = inv.iter().map(|(_, b)| b.len()).sum();
    let vectors: Vec<Vec<FqElement>> = inv.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
    let even: Vec<GlBasisElement> = k
        .acting_elements()
        .into_iter()
        .filter(|e| !e.is_odd(shape))
        .collect();
    let invariants_g0_stable = k.is_stable(&vectors, &even);
    let inv_weights = weight_multiset(
        inv.iter()
            .map(|(w, b)| (w.clone().unwrap_or_default(), b.len())),
    );
    let m_weights = weight_multiset(
        m.basis_weights()?
            .unwrap_or_default()
            .into_iter()
            .map(|w| (w, 1)),
    );
    let invariants_character_matches = inv_weights == m_weights;
    let ok = h_alpha_outside_prime
        && kac_simple
        && invariants_dim == m.dim()
        && invariants_g0_stable
        && invariants_character_matches;
    Ok(Theorem53Row {
        lambda: lambda.coords.iter().map(|x| x.to_string()).collect(),
        h_alpha_outside_prime,
        dim_m: m.dim(),
        dim_k: k.dim(),
        kac_simple,
        invariants_dim,
        invariants_g0_stable,
        invariants_character_matches,
        ok,
    })
}

/// Checks, for every admissible `λ` over the smallest admissible field,
/// that `λ(h_α) ∉ 𝔽_p` on odd roots, that `K_χ(λ)` is simple, and that
/// `K_χ(λ)^{𝔤₁}` is a `𝔤₀̄`-stable copy of `M(λ)`. `χ` is given by its
/// diagonal values in `𝔽_p`; `kmax` defaults to `p`.
pub fn verify_theorem53_consequences(
    shape: &Shape,
    p: u64,
    chi: &[i64],
    kmax: Option<u32>,
    line_cap: u128,
) -> Result<Theorem53Report> {
    if chi.len() != shape.size() {
        return Err(Error::ShapeMismatch(format!(
            "χ needs {} diagonal values",
            shape.size()
        )));
    }
    let prime = fq_make(p, 1)?;
    for a in shape.odd_pairs() {
        if (prime.from_i64(chi[a.i - 1]) + prime.from_i64(chi[a.j - 1])).is_zero() {
            return Err(Error::Precondition(format!(
                "χ(h_α) = 0 for α = ε{} − ε{}",
                a.i, a.j
            )));
        }
    }
    let field = smallest_admissible_field(p, chi, kmax.unwrap_or(p as u32))?;
    let pchar = PChar::from_ints(field, chi);
    let rows = admissible_lambdas(&pchar)
        .into_par_iter()
        .map(|l| check_lambda(shape, &pchar, l, line_cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(Theorem53Report {
        m: shape.m,
        n: shape.n,
        p,
        k: field.degree(),
        chi: chi.to_vec(),
        failures: rows.iter().filter(|r| !r.ok).count(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::DEFAULT_LINE_CAP;

    #[test]
    fn admissible_sets() {
        let s = Shape::new(1, 1).unwrap();
        let f3 = fq_make(3, 1).unwrap();
        assert_eq!(admissible_lambdas(&PChar::zero(&s, f3)).len(), 9);
        assert!(admissible_lambdas(&PChar::from_ints(f3, &[1, 0])).is_empty());
        let f27 = fq_make(3, 3).unwrap();
        assert_eq!(admissible_lambdas(&PChar::from_ints(f27, &[1, 0])).len(), 9);
        assert_eq!(
            smallest_admissible_field(3, &[1, 0], 3).unwrap().order(),
            27
        );
        assert!(smallest_admissible_field(3, &[1, 0], 2).is_err());
    }

    #[test]
    fn gl11_chi_10() {
        let s = Shape::new(1, 1).unwrap();
        let r = verify_theorem53_consequences(&s, 3, &[1, 0], None, DEFAULT_LINE_CAP).unwrap();
        assert_eq!(r.k, 3);
        assert_eq!(r.rows.len(), 9);
        assert_eq!(r.failures, 0);
        assert!(r
            .rows
            .iter()
            .all(|row| row.dim_k == 2 && row.invariants_dim == 1));
    }

    #[test]
    fn hypothesis_violations() {
        let s = Shape::new(1, 1).unwrap();
        for chi in [[0, 0], [1, 2]] {
            let err =
                verify_theorem53_consequences(&s, 3, &chi, None, DEFAULT_LINE_CAP).unwrap_err();
            assert!(matches!(err, Error::Precondition(_)));
        }
    }
}
