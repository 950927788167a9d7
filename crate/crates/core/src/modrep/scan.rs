use rayon::prelude::*;
use serde::Serialize;

use super::{baby_verma_g0, induce_kac, is_simple, simple_head, singular_space, PChar};
use crate::error::{Error, Result};
use crate::fq::{fq_make, FqElement};
use crate::rootdata::{Shape, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub lambda: Vec<u64>,
    pub dim_m0: usize,
    pub dim_k: usize,
    /// Dimension of the singular space of the baby Verma module the row's
    /// `M0` was taken from; above 1 when that module has several candidate
    /// maximal vectors.
    pub verma_singular_dim: usize,
    pub predicted_typical: bool,
    pub oracle_simple: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub rows: Vec<ScanRow>,
    pub simple_count: usize,
    pub typical_count: usize,
    pub disagreements: usize,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan report serialises")
    }

    pub fn to_csv(&self) -> String {
        let nn = self.m + self.n;
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = (1..=nn).map(|i| format!("lambda_{i}")).collect();
        header.extend(
            [
                "dim_m0",
                "dim_k",
                "predicted_typical",
                "oracle_simple",
                "agree",
            ]
            .map(String::from),
        );
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec: Vec<String> = r.lambda.iter().map(|l| l.to_string()).collect();
            rec.extend([
                r.dim_m0.to_string(),
                r.dim_k.to_string(),
                r.predicted_typical.to_string(),
                r.oracle_simple.to_string(),
                r.agree.to_string(),
            ]);
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }
}

fn scan_one(shape: &Shape, lambda: Vec<FqElement>, line_cap: u128) -> Result<ScanRow> {
    let field = lambda[0].field();
    let chi = PChar::zero(shape, field);
    let w = Weight::new(lambda);
    let z = baby_verma_g0(shape, &w, &chi)?;
    let verma_singular_dim = singular_space(&z)?.iter().map(|(_, b)| b.len()).sum();
    let m0 = simple_head(&z, line_cap)?;
    let k = induce_kac(&m0)?;
    let predicted_typical = !shape.typicality_poly()?.evaluate(&w)?.is_zero();
    let oracle_simple = is_simple(&k, line_cap)?;
    Ok(ScanRow {
        lambda: w.coords.iter().map(|x| x.code()).collect(),
        dim_m0: m0.dim(),
        dim_k: k.dim(),
        verma_singular_dim,
        predicted_typical,
        oracle_simple,
        agree: predicted_typical == oracle_simple,
    })
}

/// Compares typicality with simplicity of `K(λ)` for every restricted
/// `λ ∈ 𝔽_p^{m+n}`, `χ = 0`. Rows are in lexicographic order of `λ`
/// regardless of `threads`; `None` uses the global rayon pool.
pub fn scan_simplicity(
    shape: &Shape,
    p: u64,
    line_cap: u128,
    threads: Option<usize>,
) -> Result<ScanReport> {
    let field = fq_make(p, 1)?;
    let nn = shape.size();
    let total = (p as u128)
        .checked_pow(nn as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::ResourceCap {
            what: "weights to scan".into(),
            needed: (p as u128).saturating_pow(nn as u32),
            cap: 1 << 24,
        })? as u64;
    let lambda_of = |idx: u64| -> Vec<FqElement> {
        let mut v = vec![field.zero(); nn];
        let mut rem = idx;
        for slot in v.iter_mut().rev() {
            *slot = field.element(rem % p);
            rem /= p;
        }
        v
    };
    let run = || -> Result<Vec<ScanRow>> {
        (0..total)
            .into_par_iter()
            .map(|idx| scan_one(shape, lambda_of(idx), line_cap))
            .collect()
    };
    let rows = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(ScanReport {
        m: shape.m,
        n: shape.n,
        p,
        simple_count: rows.iter().filter(|r| r.oracle_simple).count(),
        typical_count: rows.iter().filter(|r| r.predicted_typical).count(),
        disagreements: rows.iter().filter(|r| !r.agree).count(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::DEFAULT_LINE_CAP;

    #[test]
    fn gl11_mod3() {
        let s = Shape::new(1, 1).unwrap();
        let r = scan_simplicity(&s, 3, DEFAULT_LINE_CAP, Some(2)).unwrap();
        assert_eq!(r.rows.len(), 9);
        assert_eq!(r.simple_count, 6);
        assert_eq!(r.disagreements, 0);
        assert!(r.to_csv().starts_with("lambda_1,lambda_2,dim_m0"));
        assert_eq!(r.rows[1].lambda, vec![0, 1]);
    }
}
