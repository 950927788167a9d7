use std::collections::HashMap;

use super::{Acting, GModule, PChar};
use crate::error::{Error, Result};
use crate::fq::{FqElement, FqField};
use crate::matrix::Matrix;
use crate::rootdata::Shape;
use crate::superpbw::{all_basis_elements, supercommutator, GlBasisElement};

const MAX_ODD_DIM: usize = 20;

/// Sign and target of `f_r · (f_J ⊗ v)`; `None` when `r ∈ J`.
fn left_mul_f(r: usize, j: u64) -> Option<(bool, u64)> {
    if j >> r & 1 == 1 {
        return None;
    }
    let below = (j & ((1u64 << r) - 1)).count_ones();
    Some((below % 2 == 1, j | 1u64 << r))
}

struct Inducer<'a> {
    shape: Shape,
    field: &'static FqField,
    m0: &'a GModule,
    d: usize,
    dim: usize,
    /// ≺-rank of each odd negative unit
    rank_of: HashMap<GlBasisElement, usize>,
    f_units: Vec<GlBasisElement>,
    memo: HashMap<(GlBasisElement, u64), Vec<Vec<FqElement>>>,
}

impl Inducer<'_> {
    fn apply_f(&self, r: usize, v: &[FqElement]) -> Vec<FqElement> {
        let mut out = vec![self.field.zero(); self.dim];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, s) = ((idx / self.d) as u64, idx % self.d);
            if let Some((neg, t)) = left_mul_f(r, j) {
                out[t as usize * self.d + s] = if neg { -*c } else { *c };
            }
        }
        out
    }

    /// Columns `x · (f_I ⊗ v_s)` for `s = 0..d`.
    fn block(&mut self, x: GlBasisElement, i: u64) -> Vec<Vec<FqElement>> {
        if let Some(b) = self.memo.get(&(x, i)) {
            return b.clone();
        }
        let zero = self.field.zero();
        let cols: Vec<Vec<FqElement>> = if let Some(&r) = self.rank_of.get(&x) {
            (0..self.d)
                .map(|s| {
                    let mut u = vec![zero; self.dim];
                    u[i as usize * self.d + s] = self.field.one();
                    self.apply_f(r, &u)
                })
                .collect()
        } else if i == 0 {
            match self.m0.action(x) {
                Some(m) => (0..self.d)
                    .map(|s| {
                        let mut col = vec![zero; self.dim];
                        col[..self.d].copy_from_slice(&m.column(s));
                        col
                    })
                    .collect(),
                None => vec![vec![zero; self.dim]; self.d],
            }
        } else {
            let r = i.trailing_zeros() as usize;
            let y = self.f_units[r];
            let rest = i & !(1u64 << r);
            let odd = x.is_odd(&self.shape);
            let inner = self.block(x, rest);
            let mut cols: Vec<Vec<FqElement>> = inner
                .iter()
                .map(|c| {
                    let v = self.apply_f(r, c);
                    if odd {
                        v.into_iter().map(|a| -a).collect()
                    } else {
                        v
                    }
                })
                .collect();
            for (z, c) in supercommutator(&self.shape, x, y) {
                let c = self.field.from_i64(c);
                let zb = self.block(z, rest);
                for (col, zc) in cols.iter_mut().zip(&zb) {
                    for (a, b) in col.iter_mut().zip(zc) {
                        if !b.is_zero() {
                            *a = *a + c * *b;
                        }
                    }
                }
            }
            cols
        };
        self.memo.insert((x, i), cols.clone());
        cols
    }
}

/// Kac module `K_χ(M) = u_χ(𝔤) ⊗_{u_χ(𝔭)} M`, for a `𝔤₀̄`-module `M` on
/// which `𝔤₁` acts by zero. Basis `f_I ⊗ v_s` with `I` a bitmask over
/// ≺-ranks of `𝓘₁` and `f_I` the ≺-increasing product, at index `I·dim M + s`.
pub fn induce_kac(m0: &GModule) -> Result<GModule> {
    if m0.acting() != Acting::Even {
        return Err(Error::Precondition(
            "Kac induction needs a 𝔤₀̄-module".into(),
        ));
    }
    let shape = *m0.shape();
    let odd = shape.odd_dim();
    if odd > MAX_ODD_DIM {
        return Err(Error::ResourceCap {
            what: "m·n for Kac induction".into(),
            needed: odd as u128,
            cap: MAX_ODD_DIM as u128,
        });
    }
    let field = m0.field();
    let d = m0.dim();
    let dim = d << odd;
    let f_units: Vec<GlBasisElement> = shape
        .odd_pairs()
        .iter()
        .map(|p| GlBasisElement::f(p.i, p.j))
        .collect();
    let rank_of = f_units.iter().enumerate().map(|(r, &u)| (u, r)).collect();
    let mut ind = Inducer {
        shape,
        field,
        m0,
        d,
        dim,
        rank_of,
        f_units,
        memo: HashMap::new(),
    };
    let nn = shape.size();
    let mut actions = vec![None; nn * nn];
    for x in all_basis_elements(&shape) {
        let mut m = Matrix::zeros(dim, dim, field.zero());
        for i in 0..(1u64 << odd) {
            for (s, col) in ind.block(x, i).into_iter().enumerate() {
                let c = i as usize * d + s;
                for (r, v) in col.into_iter().enumerate() {
                    if !v.is_zero() {
                        m.set(r, c, v);
                    }
                }
            }
        }
        actions[(x.row - 1) * nn + (x.col - 1)] = Some(m);
    }
    let grading = (0..dim)
        .map(|idx| (((idx / d) as u64).count_ones() % 2 == 1) ^ m0.grading()[idx % d])
        .collect();
    let k = GModule::from_parts(
        shape,
        field,
        Acting::Full,
        grading,
        actions,
        m0.pchar().clone(),
    );
    k.check_representation()
        .map_err(|e| Error::Internal(format!("Kac induction self-check failed: {e}")))?;
    Ok(k)
}

/// `Mat(f_{𝓘₁})`, the ≺-increasing product of all odd negative units.
pub fn f_top_matrix(k: &GModule) -> Result<Matrix<FqElement>> {
    let word: Vec<GlBasisElement> = k
        .shape()
        .odd_pairs()
        .iter()
        .map(|p| GlBasisElement::f(p.i, p.j))
        .collect();
    k.word_matrix(&word)
}

/// `u(𝔤₁)` acting on itself by left multiplication. `𝔤₁` is an exterior
/// algebra; basis `e_I` is the product over `I` in decreasing ≺-rank.
pub fn regular_g1_module(shape: &Shape, field: &'static FqField) -> Result<GModule> {
    let odd = shape.odd_dim();
    if odd > MAX_ODD_DIM {
        return Err(Error::ResourceCap {
            what: "m·n for u(𝔤₁)".into(),
            needed: odd as u128,
            cap: MAX_ODD_DIM as u128,
        });
    }
    let dim = 1usize << odd;
    let nn = shape.size();
    let mut actions = vec![None; nn * nn];
    for (r, p) in shape.odd_pairs().iter().enumerate() {
        let mut m = Matrix::zeros(dim, dim, field.zero());
        for i in 0..dim as u64 {
            if i >> r & 1 == 1 {
                continue;
            }
            let above = (i >> (r + 1)).count_ones();
            let v = if above % 2 == 1 {
                -field.one()
            } else {
                field.one()
            };
            m.set((i | 1 << r) as usize, i as usize, v);
        }
        actions[(p.i - 1) * nn + (p.j - 1)] = Some(m);
    }
    let grading = (0..dim as u64).map(|i| i.count_ones() % 2 == 1).collect();
    Ok(GModule::from_parts(
        *shape,
        field,
        Acting::OddPositive,
        grading,
        actions,
        PChar::zero(shape, field),
    ))
}
