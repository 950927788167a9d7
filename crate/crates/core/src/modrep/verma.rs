use std::collections::HashMap;

use super::{Acting, GModule, PChar};
use crate::error::{Error, Result};
use crate::fq::{FqElement, FqField};
use crate::matrix::Matrix;
use crate::rootdata::{Shape, Weight};
use crate::superpbw::{all_basis_elements, supercommutator, GlBasisElement};

const MAX_VERMA_DIM: u128 = 1 << 16;

/// Baby Verma module `Z_χ(λ)` of `𝔤₀̄`, basis `∏ y_t^{a_t} v`, `0 ≤ a_t < p`,
/// over the negative even roots `y_t` (row descending, then column ascending).
/// Basis index is `Σ a_t p^t`.
struct Builder {
    shape: Shape,
    field: &'static FqField,
    lambda: Vec<FqElement>,
    p: usize,
    neg: Vec<GlBasisElement>,
    dim: usize,
    memo: HashMap<(GlBasisElement, usize), Vec<FqElement>>,
}

impl Builder {
    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut a = vec![0; self.neg.len()];
        for slot in a.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        a
    }

    fn encode(&self, a: &[usize]) -> usize {
        a.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn unit(&self, idx: usize) -> Vec<FqElement> {
        let mut v = vec![self.field.zero(); self.dim];
        v[idx] = self.field.one();
        v
    }

    fn act_vec(&mut self, x: GlBasisElement, w: &[FqElement]) -> Vec<FqElement> {
        let mut out = vec![self.field.zero(); self.dim];
        for (c, wc) in w.iter().enumerate() {
            if wc.is_zero() {
                continue;
            }
            let col = self.act(x, c);
            for (o, v) in out.iter_mut().zip(&col) {
                if !v.is_zero() {
                    *o = *o + *wc * *v;
                }
            }
        }
        out
    }

    fn act(&mut self, x: GlBasisElement, idx: usize) -> Vec<FqElement> {
        if let Some(v) = self.memo.get(&(x, idx)) {
            return v.clone();
        }
        let mut a = self.decode(idx);
        let first = a.iter().position(|&e| e > 0);
        let xpos = self.neg.iter().position(|&y| y == x);
        let result = match (first, xpos) {
            (None, Some(s)) => {
                a[s] = 1;
                self.unit(self.encode(&a))
            }
            (None, None) if x.row == x.col => {
                let mut v = vec![self.field.zero(); self.dim];
                v[0] = self.lambda[x.row - 1];
                v
            }
            (None, None) => vec![self.field.zero(); self.dim],
            (Some(t), Some(s)) if s <= t => {
                a[s] += 1;
                if a[s] == self.p {
                    vec![self.field.zero(); self.dim]
                } else {
                    self.unit(self.encode(&a))
                }
            }
            (Some(t), _) => {
                let y = self.neg[t];
                a[t] -= 1;
                let rest = self.encode(&a);
                let xr = self.act(x, rest);
                let mut out = self.act_vec(y, &xr);
                for (z, c) in supercommutator(&self.shape, x, y) {
                    let zr = self.act(z, rest);
                    let c = self.field.from_i64(c);
                    for (o, v) in out.iter_mut().zip(&zr) {
                        *o = *o + c * *v;
                    }
                }
                out
            }
        };
        self.memo.insert((x, idx), result.clone());
        result
    }
}

/// Baby Verma module of `𝔤₀̄` with highest weight `λ` and p-character `χ`.
/// Requires `λ_i^p − λ_i = χ_i^p` for every `i`.
pub fn baby_verma_g0(shape: &Shape, lambda: &Weight<FqElement>, chi: &PChar) -> Result<GModule> {
    let nn = shape.size();
    if lambda.len() != nn || chi.diag().len() != nn {
        return Err(Error::ShapeMismatch(format!(
            "weight and p-character need {nn} coordinates"
        )));
    }
    let field = chi.field();
    if lambda
        .coords
        .iter()
        .any(|x| !std::ptr::eq(x.field(), field))
    {
        return Err(Error::ShapeMismatch(
            "λ and χ live in different fields".into(),
        ));
    }
    let p = field.characteristic();
    for (i, (l, c)) in lambda.coords.iter().zip(chi.diag()).enumerate() {
        if l.pow(p) - *l != c.pow(p) {
            return Err(Error::Precondition(format!(
                "λ_{} = {l} violates λ^p − λ = χ^p with χ_{} = {c}",
                i + 1,
                i + 1
            )));
        }
    }
    let mut neg: Vec<GlBasisElement> = all_basis_elements(shape)
        .into_iter()
        .filter(|e| e.row > e.col && !e.is_odd(shape))
        .collect();
    neg.sort_by(|a, b| b.row.cmp(&a.row).then(a.col.cmp(&b.col)));
    let needed = (p as u128)
        .checked_pow(neg.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > MAX_VERMA_DIM {
        return Err(Error::ResourceCap {
            what: "baby Verma dimension".into(),
            needed,
            cap: MAX_VERMA_DIM,
        });
    }
    let dim = needed as usize;
    let mut b = Builder {
        shape: *shape,
        field,
        lambda: lambda.coords.clone(),
        p: p as usize,
        neg,
        dim,
        memo: HashMap::new(),
    };
    let mut actions = vec![None; nn * nn];
    for x in all_basis_elements(shape) {
        if x.is_odd(shape) {
            continue;
        }
        let mut m = Matrix::zeros(dim, dim, field.zero());
        for c in 0..dim {
            for (r, v) in b.act(x, c).into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v);
                }
            }
        }
        actions[(x.row - 1) * nn + (x.col - 1)] = Some(m);
    }
    Ok(GModule::from_parts(
        *shape,
        field,
        Acting::Even,
        vec![false; dim],
        actions,
        chi.clone(),
    ))
}
