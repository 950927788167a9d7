use super::{Acting, GModule};
use crate::error::{Error, Result};
use crate::fq::FqElement;
use crate::matrix::{Matrix, Subspace};
use crate::superpbw::GlBasisElement;

/// Default bound on the number of singular lines [`is_simple`] may spin.
pub const DEFAULT_LINE_CAP: u128 = 100_000;

/// A weight (or `None` when no diagonal unit acts) and a basis of the
/// common kernel inside that weight space.
pub type WeightKernel = (Option<Vec<FqElement>>, Vec<Vec<FqElement>>);

fn weight_groups(m: &GModule) -> Result<Vec<(Option<Vec<FqElement>>, Vec<usize>)>> {
    let Some(weights) = m.basis_weights()? else {
        return Ok(vec![(None, (0..m.dim()).collect())]);
    };
    let mut groups: Vec<(Option<Vec<FqElement>>, Vec<usize>)> = Vec::new();
    for (i, w) in weights.into_iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| g.as_ref() == Some(&w)) {
            Some((_, idx)) => idx.push(i),
            None => groups.push((Some(w), vec![i])),
        }
    }
    Ok(groups)
}

/// Common kernel of `units`, split along the weight spaces of `m`.
pub fn joint_kernel_by_weight(m: &GModule, units: &[GlBasisElement]) -> Result<Vec<WeightKernel>> {
    let zero = m.field().zero();
    let mats: Vec<&Matrix<FqElement>> = units.iter().filter_map(|&u| m.action(u)).collect();
    let mut out = Vec::new();
    for (w, idx) in weight_groups(m)? {
        let mut rows = Vec::new();
        for a in &mats {
            for r in 0..m.dim() {
                let row: Vec<FqElement> = idx.iter().map(|&c| *a.get(r, c)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..idx.len())
                .map(|i| {
                    let mut e = vec![zero; idx.len()];
                    e[i] = m.field().one();
                    e
                })
                .collect()
        } else {
            Matrix::from_rows(rows, zero).kernel()
        };
        let basis = kernel
            .into_iter()
            .map(|k| {
                let mut v = vec![zero; m.dim()];
                for (&c, x) in idx.iter().zip(k) {
                    v[c] = x;
                }
                v
            })
            .collect::<Vec<_>>();
        if !basis.is_empty() {
            out.push((w, basis));
        }
    }
    Ok(out)
}

fn positive_units(m: &GModule) -> Vec<GlBasisElement> {
    m.acting_elements()
        .into_iter()
        .filter(|e| e.row < e.col)
        .collect()
}

/// Vectors killed by every acting positive unit, by weight.
pub fn singular_space(m: &GModule) -> Result<Vec<WeightKernel>> {
    joint_kernel_by_weight(m, &positive_units(m))
}

/// `M^{𝔤₁}`, by weight.
pub fn invariants_g1(m: &GModule) -> Result<Vec<WeightKernel>> {
    if m.acting() == Acting::Even {
        return Err(Error::Precondition("𝔤₁ does not act on a 𝔤₀̄-module".into()));
    }
    let units: Vec<GlBasisElement> = m
        .acting_elements()
        .into_iter()
        .filter(|e| e.row < e.col && e.is_odd(m.shape()))
        .collect();
    joint_kernel_by_weight(m, &units)
}

/// The submodule generated by a nonzero `v`.
pub fn spin(m: &GModule, v: &[FqElement]) -> Result<Subspace<FqElement>> {
    if v.len() != m.dim() {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} in a module of dimension {}",
            v.len(),
            m.dim()
        )));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("cannot spin the zero vector".into()));
    }
    let mats: Vec<&Matrix<FqElement>> = m
        .acting_elements()
        .into_iter()
        .filter_map(|u| m.action(u))
        .collect();
    let mut sub = Subspace::new(m.dim(), m.field().zero());
    let mut queue = Vec::new();
    if sub.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        if sub.dim() == m.dim() {
            break;
        }
        for a in &mats {
            let x = a.mul_vec(&w);
            if sub.insert(x.clone()) {
                queue.push(x);
            }
        }
    }
    Ok(sub)
}

fn line_count(q: u64, d: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..d {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

/// Calls `visit` with one representative of every line in `span(basis)`,
/// normalised so the first nonzero coefficient is 1. Stops early when
/// `visit` returns `false`.
fn for_each_line(
    basis: &[Vec<FqElement>],
    elements: &[FqElement],
    mut visit: impl FnMut(Vec<FqElement>) -> Result<bool>,
) -> Result<bool> {
    let d = basis.len();
    let q = elements.len();
    for lead in 0..d {
        let free = d - lead - 1;
        let mut digits = vec![0usize; free];
        loop {
            let mut v = basis[lead].clone();
            for (t, &dg) in digits.iter().enumerate() {
                if dg == 0 {
                    continue;
                }
                let c = elements[dg];
                for (x, b) in v.iter_mut().zip(&basis[lead + 1 + t]) {
                    *x = *x + c * *b;
                }
            }
            if !visit(v)? {
                return Ok(false);
            }
            let mut pos = 0;
            while pos < free {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
    Ok(true)
}

fn check_lines(m: &GModule, singular: &[WeightKernel], line_cap: u128) -> Result<()> {
    let q = m.field().order();
    let needed = singular.iter().fold(0u128, |acc, (_, b)| {
        acc.saturating_add(line_count(q, b.len()))
    });
    if needed > line_cap {
        return Err(Error::ResourceCap {
            what: "singular lines".into(),
            needed,
            cap: line_cap,
        });
    }
    Ok(())
}

/// Simplicity oracle: every nonzero submodule contains a singular weight
/// vector, so `M` is simple iff each singular line generates `M`.
pub fn is_simple(m: &GModule, line_cap: u128) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let singular = singular_space(m)?;
    if singular.is_empty() {
        return Err(Error::Internal("module without singular vectors".into()));
    }
    check_lines(m, &singular, line_cap)?;
    let elements: Vec<FqElement> = m.field().elements().collect();
    for (_, basis) in &singular {
        let all_full = for_each_line(basis, &elements, |v| Ok(spin(m, &v)?.dim() == m.dim()))?;
        if !all_full {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Simplicity by spinning every nonzero vector of `M`; no weight theory.
pub fn brute_force_is_simple(m: &GModule, vector_cap: u128) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let needed = line_count(m.field().order(), m.dim());
    if needed > vector_cap {
        return Err(Error::ResourceCap {
            what: "vectors to spin".into(),
            needed,
            cap: vector_cap,
        });
    }
    let zero = m.field().zero();
    let basis: Vec<Vec<FqElement>> = (0..m.dim())
        .map(|i| {
            let mut v = vec![zero; m.dim()];
            v[i] = m.field().one();
            v
        })
        .collect();
    let elements: Vec<FqElement> = m.field().elements().collect();
    for_each_line(&basis, &elements, |v| Ok(spin(m, &v)?.dim() == m.dim()))
}

/// The simple head `M / rad M`, for `M` generated by a highest weight
/// vector: repeatedly divides by the sum of all proper submodules
/// generated by singular lines.
pub fn simple_head(m: &GModule, line_cap: u128) -> Result<GModule> {
    let mut cur = m.clone();
    for _ in 0..=m.dim() {
        let singular = singular_space(&cur)?;
        check_lines(&cur, &singular, line_cap)?;
        let elements: Vec<FqElement> = cur.field().elements().collect();
        let mut radical = Subspace::new(cur.dim(), cur.field().zero());
        for (_, basis) in &singular {
            for_each_line(basis, &elements, |v| {
                if !radical.contains(&v) {
                    let s = spin(&cur, &v)?;
                    if s.dim() < cur.dim() {
                        for b in s.basis() {
                            radical.insert(b);
                        }
                    }
                }
                Ok(true)
            })?;
        }
        if radical.dim() == 0 {
            return Ok(cur);
        }
        if radical.dim() == cur.dim() {
            return Err(Error::Internal(
                "proper submodules span the whole module".into(),
            ));
        }
        cur = cur.quotient(&radical);
    }
    Err(Error::Internal("simple head did not stabilise".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::fq_make;
    use crate::modrep::{baby_verma_g0, regular_g1_module, PChar};
    use crate::rootdata::{Shape, Weight};

    fn verma(p: u64, m: usize, n: usize, lam: &[i64]) -> GModule {
        let f = fq_make(p, 1).unwrap();
        let s = Shape::new(m, n).unwrap();
        let w = Weight::new(lam.iter().map(|&x| f.from_i64(x)).collect());
        baby_verma_g0(&s, &w, &PChar::zero(&s, f)).unwrap()
    }

    #[test]
    fn gl2_heads() {
        let z = verma(3, 2, 0, &[1, 0]);
        assert!(!is_simple(&z, DEFAULT_LINE_CAP).unwrap());
        let l = simple_head(&z, DEFAULT_LINE_CAP).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(is_simple(&l, DEFAULT_LINE_CAP).unwrap());
        l.check_representation().unwrap();

        let z = verma(3, 2, 0, &[2, 0]);
        assert!(is_simple(&z, DEFAULT_LINE_CAP).unwrap());
        assert_eq!(simple_head(&z, DEFAULT_LINE_CAP).unwrap().dim(), 3);
    }

    #[test]
    fn oracle_agrees_with_brute_force() {
        for lam in [[0, 0], [1, 0], [2, 0], [0, 1], [2, 1]] {
            let z = verma(3, 2, 0, &lam);
            assert_eq!(
                is_simple(&z, 1000).unwrap(),
                brute_force_is_simple(&z, 1000).unwrap()
            );
        }
    }

    #[test]
    fn regular_module_invariants_are_the_top() {
        let f = fq_make(3, 1).unwrap();
        let s = Shape::new(1, 2).unwrap();
        let u = regular_g1_module(&s, f).unwrap();
        let inv = invariants_g1(&u).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].1.len(), 1);
        assert!(!inv[0].1[0][3].is_zero());
    }

    #[test]
    fn line_cap_is_enforced() {
        let z = verma(3, 2, 0, &[2, 0]);
        assert!(matches!(is_simple(&z, 0), Err(Error::ResourceCap { .. })));
    }
}
