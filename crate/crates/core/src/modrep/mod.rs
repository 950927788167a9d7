//! Finite-dimensional ℤ₂-graded representations over 𝔽_q: baby Verma
//! modules of 𝔤₀̄ = gl(m) ⊕ gl(n), Kac induction, a spinning simplicity
//! oracle, 𝔤₁-invariants, and the scans built from them.

mod crosscheck;
mod kac;
mod scan;
mod simple;
mod theorem53;
mod verma;

pub use crosscheck::{cross_layer_check, CrossCheckReport};
pub use kac::{f_top_matrix, induce_kac, regular_g1_module};
pub use scan::{scan_simplicity, ScanReport, ScanRow};
pub use simple::{
    brute_force_is_simple, invariants_g1, is_simple, joint_kernel_by_weight, simple_head,
    singular_space, spin, DEFAULT_LINE_CAP,
};
pub use theorem53::{
    admissible_lambdas, smallest_admissible_field, verify_theorem53_consequences, Theorem53Report,
    Theorem53Row,
};
pub use verma::baby_verma_g0;

use crate::error::{Error, Result};
use crate::fq::{FqElement, FqField};
use crate::matrix::Matrix;
use crate::rootdata::Shape;
use crate::superpbw::{all_basis_elements, supercommutator, GlBasisElement};

/// A p-character supported on the diagonal of 𝔤₀̄.
#[derive(Clone, Debug, PartialEq)]
pub struct PChar {
    diag: Vec<FqElement>,
}

impl PChar {
    pub fn zero(shape: &Shape, field: &'static FqField) -> Self {
        PChar {
            diag: vec![field.zero(); shape.size()],
        }
    }

    pub fn diagonal(values: Vec<FqElement>) -> Self {
        PChar { diag: values }
    }

    pub fn from_ints(field: &'static FqField, values: &[i64]) -> Self {
        PChar {
            diag: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// `χ(e_ab)`; zero off the diagonal.
    pub fn value(&self, e: GlBasisElement) -> FqElement {
        if e.row == e.col {
            self.diag[e.row - 1]
        } else {
            self.field().zero()
        }
    }

    pub fn diag(&self) -> &[FqElement] {
        &self.diag
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(|x| x.is_zero())
    }

    pub fn field(&self) -> &'static FqField {
        self.diag[0].field()
    }

    /// The same values read in a larger field of the same characteristic;
    /// values must lie in the prime subfield.
    pub fn lift(&self, field: &'static FqField) -> Result<Self> {
        let diag = self
            .diag
            .iter()
            .map(|x| {
                x.prime_value().map(|v| field.element(v)).ok_or_else(|| {
                    Error::Precondition("p-character value outside the prime field".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PChar { diag })
    }
}

/// Which subalgebra acts on a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acting {
    /// 𝔤₀̄ = gl(m) ⊕ gl(n)
    Even,
    /// all of gl(m|n)
    Full,
    /// the odd abelian part 𝔤₁ spanned by `e_ij`, `(i,j) ∈ 𝓘₁`
    OddPositive,
}

impl Acting {
    pub fn contains(&self, shape: &Shape, e: GlBasisElement) -> bool {
        match self {
            Acting::Even => !e.is_odd(shape),
            Acting::Full => true,
            Acting::OddPositive => e.is_odd(shape) && e.row < e.col,
        }
    }
}

/// A representation given by one action matrix per acting matrix unit.
#[derive(Clone, Debug)]
pub struct GModule {
    shape: Shape,
    field: &'static FqField,
    acting: Acting,
    /// `true` marks an odd basis vector.
    grading: Vec<bool>,
    actions: Vec<Option<Matrix<FqElement>>>,
    pchar: PChar,
}

impl GModule {
    pub(crate) fn from_parts(
        shape: Shape,
        field: &'static FqField,
        acting: Acting,
        grading: Vec<bool>,
        actions: Vec<Option<Matrix<FqElement>>>,
        pchar: PChar,
    ) -> Self {
        GModule {
            shape,
            field,
            acting,
            grading,
            actions,
            pchar,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> &'static FqField {
        self.field
    }

    pub fn acting(&self) -> Acting {
        self.acting
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn grading(&self) -> &[bool] {
        &self.grading
    }

    pub fn pchar(&self) -> &PChar {
        &self.pchar
    }

    pub(crate) fn index(&self, e: GlBasisElement) -> usize {
        (e.row - 1) * self.shape.size() + (e.col - 1)
    }

    pub fn action(&self, e: GlBasisElement) -> Option<&Matrix<FqElement>> {
        self.actions[self.index(e)].as_ref()
    }

    /// The acting matrix units, row-major.
    pub fn acting_elements(&self) -> Vec<GlBasisElement> {
        all_basis_elements(&self.shape)
            .into_iter()
            .filter(|&e| self.action(e).is_some())
            .collect()
    }

    pub fn zero_matrix(&self) -> Matrix<FqElement> {
        Matrix::zeros(self.dim(), self.dim(), self.field.zero())
    }

    /// Matrix of an ordered product of acting units.
    pub fn word_matrix(&self, word: &[GlBasisElement]) -> Result<Matrix<FqElement>> {
        let mut acc = Matrix::identity(self.dim(), self.field.one());
        for &e in word {
            let m = self
                .action(e)
                .ok_or_else(|| Error::Precondition(format!("{e} does not act on this module")))?;
            acc = acc.mul(m);
        }
        Ok(acc)
    }

    /// `Mat(x)Mat(y) − (−1)^{x̄ȳ}Mat(y)Mat(x) = Mat([x,y])` for all acting pairs.
    pub fn check_representation(&self) -> Result<()> {
        let elems = self.acting_elements();
        for &x in &elems {
            for &y in &elems {
                let mx = self.action(x).unwrap();
                let my = self.action(y).unwrap();
                let lhs = if x.is_odd(&self.shape) && y.is_odd(&self.shape) {
                    mx.mul(my).add(&my.mul(mx))
                } else {
                    mx.mul(my).sub(&my.mul(mx))
                };
                let mut rhs = self.zero_matrix();
                for (z, c) in supercommutator(&self.shape, x, y) {
                    let mz = self.action(z).ok_or_else(|| {
                        Error::Internal(format!("[{x},{y}] leaves the acting subalgebra"))
                    })?;
                    rhs = rhs.add(&mz.scale(&self.field.from_i64(c)));
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "supercommutator identity fails for ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Mat(x)^p − Mat(x^{[p]}) = χ(x)^p·Id` for every acting even unit.
    pub fn check_p_character(&self) -> Result<()> {
        let p = self.field.characteristic();
        let id = Matrix::identity(self.dim(), self.field.one());
        for x in self.acting_elements() {
            if x.is_odd(&self.shape) {
                continue;
            }
            let mx = self.action(x).unwrap();
            let mut lhs = mx.pow(p);
            if x.row == x.col {
                lhs = lhs.sub(mx);
            }
            let rhs = id.scale(&self.pchar.value(x).pow(p));
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "p-character identity fails for {x}"
                )));
            }
        }
        Ok(())
    }

    /// Odd units swap the ℤ₂ components and even units preserve them.
    pub fn check_grading(&self) -> Result<()> {
        for x in self.acting_elements() {
            let odd = x.is_odd(&self.shape);
            let m = self.action(x).unwrap();
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if !m.get(r, c).is_zero() && ((self.grading[r] != self.grading[c]) != odd) {
                        return Err(Error::Internal(format!("{x} does not respect the grading")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Weight of each basis vector, when every acting diagonal unit is a
    /// diagonal matrix. `None` if no diagonal unit acts.
    pub fn basis_weights(&self) -> Result<Option<Vec<Vec<FqElement>>>> {
        let nn = self.shape.size();
        let diag: Vec<GlBasisElement> = (1..=nn).map(|i| GlBasisElement::e(i, i)).collect();
        if diag.iter().any(|&h| self.action(h).is_none()) {
            return Ok(None);
        }
        let mut weights = vec![Vec::with_capacity(nn); self.dim()];
        for h in diag {
            let m = self.action(h).unwrap();
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if r != c && !m.get(r, c).is_zero() {
                        return Err(Error::Internal(format!(
                            "{h} is not diagonal in the module basis"
                        )));
                    }
                }
                weights[r].push(*m.get(r, r));
            }
        }
        Ok(Some(weights))
    }

    /// Action on `V/N` in the basis of the non-pivot coordinates of `N`.
    pub fn quotient(&self, sub: &crate::matrix::Subspace<FqElement>) -> GModule {
        let pivots = sub.pivots();
        let keep: Vec<usize> = (0..self.dim()).filter(|c| !pivots.contains(c)).collect();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                a.as_ref().map(|m| {
                    let mut q = Matrix::zeros(keep.len(), keep.len(), self.field.zero());
                    for (qc, &c) in keep.iter().enumerate() {
                        let col = sub.reduce(m.column(c));
                        for (qr, &r) in keep.iter().enumerate() {
                            q.set(qr, qc, col[r]);
                        }
                    }
                    q
                })
            })
            .collect();
        GModule {
            shape: self.shape,
            field: self.field,
            acting: self.acting,
            grading: keep.iter().map(|&i| self.grading[i]).collect(),
            actions,
            pchar: self.pchar.clone(),
        }
    }

    /// Whether `span(vectors)` is stable under every acting unit.
    pub fn is_stable(&self, vectors: &[Vec<FqElement>], units: &[GlBasisElement]) -> bool {
        let sub = crate::matrix::Subspace::spanned_by(self.dim(), self.field.zero(), vectors);
        units.iter().all(|&u| match self.action(u) {
            Some(m) => vectors.iter().all(|v| sub.contains(&m.mul_vec(v))),
            None => true,
        })
    }
}
