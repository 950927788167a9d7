//! Root datum of gl(m|n): index sets, roots, the signed form, ρ-vectors,
//! the order ≺ on odd pairs and the typicality polynomial.
//!
//! Indices are 1-based throughout, matching the matrix units `e_{ij}`.
//! Weights are stored by their values on `e_11, …, e_NN` with `N = m + n`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fq::{FqElement, FqField};
use crate::poly::Poly;
use crate::scalar::{rational, rational_as_integer, rational_int, rational_to_string, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    /// `m = 0` or `n = 0` is accepted as the purely even edge case.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::OutOfRange("gl(0|0) has no basis".into()));
        }
        Ok(Shape { m, n })
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Number of odd positive roots, `|𝓘₁| = mn`.
    pub fn odd_dim(&self) -> usize {
        self.m * self.n
    }

    pub fn is_odd_index(&self, i: usize) -> bool {
        i > self.m
    }

    /// `(ε_i, ε_i)`: `+1` for `i ≤ m`, `−1` otherwise.
    pub fn form_sign(&self, i: usize) -> i64 {
        if i <= self.m {
            1
        } else {
            -1
        }
    }

    /// `𝓘₀`: pairs `i < j` inside one diagonal block.
    pub fn even_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.size() {
            for j in (i + 1)..=self.size() {
                if (j <= self.m) || (i > self.m) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `𝓘₁` sorted by ≺.
    pub fn odd_pairs(&self) -> Vec<OddPair> {
        let mut out: Vec<OddPair> = (1..=self.m)
            .flat_map(|i| (self.m + 1..=self.size()).map(move |j| OddPair { i, j }))
            .collect();
        out.sort_by(odd_order_cmp);
        out
    }

    pub fn odd_pair(&self, i: usize, j: usize) -> Result<OddPair> {
        if (1..=self.m).contains(&i) && (self.m + 1..=self.size()).contains(&j) {
            Ok(OddPair { i, j })
        } else {
            Err(Error::OutOfRange(format!(
                "({i},{j}) is not in I_1 for gl({}|{})",
                self.m, self.n
            )))
        }
    }

    /// Position of a pair in the ≺-sorted list of `𝓘₁`.
    pub fn odd_rank(&self, pair: OddPair) -> usize {
        // larger j first, then smaller i
        (self.size() - pair.j) * self.m + (pair.i - 1)
    }

    fn check_len<T>(&self, w: &Weight<T>) -> Result<()> {
        if w.coords.len() != self.size() {
            return Err(Error::ShapeMismatch(format!(
                "weight has {} coordinates, gl({}|{}) needs {}",
                w.coords.len(),
                self.m,
                self.n,
                self.size()
            )));
        }
        Ok(())
    }

    /// `(λ, μ) = Σ_{i≤m} λ_i μ_i − Σ_{i>m} λ_i μ_i`.
    pub fn bilinear_form<T: Scalar>(&self, lambda: &Weight<T>, mu: &Weight<T>) -> Result<T> {
        self.check_len(lambda)?;
        self.check_len(mu)?;
        let unit = lambda.coords.first().expect("nonempty weight");
        Ok(lambda.coords.iter().zip(&mu.coords).enumerate().fold(
            unit.zero_like(),
            |acc, (idx, (a, b))| {
                let t = a.clone() * b.clone();
                if self.form_sign(idx + 1) > 0 {
                    acc + t
                } else {
                    acc - t
                }
            },
        ))
    }

    /// `ε_i − ε_j`.
    pub fn root<T: Scalar>(&self, i: usize, j: usize, unit: &T) -> Weight<T> {
        Weight::epsilon(self.size(), i, unit).sub(&Weight::epsilon(self.size(), j, unit))
    }

    pub fn even_positive_roots(&self) -> Vec<Weight<BigRational>> {
        let one = rational_int(1);
        self.even_pairs()
            .into_iter()
            .map(|(i, j)| self.root(i, j, &one))
            .collect()
    }

    pub fn odd_positive_roots(&self) -> Vec<Weight<BigRational>> {
        let one = rational_int(1);
        self.odd_pairs()
            .into_iter()
            .map(|p| self.root(p.i, p.j, &one))
            .collect()
    }

    pub fn rho(&self) -> RhoVectors {
        let half = rational(1, 2);
        let zero = Weight::zero(self.size(), &half);
        let sum = |roots: Vec<Weight<BigRational>>| {
            roots
                .iter()
                .fold(zero.clone(), |acc, r| acc.add(r))
                .scale(&half)
        };
        let rho0 = sum(self.even_positive_roots());
        let rho1 = sum(self.odd_positive_roots());
        let rho = rho0.sub(&rho1);
        RhoVectors { rho0, rho1, rho }
    }

    /// `μ(h_α)` for `α = ε_i − ε_j ∈ Φ⁺₁`, where `h_α = e_ii + e_jj`.
    pub fn h_alpha_eval<T: Scalar>(&self, pair: OddPair, mu: &Weight<T>) -> Result<T> {
        self.check_len(mu)?;
        self.odd_pair(pair.i, pair.j)?;
        Ok(mu.coords[pair.i - 1].clone() + mu.coords[pair.j - 1].clone())
    }

    /// `α_i = −2ρ₁ + Σ_{k=1..i}(ε_k − ε_{m+n})`, the weight of
    /// `f_{>(i,m+n)} v_λ` relative to `λ`.
    pub fn weight_after_odd_tail(&self, i: usize) -> Result<Weight<BigRational>> {
        if !(1..=self.m).contains(&i) || self.n == 0 {
            return Err(Error::OutOfRange(format!("i = {i} not in 1..={}", self.m)));
        }
        let one = rational_int(1);
        let rho1 = self.rho().rho1;
        let mut w = rho1.scale(&rational_int(-2));
        for k in 1..=i {
            w = w.add(&self.root(k, self.size(), &one));
        }
        Ok(w)
    }

    /// Evaluates `(−ρ₀ − ρ₁ + Σ_{k≤i}(ε_k − ε_N), ε_i − ε_N)` exactly.
    pub fn formula_1_value(&self, i: usize) -> Result<BigRational> {
        if !(1..=self.m).contains(&i) || self.n == 0 {
            return Err(Error::OutOfRange(format!("i = {i} not in 1..={}", self.m)));
        }
        let one = rational_int(1);
        let RhoVectors { rho0, rho1, .. } = self.rho();
        let mut w = rho0.add(&rho1).scale(&rational_int(-1));
        for k in 1..=i {
            w = w.add(&self.root(k, self.size(), &one));
        }
        self.bilinear_form(&w, &self.root(i, self.size(), &one))
    }

    pub fn check_formula_1(&self, i: usize) -> Result<bool> {
        Ok(num_traits::Zero::is_zero(&self.formula_1_value(i)?))
    }

    /// `Σ_{k>m}(ε_k − ε_N) − Σ_{k≤m}(ε_k − ε_N)`, the correction with
    /// `ρ(m,n) = ρ(m,n−1) + ½·(this)`.
    pub fn rho_step_vector(&self) -> Weight<BigRational> {
        let one = rational_int(1);
        let nn = self.size();
        let mut w = Weight::zero(nn, &one);
        for k in (self.m + 1)..=nn {
            w = w.add(&self.root(k, nn, &one));
        }
        for k in 1..=self.m {
            w = w.sub(&self.root(k, nn, &one));
        }
        w
    }

    pub fn typicality_poly(&self) -> Result<TypicalityPolynomial> {
        let rho = self.rho().rho;
        let one = rational_int(1);
        let factors = self
            .odd_pairs()
            .into_iter()
            .map(|pair| {
                let c = self.bilinear_form(&rho, &self.root(pair.i, pair.j, &one))?;
                let constant = rational_as_integer(&c).ok_or_else(|| {
                    Error::Internal(format!(
                        "typicality constant {c} for ({},{}) is not integral",
                        pair.i, pair.j
                    ))
                })?;
                Ok(TypicalityFactor { pair, constant })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TypicalityPolynomial {
            shape: *self,
            factors,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OddPair {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for OddPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `(i,j) ≺ (s,t)` iff `j > t`, or `j = t` and `i < s`.
pub fn odd_order_cmp(a: &OddPair, b: &OddPair) -> Ordering {
    b.j.cmp(&a.j).then(a.i.cmp(&b.i))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Weight<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> Weight<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Weight { coords }
    }

    pub fn zero(len: usize, unit: &T) -> Self {
        Weight {
            coords: vec![unit.zero_like(); len],
        }
    }

    /// `ε_i` (1-based).
    pub fn epsilon(len: usize, i: usize, unit: &T) -> Self {
        let mut w = Self::zero(len, unit);
        w.coords[i - 1] = unit.one_like();
        w
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.len(), rhs.len());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.len(), rhs.len());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Weight {
            coords: self.coords.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }
}

impl Weight<BigRational> {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|q| Value::String(rational_to_string(q)))
                .collect(),
        )
    }

    /// Image in 𝔽_q; denominators must be prime to the characteristic.
    pub fn reduce_mod(&self, field: &'static FqField) -> Result<Weight<FqElement>> {
        let coords = self
            .coords
            .iter()
            .map(|q| {
                let den = field.from_bigint(q.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::Precondition(format!(
                        "denominator of {q} vanishes mod {}",
                        field.characteristic()
                    ))
                })?;
                Ok(field.from_bigint(q.numer()) * inv)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoVectors {
    pub rho0: Weight<BigRational>,
    pub rho1: Weight<BigRational>,
    pub rho: Weight<BigRational>,
}

/// One factor `λ_i + λ_j + c` of the typicality polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TypicalityFactor {
    pub pair: OddPair,
    pub constant: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypicalityPolynomial {
    pub shape: Shape,
    pub factors: Vec<TypicalityFactor>,
}

impl TypicalityPolynomial {
    pub fn evaluate<T: Scalar>(&self, lambda: &Weight<T>) -> Result<T> {
        self.shape.check_len(lambda)?;
        let unit = &lambda.coords[0];
        Ok(self.factors.iter().fold(unit.one_like(), |acc, f| {
            let v = lambda.coords[f.pair.i - 1].clone()
                + lambda.coords[f.pair.j - 1].clone()
                + unit.from_bigint_like(&f.constant);
            acc * v
        }))
    }

    /// Product of the factors as a polynomial in `λ_1 … λ_N`.
    pub fn expand(&self) -> Poly<BigInt> {
        let nv = self.shape.size();
        let one = BigInt::from(1);
        self.factors
            .iter()
            .fold(Poly::constant(nv, one.clone()), |acc, f| {
                let lin = Poly::var(nv, f.pair.i - 1, one.clone())
                    .add(&Poly::var(nv, f.pair.j - 1, one.clone()))
                    .add(&Poly::constant(nv, f.constant.clone()));
                acc.mul(&lin)
            })
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| json!({ "i": f.pair.i, "j": f.pair.j, "constant": format!("{}/1", f.constant) }))
            .collect();
        json!({ "m": self.shape.m, "n": self.shape.n, "factors": factors })
    }
}

impl fmt::Display for TypicalityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for factor in &self.factors {
            let c = &factor.constant;
            let tail = match c.sign() {
                num_bigint::Sign::NoSign => String::new(),
                num_bigint::Sign::Plus => format!(" + {c}"),
                num_bigint::Sign::Minus => format!(" - {}", -c.clone()),
            };
            write!(f, "(λ{} + λ{}{})", factor.pair.i, factor.pair.j, tail)?;
        }
        Ok(())
    }
}
