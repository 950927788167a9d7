//! Multivariate polynomials in commuting variables with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::scalar::Scalar;

/// Sparse polynomial in `nvars` commuting variables; exponent vectors map to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize, unit: C) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, unit.one_like());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(exps)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero_scalar() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero_scalar() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Evaluates with a coefficient embedding into the point's ring.
    pub fn evaluate_with<T: Scalar>(&self, point: &[T], unit: &T, embed: impl Fn(&C) -> T) -> T {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(unit.zero_like(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(embed(c), |m, (&k, x)| (0..k).fold(m, |m, _| m * x.clone()));
            acc + mono
        })
    }
}

impl Poly<BigInt> {
    pub fn evaluate<T: Scalar>(&self, point: &[T], unit: &T) -> T {
        self.evaluate_with(point, unit, |c| unit.from_bigint_like(c))
    }

    /// Canonical JSON: terms sorted by exponent vector, coefficients as strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "exp": e, "coeff": c.to_string() }))
            .collect();
        json!({ "nvars": self.nvars, "terms": terms })
    }
}

impl fmt::Display for Poly<BigInt> {
    /// Renders with variables `λ1 … λN`, highest exponent vectors first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("λ{}", i + 1)
                    } else {
                        format!("λ{}^{}", i + 1, k)
                    }
                })
                .collect();
            let negative = c.sign() == num_bigint::Sign::Minus;
            let mag = if negative { -c.clone() } else { c.clone() };
            let sign = match (first, negative) {
                (true, true) => "-".to_string(),
                (true, false) => String::new(),
                (false, true) => " - ".to_string(),
                (false, false) => " + ".to_string(),
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == BigInt::from(1) {
                mono.join("·")
            } else {
                format!("{}·{}", mag, mono.join("·"))
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn product_and_cancellation() {
        let x = Poly::var(2, 0, int(1));
        let y = Poly::var(2, 1, int(1));
        let s = x.add(&y);
        let d = x.sub(&y);
        let prod = s.mul(&d);
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expected);
        assert_eq!(prod.total_degree(), Some(2));
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn evaluation_and_display() {
        let x = Poly::var(2, 0, int(1));
        let p = x.mul(&x).add(&Poly::constant(2, int(-3)));
        assert_eq!(p.evaluate(&[int(4), int(0)], &int(1)), int(13));
        assert_eq!(p.to_string(), "λ1^2 - 3");
    }
}
