//! Rewriting of words in U(gl(m|n)) into PBW normal form.
//!
//! A normal monomial is a non-decreasing sequence of ranks in [`PbwOrder`]
//! with no repeated odd factor. Products are computed by left-multiplying
//! one generator at a time onto normal monomials:
//!
//! * `x < y`: prepend;
//! * `x = y` odd: `x² = ½[x,x] = 0`;
//! * `x > y`: `x·y·r = (−1)^{x̄ȳ} y·(x·r) + [x,y]·r`.
//!
//! Termination: the commutator term has lower filtration degree, and the
//! swapped term has the same degree with one inversion fewer, so the
//! recursion is well-founded on (degree, inversions). Results of
//! `generator · monomial` are memoized per engine.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{factor_weight, supercommutator, GlBasisElement, Part, PbwOrder, SuperWord};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rootdata::Shape;
use crate::scalar::Scalar;

/// A linear combination of normal monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwElement<C> {
    shape: Shape,
    terms: BTreeMap<Vec<u16>, C>,
}

type Terms<C> = Vec<(Vec<u16>, C)>;

impl<C: Scalar> PbwElement<C> {
    pub fn zero(shape: Shape) -> Self {
        PbwElement {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (ranks, coefficient) in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &C)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, mono: Vec<u16>, c: C) {
        if c.is_zero_scalar() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero_scalar() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> PbwElement<D> {
        let mut out = PbwElement::zero(self.shape);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// The matrix-unit factors of each term, in order.
    pub fn factor_terms(&self, order: &PbwOrder) -> Vec<(Vec<GlBasisElement>, C)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.iter().map(|&r| order.element(r)).collect(), c.clone()))
            .collect()
    }

    /// Keeps the terms with empty `N⁻` and `N⁺` parts, as a polynomial in
    /// the diagonal generators `e_11 … e_NN`.
    pub fn hc_project(&self, order: &PbwOrder) -> Poly<C> {
        let nn = self.shape.size();
        let mut out = Poly::zero(nn);
        for (m, c) in &self.terms {
            let factors: Vec<GlBasisElement> = m.iter().map(|&r| order.element(r)).collect();
            if factors.iter().all(|e| e.part() == Part::Diag) {
                out.add_term(diag_exponents(nn, &factors), c.clone());
            }
        }
        out
    }

    /// Applies the element to a highest-weight vector `v_λ` killed by all
    /// of `N⁺`, with `λ` symbolic: diagonal factors become `λ_i`. Returns
    /// the `N⁻` monomials (as ranks) with their polynomial coefficients.
    pub fn act_highest(&self, order: &PbwOrder) -> BTreeMap<Vec<u16>, Poly<C>> {
        let nn = self.shape.size();
        let mut out: BTreeMap<Vec<u16>, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let factors: Vec<GlBasisElement> = m.iter().map(|&r| order.element(r)).collect();
            if factors.iter().any(|e| e.part() == Part::Pos) {
                continue;
            }
            let neg: Vec<u16> = m
                .iter()
                .copied()
                .filter(|&r| order.element(r).part() == Part::Neg)
                .collect();
            let diag: Vec<GlBasisElement> = factors
                .into_iter()
                .filter(|e| e.part() == Part::Diag)
                .collect();
            let entry = out.entry(neg).or_insert_with(|| Poly::zero(nn));
            entry.add_term(diag_exponents(nn, &diag), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Parities of all terms; a homogeneous element has at most one.
    pub fn term_parities(&self, order: &PbwOrder) -> Vec<bool> {
        let mut v: Vec<bool> = self
            .terms
            .keys()
            .map(|m| m.iter().filter(|&&r| order.is_odd_rank(r)).count() % 2 == 1)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Adjoint weights of all terms (deduplicated).
    pub fn term_weights(&self, order: &PbwOrder) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|m| factor_weight(&self.shape, m.iter().map(|&r| order.element(r))))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn diag_exponents(nn: usize, diag: &[GlBasisElement]) -> Vec<u32> {
    let mut e = vec![0u32; nn];
    for d in diag {
        e[d.row - 1] += 1;
    }
    e
}

/// Straightening engine for one shape and coefficient ring.
pub struct Straightener<C> {
    order: PbwOrder,
    unit: C,
    memo: HashMap<(u16, Vec<u16>), Rc<Terms<C>>>,
    term_cap: Option<usize>,
}

impl<C: Scalar> Straightener<C> {
    pub fn new(shape: Shape, unit: C) -> Self {
        Straightener {
            order: PbwOrder::new(shape),
            unit: unit.one_like(),
            memo: HashMap::new(),
            term_cap: None,
        }
    }

    /// Fails with a resource error once an intermediate element exceeds
    /// `cap` terms.
    pub fn with_term_cap(mut self, cap: usize) -> Self {
        self.term_cap = Some(cap);
        self
    }

    pub fn order(&self) -> &PbwOrder {
        &self.order
    }

    pub fn shape(&self) -> &Shape {
        self.order.shape()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn coeff(&self, n: i64) -> C {
        self.unit.from_i64_like(n)
    }

    fn left_mul(&mut self, x: u16, mono: &[u16]) -> Rc<Terms<C>> {
        if mono.first().map_or(true, |&y| x <= y) {
            return Rc::new(self.left_mul_uncached(x, mono));
        }
        if let Some(hit) = self.memo.get(&(x, mono.to_vec())) {
            return Rc::clone(hit);
        }
        let result = self.left_mul_uncached(x, mono);
        let rc = Rc::new(result);
        self.memo.insert((x, mono.to_vec()), Rc::clone(&rc));
        rc
    }

    fn left_mul_uncached(&mut self, x: u16, mono: &[u16]) -> Terms<C> {
        let one = self.unit.clone();
        let Some(&y) = mono.first() else {
            return vec![(vec![x], one)];
        };
        if x < y || (x == y && !self.order.is_odd_rank(x)) {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(x);
            m.extend_from_slice(mono);
            return vec![(m, one)];
        }
        if x == y {
            return Vec::new();
        }
        let rest = &mono[1..];
        let swap_sign = if self.order.is_odd_rank(x) && self.order.is_odd_rank(y) {
            -1
        } else {
            1
        };
        let mut acc: BTreeMap<Vec<u16>, C> = BTreeMap::new();
        let push = |acc: &mut BTreeMap<Vec<u16>, C>, m: &Vec<u16>, c: C| {
            if c.is_zero_scalar() {
                return;
            }
            match acc.get_mut(m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m.clone(), c);
                }
            }
        };

        let moved = self.left_mul(x, rest);
        let sign = self.coeff(swap_sign);
        for (m, c) in moved.iter() {
            let inner = self.left_mul(y, m);
            for (m2, c2) in inner.iter() {
                push(&mut acc, m2, sign.clone() * c.clone() * c2.clone());
            }
        }

        let shape = *self.order.shape();
        let bracket = supercommutator(&shape, self.order.element(x), self.order.element(y));
        for (z, cz) in bracket {
            let zr = self.order.rank(z);
            let cz = self.coeff(cz);
            let inner = self.left_mul(zr, rest);
            for (m2, c2) in inner.iter() {
                push(&mut acc, m2, cz.clone() * c2.clone());
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero_scalar())
            .collect()
    }

    /// Multiplies a generator onto a normal-form element from the left.
    pub fn mul_generator(
        &mut self,
        x: GlBasisElement,
        elem: &PbwElement<C>,
    ) -> Result<PbwElement<C>> {
        let xr = self.order.rank(x);
        let mut out = PbwElement::zero(*self.shape());
        for (m, c) in elem.terms.iter() {
            let prod = self.left_mul(xr, m);
            for (m2, c2) in prod.iter() {
                out.add_term(m2.clone(), c.clone() * c2.clone());
            }
        }
        if let Some(cap) = self.term_cap {
            if out.len() > cap {
                return Err(Error::ResourceCap {
                    what: "PBW terms".into(),
                    needed: out.len() as u128,
                    cap: cap as u128,
                });
            }
        }
        Ok(out)
    }

    /// Normal form of a single word.
    pub fn straighten_word(&mut self, word: &SuperWord) -> Result<PbwElement<C>> {
        let mut elem = PbwElement::zero(*self.shape());
        elem.add_term(Vec::new(), self.unit.from_bigint_like(&word.coeff));
        for &x in word.factors.iter().rev() {
            elem = self.mul_generator(x, &elem)?;
        }
        Ok(elem)
    }

    /// Normal form of a sum of words.
    pub fn straighten(&mut self, words: &[SuperWord]) -> Result<PbwElement<C>> {
        let mut acc = PbwElement::zero(*self.shape());
        for w in words {
            acc = acc.add(&self.straighten_word(w)?);
        }
        Ok(acc)
    }

    /// Product of two normal-form elements.
    pub fn multiply(&mut self, a: &PbwElement<C>, b: &PbwElement<C>) -> Result<PbwElement<C>> {
        let mut acc = PbwElement::zero(*self.shape());
        for (m, c) in a.terms.iter() {
            let mut part = b.clone();
            for &r in m.iter().rev() {
                part = self.mul_generator(self.order.element(r), &part)?;
            }
            for (m2, c2) in part.terms {
                acc.add_term(m2, c.clone() * c2);
            }
        }
        Ok(acc)
    }

    /// The single-monomial element for an element whose factors are
    /// already in normal order.
    pub fn monomial(&self, factors: &[GlBasisElement], coeff: C) -> PbwElement<C> {
        let mut e = PbwElement::zero(*self.shape());
        e.add_term(factors.iter().map(|&f| self.order.rank(f)).collect(), coeff);
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpbw::{make_e_i, make_f_i};
    use num_bigint::BigInt;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn e(r: usize, c: usize) -> GlBasisElement {
        GlBasisElement::e(r, c)
    }

    #[test]
    fn gl11_ef() {
        let s = Shape::new(1, 1).unwrap();
        let mut st = Straightener::new(s, int(1));
        let got = st
            .straighten_word(&SuperWord::new(vec![e(1, 2), e(2, 1)]))
            .unwrap();
        // e12 f12 = (e11 + e22) - f12 e12
        let expected = st
            .monomial(&[e(1, 1)], int(1))
            .add(&st.monomial(&[e(2, 2)], int(1)))
            .add(&st.monomial(&[e(2, 1), e(1, 2)], int(-1)));
        assert_eq!(got, expected);
        let hc = got.hc_project(st.order());
        assert_eq!(hc.to_string(), "λ1 + λ2");
        let act = got.act_highest(st.order());
        assert_eq!(act.len(), 1);
        assert_eq!(act[&Vec::new()].to_string(), "λ1 + λ2");
    }

    #[test]
    fn normal_words_are_fixed() {
        let s = Shape::new(2, 1).unwrap();
        let mut st = Straightener::new(s, int(1));
        let w = SuperWord::new(vec![e(3, 1), e(2, 1), e(1, 1), e(1, 1), e(1, 2), e(2, 3)]);
        let once = st.straighten_word(&w).unwrap();
        assert_eq!(once.len(), 1);
        let words: Vec<SuperWord> = once
            .factor_terms(st.order())
            .into_iter()
            .map(|(f, c)| SuperWord {
                coeff: c,
                factors: f,
            })
            .collect();
        assert_eq!(st.straighten(&words).unwrap(), once);
    }

    #[test]
    fn odd_squares_vanish() {
        let s = Shape::new(2, 1).unwrap();
        let mut st = Straightener::new(s, int(1));
        assert!(st
            .straighten_word(&SuperWord::new(vec![e(1, 3), e(1, 3)]))
            .unwrap()
            .is_zero());
        assert!(st
            .straighten_word(&SuperWord::new(vec![e(3, 2), e(3, 2)]))
            .unwrap()
            .is_zero());
        // an even square survives
        assert_eq!(
            st.straighten_word(&SuperWord::new(vec![e(1, 2), e(1, 2)]))
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn pure_negative_and_positive_actions() {
        let s = Shape::new(1, 1).unwrap();
        let st = Straightener::new(s, int(1));
        let f = st.monomial(&[e(2, 1)], int(1));
        let act = f.act_highest(st.order());
        assert_eq!(act.len(), 1);
        let (k, v) = act.iter().next().unwrap();
        assert_eq!(k, &vec![st.order().rank(e(2, 1))]);
        assert_eq!(v.to_string(), "1");
        assert!(st
            .monomial(&[e(1, 2)], int(1))
            .act_highest(st.order())
            .is_empty());
        assert!(f.hc_project(st.order()).is_zero());
    }

    #[test]
    fn gl21_top_degree() {
        let s = Shape::new(2, 1).unwrap();
        let mut st = Straightener::new(s, int(1));
        let all = s.odd_pairs();
        let w = make_e_i(&all).times(&make_f_i(&all));
        let x = st.straighten_word(&w).unwrap();
        assert_eq!(x.hc_project(st.order()).total_degree(), Some(2));
    }

    #[test]
    fn term_cap_is_enforced() {
        let s = Shape::new(2, 2).unwrap();
        let mut st = Straightener::new(s, int(1)).with_term_cap(3);
        let all = s.odd_pairs();
        let w = make_e_i(&all).times(&make_f_i(&all));
        assert!(matches!(
            st.straighten_word(&w),
            Err(Error::ResourceCap { .. })
        ));
    }
}
