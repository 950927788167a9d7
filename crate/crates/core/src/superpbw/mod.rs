//! Exact arithmetic in U(gl(m|n)): matrix units, supercommutators and the
//! triangular PBW normal form `U(N⁻) ⊗ U(H) ⊗ U(N⁺)`.

mod straighten;
mod text;
mod verify;

pub use straighten::{PbwElement, Straightener};
pub use text::{parse_expression, pbw_to_json};
pub use verify::{
    e_tail_word, f_tail_word, theorem_word, verify_lemma41, verify_theorem, TheoremCheck,
    DEFAULT_BLOWUP_CAP,
};

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;

use crate::rootdata::{odd_order_cmp, OddPair, Shape};

/// The matrix unit `e_{row,col}`, 1-based. `f_{ij}` is `e_{ji}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlBasisElement {
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Neg,
    Diag,
    Pos,
}

impl GlBasisElement {
    pub fn e(row: usize, col: usize) -> Self {
        GlBasisElement { row, col }
    }

    /// `f_{ij} = e_{ji}` for `i < j`.
    pub fn f(i: usize, j: usize) -> Self {
        GlBasisElement { row: j, col: i }
    }

    pub fn is_odd(&self, shape: &Shape) -> bool {
        (self.row > shape.m) != (self.col > shape.m)
    }

    pub fn part(&self) -> Part {
        match self.row.cmp(&self.col) {
            std::cmp::Ordering::Greater => Part::Neg,
            std::cmp::Ordering::Equal => Part::Diag,
            std::cmp::Ordering::Less => Part::Pos,
        }
    }
}

impl fmt::Display for GlBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row > self.col {
            write!(f, "f{}{}", self.col, self.row)
        } else {
            write!(f, "e{}{}", self.row, self.col)
        }
    }
}

/// All matrix units of gl(m|n), row-major.
pub fn all_basis_elements(shape: &Shape) -> Vec<GlBasisElement> {
    let nn = shape.size();
    (1..=nn)
        .flat_map(|r| (1..=nn).map(move |c| GlBasisElement::e(r, c)))
        .collect()
}

/// `[a, b] = ab − (−1)^{āb̄} ba` on matrix units, as a combination of units.
pub fn supercommutator(
    shape: &Shape,
    a: GlBasisElement,
    b: GlBasisElement,
) -> Vec<(GlBasisElement, i64)> {
    let sign: i64 = if a.is_odd(shape) && b.is_odd(shape) {
        -1
    } else {
        1
    };
    let mut out: Vec<(GlBasisElement, i64)> = Vec::with_capacity(2);
    if a.col == b.row {
        out.push((GlBasisElement::e(a.row, b.col), 1));
    }
    if b.col == a.row {
        let z = GlBasisElement::e(b.row, a.col);
        match out.iter_mut().find(|(u, _)| *u == z) {
            Some(slot) => slot.1 -= sign,
            None => out.push((z, -sign)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// The fixed total order on matrix units used for PBW monomials.
///
/// `N⁻` first, sorted by row descending then column ascending (on odd
/// elements this is ≺ on `f_{ij}`); then `e_11 … e_NN`; then `N⁺` sorted by
/// column ascending then row descending (reversed ≺ on odd `e_{ij}`).
#[derive(Clone, Debug)]
pub struct PbwOrder {
    shape: Shape,
    by_rank: Vec<GlBasisElement>,
    rank_of: Vec<u16>,
    odd: Vec<bool>,
}

impl PbwOrder {
    pub fn new(shape: Shape) -> Self {
        let nn = shape.size();
        let mut neg: Vec<GlBasisElement> = Vec::new();
        let mut pos: Vec<GlBasisElement> = Vec::new();
        for e in all_basis_elements(&shape) {
            match e.part() {
                Part::Neg => neg.push(e),
                Part::Pos => pos.push(e),
                Part::Diag => {}
            }
        }
        neg.sort_by_key(|e| (Reverse(e.row), e.col));
        pos.sort_by_key(|e| (e.col, Reverse(e.row)));
        let by_rank: Vec<GlBasisElement> = neg
            .into_iter()
            .chain((1..=nn).map(|i| GlBasisElement::e(i, i)))
            .chain(pos)
            .collect();
        let mut rank_of = vec![0u16; nn * nn];
        for (r, e) in by_rank.iter().enumerate() {
            rank_of[(e.row - 1) * nn + (e.col - 1)] = r as u16;
        }
        let odd = by_rank.iter().map(|e| e.is_odd(&shape)).collect();
        PbwOrder {
            shape,
            by_rank,
            rank_of,
            odd,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rank(&self, e: GlBasisElement) -> u16 {
        let nn = self.shape.size();
        self.rank_of[(e.row - 1) * nn + (e.col - 1)]
    }

    pub fn element(&self, rank: u16) -> GlBasisElement {
        self.by_rank[rank as usize]
    }

    pub fn is_odd_rank(&self, rank: u16) -> bool {
        self.odd[rank as usize]
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }
}

/// A coefficient times an ordered product of matrix units.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperWord {
    pub coeff: BigInt,
    pub factors: Vec<GlBasisElement>,
}

impl SuperWord {
    pub fn new(factors: Vec<GlBasisElement>) -> Self {
        SuperWord {
            coeff: BigInt::from(1),
            factors,
        }
    }

    pub fn one() -> Self {
        Self::new(Vec::new())
    }

    pub fn times(mut self, rhs: &SuperWord) -> Self {
        self.coeff *= &rhs.coeff;
        self.factors.extend_from_slice(&rhs.factors);
        self
    }

    pub fn is_odd(&self, shape: &Shape) -> bool {
        self.factors.iter().filter(|e| e.is_odd(shape)).count() % 2 == 1
    }

    /// Adjoint weight `Σ (ε_row − ε_col)` as integer coordinates.
    pub fn weight(&self, shape: &Shape) -> Vec<i64> {
        factor_weight(shape, self.factors.iter().copied())
    }
}

pub(crate) fn factor_weight(
    shape: &Shape,
    factors: impl Iterator<Item = GlBasisElement>,
) -> Vec<i64> {
    let mut w = vec![0i64; shape.size()];
    for e in factors {
        w[e.row - 1] += 1;
        w[e.col - 1] -= 1;
    }
    w
}

/// `f_I`: the product of `f_{ij}`, `(i,j) ∈ I`, in ≺-increasing order.
pub fn make_f_i(pairs: &[OddPair]) -> SuperWord {
    let mut sorted = pairs.to_vec();
    sorted.sort_by(odd_order_cmp);
    sorted.dedup();
    SuperWord::new(
        sorted
            .into_iter()
            .map(|p| GlBasisElement::f(p.i, p.j))
            .collect(),
    )
}

/// `e_I`: the product of `e_{ij}`, `(i,j) ∈ I`, in ≺-decreasing order.
pub fn make_e_i(pairs: &[OddPair]) -> SuperWord {
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|a, b| odd_order_cmp(b, a));
    sorted.dedup();
    SuperWord::new(
        sorted
            .into_iter()
            .map(|p| GlBasisElement::e(p.i, p.j))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supercommutator_examples() {
        let s = Shape::new(1, 1).unwrap();
        let got = supercommutator(&s, GlBasisElement::e(1, 2), GlBasisElement::e(2, 1));
        assert_eq!(
            got,
            vec![(GlBasisElement::e(1, 1), 1), (GlBasisElement::e(2, 2), 1)]
        );
        assert!(supercommutator(&s, GlBasisElement::e(1, 1), GlBasisElement::e(1, 1)).is_empty());
        let s = Shape::new(2, 1).unwrap();
        let got = supercommutator(&s, GlBasisElement::e(1, 3), GlBasisElement::e(3, 2));
        assert_eq!(got, vec![(GlBasisElement::e(1, 2), 1)]);
        // even: [e12, e21] = e11 - e22
        let got = supercommutator(&s, GlBasisElement::e(1, 2), GlBasisElement::e(2, 1));
        assert_eq!(
            got,
            vec![(GlBasisElement::e(1, 1), 1), (GlBasisElement::e(2, 2), -1)]
        );
    }

    #[test]
    fn parity_and_parts() {
        let s = Shape::new(2, 1).unwrap();
        assert!(GlBasisElement::e(1, 3).is_odd(&s));
        assert!(GlBasisElement::e(3, 2).is_odd(&s));
        assert!(!GlBasisElement::e(1, 2).is_odd(&s));
        assert!(!GlBasisElement::e(3, 3).is_odd(&s));
        assert_eq!(GlBasisElement::f(1, 3).part(), Part::Neg);
        assert_eq!(GlBasisElement::e(2, 2).part(), Part::Diag);
    }

    #[test]
    fn f_and_e_words() {
        let s = Shape::new(2, 2).unwrap();
        let all = s.odd_pairs();
        let f = make_f_i(&all);
        let names: Vec<String> = f.factors.iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["f14", "f24", "f13", "f23"]);
        let e = make_e_i(&all);
        let names: Vec<String> = e.factors.iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["e23", "e13", "e24", "e14"]);
        assert!(make_f_i(&[]).factors.is_empty());
        assert_eq!(make_f_i(&[]).coeff, BigInt::from(1));
    }

    #[test]
    fn order_puts_words_in_normal_form() {
        let s = Shape::new(2, 2).unwrap();
        let ord = PbwOrder::new(s);
        let all = s.odd_pairs();
        for w in [make_f_i(&all), make_e_i(&all)] {
            let ranks: Vec<u16> = w.factors.iter().map(|&e| ord.rank(e)).collect();
            assert!(ranks.windows(2).all(|p| p[0] < p[1]));
        }
        for r in 0..ord.len() as u16 {
            assert_eq!(ord.rank(ord.element(r)), r);
        }
    }
}
