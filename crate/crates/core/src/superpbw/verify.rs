//! Symbolic checks of the vanishing lemma and of `f(h)(λ) = f_{m,n}(λ)`.

use num_bigint::BigInt;

use super::{make_e_i, make_f_i, GlBasisElement, PbwElement, Straightener, SuperWord};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rootdata::{odd_order_cmp, Shape};

/// Default bound on `m·n` for [`verify_theorem`].
pub const DEFAULT_BLOWUP_CAP: usize = 6;

/// `f_{>(i,m+n)}`: the product of `f_{st}` over `(s,t) ≻ (i,m+n)`.
pub fn f_tail_word(shape: &Shape, i: usize) -> Result<SuperWord> {
    let pivot = shape.odd_pair(i, shape.size())?;
    let tail: Vec<_> = shape
        .odd_pairs()
        .into_iter()
        .filter(|p| odd_order_cmp(p, &pivot) == std::cmp::Ordering::Greater)
        .collect();
    Ok(make_f_i(&tail))
}

/// `e_{>(i,m+n)}`, the matching product of `e_{st}` in reversed order.
pub fn e_tail_word(shape: &Shape, i: usize) -> Result<SuperWord> {
    let pivot = shape.odd_pair(i, shape.size())?;
    let tail: Vec<_> = shape
        .odd_pairs()
        .into_iter()
        .filter(|p| odd_order_cmp(p, &pivot) == std::cmp::Ordering::Greater)
        .collect();
    Ok(make_e_i(&tail))
}

/// `e_{𝓘₁} f_{𝓘₁}`.
pub fn theorem_word(shape: &Shape) -> SuperWord {
    let all = shape.odd_pairs();
    make_e_i(&all).times(&make_f_i(&all))
}

/// Whether `e_{i,m+n} f_{>(i,m+n)} v_λ` vanishes identically in λ.
pub fn verify_lemma41(shape: &Shape, i: usize) -> Result<bool> {
    let word =
        SuperWord::new(vec![GlBasisElement::e(i, shape.size())]).times(&f_tail_word(shape, i)?);
    let mut st = Straightener::new(*shape, BigInt::from(1));
    let x = st.straighten_word(&word)?;
    Ok(x.act_highest(st.order()).is_empty())
}

#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub straightened: PbwElement<BigInt>,
    /// `f(h)(λ)`: the `λ`-polynomial of `e_{𝓘₁} f_{𝓘₁} v_λ`.
    pub f_h: Poly<BigInt>,
    /// The expanded typicality polynomial.
    pub expected: Poly<BigInt>,
    pub matches: bool,
    /// Every term with empty `N⁺` part also had empty `N⁻` part.
    pub balanced: bool,
}

/// Straightens `e_{𝓘₁} f_{𝓘₁}`, applies it to a symbolic `v_λ`, and
/// compares the result with the typicality polynomial.
pub fn verify_theorem(shape: &Shape, blowup_cap: usize) -> Result<TheoremCheck> {
    if shape.odd_dim() > blowup_cap {
        return Err(Error::ResourceCap {
            what: format!("m·n for gl({}|{})", shape.m, shape.n),
            needed: shape.odd_dim() as u128,
            cap: blowup_cap as u128,
        });
    }
    let mut st = Straightener::new(*shape, BigInt::from(1));
    let straightened = st.straighten_word(&theorem_word(shape))?;
    let acted = straightened.act_highest(st.order());
    let balanced = acted.keys().all(|neg| neg.is_empty());
    let f_h = acted
        .get(&Vec::new())
        .cloned()
        .unwrap_or_else(|| Poly::zero(shape.size()));
    let expected = shape.typicality_poly()?.expand();
    let hc = straightened.hc_project(st.order());
    if hc != f_h && balanced {
        return Err(Error::Internal(
            "HC projection differs from the highest-weight action".into(),
        ));
    }
    let matches = balanced && f_h == expected;
    Ok(TheoremCheck {
        straightened,
        f_h,
        expected,
        matches,
        balanced,
    })
}
