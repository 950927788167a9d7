//! Finite fields 𝔽_{p^k} for odd primes p.
//!
//! Elements are encoded as integers `Σ c_i p^i` over the power basis
//! `1, z, …, z^{k-1}` where `z` is a root of the field's modulus. Fields are
//! interned: `fq_make` returns a `&'static FqField`, so elements are `Copy`
//! and two elements belong to the same field iff their field pointers match.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldScalar, Scalar};

/// Fields up to this order get log/antilog tables for multiplication.
const TABLE_ORDER_LIMIT: u64 = 1 << 20;

/// Artin–Schreier equations are solved by enumeration up to this order.
pub const AS_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug)]
struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

#[derive(Debug)]
pub struct FqField {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, lowest degree first, length `k + 1`.
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

static REGISTRY: Lazy<Mutex<HashMap<(u64, u32), &'static FqField>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over 𝔽_p, lowest degree first, no trailing zeros.
mod fp_poly {
    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> P {
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let shift = r.len() - 1 - df;
            let c = r[r.len() - 1] * lead_inv % p;
            for (i, &fi) in f.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - c * fi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> P {
        rem(&mul(a, b, p), f, p)
    }

    pub fn pow_poly_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> P {
        let mut r: P = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> P {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> P {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's test for a monic polynomial of degree `k` over 𝔽_p.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u64;
    if k == 1 {
        return true;
    }
    let x: fp_poly::P = vec![0, 1];
    // x^{p^j} mod f for j = 0..=k
    let mut powers = vec![fp_poly::rem(&x, f, p)];
    for _ in 0..k {
        let last = powers.last().unwrap();
        powers.push(fp_poly::pow_poly_mod(last, p, f, p));
    }
    if fp_poly::sub(&powers[k as usize], &fp_poly::rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(k).into_iter().all(|r| {
        let h = fp_poly::sub(&powers[(k / r) as usize], &x, p);
        fp_poly::gcd(&h, f, p).len() == 1
    })
}

/// Builds (or fetches) the field of order `p^k`.
///
/// The modulus is the first monic irreducible polynomial of degree `k` when
/// the lower coefficients `(c_{k-1}, …, c_0)` are enumerated
/// lexicographically. For `k = 1` this is `x`.
pub fn fq_make(p: u64, k: u32) -> Result<&'static FqField> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::InvalidField(
            "characteristic 2 is not supported".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidField(
            "extension degree must be positive".into(),
        ));
    }
    let order = (p as u128)
        .checked_pow(k)
        .filter(|&q| q < (1u128 << 62) && p < (1 << 31))
        .ok_or_else(|| Error::InvalidField(format!("{p}^{k} is too large")))?
        as u64;

    let mut reg = REGISTRY.lock().expect("field registry poisoned");
    if let Some(f) = reg.get(&(p, k)) {
        return Ok(f);
    }

    let lower = order / p;
    let modulus = (0..lower)
        .map(|t| {
            let mut coeffs = digits(t, p, k as usize);
            coeffs.push(1);
            coeffs
        })
        .find(|f| is_irreducible(f, p))
        .ok_or_else(|| {
            Error::Internal(format!(
                "no irreducible polynomial of degree {k} over F_{p}"
            ))
        })?;

    let mut field = FqField {
        p,
        k,
        order,
        modulus,
        tables: None,
    };
    if k > 1 && order <= TABLE_ORDER_LIMIT {
        field.tables = Some(field.build_tables());
    }
    let leaked: &'static FqField = Box::leak(Box::new(field));
    reg.insert((p, k), leaked);
    Ok(leaked)
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

impl FqField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of the monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        digits(code, self.p, self.k as usize)
    }

    fn poly_mul_codes(&self, a: u64, b: u64) -> u64 {
        let prod = fp_poly::mul_mod(
            &fp_poly::trim(self.decode(a)),
            &fp_poly::trim(self.decode(b)),
            &self.modulus,
            self.p,
        );
        self.encode(&prod)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.order;
        let n = q - 1;
        let factors = prime_factors(n);
        let pow_code = |g: u64, mut e: u64| {
            let mut r = 1u64;
            let mut b = g;
            while e > 0 {
                if e & 1 == 1 {
                    r = self.poly_mul_codes(r, b);
                }
                b = self.poly_mul_codes(b, b);
                e >>= 1;
            }
            r
        };
        let g = (2..q)
            .find(|&g| factors.iter().all(|&r| pow_code(g, n / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.poly_mul_codes(cur, g);
        }
        LogTables { log, exp }
    }

    pub fn element(&'static self, code: u64) -> FqElement {
        assert!(code < self.order, "element code out of range");
        FqElement { field: self, code }
    }

    pub fn zero(&'static self) -> FqElement {
        self.element(0)
    }

    pub fn one(&'static self) -> FqElement {
        self.element(1)
    }

    /// The class of the polynomial `Σ coeffs[i] z^i`.
    pub fn from_coeffs(&'static self, coeffs: &[u64]) -> FqElement {
        let reduced = fp_poly::rem(
            &fp_poly::trim(coeffs.iter().map(|c| c % self.p).collect()),
            &self.modulus,
            self.p,
        );
        self.element(self.encode(&reduced))
    }

    pub fn from_i64(&'static self, n: i64) -> FqElement {
        self.element(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_bigint(&'static self, n: &BigInt) -> FqElement {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.element(r.to_u64().expect("residue fits"))
    }

    /// The power-basis generator `z` (equal to 0 when k = 1).
    pub fn generator(&'static self) -> FqElement {
        if self.k == 1 {
            self.zero()
        } else {
            self.element(self.p)
        }
    }

    /// All elements in code order.
    pub fn elements(&'static self) -> impl Iterator<Item = FqElement> {
        (0..self.order).map(move |c| self.element(c))
    }

    /// Elements of the prime subfield, in code order.
    pub fn prime_elements(&'static self) -> impl Iterator<Item = FqElement> {
        (0..self.p).map(move |c| self.element(c))
    }
}

#[derive(Clone, Copy)]
pub struct FqElement {
    field: &'static FqField,
    code: u64,
}

impl FqElement {
    pub fn field(&self) -> &'static FqField {
        self.field
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.decode(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn in_prime_field(&self) -> bool {
        self.code < self.field.p
    }

    /// The residue in `0..p` of an element of the prime subfield.
    pub fn prime_value(&self) -> Option<u64> {
        self.in_prime_field().then_some(self.code)
    }

    fn check_same(&self, other: &Self) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixing elements of different fields"
        );
    }

    pub fn pow(&self, mut e: u64) -> FqElement {
        let mut r = self.field.one();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }

    pub fn frobenius(&self) -> FqElement {
        self.pow(self.field.p)
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self) -> FqElement {
        let mut acc = *self;
        let mut cur = *self;
        for _ in 1..self.field.k {
            cur = cur.frobenius();
            acc = acc + cur;
        }
        acc
    }

    pub fn inv(&self) -> Option<FqElement> {
        if self.is_zero() {
            return None;
        }
        let f = self.field;
        Some(match &f.tables {
            Some(t) => {
                let n = (f.order - 1) as u32;
                let l = t.log[self.code as usize];
                f.element(t.exp[((n - l) % n) as usize] as u64)
            }
            None => self.pow(f.order - 2),
        })
    }
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.code == other.code
    }
}

impl Eq for FqElement {}

impl Hash for FqElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.k.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for FqElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.p, self.field.k, self.code).cmp(&(other.field.p, other.field.k, other.code))
    }
}

impl Add for FqElement {
    type Output = FqElement;
    fn add(self, rhs: FqElement) -> FqElement {
        self.check_same(&rhs);
        let f = self.field;
        if f.k == 1 {
            return FqElement {
                field: f,
                code: (self.code + rhs.code) % f.p,
            };
        }
        let (mut a, mut b, mut scale, mut out) = (self.code, rhs.code, 1u64, 0u64);
        while a > 0 || b > 0 {
            out += ((a % f.p + b % f.p) % f.p) * scale;
            a /= f.p;
            b /= f.p;
            scale *= f.p;
        }
        FqElement {
            field: f,
            code: out,
        }
    }
}

impl Neg for FqElement {
    type Output = FqElement;
    fn neg(self) -> FqElement {
        let f = self.field;
        if f.k == 1 {
            return FqElement {
                field: f,
                code: (f.p - self.code) % f.p,
            };
        }
        let (mut a, mut scale, mut out) = (self.code, 1u64, 0u64);
        while a > 0 {
            out += ((f.p - a % f.p) % f.p) * scale;
            a /= f.p;
            scale *= f.p;
        }
        FqElement {
            field: f,
            code: out,
        }
    }
}

impl Sub for FqElement {
    type Output = FqElement;
    fn sub(self, rhs: FqElement) -> FqElement {
        self + (-rhs)
    }
}

impl Mul for FqElement {
    type Output = FqElement;
    fn mul(self, rhs: FqElement) -> FqElement {
        self.check_same(&rhs);
        let f = self.field;
        if self.code == 0 || rhs.code == 0 {
            return f.zero();
        }
        if f.k == 1 {
            return FqElement {
                field: f,
                code: self.code * rhs.code % f.p,
            };
        }
        match &f.tables {
            Some(t) => {
                let n = f.order - 1;
                let l = (t.log[self.code as usize] as u64 + t.log[rhs.code as usize] as u64) % n;
                FqElement {
                    field: f,
                    code: t.exp[l as usize] as u64,
                }
            }
            None => FqElement {
                field: f,
                code: f.poly_mul_codes(self.code, rhs.code),
            },
        }
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 || self.code == 0 {
            return write!(fmt, "{}", self.code);
        }
        let coeffs = self.coeffs();
        let mut parts = Vec::new();
        for (deg, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (deg, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}z"),
                (d, 1) => format!("z^{d}"),
                (d, c) => format!("{c}z^{d}"),
            };
            parts.push(term);
        }
        write!(fmt, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fmt, "{}", self)
    }
}

impl Scalar for FqElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_scalar(&self) -> bool {
        self.code == 0
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        self.field.from_bigint(n)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
}

impl FieldScalar for FqElement {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// All roots of `x^p − x = c` in the field of `c`, in code order.
///
/// The solution set is empty or a coset of 𝔽_p. Small fields are searched
/// exhaustively; larger ones go through the trace test and a linear solve of
/// the 𝔽_p-linear map `x ↦ x^p − x`.
pub fn artin_schreier_solve(c: FqElement) -> Vec<FqElement> {
    if c.field.order <= AS_ENUMERATION_LIMIT {
        artin_schreier_enumerate(c)
    } else {
        artin_schreier_linear(c)
    }
}

pub fn artin_schreier_enumerate(c: FqElement) -> Vec<FqElement> {
    c.field
        .elements()
        .filter(|x| x.frobenius() - *x == c)
        .collect()
}

pub fn artin_schreier_linear(c: FqElement) -> Vec<FqElement> {
    let f = c.field;
    if !c.trace().is_zero() {
        return Vec::new();
    }
    let k = f.k as usize;
    let prime = fq_make(f.p, 1).expect("prime field");
    // column j holds the coordinates of L(z^j)
    let mut aug = Matrix::zeros(k, k + 1, prime.zero());
    let mut basis = f.one();
    let z = f.generator();
    for j in 0..k {
        let image = basis.frobenius() - basis;
        for (i, &coef) in image.coeffs().iter().enumerate() {
            aug.set(i, j, prime.element(coef));
        }
        basis = if k == 1 { basis } else { basis * z };
    }
    for (i, &coef) in c.coeffs().iter().enumerate() {
        aug.set(i, k, prime.element(coef));
    }
    let Some(particular) = aug.solve_augmented() else {
        return Vec::new();
    };
    let coeffs: Vec<u64> = particular.iter().map(|e| e.code()).collect();
    let x0 = f.element(f.encode(&coeffs));
    let mut roots: Vec<FqElement> = prime
        .prime_elements()
        .map(|t| x0 + f.element(t.code()))
        .collect();
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_characteristic() {
        assert!(fq_make(2, 1).is_err());
        assert!(fq_make(9, 1).is_err());
        assert!(fq_make(3, 0).is_err());
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = fq_make(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.from_i64(-1).code(), 2);
    }

    #[test]
    fn deterministic_modulus_choice() {
        // x^2 + 1 is the first irreducible quadratic over F_3
        assert_eq!(fq_make(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // x^2 + 2 is the first over F_5 (x^2 + 1 has roots ±2)
        assert_eq!(fq_make(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(fq_make(3, 3).unwrap().order(), 27);
    }

    #[test]
    fn frobenius_order_two_on_f25() {
        let f = fq_make(5, 2).unwrap();
        let mut moved = 0;
        for x in f.elements() {
            assert_eq!(x.frobenius().frobenius(), x);
            if x.frobenius() != x {
                moved += 1;
            }
        }
        // exactly the 20 elements outside F_5
        assert_eq!(moved, 20);
    }

    #[test]
    fn inverses_and_distributivity() {
        for (p, k) in [(3, 1), (3, 3), (5, 2), (7, 2)] {
            let f = fq_make(p, k).unwrap();
            for x in f.elements().skip(1) {
                assert_eq!(x * x.inv().unwrap(), f.one());
            }
            let z = f.generator();
            let a = f.from_coeffs(&[1, 2]);
            assert_eq!(a * (z + f.one()), a * z + a);
        }
    }

    #[test]
    fn untabled_multiplication_matches_tables() {
        let f = fq_make(3, 5).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                let direct = f.element(f.poly_mul_codes(a.code(), b.code()));
                assert_eq!(a * b, direct);
            }
        }
    }

    #[test]
    fn artin_schreier_small_cases() {
        let f3 = fq_make(3, 1).unwrap();
        let roots = artin_schreier_solve(f3.zero());
        assert_eq!(roots, vec![f3.element(0), f3.element(1), f3.element(2)]);
        assert!(artin_schreier_solve(f3.one()).is_empty());

        let f27 = fq_make(3, 3).unwrap();
        let roots = artin_schreier_solve(f27.one());
        assert_eq!(roots.len(), 3);
        for x in &roots {
            assert_eq!(x.pow(3) - *x, f27.one());
        }
    }

    #[test]
    fn linear_and_enumerated_solvers_agree() {
        for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)] {
            let f = fq_make(p, k).unwrap();
            for c in f.elements() {
                assert_eq!(
                    artin_schreier_enumerate(c),
                    artin_schreier_linear(c),
                    "p={p} k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn large_field_uses_linear_solver() {
        // 3^13 > 10^6
        let f = fq_make(3, 13).unwrap();
        assert!(f.order() > AS_ENUMERATION_LIMIT);
        let c = f.from_coeffs(&[0, 1, 2, 1]);
        let roots = artin_schreier_solve(c);
        assert!(roots.len() == 0 || roots.len() == 3);
        for x in &roots {
            assert_eq!(x.frobenius() - *x, c);
        }
        assert_eq!(roots.is_empty(), !c.trace().is_zero());
    }

    #[test]
    fn display_forms() {
        let f = fq_make(3, 2).unwrap();
        assert_eq!(f.from_coeffs(&[1, 2]).to_string(), "2z + 1");
        assert_eq!(f.generator().to_string(), "z");
        assert_eq!(f.zero().to_string(), "0");
    }
}
