//! Exact arithmetic in `Q(q)` and in `q^r * Q(q)` for rational `r`.
//!
//! Rational functions are kept in a canonical form (coprime integer
//! numerator and denominator, denominator with positive leading
//! coefficient), so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer-coefficient polynomial in `q`, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
        }
        r
    }

    /// Exact quotient; the caller guarantees `b` divides `self` in `Z[q]`.
    fn exact_div(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else { return Poly::zero() };
        if da < db {
            debug_assert!(self.is_zero());
            return Poly::zero();
        }
        let lb = b.leading();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (qc, rem) = r.leading().div_rem(&lb);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            r = &r - &b.scale(&qc).shift(dr - db);
            quot[dr - db] = qc;
        }
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }

    /// Primitive gcd with positive leading coefficient (content ignored).
    pub fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.primitive(), b.primitive());
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return Poly::one();
            }
            let r = x.pseudo_rem(&y).primitive();
            x = y;
            y = r;
        }
        x
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{a}*q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Element of `Q(q)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: &Rational) -> Self {
        Self::new(Poly::constant(c.numer().clone()), Poly::constant(c.denom().clone()))
            .expect("nonzero denominator")
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(k: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self { num: m, den: Poly::one() }
        } else {
            Self { num: Poly::one(), den: m }
        }
    }

    /// Laurent polynomial `sum c_k q^k` given as `(k, c_k)` pairs.
    pub fn from_laurent(terms: &[(i64, BigInt)]) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else { return Self::zero() };
        let lo = lo.min(0);
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_poly(Poly::from_coeffs(coeffs)) * Self::q_power(lo)
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::primitive_gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::fix_content(num, den)
    }

    fn fix_content(num: Poly, den: Poly) -> Self {
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_negative() {
            c = -c;
        }
        if c.is_one() {
            Self { num, den }
        } else {
            Self { num: num.div_scalar(&c), den: den.div_scalar(&c) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_content(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtQ0(q0.clone()));
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.num.eval_f64(q0) / self.den.eval_f64(q0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel so the product of canonical forms is already coprime.
        let g1 = Poly::primitive_gcd(&self.num, &rhs.den);
        let g2 = Poly::primitive_gcd(&rhs.num, &self.den);
        let (a, d) = (self.num.exact_div(&g1), rhs.den.exact_div(&g1));
        let (c, b) = (rhs.num.exact_div(&g2), self.den.exact_div(&g2));
        RatFunc::fix_content(&a * &c, &b * &d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(RatFunc, Add add, Sub sub, Mul mul);

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

/// Split a rational into `(floor, frac)` with `frac` in `[0, 1)`.
pub fn floor_frac(x: &Rational) -> (i64, Rational) {
    let fl = x.floor();
    let k = fl.to_integer().to_i64().expect("exponent out of range");
    (k, x - fl)
}

/// A value `q^r * f(q)` with `r` in `[0, 1)` and `f` in `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledValue {
    frac: Rational,
    f: RatFunc,
}

impl ScaledValue {
    /// `q^exp * f`, folding the integer part of `exp` into `f`.
    pub fn new(exp: &Rational, f: RatFunc) -> Self {
        let (k, frac) = floor_frac(exp);
        let f = if k == 0 { f } else { &f * &RatFunc::q_power(k) };
        Self { frac, f }
    }

    pub fn q_power(exp: &Rational) -> Self {
        Self::new(exp, RatFunc::one())
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        Self { frac: Rational::zero(), f }
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn frac_exponent(&self) -> &Rational {
        &self.frac
    }

    pub fn ratfunc(&self) -> &RatFunc {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let f = self.f.inv()?;
        Ok(Self::new(&-&self.frac, f))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.frac != rhs.frac {
            return Err(Error::IncompatibleExponent);
        }
        Ok(Self { frac: self.frac.clone(), f: &self.f + &rhs.f })
    }

    /// Evaluate at `q = q0 > 0`; exact whenever `q0^r` is rational.
    pub fn eval(&self, q0: &Rational) -> Result<Numeric> {
        if !q0.is_positive() {
            return Err(Error::DomainError(format!("q0 = {q0} must be positive")));
        }
        let v = self.f.eval(q0)?;
        if self.frac.is_zero() {
            return Ok(Numeric::Exact(v));
        }
        if let Some(root) = rational_power(q0, &self.frac) {
            return Ok(Numeric::Exact(v * root));
        }
        let q = to_f64(q0);
        Ok(Numeric::Approx(to_f64(&v) * q.powf(to_f64(&self.frac))))
    }
}

impl Mul for &ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: &ScaledValue) -> ScaledValue {
        ScaledValue::new(&(&self.frac + &rhs.frac), &self.f * &rhs.f)
    }
}

forward_owned!(ScaledValue, Mul mul);

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frac.is_zero() {
            write!(f, "{}", self.f)
        } else {
            write!(f, "q^({}) * {}", self.frac, self.f)
        }
    }
}

/// `x^e` when it is rational, for `x > 0`.
fn rational_power(x: &Rational, e: &Rational) -> Option<Rational> {
    let b = e.denom().to_u32()?;
    let a = e.numer().to_i32()?;
    let root = |n: &BigInt| {
        let r = n.nth_root(b);
        (r.pow(b) == *n).then_some(r)
    };
    let base = Rational::new(root(x.numer())?, root(x.denom())?);
    Some(if a >= 0 { base.pow(a) } else { base.recip().pow(-a) })
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A numeric evaluation: exact when possible, otherwise `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum Numeric {
    Exact(Rational),
    Approx(f64),
}

impl Numeric {
    pub fn to_f64(&self) -> f64 {
        match self {
            Numeric::Exact(r) => to_f64(r),
            Numeric::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Numeric::Exact(_))
    }

    /// Decimal rendering with a precision marker: exact values are
    /// truncated to `digits` places and end in `...` when truncated,
    /// floating values carry an `[f64]` suffix.
    pub fn render(&self, digits: usize) -> String {
        match self {
            Numeric::Exact(r) => render_decimal(r, digits),
            Numeric::Approx(x) => format!("{x:.digits$e} [f64]"),
        }
    }
}

pub fn render_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let (ip, mut rem) = a.numer().div_rem(a.denom());
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if !rem.is_zero() {
        s.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r2) = rem.div_rem(a.denom());
            s.push_str(&d.to_string());
            rem = r2;
            if rem.is_zero() {
                break;
            }
        }
        if !rem.is_zero() {
            s.push_str("...");
        }
    }
    s
}

/// Render a rational as `p/q` (or `p` when integral).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn canonical_form_cancels_common_factor() {
        // (q^2 - 1)/(q - 1) = q + 1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // (q^3 - 1)/(q^2 (q - 1)) = (q^2 + q + 1)/q^2
        let x = rf(&[-1, 0, 0, 1], &[0, 0, -1, 1]);
        assert_eq!(x.num(), &p(&[1, 1, 1]));
        assert_eq!(x.den(), &p(&[0, 0, 1]));
    }

    #[test]
    fn denominator_sign_and_content_normalised() {
        let x = rf(&[2, 4], &[-6]);
        assert_eq!(x.num(), &p(&[-1, -2]));
        assert_eq!(x.den(), &p(&[3]));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert_eq!(RatFunc::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_and_pole() {
        let x = rf(&[1, 1, 1], &[0, 1]);
        assert_eq!(x.eval(&int(2)).unwrap(), rat(7, 2));
        assert!(matches!(rf(&[1], &[-1, 1]).eval(&int(1)), Err(Error::PoleAtQ0(_))));
    }

    #[test]
    fn laurent_constructor() {
        // q^-2 + 1
        let x = RatFunc::from_laurent(&[(-2, BigInt::one()), (0, BigInt::one())]);
        assert_eq!(x, rf(&[1, 0, 1], &[0, 0, 1]));
    }

    #[test]
    fn scaled_value_folds_carry() {
        let a = ScaledValue::q_power(&rat(2, 3));
        let b = &a * &a;
        assert_eq!(b.frac_exponent(), &rat(1, 3));
        assert_eq!(b.ratfunc(), &RatFunc::q_power(1));
        assert_eq!(ScaledValue::q_power(&rat(-1, 2)).frac_exponent(), &rat(1, 2));
        assert_eq!(ScaledValue::q_power(&rat(-1, 2)).ratfunc(), &RatFunc::q_power(-1));
    }

    #[test]
    fn scaled_value_incompatible_add() {
        let a = ScaledValue::q_power(&rat(1, 2));
        let b = ScaledValue::q_power(&rat(1, 3));
        assert_eq!(a.checked_add(&b), Err(Error::IncompatibleExponent));
        assert!(a.checked_add(&a).is_ok());
    }

    #[test]
    fn scaled_value_exact_when_root_is_rational() {
        let a = ScaledValue::q_power(&rat(3, 2));
        assert_eq!(a.eval(&int(4)).unwrap(), Numeric::Exact(int(8)));
        let b = a.eval(&int(2)).unwrap();
        assert!(!b.is_exact());
        assert!((b.to_f64() - 2f64.powf(1.5)).abs() < 1e-12 * 2f64.powf(1.5));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(&rat(8, 3), 4), "2.6666...");
        assert_eq!(render_decimal(&rat(-7, 4), 10), "-1.75");
        assert_eq!(rational_string(&rat(6, 3)), "2");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-4i64..=4, 0..5).prop_map(|c| Poly::from_i64s(&c))
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly().prop_filter("nonzero", |d| !d.is_zero()))
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
            }
        }

        #[test]
        fn canonical_form_is_coprime(a in small_ratfunc()) {
            let g = Poly::primitive_gcd(a.num(), a.den());
            prop_assert!(a.is_zero() || g.degree() == Some(0));
            prop_assert!(a.den().leading().is_positive());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_ratfunc(), b in small_ratfunc(), q0 in 5i64..9) {
            let x = int(q0);
            if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
                prop_assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
                prop_assert_eq!((&a + &b).eval(&x).unwrap(), va + vb);
            }
        }

        #[test]
        fn scaled_frac_in_unit_interval(n in -20i64..20, d in 1i64..7) {
            let s = ScaledValue::q_power(&rat(n, d));
            prop_assert!(!s.frac_exponent().is_negative() && s.frac_exponent() < &int(1));
            let back = &s * &s.inv().unwrap();
            prop_assert_eq!(back, ScaledValue::one());
        }
    }
}
