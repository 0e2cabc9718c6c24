//! Zeta functions of function fields with a symbolic constant-field size `q`.
//!
//! `zeta(s) = L(q^{-s}) / ((1 - q^{-s}) (1 - q^{1-s}))`, where the
//! L-polynomial `L(u) = sum a_i u^i` has degree `2g`, `a_0 = 1`, and
//! satisfies `a_{2g-i} = q^{g-i} a_i`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qfield::{to_f64, Poly, RatFunc, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<Poly>,
}

impl LPolynomial {
    /// Coefficients `a_0..a_{2g}` as polynomials in `q`.
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::InvalidLPolynomial(format!("degree {} is not even", coeffs.len() as i64 - 1)));
        }
        if coeffs[0] != Poly::one() {
            return Err(Error::InvalidLPolynomial("constant coefficient must be 1".into()));
        }
        let g = coeffs.len() / 2;
        for i in 0..g {
            let expect = coeffs[i].shift(g - i);
            if coeffs[2 * g - i] != expect {
                return Err(Error::InvalidLPolynomial(format!(
                    "a_{} = {} but q^{} a_{} = {}",
                    2 * g - i,
                    coeffs[2 * g - i],
                    g - i,
                    i,
                    expect
                )));
            }
        }
        Ok(Self { coeffs })
    }

    pub fn genus_zero() -> Self {
        Self { coeffs: vec![Poly::one()] }
    }

    /// Genus 1: `L(u) = 1 + a u + q u^2`.
    pub fn genus_one(a: i64) -> Self {
        Self::from_half(&[a])
    }

    /// Complete `1, a_1, ..., a_g` (integer constants) by the functional equation.
    pub fn from_half(half: &[i64]) -> Self {
        let g = half.len();
        let mut coeffs: Vec<Poly> = std::iter::once(Poly::one())
            .chain(half.iter().map(|&a| Poly::constant(BigInt::from(a))))
            .collect();
        for i in (0..g).rev() {
            coeffs.push(coeffs[i].shift(g - i));
        }
        Self { coeffs }
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `L(q^k)` as an element of `Q(q)`.
    pub fn at_q_power(&self, k: i64) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            let term = &RatFunc::from_poly(a.clone()) * &RatFunc::q_power(k * i as i64);
            acc = &acc + &term;
        }
        acc
    }

    pub fn eval_f64(&self, q0: f64, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * u + a.eval_f64(q0))
    }
}

/// `1 - q^k`.
fn one_minus_q_power(k: i64) -> RatFunc {
    &RatFunc::one() - &RatFunc::q_power(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    l: LPolynomial,
}

impl ZetaFunction {
    pub fn new(l: LPolynomial) -> Self {
        Self { l }
    }

    pub fn genus_zero() -> Self {
        Self::new(LPolynomial::genus_zero())
    }

    pub fn genus(&self) -> usize {
        self.l.genus()
    }

    pub fn l_polynomial(&self) -> &LPolynomial {
        &self.l
    }

    fn one_minus_genus(&self) -> i64 {
        1 - self.genus() as i64
    }

    pub fn zeta_at(&self, n: i64) -> Result<RatFunc> {
        if n == 0 || n == 1 {
            return Err(Error::ZetaPole { argument: n, root: None });
        }
        let den = &one_minus_q_power(-n) * &one_minus_q_power(1 - n);
        self.l.at_q_power(-n).checked_div(&den)
    }

    /// `xi(n) = q^{(g-1) n} zeta(n)`.
    pub fn xi_at(&self, n: i64) -> Result<RatFunc> {
        Ok(&RatFunc::q_power(-self.one_minus_genus() * n) * &self.zeta_at(n)?)
    }

    /// `zeta(s) / zeta(s + 1)` as a meromorphic function of `s`: the common
    /// factor `1 - q^{-s}` is cancelled before specialising, so only the pole
    /// at `s = 1` remains.
    pub fn ratio(&self, s: i64) -> Result<RatFunc> {
        let den = &self.l.at_q_power(-s - 1) * &one_minus_q_power(1 - s);
        if den.is_zero() {
            return Err(Error::ZetaPole { argument: s, root: None });
        }
        let num = &self.l.at_q_power(-s) * &one_minus_q_power(-s - 1);
        num.checked_div(&den)
    }

    /// Checks, exactly in `Q(q)`:
    /// `zeta(s)/zeta(1-s) = q^{(2s-1)(1-g)}`,
    /// `zeta(-s)/zeta(1+s) = q^{(-2s-1)(1-g)}`,
    /// and that their product is `q^{-2(1-g)}`.
    pub fn ratio_identity_check(&self, s: i64) -> Result<[bool; 3]> {
        let k = self.one_minus_genus();
        let r1 = self.zeta_at(s)?.checked_div(&self.zeta_at(1 - s)?)?;
        let r2 = self.zeta_at(-s)?.checked_div(&self.zeta_at(1 + s)?)?;
        Ok([
            r1 == RatFunc::q_power((2 * s - 1) * k),
            r2 == RatFunc::q_power((-2 * s - 1) * k),
            &r1 * &r2 == RatFunc::q_power(-2 * k),
        ])
    }

    /// `zeta(s)` at `q = q0` for real `s`.
    pub fn eval_f64(&self, q0: f64, s: f64) -> f64 {
        let u = q0.powf(-s);
        self.l.eval_f64(q0, u) / ((1.0 - u) * (1.0 - q0 * u))
    }
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`.
pub fn irreducible_count(q: u64, d: u32) -> u128 {
    let mobius = |n: u32| -> i128 {
        let (mut n, mut k, mut sign) = (n, 2, 1i128);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                sign = -sign;
            }
            k += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    };
    let total: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e) * (q as i128).pow(d / e))
        .sum();
    (total / d as i128) as u128
}

/// Number of places of degree `d` of the rational function field `F_q(T)`.
pub fn place_count(q: u64, d: u32) -> u128 {
    irreducible_count(q, d) + u128::from(d == 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerPartial {
    /// Product over places of degree at most `max_deg`.
    pub partial: f64,
    /// Closed-form value of the genus-0 zeta function.
    pub closed: f64,
    /// Upper bound for `closed - partial`.
    pub tail_bound: f64,
}

/// Truncated Euler product for the zeta function of `F_q0(T)` at real `s > 1`.
pub fn euler_partial(q0: u64, s: &Rational, max_deg: u32) -> Result<EulerPartial> {
    if q0 < 2 {
        return Err(Error::DomainError(format!("q0 = {q0} must be at least 2")));
    }
    if s <= &Rational::one() {
        return Err(Error::DomainError(format!("s = {s} must exceed 1")));
    }
    if max_deg == 0 {
        return Err(Error::DomainError("degree bound must be positive".into()));
    }
    let (q, s) = (q0 as f64, to_f64(s));
    let mut log_partial = 0.0;
    for d in 1..=max_deg {
        let x = q.powf(-s * d as f64);
        log_partial -= place_count(q0, d) as f64 * (-x).ln_1p();
    }
    let partial = log_partial.exp();
    let closed = ZetaFunction::genus_zero().eval_f64(q, s);
    // -N_d log(1 - x_d) <= q^d x_d / (1 - x_d) for d > max_deg: a geometric series.
    let d1 = f64::from(max_deg + 1);
    let log_tail =
        q.powf(d1 * (1.0 - s)) / (1.0 - q.powf(1.0 - s)) / (1.0 - q.powf(-s * d1));
    Ok(EulerPartial { partial, closed, tail_bound: partial * log_tail.exp_m1() })
}

/// `q^k` for the numerator of an integer power, used by local factors.
pub(crate) fn rational_q_power(q: u64, k: i64) -> Rational {
    let b = BigInt::from(q).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(b)
    } else {
        Rational::new(BigInt::one(), b)
    }
}
