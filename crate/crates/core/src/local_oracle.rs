//! Local computations over `F_p((pi))`: truncated Laurent series, `SL_2`,
//! the Iwasawa norm, and the rank-one Gindikin-Karpelevich integral computed
//! both by brute force and in closed form.

use num_traits::{One, Zero};

use crate::affine_weyl::{to_i64, WeylElement};
use crate::cterm::{c_function, Character};
use crate::error::{Error, Result};
use crate::qfield::{int, to_f64, Rational};
use crate::root_data::AffineDatum;
use crate::zeta::{place_count, rational_q_power, ZetaFunction};

/// Default number of retained terms when inverting a series.
pub const DEFAULT_PRECISION: usize = 32;
/// Upper limit on brute-force sample points.
pub const MAX_SAMPLES: u64 = 10_000_000;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// A Laurent series over `F_p` in the uniformiser `pi`.
///
/// Coefficients of `pi^val, pi^{val+1}, ...` are stored; `prec` is the
/// absolute precision (terms of degree `>= prec` are unknown), `None` for an
/// exact Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    p: u64,
    val: i64,
    coeffs: Vec<u64>,
    prec: Option<i64>,
}

impl LaurentSeries {
    pub fn new(p: u64, val: i64, coeffs: Vec<u64>, prec: Option<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::DomainError(format!("{p} is not prime")));
        }
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(Self::normalised(p, val, coeffs, prec))
    }

    fn normalised(p: u64, mut val: i64, mut coeffs: Vec<u64>, prec: Option<i64>) -> Self {
        if let Some(pr) = prec {
            let keep = (pr - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..lead);
        val += lead as i64;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            val = 0;
        }
        Self { p, val, coeffs, prec }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, val: 0, coeffs: Vec::new(), prec: None }
    }

    pub fn one(p: u64) -> Self {
        Self::monomial(p, 1, 0)
    }

    pub fn monomial(p: u64, c: u64, k: i64) -> Self {
        Self::normalised(p, k, vec![c % p], None)
    }

    /// Exact Laurent polynomial `sum c_j pi^{lo + j}`.
    pub fn polynomial(p: u64, lo: i64, coeffs: Vec<u64>) -> Self {
        Self::normalised(p, lo, coeffs.into_iter().map(|c| c % p).collect(), None)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Zero up to the known precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; `None` for the exact zero series.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if !self.coeffs.is_empty() {
            return Ok(Some(self.val));
        }
        match self.prec {
            None => Ok(None),
            Some(pr) => Err(Error::PrecisionExhausted(format!("series is zero to precision {pr}"))),
        }
    }

    fn coeff(&self, k: i64) -> u64 {
        if k < self.val {
            return 0;
        }
        self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0)
    }

    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn combine(&self, o: &Self, sign: u64) -> Self {
        debug_assert_eq!(self.p, o.p);
        let p = self.p;
        let prec = Self::min_prec(self.prec, o.prec);
        let lo = match (self.is_zero(), o.is_zero()) {
            (true, true) => return Self::normalised(p, 0, Vec::new(), prec),
            (true, false) => o.val,
            (false, true) => self.val,
            (false, false) => self.val.min(o.val),
        };
        let hi = self.end().max(o.end());
        let hi = prec.map_or(hi, |pr| hi.min(pr));
        let coeffs = (lo..hi.max(lo))
            .map(|k| {
                let b = o.coeff(k);
                let b = if sign == 1 { b } else { (p - b) % p };
                (self.coeff(k) + b) % p
            })
            .collect();
        Self::normalised(p, lo, coeffs, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        // A zero known only to precision pr has valuation >= pr.
        let eff_val = |s: &Self| if s.is_zero() { s.prec } else { Some(s.val) };
        let prec = match (eff_val(self), eff_val(o)) {
            _ if self.is_exact_zero() || o.is_exact_zero() => None,
            (Some(va), Some(vb)) => Self::min_prec(self.prec.map(|pa| pa + vb), o.prec.map(|pb| pb + va)),
            _ => None,
        };
        if self.is_zero() || o.is_zero() {
            return Self::normalised(p, 0, Vec::new(), prec);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        Self::normalised(p, self.val + o.val, out, prec)
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.p).sub(self)
    }

    /// Multiplicative inverse with `terms` retained coefficients (relative precision).
    pub fn inv(&self, terms: usize) -> Result<Self> {
        let v = self.valuation()?.ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let rel = match self.prec {
            Some(pr) => ((pr - v) as usize).min(terms),
            None => terms,
        };
        let c0inv = mod_pow(self.coeffs[0], p - 2, p);
        let mut out = vec![0u64; rel];
        for n in 0..rel {
            let mut s: u128 = if n == 0 { 1 } else { 0 };
            for k in 1..=n {
                let a = self.coeffs.get(k).copied().unwrap_or(0);
                s += (p as u128 - a as u128) * out[n - k] as u128 % p as u128;
            }
            out[n] = ((s % p as u128) * c0inv as u128 % p as u128) as u64;
        }
        let exact = self.prec.is_none() && self.coeffs.len() == 1;
        let prec = if exact { None } else { Some(-v + rel as i64) };
        Ok(Self::normalised(p, -v, out, prec))
    }
}

/// A 2x2 matrix of determinant 1 over `F_p((pi))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2 {
    pub a: LaurentSeries,
    pub b: LaurentSeries,
    pub c: LaurentSeries,
    pub d: LaurentSeries,
}

impl Sl2 {
    pub fn new(a: LaurentSeries, b: LaurentSeries, c: LaurentSeries, d: LaurentSeries) -> Result<Self> {
        let p = a.prime();
        if [&b, &c, &d].iter().any(|x| x.prime() != p) {
            return Err(Error::DomainError("entries over different residue fields".into()));
        }
        let det = a.mul(&d).sub(&b.mul(&c)).sub(&LaurentSeries::one(p));
        if !det.is_zero() {
            return Err(Error::DomainError("determinant is not 1".into()));
        }
        Ok(Self { a, b, c, d })
    }

    /// `(1 0; s 1)`.
    pub fn lower_unipotent(s: LaurentSeries) -> Self {
        let p = s.prime();
        Self { a: LaurentSeries::one(p), b: LaurentSeries::zero(p), c: s, d: LaurentSeries::one(p) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }
}

/// Exponent `e` with Iwasawa norm `q^e`, `e = -min(val g11, val g21)`.
pub fn iwasawa_exponent(g: &Sl2) -> Result<i64> {
    let va = g.a.valuation();
    let vc = g.c.valuation();
    let m = match (va, vc) {
        (Ok(Some(x)), Ok(Some(y))) => x.min(y),
        (Ok(Some(x)), Ok(None)) | (Ok(None), Ok(Some(x))) => x,
        (Ok(Some(x)), Err(_)) if g.c.precision().is_some_and(|pr| pr > x) => x,
        (Err(_), Ok(Some(y))) if g.a.precision().is_some_and(|pr| pr > y) => y,
        (Ok(None), Ok(None)) => return Err(Error::DomainError("first column is zero".into())),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    Ok(-m)
}

/// Iwasawa norm `q^{-min(val g11, val g21)}` as an exact rational.
pub fn iwasawa_norm(g: &Sl2) -> Result<Rational> {
    Ok(rational_q_power(g.a.prime(), iwasawa_exponent(g)?))
}

/// How [`gk_integral`] evaluates the integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkMode {
    /// Sum over `s` in `pi^{-n} O / pi^{m} O` through the Iwasawa routine.
    BruteForce { n: u32, m: u32 },
    /// Sum over valuation shells `val(s) = -k`, `k <= n`.
    Shells { n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkIntegral {
    /// Contribution of `val(s) >= -n`.
    pub truncated: Rational,
    /// Exact contribution of `val(s) < -n`.
    pub tail: Rational,
    pub total: Rational,
    /// `(1 - q^kappa) / (1 - q^{kappa+1})`.
    pub closed_form: Rational,
    /// Set for `-2 <= kappa < -1`, where the integral converges but lies
    /// outside the stricter hypothesis `kappa < -2`.
    pub weak_hypothesis: bool,
}

/// `(1 - q^kappa) / (1 - q^{kappa+1})`.
pub fn gk_closed_form(q: u64, kappa: i64) -> Rational {
    let one = Rational::one();
    (&one - rational_q_power(q, kappa)) / (&one - rational_q_power(q, kappa + 1))
}

/// `sum_{k > n} q^{k-1} (q-1) q^{k kappa}`.
fn shell_tail(q: u64, kappa: i64, n: u32) -> Rational {
    let r = rational_q_power(q, kappa + 1);
    let first = rational_q_power(q, (i64::from(n) + 1) * (kappa + 1));
    int(q as i64 - 1) / int(q as i64) * first / (Rational::one() - r)
}

/// `integral over s in F of |(1 0; s 1)|^kappa ds` for `kappa < -1`.
pub fn gk_integral(q: u64, kappa: i64, mode: GkMode) -> Result<GkIntegral> {
    if kappa >= -1 {
        return Err(Error::DomainError(format!("kappa = {kappa} must be below -1")));
    }
    if q < 2 {
        return Err(Error::DomainError(format!("q = {q} must be at least 2")));
    }
    let n = match mode {
        GkMode::BruteForce { n, .. } | GkMode::Shells { n } => n,
    };
    let truncated = match mode {
        GkMode::BruteForce { n, m } => {
            if !is_prime(q) {
                return Err(Error::DomainError(format!("brute force needs a prime, got {q}")));
            }
            let count = (q as u128).checked_pow(n + m).filter(|&c| c <= MAX_SAMPLES as u128);
            let count = count.ok_or_else(|| Error::EnumerationTooLarge(format!("{q}^{}", n + m)))? as u64;
            let measure = rational_q_power(q, -i64::from(m));
            let mut sum = Rational::zero();
            let mut digits = vec![0u64; (n + m) as usize];
            for idx in 0..count {
                let mut x = idx;
                for dgt in digits.iter_mut() {
                    *dgt = x % q;
                    x /= q;
                }
                let s = LaurentSeries::polynomial(q, -i64::from(n), digits.clone());
                let e = iwasawa_exponent(&Sl2::lower_unipotent(s))?;
                sum += rational_q_power(q, e * kappa) * &measure;
            }
            sum
        }
        GkMode::Shells { n } => {
            let mut sum = Rational::one();
            for k in 1..=i64::from(n) {
                sum += rational_q_power(q, k - 1) * int(q as i64 - 1) * rational_q_power(q, k * kappa);
            }
            sum
        }
    };
    let tail = shell_tail(q, kappa, n);
    let total = &truncated + &tail;
    Ok(GkIntegral { truncated, tail, total, closed_form: gk_closed_form(q, kappa), weak_hypothesis: kappa >= -2 })
}

/// Local factor attached to a positive real root: the integral with `kappa = chi(h_a)`.
pub fn gk_affine_factor(d: &AffineDatum, chi: &Character, a: &crate::root_data::AffineRoot, q: u64) -> Result<Rational> {
    let v = d.pair(&chi.to_functional(d)?, &d.coroot_of(a)?)?;
    let kappa = to_i64(&v).ok_or_else(|| Error::NonIntegralExponent { argument: v.clone(), root: Some(a.to_string()) })?;
    Ok(gk_integral(q, kappa, GkMode::Shells { n: 0 })?.total)
}

fn check_local_character(d: &AffineDatum, chi: &Character) -> Result<()> {
    chi.check(d)?;
    if !chi.is_dominant_negative() || !chi.is_integral() {
        return Err(Error::DomainError("local product needs an integral chi with chi(h_alpha_i) < -2".into()));
    }
    Ok(())
}

/// `prod over a in Delta_+ cap w^{-1} Delta_-` of `(1 - q^{chibar(h_a) - 1}) / (1 - q^{chibar(h_a)})`,
/// computed in closed form and again by induction on `l(w)`; the two must agree.
pub fn gk_local_product(d: &AffineDatum, chi: &Character, w: &WeylElement, q: u64) -> Result<Rational> {
    check_local_character(d, chi)?;
    if q < 2 {
        return Err(Error::DomainError(format!("q = {q} must be at least 2")));
    }
    let chibar = chi.shifted_by_rho(d)?;

    // Closed form over the inversion set of w^{-1}.
    let mut closed = Rational::one();
    for a in w.inverse(d).inversion_set(d) {
        let v = d.pair(&chibar, &d.coroot_of(&a)?)?;
        closed *= gk_closed_form(q, to_i64(&v).expect("integral character") - 1);
    }

    // Induction: w = w_{i_r} w', one new root gamma = w'^{-1} alpha_{i_r} and
    // kappa = (chi + rho - w'^{-1} rho)(h_gamma).
    let word = w.word().0;
    let chi_f = chi.to_functional(d)?;
    let rho = d.rho();
    let mut induction = Rational::one();
    for k in (0..word.len()).rev() {
        let w_rest = WeylElement::reduce(d, &word[k + 1..])?;
        let w_rest_inv = w_rest.inverse(d);
        let gamma = w_rest_inv.act_on_root(d, &d.simple_root(word[k] - 1))?;
        let shifted = chi_f.add(&rho).sub(&w_rest_inv.act_on_functional(d, &rho)?);
        let v = d.pair(&shifted, &d.coroot_of(&gamma)?)?;
        let kappa = to_i64(&v).expect("integral character");
        induction *= gk_integral(q, kappa, GkMode::Shells { n: 0 })?.total;
    }
    if closed != induction {
        return Err(Error::InductionMismatch { closed: Box::new(closed), induction: Box::new(induction) });
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerConsistency {
    /// `q0^{l(w)} prod_{deg nu <= max_deg} local factor`.
    pub partial: f64,
    /// `c(chi, w)` for the genus-0 zeta function at `q0`.
    pub target: f64,
    pub gap: f64,
    /// Upper bound for `target - partial`.
    pub tail_bound: f64,
}

/// Compare the Euler product of local factors over the places of `F_q0(T)`
/// of degree at most `max_deg` with the global c-function.
pub fn euler_consistency(d: &AffineDatum, chi: &Character, w: &WeylElement, max_deg: u32, q0: u64) -> Result<EulerConsistency> {
    check_local_character(d, chi)?;
    if max_deg == 0 {
        return Err(Error::DomainError("degree bound must be positive".into()));
    }
    let mut log_partial = w.length() as f64 * (q0 as f64).ln();
    for deg in 1..=max_deg {
        let qd = q0.checked_pow(deg).ok_or_else(|| Error::DomainError("q0^deg overflows".into()))?;
        let local = gk_local_product(d, chi, w, qd)?;
        log_partial += place_count(q0, deg) as f64 * to_f64(&local).ln();
    }
    let partial = log_partial.exp();
    let c = c_function(d, chi, w, &ZetaFunction::genus_zero())?;
    let target = to_f64(&c.eval(&int(q0 as i64))?);

    // Each factor lies in (1, 1/(1-x)) with x = q_nu^{chibar(h_a)} <= q_nu^{-s_min}.
    let chibar = chi.shifted_by_rho(d)?;
    let mut s_min = f64::INFINITY;
    for a in w.inverse_inversion_set(d) {
        s_min = s_min.min(-to_f64(&d.pair(&chibar, &d.coroot_of(&a)?)?));
    }
    let tail_bound = if w.length() == 0 {
        0.0
    } else {
        let q = q0 as f64;
        let d1 = f64::from(max_deg + 1);
        let log_tail = w.length() as f64 * q.powf(d1 * (1.0 - s_min))
            / (1.0 - q.powf(1.0 - s_min))
            / (1.0 - q.powf(-d1 * s_min));
        partial * log_tail.exp_m1()
    };
    Ok(EulerConsistency { partial, target, gap: target - partial, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::rat;
    use crate::root_data::CartanType;
    use proptest::prelude::*;

    #[test]
    fn closed_form_example() {
        assert_eq!(gk_closed_form(2, -3), rat(7, 6));
        let g = gk_integral(2, -3, GkMode::BruteForce { n: 4, m: 4 }).unwrap();
        assert_eq!(g.total, rat(7, 6));
        assert!(!g.weak_hypothesis);
        assert!(gk_integral(2, -2, GkMode::Shells { n: 3 }).unwrap().weak_hypothesis);
        assert!(gk_integral(2, -1, GkMode::Shells { n: 3 }).is_err());
    }

    #[test]
    fn iwasawa_norm_of_lower_unipotent() {
        // (1 0; s 1) with val(s) = -2 has norm q^2.
        let s = LaurentSeries::polynomial(3, -2, vec![1, 2]);
        assert_eq!(iwasawa_norm(&Sl2::lower_unipotent(s.clone())).unwrap(), int(9));
        // explicit decomposition (1 0; s 1) = k diag(s, 1/s) (1 1/s; 0 1) with k = (1/s -1; 1 0)
        let sinv = s.inv(DEFAULT_PRECISION).unwrap();
        let p = 3;
        let k = Sl2 { a: sinv.clone(), b: LaurentSeries::monomial(p, p - 1, 0), c: LaurentSeries::one(p), d: LaurentSeries::zero(p) };
        let diag = Sl2 { a: s.clone(), b: LaurentSeries::zero(p), c: LaurentSeries::zero(p), d: sinv.clone() };
        let u = Sl2 { a: LaurentSeries::one(p), b: sinv.clone(), c: LaurentSeries::zero(p), d: LaurentSeries::one(p) };
        let prod = k.mul(&diag).mul(&u);
        let target = Sl2::lower_unipotent(s);
        for (x, y) in [(&prod.a, &target.a), (&prod.b, &target.b), (&prod.c, &target.c), (&prod.d, &target.d)] {
            assert!(x.sub(y).is_zero());
        }
        assert!(k.a.valuation().unwrap().unwrap() >= 0);
    }

    #[test]
    fn precision_is_tracked() {
        let s = LaurentSeries::new(5, 0, vec![1, 1], Some(3)).unwrap();
        let z = s.sub(&s);
        assert!(z.is_zero() && !z.is_exact_zero());
        assert!(matches!(z.valuation(), Err(Error::PrecisionExhausted(_))));
        let x = LaurentSeries::polynomial(5, 0, vec![1, 1]);
        let prod = x.mul(&x.inv(10).unwrap());
        assert!(prod.sub(&LaurentSeries::one(5)).is_zero());
        assert_eq!(prod.precision(), Some(10));
    }

    #[test]
    fn sl2_rejects_bad_determinant() {
        let p = 2;
        let two = LaurentSeries::monomial(3, 2, 0);
        assert!(Sl2::new(two, LaurentSeries::zero(3), LaurentSeries::zero(3), LaurentSeries::one(3)).is_err());
        assert!(Sl2::new(LaurentSeries::one(p), LaurentSeries::zero(p), LaurentSeries::monomial(p, 1, -3), LaurentSeries::one(p)).is_ok());
    }

    #[test]
    fn local_product_single_root() {
        let d = AffineDatum::build(CartanType::A, 1).unwrap();
        let chi = Character::from_ints(&[-3, -3]);
        let w = WeylElement::simple(&d, 1).unwrap();
        assert_eq!(gk_local_product(&d, &chi, &w, 2).unwrap(), rat(7, 6));
    }

    #[test]
    fn euler_consistency_example() {
        let d = AffineDatum::build(CartanType::A, 1).unwrap();
        let chi = Character::from_ints(&[-3, -3]);
        let w = WeylElement::simple(&d, 1).unwrap();
        let e10 = euler_consistency(&d, &chi, &w, 10, 2).unwrap();
        assert!((e10.target - 3.5).abs() < 1e-12);
        assert!(e10.gap.abs() < 1e-2);
        assert!(e10.gap >= 0.0 && e10.gap <= e10.tail_bound);
        let e14 = euler_consistency(&d, &chi, &w, 14, 2).unwrap();
        assert!(e14.gap.abs() < e10.gap.abs());
    }

    fn unit_series(p: u64) -> impl Strategy<Value = LaurentSeries> {
        (1..p, proptest::collection::vec(0..p, 0..4)).prop_map(move |(c0, rest)| {
            let mut c = vec![c0];
            c.extend(rest);
            LaurentSeries::polynomial(p, 0, c)
        })
    }

    fn integral_series(p: u64) -> impl Strategy<Value = LaurentSeries> {
        (0i64..3, proptest::collection::vec(0..p, 0..4)).prop_map(move |(v, c)| LaurentSeries::polynomial(p, v, c))
    }

    proptest! {
        #[test]
        fn norm_is_left_k_invariant(
            u in unit_series(3),
            x in integral_series(3),
            y in integral_series(3),
            sv in -3i64..3,
            sc in proptest::collection::vec(0u64..3, 1..4),
        ) {
            let p = 3;
            // k = (u 0; 0 u^{-1}) (1 x; 0 1) (1 0; y 1) lies in SL_2(O).
            let uinv = u.inv(DEFAULT_PRECISION).unwrap();
            let diag = Sl2 { a: u.clone(), b: LaurentSeries::zero(p), c: LaurentSeries::zero(p), d: uinv };
            let upper = Sl2 { a: LaurentSeries::one(p), b: x, c: LaurentSeries::zero(p), d: LaurentSeries::one(p) };
            let k = diag.mul(&upper).mul(&Sl2::lower_unipotent(y));
            let mut c = sc.clone();
            c[0] = c[0].max(1);
            let g = Sl2::lower_unipotent(LaurentSeries::polynomial(p, sv, c));
            prop_assert_eq!(iwasawa_exponent(&k.mul(&g)).unwrap(), iwasawa_exponent(&g).unwrap());
        }

        #[test]
        fn shells_match_closed_form(q in 2u64..8, kappa in -7i64..=-2, n in 0u32..6) {
            prop_assert_eq!(gk_integral(q, kappa, GkMode::Shells { n }).unwrap().total, gk_closed_form(q, kappa));
        }
    }
}
