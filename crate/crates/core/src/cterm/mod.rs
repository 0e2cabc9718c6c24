//! Characters, the c-function, character evaluation on `h eta^{mD}`, and
//! the constant-term expansion.

mod character;
pub mod theta;

use num_traits::Zero;
use rayon::prelude::*;

pub use character::Character;
pub use theta::ThetaConstants;

use crate::affine_weyl::{enumerate, shifted_action, to_i64, WeylElement};
use crate::error::{Error, Result};
use crate::qfield::{int, Numeric, RatFunc, Rational, ScaledValue};
use crate::root_data::{AffineDatum, CorootVector, Functional};
use crate::zeta::ZetaFunction;

/// A place of degree `degree` together with the orders `ord_nu(s_i)` of the
/// torus coordinates `s_1..s_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub degree: u32,
    pub ord: Vec<i64>,
}

/// Adelic torus element `h`, recorded by its finitely many nontrivial places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusData {
    places: Vec<Place>,
}

impl TorusData {
    pub fn new(places: Vec<Place>) -> Result<Self> {
        if places.iter().any(|p| p.degree == 0) {
            return Err(Error::InvalidPlaceData("place degree must be positive".into()));
        }
        Ok(Self { places })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn check(&self, d: &AffineDatum) -> Result<()> {
        let n = d.num_generators();
        for p in &self.places {
            if p.ord.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.ord.len() });
            }
        }
        Ok(())
    }

    /// `deg(s_i) = sum_nu d_nu ord_nu(s_i)`.
    pub fn degrees(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for p in &self.places {
            for (o, x) in out.iter_mut().zip(&p.ord) {
                *o += i64::from(p.degree) * x;
            }
        }
        out
    }
}

/// A place of degree `degree` with exponent `m` of the central automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutPlace {
    pub degree: u32,
    pub m: i64,
}

/// The adele `m = (m_nu)` entering `eta^{mD}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutomorphismData {
    places: Vec<AutPlace>,
}

impl AutomorphismData {
    pub fn new(places: Vec<AutPlace>) -> Result<Self> {
        if places.iter().any(|p| p.degree == 0) {
            return Err(Error::InvalidPlaceData("place degree must be positive".into()));
        }
        if let Some(p) = places.iter().find(|p| p.m < 0) {
            return Err(Error::InvalidPlaceData(format!("m = {} is negative", p.m)));
        }
        Ok(Self { places })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn places(&self) -> &[AutPlace] {
        &self.places
    }

    /// `sum_nu d_nu m_nu`.
    pub fn total(&self) -> i64 {
        self.places.iter().map(|p| i64::from(p.degree) * p.m).sum()
    }

    /// The constant-term expansion needs a strictly positive total.
    pub fn is_admissible(&self) -> bool {
        self.total() > 0
    }
}

fn attach_root(e: Error, root: String) -> Error {
    match e {
        Error::ZetaPole { argument, .. } => Error::ZetaPole { argument, root: Some(root) },
        other => other,
    }
}

/// `c(chi, w) = q^{l(w)(1-g)} prod zeta(-(chi+rho)(h_a)) / zeta(1 - (chi+rho)(h_a))`
/// over positive real roots `a` with `w a < 0`.
pub fn c_function(d: &AffineDatum, chi: &Character, w: &WeylElement, z: &ZetaFunction) -> Result<RatFunc> {
    let chibar = chi.shifted_by_rho(d)?;
    let one_minus_g = 1 - z.genus() as i64;
    let mut acc = RatFunc::q_power(w.length() as i64 * one_minus_g);
    for a in w.inverse_inversion_set(d) {
        let s = -d.pair(&chibar, &d.coroot_of(&a)?)?;
        let s_int = to_i64(&s).ok_or_else(|| Error::NonIntegralExponent { argument: s.clone(), root: Some(a.to_string()) })?;
        let r = z.ratio(s_int).map_err(|e| attach_root(e, a.to_string()))?;
        acc = &acc * &r;
    }
    Ok(acc)
}

/// The vectors `x_nu = sum_i ord_nu(s_i) h_{alpha_i} + m_nu D`, one per recorded place.
fn place_vectors(d: &AffineDatum, h: &TorusData, m: &AutomorphismData) -> Result<Vec<(u32, CorootVector)>> {
    h.check(d)?;
    let dim = d.dim();
    let mut out = Vec::new();
    for p in h.places() {
        let mut v = vec![0i64; dim];
        for (i, &o) in p.ord.iter().enumerate() {
            for (vk, ck) in v.iter_mut().zip(d.simple_coroot_ints(i)) {
                *vk += o * ck;
            }
        }
        out.push((p.degree, CorootVector::from_ints(&v)));
    }
    for p in m.places() {
        let mut v = vec![0i64; dim];
        v[dim - 1] = p.m;
        out.push((p.degree, CorootVector::from_ints(&v)));
    }
    Ok(out)
}

/// Exponent `e` with `(h eta^{mD})^{w mu} = q^e`, i.e.
/// `e = -sum_nu d_nu mu(w^{-1} x_nu)`.
pub fn character_exponent(
    d: &AffineDatum,
    h: &TorusData,
    m: &AutomorphismData,
    w: &WeylElement,
    mu: &Functional,
) -> Result<Rational> {
    let mut e = Rational::zero();
    for (deg, x) in place_vectors(d, h, m)? {
        let y = w.inverse_act_on_coroot(d, &x)?;
        e -= d.pair(mu, &y)? * int(i64::from(deg));
    }
    Ok(e)
}

/// `(h eta^{mD})^{w mu}`, evaluated directly through the linear action of `w^{-1}`.
pub fn character_eval_direct(
    d: &AffineDatum,
    h: &TorusData,
    m: &AutomorphismData,
    w: &WeylElement,
    mu: &Functional,
) -> Result<ScaledValue> {
    Ok(ScaledValue::q_power(&character_exponent(d, h, m, w, mu)?))
}

/// The three factors of `(h eta^{mD})^{w(chi + rho)}` obtained from the
/// decomposition `w^{-1} = w_1 T_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeFactor {
    /// Depends on `h` and `w_1` only.
    pub first: ScaledValue,
    /// The Gaussian factor in `H`, driven by `m`.
    pub second: ScaledValue,
    /// The cross term `(h_nu, H)`.
    pub third: ScaledValue,
    pub product: ScaledValue,
}

pub fn character_eval_three_factor(
    d: &AffineDatum,
    h: &TorusData,
    m: &AutomorphismData,
    w: &WeylElement,
    chi: &Character,
) -> Result<ThreeFactor> {
    h.check(d)?;
    let l = d.rank();
    let chibar = chi.shifted_by_rho(d)?;
    let chibar_c = chibar.0[l].clone();
    let chibar_d = chibar.0[l + 1].clone();
    let dec = w.decompose(d)?;
    let w1 = &dec.classical;
    let big_h = &dec.translation;
    let extend = |v: &[i64]| {
        let mut e = v.to_vec();
        e.extend([0, 0]);
        CorootVector::from_ints(&e)
    };
    let chi_w1 = |v: &[i64]| -> Result<Rational> { d.pair(&chibar, &w1.act_on_coroot(d, &extend(v))?) };
    let chi_w1_h = chi_w1(big_h)?;
    let hh = int(d.classical_form(big_h, big_h));
    let comarks = d.finite().comarks();

    let (mut e1, mut e2, mut e3) = (Rational::zero(), Rational::zero(), Rational::zero());
    for p in h.places() {
        let deg = int(i64::from(p.degree));
        // sum_i ord_i h_{alpha_i} = h_nu + e_nu c with h_{alpha_{l+1}} = -h_theta + c
        let e_nu = p.ord[l];
        let h_nu: Vec<i64> = (0..l).map(|j| p.ord[j] - e_nu * comarks[j]).collect();
        e1 -= &deg * (chi_w1(&h_nu)? + int(e_nu) * &chibar_c);
        e3 -= &deg * int(d.classical_form(&h_nu, big_h)) * &chibar_c;
    }
    for p in m.places() {
        let deg = int(i64::from(p.degree));
        let mv = int(p.m);
        e2 += &deg * &mv * (&chi_w1_h + &hh / int(2) * &chibar_c);
        // Vanishes for characters with chi(D) = 0.
        e2 -= &deg * &mv * &chibar_d;
    }
    let first = ScaledValue::q_power(&e1);
    let second = ScaledValue::q_power(&e2);
    let third = ScaledValue::q_power(&e3);
    let product = &(&first * &second) * &third;
    Ok(ThreeFactor { first, second, third, product })
}

/// One summand `(h eta^{mD})^{w(chi+rho) - rho} c(chi, w)` of the constant term.
#[derive(Clone, Debug)]
pub struct Term {
    pub element: WeylElement,
    pub c: RatFunc,
    /// Exponent of `q` in the character factor.
    pub char_exponent: Rational,
    pub value: ScaledValue,
}

pub fn term(
    d: &AffineDatum,
    chi: &Character,
    w: &WeylElement,
    h: &TorusData,
    m: &AutomorphismData,
    z: &ZetaFunction,
) -> Result<Term> {
    let chibar = chi.shifted_by_rho(d)?;
    let minus_rho = d.rho().scale(&int(-1));
    let e = character_exponent(d, h, m, w, &chibar)?
        + character_exponent(d, h, m, &WeylElement::identity(d), &minus_rho)?;
    let c = c_function(d, chi, w, z)?;
    let value = ScaledValue::new(&e, c.clone());
    Ok(Term { element: w.clone(), c, char_exponent: e, value })
}

/// Which region the character must lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `chi(h_{alpha_i}) < -2` for all `i`; numeric tail bounds available.
    Convergence,
    /// `chi(c) < -h^vee`; poles of individual terms are reported.
    Meromorphic,
}

#[derive(Clone, Debug)]
pub struct PartialSum {
    pub max_len: usize,
    pub value: Numeric,
    pub tail_bound: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ConstantTerm {
    pub terms: Vec<Term>,
    pub partial_sums: Vec<PartialSum>,
    pub theta: Option<ThetaConstants>,
}

pub fn check_region(d: &AffineDatum, chi: &Character, mode: Mode) -> Result<()> {
    chi.check(d)?;
    match mode {
        Mode::Convergence if !chi.is_dominant_negative() => Err(Error::RegionViolation(
            "convergence requires chi(h_alpha_i) < -2 for every simple coroot".into(),
        )),
        Mode::Meromorphic if !chi.in_meromorphy_domain(d) => Err(Error::RegionViolation(format!(
            "chi(h_delta) = {} must be below -h^vee = {}",
            chi.on_delta(d),
            -d.dual_coxeter()
        ))),
        _ => Ok(()),
    }
}

/// Constant term truncated at length `max_len`, with partial sums at `q0`
/// when given (and tail bounds in convergence mode).
#[allow(clippy::too_many_arguments)]
pub fn constant_term(
    d: &AffineDatum,
    chi: &Character,
    h: &TorusData,
    m: &AutomorphismData,
    z: &ZetaFunction,
    max_len: usize,
    q0: Option<u64>,
    mode: Mode,
) -> Result<ConstantTerm> {
    check_region(d, chi, mode)?;
    h.check(d)?;
    if mode == Mode::Convergence && !m.is_admissible() {
        return Err(Error::InvalidPlaceData("sum of d_nu m_nu must be positive".into()));
    }
    let elements = enumerate(d, max_len)?;
    let terms: Vec<Term> = elements
        .par_iter()
        .map(|w| term(d, chi, w, h, m, z))
        .collect::<Result<Vec<_>>>()?;

    let theta = match (mode, q0) {
        (Mode::Convergence, Some(q)) => Some(ThetaConstants::new(d, chi, h, m, z, q)?),
        _ => None,
    };
    let mut partial_sums = Vec::new();
    if let Some(q) = q0 {
        let q = int(q as i64);
        let values: Vec<Numeric> = terms.par_iter().map(|t| t.value.eval(&q)).collect::<Result<_>>()?;
        let mut acc = Numeric::Exact(Rational::zero());
        let mut idx = 0;
        for len in 0..=max_len {
            while idx < terms.len() && terms[idx].element.length() <= len {
                acc = match (&acc, &values[idx]) {
                    (Numeric::Exact(a), Numeric::Exact(b)) => Numeric::Exact(a + b),
                    (a, b) => Numeric::Approx(a.to_f64() + b.to_f64()),
                };
                idx += 1;
            }
            let tail_bound = theta.as_ref().map(|t| t.tail_bound(len));
            partial_sums.push(PartialSum { max_len: len, value: acc.clone(), tail_bound });
        }
    }
    Ok(ConstantTerm { terms, partial_sums, theta })
}

/// `c(chi, w w') = c(w' o chi, w) c(chi, w')`.
pub fn cocycle_check(
    d: &AffineDatum,
    chi: &Character,
    w: &WeylElement,
    w2: &WeylElement,
    z: &ZetaFunction,
) -> Result<bool> {
    let lhs = c_function(d, chi, &w.mul(d, w2), z)?;
    let shifted = shifted_action(d, w2, chi)?;
    let rhs = &c_function(d, &shifted, w, z)? * &c_function(d, chi, w2, z)?;
    Ok(lhs == rhs)
}

/// `term_{w' w}(chi) = c(chi, w) term_{w'}(w o chi)`.
#[allow(clippy::too_many_arguments)]
pub fn functional_equation_term_check(
    d: &AffineDatum,
    chi: &Character,
    w: &WeylElement,
    w2: &WeylElement,
    h: &TorusData,
    m: &AutomorphismData,
    z: &ZetaFunction,
) -> Result<bool> {
    let lhs = term(d, chi, &w2.mul(d, w), h, m, z)?.value;
    let shifted = shifted_action(d, w, chi)?;
    let rhs = &ScaledValue::from_ratfunc(c_function(d, chi, w, z)?) * &term(d, &shifted, w2, h, m, z)?.value;
    Ok(lhs == rhs)
}
