//! Serializable records written by the subcommands.

use serde::Serialize;

use kme::affine_weyl::WeylElement;
use kme::cterm::{PartialSum, Term, ThetaConstants};
use kme::qfield::rational_string;
use kme::verify::Report;
use kme::{AffineDatum, Numeric, RatFunc, Rational, ScaledValue};

/// Digits after the point when rendering exact partial sums.
pub const DECIMAL_DIGITS: usize = 30;

#[derive(Serialize)]
pub struct RatFuncJson {
    pub num: String,
    pub den: String,
}

impl From<&RatFunc> for RatFuncJson {
    fn from(f: &RatFunc) -> Self {
        Self { num: f.num().to_string(), den: f.den().to_string() }
    }
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

#[derive(Serialize)]
pub struct InstanceJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
}

impl InstanceJson {
    pub fn new(d: &AffineDatum, chi: Option<&[Rational]>, genus: Option<usize>) -> Self {
        Self { kind: d.finite().kind().to_string(), rank: d.rank(), chi: chi.map(rationals), genus }
    }
}

#[derive(Serialize)]
pub struct ElementJson {
    pub word: Vec<usize>,
    pub length: usize,
    /// Classical part `w_1` and translation `H` of `w^{-1} = w_1 T_H`.
    pub classical_word: Vec<usize>,
    pub translation: Vec<i64>,
    pub inversion_set: Vec<String>,
    pub inverse_inversion_set: Vec<String>,
}

impl ElementJson {
    pub fn new(d: &AffineDatum, w: &WeylElement) -> kme::Result<Self> {
        let dec = w.decompose(d)?;
        Ok(Self {
            word: w.word().0,
            length: w.length(),
            classical_word: dec.classical.word().0,
            translation: dec.translation,
            inversion_set: w.inversion_set(d).iter().map(|a| a.to_string()).collect(),
            inverse_inversion_set: w.inverse_inversion_set(d).iter().map(|a| a.to_string()).collect(),
        })
    }
}

#[derive(Serialize)]
pub struct WeylJson {
    #[serde(flatten)]
    pub instance: InstanceJson,
    pub elements: Vec<ElementJson>,
}

#[derive(Serialize)]
pub struct CfuncJson {
    #[serde(flatten)]
    pub instance: InstanceJson,
    pub word: Vec<usize>,
    pub length: usize,
    /// Roots contributing a zeta ratio.
    pub roots: Vec<String>,
    pub c: RatFuncJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_exact: Option<String>,
}

#[derive(Serialize)]
pub struct ValueJson {
    /// Fractional part of the exponent of `q`; the value is `q^frac * ratfunc`.
    pub frac: String,
    pub ratfunc: RatFuncJson,
}

impl From<&ScaledValue> for ValueJson {
    fn from(v: &ScaledValue) -> Self {
        Self { frac: rational_string(v.frac_exponent()), ratfunc: v.ratfunc().into() }
    }
}

#[derive(Serialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub length: usize,
    pub c: RatFuncJson,
    pub char_exponent: String,
    /// The character factor `q^char_exponent`, integer part as a rational function.
    pub char_ratfunc: RatFuncJson,
    pub value: ValueJson,
    /// Value at `q0` as a double, present when `--q` is given.
    pub numeric: Option<f64>,
    /// Exact value at `q0` when it is rational.
    pub numeric_exact: Option<String>,
}

impl TermJson {
    pub fn new(t: &Term, numeric: Option<&Numeric>) -> Self {
        let char_factor = ScaledValue::q_power(&t.char_exponent);
        Self {
            word: t.element.word().0,
            length: t.element.length(),
            c: (&t.c).into(),
            char_exponent: rational_string(&t.char_exponent),
            char_ratfunc: char_factor.ratfunc().into(),
            value: (&t.value).into(),
            numeric: numeric.map(Numeric::to_f64),
            numeric_exact: numeric.and_then(|n| match n {
                Numeric::Exact(r) => Some(rational_string(r)),
                Numeric::Approx(_) => None,
            }),
        }
    }
}

#[derive(Serialize)]
pub struct PartialSumJson {
    #[serde(rename = "L")]
    pub max_len: usize,
    /// Decimal rendering; truncated exact values end in `...`, doubles carry `[f64]`.
    pub partial_sum: String,
    pub partial_sum_exact: Option<String>,
    pub tail_bound: Option<f64>,
}

impl From<&PartialSum> for PartialSumJson {
    fn from(p: &PartialSum) -> Self {
        Self {
            max_len: p.max_len,
            partial_sum: p.value.render(DECIMAL_DIGITS),
            partial_sum_exact: match &p.value {
                Numeric::Exact(r) => Some(rational_string(r)),
                Numeric::Approx(_) => None,
            },
            tail_bound: p.tail_bound,
        }
    }
}

#[derive(Serialize)]
pub struct ThetaJson {
    pub q0: u64,
    #[serde(rename = "M")]
    pub m_const: f64,
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `sigma2 = sigma2_coeff * ln q0`.
    pub sigma2_coeff: String,
    pub sigma3: f64,
    pub epsilon: String,
    pub m_eps: f64,
    pub m_eps_bar: f64,
}

impl From<&ThetaConstants> for ThetaJson {
    fn from(t: &ThetaConstants) -> Self {
        Self {
            q0: t.q0,
            m_const: t.m_const,
            n1: t.n1,
            n2: t.n2,
            n3: t.n3,
            sigma1: t.sigma1,
            sigma2: t.sigma2,
            sigma2_coeff: rational_string(&t.sigma2_coeff),
            sigma3: t.sigma3,
            epsilon: rational_string(&t.epsilon),
            m_eps: t.m_eps,
            m_eps_bar: t.m_eps_bar,
        }
    }
}

#[derive(Serialize)]
pub struct CtermJson {
    #[serde(flatten)]
    pub instance: InstanceJson,
    pub mode: &'static str,
    #[serde(rename = "L")]
    pub max_len: usize,
    pub q: Option<u64>,
    pub terms: Vec<TermJson>,
    pub partial_sums: Vec<PartialSumJson>,
    pub theta: Option<ThetaJson>,
}

#[derive(Serialize)]
pub struct GkIntegralJson {
    pub q: u64,
    pub kappa: i64,
    pub method: &'static str,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub truncated: String,
    pub tail: String,
    pub total: String,
    pub closed_form: String,
    pub agrees: bool,
    /// `kappa < -2`, or only the weaker `kappa < -1` needed for convergence.
    pub hypothesis: &'static str,
}

#[derive(Serialize)]
pub struct GkProductJson {
    #[serde(flatten)]
    pub instance: InstanceJson,
    pub word: Vec<usize>,
    pub q: u64,
    pub product: String,
    pub numeric: f64,
}

#[derive(Serialize)]
pub struct EulerJson {
    pub q: u64,
    #[serde(rename = "D")]
    pub max_deg: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    pub partial: f64,
    pub target: f64,
    pub gap: f64,
    pub tail_bound: f64,
    pub within_bound: bool,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub target: String,
    pub checks: usize,
    pub skipped: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        Self {
            target: r.target.to_string(),
            checks: r.checks,
            skipped: r.skipped,
            passed: r.passed(),
            failures: r.failures.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerifyJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceJson>,
    pub passed: bool,
    pub reports: Vec<ReportJson>,
}
