use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::qfield::{int, Rational};
use crate::root_data::{AffineDatum, Functional};

/// A character of the torus, recorded by its values on the simple coroots
/// `h_{alpha_1}..h_{alpha_{l+1}}` and on the derivation `D` (zero unless the
/// character arose from a shifted action).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<Rational>,
    d_value: Rational,
}

impl Character {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values, d_value: Rational::zero() }
    }

    pub fn with_d_value(values: Vec<Rational>, d_value: Rational) -> Self {
        Self { values, d_value }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| int(x)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn d_value(&self) -> &Rational {
        &self.d_value
    }

    pub fn check(&self, d: &AffineDatum) -> Result<()> {
        let n = d.num_generators();
        if self.values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.values.len() });
        }
        Ok(())
    }

    /// Values on the extended basis `(h_1..h_l, c, D)`.
    pub fn to_functional(&self, d: &AffineDatum) -> Result<Functional> {
        self.check(d)?;
        let l = d.rank();
        let mut v: Vec<Rational> = self.values[..l].to_vec();
        v.push(self.on_delta(d));
        v.push(self.d_value.clone());
        Ok(Functional(v))
    }

    pub fn from_functional(d: &AffineDatum, f: &Functional) -> Self {
        let l = d.rank();
        let comarks = d.finite().comarks();
        let mut values: Vec<Rational> = f.0[..l].to_vec();
        // h_{alpha_{l+1}} = c - sum a_i^vee h_i
        let theta_part: Rational = (0..l).map(|i| &f.0[i] * int(comarks[i])).sum();
        values.push(&f.0[l] - theta_part);
        Self { values, d_value: f.0[l + 1].clone() }
    }

    /// `chi(c) = chi(h_{alpha_{l+1}}) + sum a_i^vee chi(h_{alpha_i})`.
    pub fn on_delta(&self, d: &AffineDatum) -> Rational {
        let l = d.rank();
        let comarks = d.finite().comarks();
        &self.values[l] + (0..l).map(|i| &self.values[i] * int(comarks[i])).sum::<Rational>()
    }

    /// `chi + rho` as a functional.
    pub fn shifted_by_rho(&self, d: &AffineDatum) -> Result<Functional> {
        Ok(self.to_functional(d)?.add(&d.rho()))
    }

    /// Every simple-coroot value is below `-2`.
    pub fn is_dominant_negative(&self) -> bool {
        let bound = int(-2);
        self.values.iter().all(|v| v < &bound)
    }

    /// `chi(c) < -h^vee`.
    pub fn in_meromorphy_domain(&self, d: &AffineDatum) -> bool {
        self.on_delta(d) < int(-d.dual_coxeter())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer()) && self.d_value.is_integer()
    }

    pub fn is_negative_everywhere(&self) -> bool {
        self.values.iter().all(|v| v.is_negative())
    }
}
