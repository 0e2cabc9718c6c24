//! Numeric constants bounding the constant-term series at a fixed `q0`.
//!
//! With `w^{-1} = w_1 T_H`, each term is bounded by
//! `rho_factor * M^{l+1} * exp(sigma_1 |H| - sigma_2 |H|^2) * c(chi, w)` and
//! `c(chi, w) <= M_eps^{l(w)} <= Mbar_eps * M_eps^{sigma_3 |H|}`. Summing over
//! the finite Weyl group and the translation lattice gives the tail bound.

use num_traits::{Signed, Zero};

use crate::affine_weyl::{finite_weyl_matrices, translation_length};
use crate::error::{Error, Result};
use crate::linalg::invert;
use crate::qfield::{int, to_f64, Rational};
use crate::root_data::AffineDatum;
use crate::zeta::ZetaFunction;

use super::{AutomorphismData, Character, TorusData};

/// Lattice points with `|H|^2` up to this bound calibrate `sigma_3`.
pub const SIGMA3_RADIUS_SQ: i64 = 16;
/// Terms below this size are covered by the shell estimate instead of enumerated.
const ENUMERATION_CUTOFF: f64 = 1e-30;
/// Largest finite Weyl group enumerated when computing `M`.
const FINITE_WEYL_LIMIT: usize = 200_000;

#[derive(Clone, Debug)]
pub struct ThetaConstants {
    pub q0: u64,
    /// `M`: `M^{l+1}` bounds the `h`-dependent factor over the finite Weyl group.
    pub m_const: f64,
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `sigma_2 = sigma2_coeff * ln(q0)` exactly.
    pub sigma2_coeff: Rational,
    pub sigma3: f64,
    pub epsilon: Rational,
    pub m_eps: f64,
    pub m_eps_bar: f64,
    pub weyl_order: f64,
    /// `(h eta^{mD})^{-rho}` at `q0`.
    pub rho_factor: f64,
    pub longest_len: usize,
    rank: usize,
    gram: Vec<Vec<i64>>,
    gram_inv_diag: Vec<f64>,
    min_norm: f64,
}

fn norm_sq(gram: &[Vec<i64>], x: &[i64]) -> i64 {
    let l = x.len();
    (0..l).map(|i| (0..l).map(|j| x[i] * x[j] * gram[i][j]).sum::<i64>()).sum()
}

/// All nonzero lattice vectors with `|H|^2 <= r2`.
fn lattice_points(gram: &[Vec<i64>], inv_diag: &[f64], r2: f64) -> Vec<Vec<i64>> {
    let l = gram.len();
    let bounds: Vec<i64> = inv_diag.iter().map(|g| (r2 * g).sqrt().floor() as i64 + 1).collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; l];
    fn rec(i: usize, cur: &mut Vec<i64>, bounds: &[i64], gram: &[Vec<i64>], r2: f64, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            let n = norm_sq(gram, cur);
            if n > 0 && (n as f64) <= r2 {
                out.push(cur.clone());
            }
            return;
        }
        for v in -bounds[i]..=bounds[i] {
            cur[i] = v;
            rec(i + 1, cur, bounds, gram, r2, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, &bounds, gram, r2, &mut out);
    out
}

/// `sigma_3 = max l(T_H) / |H|` over lattice points with `0 < |H|^2 <= 16`.
pub fn sigma3(d: &AffineDatum) -> Result<f64> {
    let gram = d.finite().gram().to_vec();
    let inv_diag = inverse_diag(&gram);
    let mut best: f64 = 0.0;
    for h in lattice_points(&gram, &inv_diag, SIGMA3_RADIUS_SQ as f64) {
        let len = translation_length(d, &h)? as f64;
        best = best.max(len / (norm_sq(&gram, &h) as f64).sqrt());
    }
    Ok(best)
}

fn inverse_diag(gram: &[Vec<i64>]) -> Vec<f64> {
    let inv = gram_inverse(gram);
    (0..gram.len()).map(|i| to_f64(&inv[i][i])).collect()
}

fn gram_inverse(gram: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let g: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    invert(&g).expect("positive definite form")
}

/// Dual norm `sqrt(lambda^T G^{-1} lambda)` of a classical functional.
fn dual_norm(gram: &[Vec<i64>], lambda: &[Rational]) -> f64 {
    let inv = gram_inverse(gram);
    let l = lambda.len();
    let mut s = Rational::zero();
    for i in 0..l {
        for j in 0..l {
            s += &lambda[i] * &inv[i][j] * &lambda[j];
        }
    }
    to_f64(&s).max(0.0).sqrt()
}

impl ThetaConstants {
    pub fn new(
        d: &AffineDatum,
        chi: &Character,
        h: &TorusData,
        m: &AutomorphismData,
        z: &ZetaFunction,
        q0: u64,
    ) -> Result<Self> {
        if q0 < 2 {
            return Err(Error::DomainError(format!("q0 = {q0} must be at least 2")));
        }
        if !chi.is_dominant_negative() {
            return Err(Error::RegionViolation("theta constants need chi(h_alpha_i) < -2".into()));
        }
        if !m.is_admissible() {
            return Err(Error::InvalidPlaceData("sum of d_nu m_nu must be positive".into()));
        }
        h.check(d)?;
        let l = d.rank();
        let lnq = (q0 as f64).ln();
        let gram = d.finite().gram().to_vec();
        let chibar = chi.shifted_by_rho(d)?;
        let chibar_cl: Vec<Rational> = chibar.0[..l].to_vec();
        let chibar_c = chibar.0[l].clone();
        let m_tot = m.total();

        // Y = sum_nu d_nu sum_i ord_i h_{alpha_i} = Y_h + Y_e c.
        let degs = h.degrees(l + 1);
        let comarks = d.finite().comarks();
        let y_e = degs[l];
        let y_h: Vec<i64> = (0..l).map(|j| degs[j] - y_e * comarks[j]).collect();

        // M^{l+1}: max over w_1 of q0^{-chibar(w_1 Y_h) - Y_e chibar(c)}.
        let shift = -to_f64(&(int(y_e) * &chibar_c));
        let max_exp = match finite_weyl_matrices(d, FINITE_WEYL_LIMIT) {
            Ok(mats) => mats
                .iter()
                .map(|w1| {
                    let v = w1.mul_vec(&y_h);
                    -to_f64(&(0..l).map(|i| &chibar_cl[i] * int(v[i])).sum::<Rational>())
                })
                .fold(f64::NEG_INFINITY, f64::max),
            Err(Error::EnumerationTooLarge(_)) => {
                dual_norm(&gram, &chibar_cl) * (norm_sq(&gram, &y_h) as f64).sqrt()
            }
            Err(e) => return Err(e),
        };
        let m_const = ((max_exp + shift) * lnq / (l as f64 + 1.0)).exp();

        let n1_exp = m_tot as f64 * dual_norm(&gram, &chibar_cl);
        let n1 = (n1_exp * lnq).exp();
        let sigma2_coeff = -(int(m_tot) * &chibar_c) / int(2);
        let n2 = (-to_f64(&sigma2_coeff) * lnq).exp();
        let sigma2 = to_f64(&sigma2_coeff) * lnq;

        // N_3: per-coroot bound |(h_{alpha_i}, H)| <= |h_{alpha_i}| |H|.
        let abs_c = to_f64(&chibar_c.abs());
        let mut n3_exp: f64 = 0.0;
        for (i, deg) in degs.iter().enumerate() {
            let coroot_norm = if i < l { (gram[i][i] as f64).sqrt() } else { 2f64.sqrt() };
            n3_exp = n3_exp.max(deg.abs() as f64 * abs_c * coroot_norm);
        }
        let n3 = (n3_exp * lnq).exp();
        let sigma1 = n1_exp * lnq + (l as f64 + 1.0) * n3_exp * lnq;

        let epsilon = chi.values().iter().map(|v| -v).min().unwrap() - int(2);
        let g = z.genus() as f64;
        let zeta = z.eval_f64(q0 as f64, 1.0 + to_f64(&epsilon));
        let m_eps = (q0 as f64).powf(1.0 - g) * zeta * zeta;
        let longest_len = d.finite().longest_length();
        let m_eps_bar = m_eps.max(1.0).powi(longest_len as i32);

        let rho_factor = (degs.iter().sum::<i64>() as f64 * lnq).exp();
        let inv_diag = inverse_diag(&gram);
        let min_norm = (0..l).map(|i| (gram[i][i] as f64).sqrt()).fold(f64::INFINITY, f64::min);

        Ok(Self {
            q0,
            m_const,
            n1,
            n2,
            n3,
            sigma1,
            sigma2,
            sigma2_coeff,
            sigma3: sigma3(d)?,
            epsilon,
            m_eps,
            m_eps_bar,
            weyl_order: d.finite().weyl_order() as f64,
            rho_factor,
            longest_len,
            rank: l,
            gram,
            gram_inv_diag: inv_diag,
            min_norm,
        })
    }

    /// Linear coefficient of the log of the lattice summand.
    fn linear_rate(&self) -> f64 {
        self.sigma1 + self.sigma3 * self.m_eps.max(1.0).ln()
    }

    /// `exp(sigma_1 r - sigma_2 r^2) * max(1, M_eps)^{sigma_3 r}`.
    pub fn lattice_summand(&self, r: f64) -> f64 {
        (self.linear_rate() * r - self.sigma2 * r * r).exp()
    }

    pub fn prefactor(&self) -> f64 {
        self.weyl_order * self.rho_factor * self.m_const.powi(self.rank as i32 + 1) * self.m_eps_bar
    }

    /// Upper bound for the sum of all terms with `l(w) > max_len`.
    pub fn tail_bound(&self, max_len: usize) -> f64 {
        let a = self.linear_rate();
        let s2 = self.sigma2;
        // l(w) > L forces sigma_3 |H| >= L - l(w_0).
        let r_min = (max_len as f64 - self.longest_len as f64).max(0.0) / self.sigma3;
        let peak = a / (2.0 * s2);
        let cut = (a + (a * a - 4.0 * s2 * ENUMERATION_CUTOFF.ln()).sqrt()) / (2.0 * s2);
        let r_shell = r_min.max(cut).max(peak);

        let mut sum = 0.0;
        if r_min < r_shell {
            for hv in lattice_points(&self.gram, &self.gram_inv_diag, r_shell * r_shell) {
                let r = (norm_sq(&self.gram, &hv) as f64).sqrt();
                if r >= r_min && r < r_shell {
                    sum += self.lattice_summand(r);
                }
            }
        }
        // Beyond r_shell the summand decreases; disjoint balls of radius min_norm/2
        // bound the number of lattice points in each unit shell.
        let half = self.min_norm / 2.0;
        let count = |r: f64| ((r + half) / half).powi(self.rank as i32);
        for k in 0..100_000 {
            let r = r_shell + k as f64;
            let t = self.lattice_summand(r) * count(r + 1.0);
            sum += t;
            if t < 1e-300 || (k > 0 && t < sum * 1e-18) {
                break;
            }
        }
        self.prefactor() * sum
    }
}
