//! Grid runners for the identity checks. Each returns a [`Report`] counting
//! the instances examined and describing any failure.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine_weyl::{enumerate, WeylElement};
use crate::cterm::{
    character_eval_direct, character_eval_three_factor, cocycle_check, functional_equation_term_check, AutPlace,
    AutomorphismData, Character, Place, TorusData,
};
use crate::error::{Error, Result};
use crate::local_oracle::gk_local_product;
use crate::qfield::{rat, Rational};
use crate::root_data::{AffineDatum, AffineRoot, CartanType};
use crate::zeta::{LPolynomial, ZetaFunction};

/// Seed of the standard three-factor grid.
pub const THREE_FACTOR_SEED: u64 = 0x5eed_2024;
pub const THREE_FACTOR_COUNT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Cocycle,
    FunctionalEquation,
    ThreeFactor,
    GkInduction,
    ZetaRatios,
    Inversions,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Cocycle,
        Target::FunctionalEquation,
        Target::ThreeFactor,
        Target::GkInduction,
        Target::ZetaRatios,
        Target::Inversions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Cocycle => "cocycle",
            Target::FunctionalEquation => "funceq",
            Target::ThreeFactor => "three-factor",
            Target::GkInduction => "gk-induction",
            Target::ZetaRatios => "zeta-ratios",
            Target::Inversions => "inversions",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::DomainError(format!("unknown verification target '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub target: Target,
    pub checks: usize,
    /// Instances where an intermediate value sits on a pole.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(target: Target) -> Self {
        Self { target, checks: 0, skipped: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn record(&mut self, outcome: Result<bool>, label: impl FnOnce() -> String) {
        match outcome {
            Ok(true) => self.checks += 1,
            Ok(false) => {
                self.checks += 1;
                self.failures.push(label());
            }
            Err(Error::ZetaPole { .. }) => self.skipped += 1,
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", label()));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {} checks, {} skipped, {} failures [{status}]", self.target, self.checks, self.skipped, self.failures.len())
    }
}

/// One configuration to check a target against. Fields a target does not
/// use are ignored.
#[derive(Clone, Debug)]
pub struct Instance {
    pub datum: AffineDatum,
    pub chi: Character,
    pub zeta: ZetaFunction,
    pub h: TorusData,
    pub m: AutomorphismData,
    pub max_len: usize,
}

impl Instance {
    /// `h = (1, 0, ...)` at one degree-1 place and `m = 1` at one degree-1 place.
    pub fn new(datum: AffineDatum, chi: Character, zeta: ZetaFunction, max_len: usize) -> Self {
        let mut ord = vec![0; datum.num_generators()];
        ord[0] = 1;
        let h = TorusData::new(vec![Place { degree: 1, ord }]).expect("positive degree");
        let m = AutomorphismData::new(vec![AutPlace { degree: 1, m: 1 }]).expect("nonnegative m");
        Self { datum, chi, zeta, h, m, max_len }
    }
}

/// Run one target on the standard grid.
pub fn run(target: Target) -> Result<Report> {
    match target {
        Target::Cocycle => cocycle_grid(3),
        Target::FunctionalEquation => functional_equation_grid(3),
        Target::ThreeFactor => three_factor_grid(THREE_FACTOR_SEED, THREE_FACTOR_COUNT),
        Target::GkInduction => gk_induction_grid(5),
        Target::ZetaRatios => zeta_ratio_grid(),
        Target::Inversions => inversion_grid(6),
    }
}

pub fn run_all() -> Result<Vec<Report>> {
    Target::ALL.into_iter().map(run).collect()
}

/// Run one target on a single configuration.
pub fn run_instance(target: Target, inst: &Instance) -> Result<Report> {
    let mut report = Report::new(target);
    match target {
        Target::Cocycle => check_cocycle(&mut report, inst)?,
        Target::FunctionalEquation => check_functional_equation(&mut report, inst)?,
        Target::ThreeFactor => {
            let mut rng = ChaCha8Rng::seed_from_u64(THREE_FACTOR_SEED);
            for _ in 0..THREE_FACTOR_COUNT {
                let (element, h, m) = random_configuration(&mut rng, &inst.datum, inst.max_len)?;
                let case = ThreeFactorInstance { datum: inst.datum.clone(), chi: inst.chi.clone(), element, h, m };
                check_three_factor(&mut report, &case);
            }
        }
        Target::GkInduction => check_gk_induction(&mut report, inst)?,
        Target::ZetaRatios => check_zeta_ratios(&mut report, &inst.zeta)?,
        Target::Inversions => check_inversions(&mut report, &inst.datum, inst.max_len)?,
    }
    Ok(report)
}

/// Genus 0 and genus 1 with `a in {-2, 0, 1}`.
pub fn standard_zetas() -> Vec<ZetaFunction> {
    let mut z = vec![ZetaFunction::genus_zero()];
    z.extend([-2, 0, 1].map(|a| ZetaFunction::new(LPolynomial::genus_one(a))));
    z
}

fn datum(kind: CartanType, rank: usize) -> AffineDatum {
    AffineDatum::build(kind, rank).expect("supported type")
}

fn small_data() -> Vec<AffineDatum> {
    vec![datum(CartanType::A, 1), datum(CartanType::A, 2)]
}

fn constant_character(d: &AffineDatum, v: i64) -> Character {
    Character::from_ints(&vec![v; d.num_generators()])
}

fn grid_characters(d: &AffineDatum) -> Vec<Character> {
    let n = d.num_generators();
    let mut skew: Vec<i64> = (0..n as i64).map(|i| -3 - i).collect();
    skew.reverse();
    vec![constant_character(d, -3), Character::from_ints(&skew)]
}

fn check_cocycle(report: &mut Report, inst: &Instance) -> Result<()> {
    let d = &inst.datum;
    let els = enumerate(d, inst.max_len)?;
    for w in &els {
        for w2 in &els {
            report.record(cocycle_check(d, &inst.chi, w, w2, &inst.zeta), || {
                format!("{}: w = {}, w' = {}", d.finite().kind(), w.word(), w2.word())
            });
        }
    }
    Ok(())
}

/// `c(chi, w w') = c(w' o chi, w) c(chi, w')` for all pairs up to `max_len`.
pub fn cocycle_grid(max_len: usize) -> Result<Report> {
    let mut report = Report::new(Target::Cocycle);
    for d in small_data() {
        for zeta in standard_zetas() {
            for chi in grid_characters(&d) {
                check_cocycle(&mut report, &Instance::new(d.clone(), chi, zeta.clone(), max_len))?;
            }
        }
    }
    Ok(report)
}

fn check_functional_equation(report: &mut Report, inst: &Instance) -> Result<()> {
    let d = &inst.datum;
    let els = enumerate(d, inst.max_len)?;
    for w in &els {
        for w2 in &els {
            report.record(functional_equation_term_check(d, &inst.chi, w, w2, &inst.h, &inst.m, &inst.zeta), || {
                format!("{}: w = {}, w' = {}", d.finite().kind(), w.word(), w2.word())
            });
        }
    }
    Ok(())
}

/// Term-level functional equation with `h = (1, 0, ...)` at a degree-1 place and `m = 1`.
pub fn functional_equation_grid(max_len: usize) -> Result<Report> {
    let mut report = Report::new(Target::FunctionalEquation);
    for d in small_data() {
        for zeta in standard_zetas() {
            let chi = constant_character(&d, -3);
            check_functional_equation(&mut report, &Instance::new(d.clone(), chi, zeta, max_len))?;
        }
    }
    Ok(report)
}

/// A random instance of the three-factor identity.
#[derive(Clone, Debug)]
pub struct ThreeFactorInstance {
    pub datum: AffineDatum,
    pub chi: Character,
    pub element: WeylElement,
    pub h: TorusData,
    pub m: AutomorphismData,
}

fn random_configuration(
    rng: &mut ChaCha8Rng,
    d: &AffineDatum,
    max_len: usize,
) -> Result<(WeylElement, TorusData, AutomorphismData)> {
    let n = d.num_generators();
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
    let element = WeylElement::reduce(d, &word)?;
    let places = (0..rng.gen_range(1..=2))
        .map(|_| Place { degree: rng.gen_range(1..=3), ord: (0..n).map(|_| rng.gen_range(-2..=2)).collect() })
        .collect();
    let aut = (0..rng.gen_range(1..=2))
        .map(|_| AutPlace { degree: rng.gen_range(1..=3), m: rng.gen_range(0..=3) })
        .collect();
    Ok((element, TorusData::new(places)?, AutomorphismData::new(aut)?))
}

pub fn random_three_factor_instances(seed: u64, count: usize) -> Result<Vec<ThreeFactorInstance>> {
    let data = [
        datum(CartanType::A, 1),
        datum(CartanType::A, 2),
        datum(CartanType::C, 2),
        datum(CartanType::G, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let d = data[rng.gen_range(0..data.len())].clone();
        let den = if rng.gen_bool(0.3) { 2 } else { 1 };
        let chi = Character::new((0..d.num_generators()).map(|_| rat(rng.gen_range(-12..=-5), den)).collect::<Vec<Rational>>());
        let (element, h, m) = random_configuration(&mut rng, &d, 5)?;
        out.push(ThreeFactorInstance { datum: d, chi, element, h, m });
    }
    Ok(out)
}

fn check_three_factor(report: &mut Report, inst: &ThreeFactorInstance) {
    let d = &inst.datum;
    let outcome = (|| {
        let split = character_eval_three_factor(d, &inst.h, &inst.m, &inst.element, &inst.chi)?;
        let direct = character_eval_direct(d, &inst.h, &inst.m, &inst.element, &inst.chi.shifted_by_rho(d)?)?;
        Ok(split.product == direct)
    })();
    report.record(outcome, || format!("{}: chi = {:?}, w = {}", d.finite().kind(), inst.chi.values(), inst.element.word()));
}

/// Three-factor product against direct evaluation of `(h eta^{mD})^{w(chi + rho)}`.
pub fn three_factor_grid(seed: u64, count: usize) -> Result<Report> {
    let mut report = Report::new(Target::ThreeFactor);
    for inst in random_three_factor_instances(seed, count)? {
        check_three_factor(&mut report, &inst);
    }
    Ok(report)
}

fn check_gk_induction(report: &mut Report, inst: &Instance) -> Result<()> {
    let d = &inst.datum;
    for w in enumerate(d, inst.max_len)? {
        for q in [2, 3] {
            report.record(gk_local_product(d, &inst.chi, &w, q).map(|_| true), || {
                format!("{}: w = {}, q = {q}", d.finite().kind(), w.word())
            });
        }
    }
    Ok(())
}

/// Closed-form local product against the induction on length, `q in {2, 3}`.
pub fn gk_induction_grid(max_len: usize) -> Result<Report> {
    let mut report = Report::new(Target::GkInduction);
    for d in small_data() {
        for chi in grid_characters(&d) {
            check_gk_induction(&mut report, &Instance::new(d.clone(), chi, ZetaFunction::genus_zero(), max_len))?;
        }
    }
    Ok(report)
}

fn check_zeta_ratios(report: &mut Report, z: &ZetaFunction) -> Result<()> {
    let g = z.genus();
    for s in 2..=5 {
        report.record(z.ratio_identity_check(s).map(|r| r.iter().all(|&b| b)), || format!("genus {g}, s = {s}: ratio identities"));
        report.record(Ok(z.xi_at(s)? == z.xi_at(1 - s)?), || format!("genus {g}, s = {s}: xi symmetry"));
        let quotient = z.zeta_at(s)?.checked_div(&z.zeta_at(s + 1)?)?;
        report.record(Ok(z.ratio(s)? == quotient), || format!("genus {g}, s = {s}: ratio"));
    }
    Ok(())
}

/// Ratio identities, `xi(s) = xi(1 - s)`, and the meromorphic ratio against
/// the quotient of zeta values, for `s in 2..=5`.
pub fn zeta_ratio_grid() -> Result<Report> {
    let mut report = Report::new(Target::ZetaRatios);
    for z in standard_zetas() {
        check_zeta_ratios(&mut report, &z)?;
    }
    Ok(report)
}

fn check_inversions(report: &mut Report, d: &AffineDatum, max_len: usize) -> Result<()> {
    let roots = d.positive_real_roots(max_len as i64 + 1);
    let rho = d.rho();
    for w in enumerate(d, max_len)? {
        let winv = w.inverse(d);
        let outcome = (|| {
            let mut brute = HashSet::new();
            let mut brute_inv = HashSet::new();
            for a in &roots {
                if !winv.act_on_root(d, a)?.is_positive() {
                    brute.insert(a.clone());
                }
                if !w.act_on_root(d, a)?.is_positive() {
                    brute_inv.insert(a.clone());
                }
            }
            let listed = w.inversion_set(d);
            let listed_inv = w.inverse_inversion_set(d);
            let as_set = |v: &[AffineRoot]| v.iter().cloned().collect::<HashSet<_>>();
            let mut sum = rho.scale(&Rational::zero());
            for a in &listed {
                sum = sum.add(&d.root_functional(a)?);
            }
            Ok(sum == rho.sub(&w.act_on_functional(d, &rho)?)
                && listed.len() == w.length()
                && listed_inv.len() == w.length()
                && as_set(&listed) == brute
                && as_set(&listed_inv) == brute_inv)
        })();
        report.record(outcome, || format!("{}: w = {}", d.finite().kind(), w.word()));
    }
    Ok(())
}

/// Inversion sets against a brute-force scan of positive real roots, and
/// `sum of the inversion set = rho - w rho`.
pub fn inversion_grid(max_len: usize) -> Result<Report> {
    let mut report = Report::new(Target::Inversions);
    for d in small_data() {
        check_inversions(&mut report, &d, max_len)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_parse() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nope".parse::<Target>().is_err());
    }

    #[test]
    fn small_grids_pass() {
        for r in [cocycle_grid(2).unwrap(), functional_equation_grid(2).unwrap(), inversion_grid(3).unwrap(), zeta_ratio_grid().unwrap()] {
            assert!(r.passed(), "{r}: {:?}", r.failures);
        }
    }

    #[test]
    fn single_instances_pass() {
        let d = datum(CartanType::A, 1);
        let inst = Instance::new(d.clone(), constant_character(&d, -3), ZetaFunction::genus_zero(), 3);
        for t in Target::ALL {
            let r = run_instance(t, &inst).unwrap();
            assert!(r.passed(), "{r}: {:?}", r.failures);
        }
        let boundary = Instance::new(d.clone(), Character::from_ints(&[-2, -3]), ZetaFunction::genus_zero(), 2);
        let r = run_instance(Target::GkInduction, &boundary).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = random_three_factor_instances(7, 10).unwrap();
        let b = random_three_factor_instances(7, 10).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.chi, y.chi);
            assert_eq!(x.element, y.element);
        }
    }
}
