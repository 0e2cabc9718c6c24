//! Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
//! limits are fixed below.

use std::time::{Duration, Instant};

use kme::affine_weyl::{enumerate, shifted_action, translation_length};
use kme::cterm::{c_function, check_region, constant_term, AutPlace, Mode, ThetaConstants};
use kme::local_oracle::{gk_closed_form, gk_integral, GkMode};
use kme::qfield::{int, rat, to_f64};
use kme::verify::{self, THREE_FACTOR_COUNT, THREE_FACTOR_SEED};
use kme::zeta::euler_partial;
use kme::{
    AffineDatum, AutomorphismData, CartanType, Character, Error, Numeric, TorusData, WeylElement, ZetaFunction,
};

const GK_TIME: Duration = Duration::from_secs(1);
const EULER_TIME: Duration = Duration::from_secs(1);
const EULER_TOL: f64 = 1e-3;
const INVERSION_TIME: Duration = Duration::from_secs(5);
const COCYCLE_TIME: Duration = Duration::from_secs(30);
const SIGMA2_TOL: f64 = 1e-12;
const BOUND_SLACK: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn datum(kind: CartanType, rank: usize) -> AffineDatum {
    AffineDatum::build(kind, rank).unwrap()
}

fn report_check(r: verify::Report) -> Result<(), String> {
    ensure(r.passed(), format!("{r}; first failures: {:?}", r.failures.iter().take(3).collect::<Vec<_>>()))
}

fn gk_local_formula() -> Outcome {
    let start = Instant::now();
    for kappa in [-2, -3, -4] {
        let g = gk_integral(2, kappa, GkMode::BruteForce { n: 4, m: 4 }).map_err(err)?;
        ensure(g.total == gk_closed_form(2, kappa), format!("kappa = {kappa}: {} != {}", g.total, g.closed_form))?;
    }
    let g = gk_integral(2, -3, GkMode::BruteForce { n: 4, m: 4 }).map_err(err)?;
    ensure(g.total == rat(7, 6), "(q, kappa) = (2, -3) is not 7/6")?;
    let t = start.elapsed();
    ensure(t < GK_TIME, format!("took {t:?}"))?;
    Ok(format!("256 points per kappa, exact; {t:?}"))
}

fn euler_product() -> Outcome {
    let start = Instant::now();
    let e = euler_partial(2, &int(2), 10).map_err(err)?;
    let gap = 8.0 / 3.0 - e.partial;
    let t = start.elapsed();
    ensure((e.closed - 8.0 / 3.0).abs() < 1e-12, "closed form is not 8/3")?;
    ensure(gap.abs() < EULER_TOL, format!("gap {gap:e}"))?;
    ensure(gap >= 0.0 && gap <= e.tail_bound, format!("gap {gap:e} exceeds tail bound {:e}", e.tail_bound))?;
    ensure(t < EULER_TIME, format!("took {t:?}"))?;
    Ok(format!("gap {gap:.3e} <= bound {:.3e}; {t:?}", e.tail_bound))
}

fn inversion_sets() -> Outcome {
    let start = Instant::now();
    let r = verify::inversion_grid(6).map_err(err)?;
    report_check(r.clone())?;
    let t = start.elapsed();
    ensure(t < INVERSION_TIME, format!("took {t:?}"))?;
    Ok(format!("{} elements; {t:?}", r.checks))
}

fn cocycle() -> Outcome {
    let start = Instant::now();
    let r = verify::cocycle_grid(3).map_err(err)?;
    report_check(r.clone())?;
    ensure(r.skipped == 0, format!("{} pairs hit a pole", r.skipped))?;
    let mut cancellations = 0;
    for d in [datum(CartanType::A, 1), datum(CartanType::A, 2)] {
        let chi = Character::from_ints(&vec![-3; d.num_generators()]);
        for z in verify::standard_zetas() {
            for i in 1..=d.num_generators() {
                let wi = WeylElement::simple(&d, i).map_err(err)?;
                let back = shifted_action(&d, &wi, &chi).map_err(err)?;
                let prod = &c_function(&d, &chi, &wi, &z).map_err(err)? * &c_function(&d, &back, &wi, &z).map_err(err)?;
                ensure(prod == kme::RatFunc::one(), format!("c(chi, w{i}) c(w{i} o chi, w{i}) = {prod}"))?;
                cancellations += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < COCYCLE_TIME, format!("took {t:?}"))?;
    Ok(format!("{} pairs, {cancellations} cancellations; {t:?}", r.checks))
}

fn zeta_ratios() -> Outcome {
    let r = verify::zeta_ratio_grid().map_err(err)?;
    report_check(r.clone())?;
    Ok(format!("{} identities", r.checks))
}

fn functional_equation() -> Outcome {
    let r = verify::functional_equation_grid(3).map_err(err)?;
    report_check(r.clone())?;
    ensure(r.skipped == 0, format!("{} pairs hit a pole", r.skipped))?;
    Ok(format!("{} term identities", r.checks))
}

fn three_factor() -> Outcome {
    let instances = verify::random_three_factor_instances(THREE_FACTOR_SEED, THREE_FACTOR_COUNT).map_err(err)?;
    ensure(instances.iter().all(|i| i.element.length() <= 5), "instance longer than 5")?;
    let r = verify::three_factor_grid(THREE_FACTOR_SEED, THREE_FACTOR_COUNT).map_err(err)?;
    report_check(r.clone())?;
    ensure(r.checks == THREE_FACTOR_COUNT, format!("only {} checks", r.checks))?;
    Ok(format!("{} instances", r.checks))
}

fn convergence() -> Outcome {
    let d = datum(CartanType::A, 1);
    let chi = Character::from_ints(&[-3, -3]);
    let m = AutomorphismData::new(vec![AutPlace { degree: 1, m: 1 }]).map_err(err)?;
    let ct = constant_term(&d, &chi, &TorusData::trivial(), &m, &ZetaFunction::genus_zero(), 12, Some(3), Mode::Convergence)
        .map_err(err)?;
    let mut prev: Option<kme::Rational> = None;
    let mut exact = Vec::new();
    for ps in &ct.partial_sums[2..] {
        let Numeric::Exact(v) = &ps.value else {
            return Err(format!("partial sum at L = {} is not exact", ps.max_len));
        };
        ensure(*v > int(0), format!("partial sum at L = {} not positive", ps.max_len))?;
        if let Some(p) = &prev {
            ensure(v >= p, format!("partial sum decreases at L = {}", ps.max_len))?;
        }
        prev = Some(v.clone());
        exact.push(v.clone());
    }
    let tails: Vec<f64> = ct.partial_sums[2..].iter().map(|p| p.tail_bound.unwrap()).collect();
    ensure(tails.windows(2).all(|w| w[1] <= w[0]), format!("tail bounds not monotone: {tails:?}"))?;
    ensure(tails.last() < tails.first(), "tail bound does not decrease")?;
    let ps = |l: usize| to_f64(&exact[l - 2]);
    let tail8 = ct.partial_sums[8].tail_bound.unwrap();
    let growth = to_f64(&(&exact[10] - &exact[6]));
    ensure(growth <= tail8, format!("ps(12) - ps(8) = {growth:e} > tail(8) = {tail8:e}"))?;
    let theta = ct.theta.as_ref().ok_or("no theta constants")?;
    ensure(theta.sigma2_coeff == int(2), format!("sigma2 coefficient {}", theta.sigma2_coeff))?;
    ensure((theta.sigma2 - 2.0 * 3f64.ln()).abs() < SIGMA2_TOL, format!("sigma2 = {}", theta.sigma2))?;
    Ok(format!(
        "ps(12) = {:.6}, ps(12) - ps(8) = {growth:.3e} <= tail(8) = {tail8:.3e}, tail(12) = {:.3e}",
        ps(12),
        tails.last().unwrap()
    ))
}

fn bound_shapes() -> Outcome {
    let mut checked = 0;
    let m = AutomorphismData::new(vec![AutPlace { degree: 1, m: 1 }]).map_err(err)?;
    for d in [datum(CartanType::A, 1), datum(CartanType::A, 2)] {
        let chi = Character::from_ints(&vec![-3; d.num_generators()]);
        let els = enumerate(&d, 8).map_err(err)?;
        for z in verify::standard_zetas() {
            for q0 in [2u64, 3] {
                let theta = ThetaConstants::new(&d, &chi, &TorusData::trivial(), &m, &z, q0).map_err(err)?;
                let g = z.genus() as i32;
                let eps = to_f64(&theta.epsilon);
                let zeta = z.eval_f64(q0 as f64, 1.0 + eps);
                let m_eps = (q0 as f64).powi(1 - g) * zeta * zeta;
                ensure((m_eps - theta.m_eps).abs() <= 1e-12 * m_eps, "M_eps disagrees with its definition")?;
                for w in &els {
                    let c = to_f64(&c_function(&d, &chi, w, &z).map_err(err)?.eval(&int(q0 as i64)).map_err(err)?);
                    let bound = m_eps.powi(w.length() as i32);
                    ensure(c <= bound * (1.0 + BOUND_SLACK), format!("c = {c} > {bound} at w = {}", w.word()))?;
                    checked += 1;
                }
            }
        }
    }
    let mut lattice = 0;
    for d in [datum(CartanType::A, 1), datum(CartanType::A, 2), datum(CartanType::C, 2), datum(CartanType::G, 2)] {
        let s3 = kme::cterm::theta::sigma3(&d).map_err(err)?;
        let gram = d.finite().gram();
        let l = d.rank();
        let mut h = vec![-8i64; l];
        loop {
            let n2: i64 = (0..l).map(|i| (0..l).map(|j| h[i] * h[j] * gram[i][j]).sum::<i64>()).sum();
            if n2 > 0 && n2 <= 16 {
                let len = translation_length(&d, &h).map_err(err)? as f64;
                ensure(len <= s3 * (n2 as f64).sqrt() + BOUND_SLACK, format!("l(T_H) = {len} for H = {h:?}"))?;
                lattice += 1;
            }
            let Some(k) = (0..l).find(|&k| h[k] < 8) else { break };
            h[k] += 1;
            for x in h.iter_mut().take(k) {
                *x = -8;
            }
        }
    }
    Ok(format!("{checked} c-bounds, {lattice} translations"))
}

fn poles_and_domain() -> Outcome {
    let z = ZetaFunction::genus_zero();
    for d in [datum(CartanType::A, 1), datum(CartanType::A, 2)] {
        let n = d.num_generators();
        for i in 1..=n {
            let mut v = vec![-3; n];
            v[i - 1] = -2;
            let wi = WeylElement::simple(&d, i).map_err(err)?;
            let r = c_function(&d, &Character::from_ints(&v), &wi, &z);
            ensure(matches!(r, Err(Error::ZetaPole { .. })), format!("no pole at w{i}: {r:?}"))?;
        }
        let hv = d.dual_coxeter();
        // chi(h_delta) = -h^vee sits on the boundary; one above is also outside.
        for total in [-hv, -hv + 1] {
            let mut v = vec![0; n];
            v[n - 1] = total;
            let chi = Character::from_ints(&v);
            ensure(chi.on_delta(&d) == int(total), "boundary character")?;
            ensure(
                matches!(check_region(&d, &chi, Mode::Meromorphic), Err(Error::RegionViolation(_))),
                format!("chi(h_delta) = {total} accepted"),
            )?;
            let m = AutomorphismData::new(vec![AutPlace { degree: 1, m: 1 }]).map_err(err)?;
            let r = constant_term(&d, &chi, &TorusData::trivial(), &m, &z, 2, None, Mode::Meromorphic);
            ensure(matches!(r, Err(Error::RegionViolation(_))), "constant term accepted boundary character")?;
        }
        for chi in [Character::from_ints(&vec![-3; n]), Character::new((0..n).map(|k| rat(-7 - k as i64, 2)).collect())] {
            for i in 1..=n {
                let wi = WeylElement::simple(&d, i).map_err(err)?;
                let moved = shifted_action(&d, &wi, &chi).map_err(err)?;
                ensure(moved.on_delta(&d) == chi.on_delta(&d), format!("w{i} moves chi(h_delta)"))?;
            }
        }
    }
    Ok("poles, boundary rejection and invariance hold".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 local GK formula", gk_local_formula),
        ("2 Euler product", euler_product),
        ("3 inversion sets", inversion_sets),
        ("4 cocycle identity", cocycle),
        ("5 zeta ratio identities", zeta_ratios),
        ("6 functional equation", functional_equation),
        ("7 three-factor decomposition", three_factor),
        ("8 convergence", convergence),
        ("9 bound shapes", bound_shapes),
        ("10 poles and domain", poles_and_domain),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
