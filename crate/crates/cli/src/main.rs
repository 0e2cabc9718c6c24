//! `kme`: batch driver for constant-term computations and identity checks.
//!
//! Exit codes: 0 success, 1 computation error or failed verification,
//! 2 configuration error.

mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{apply_config_file, parse_rational, Common, ConfigError, Extra, Format, ModeArg};
use kme::affine_weyl::enumerate;
use kme::cterm::{c_function, constant_term, Mode};
use kme::local_oracle::{euler_consistency, gk_integral, gk_local_product, GkMode};
use kme::qfield::{int, rational_string, to_f64};
use kme::verify::{self, Instance, Report, Target};
use kme::zeta::euler_partial;
use kme::Error;
use output::*;

#[derive(Parser)]
#[command(name = "kme", version, about = "Constant terms of Eisenstein series on affine Kac-Moody groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CmdArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    extra: Extra,
}

#[derive(Args)]
struct VerifyArgs {
    /// cocycle, funceq, three-factor, gk-induction, zeta-ratios or inversions; all when omitted
    target: Option<String>,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    extra: Extra,
}

#[derive(Subcommand)]
enum Command {
    /// List affine Weyl group elements up to --L, or describe --word
    Weyl(CmdArgs),
    /// The c-function c(chi, w) as a rational function of q
    Cfunc(CmdArgs),
    /// Truncated constant term with partial sums and tail bounds
    Cterm(CmdArgs),
    /// Local rank-one integral, or the local product along --word
    Gk(CmdArgs),
    /// Truncated Euler products: zeta at --s, or c(chi, w) along --word
    Euler(CmdArgs),
    /// Run identity checks on the standard grid or on one instance
    Verify(VerifyArgs),
}

enum Failure {
    Config(ConfigError),
    Compute(Error),
    Verification(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedType { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidGenerator { .. }
            | Error::InvalidLPolynomial(_)
            | Error::InvalidPlaceData(_)
            | Error::RegionViolation(_)
            | Error::DomainError(_) => Failure::Config(ConfigError::new("input", e.to_string())),
            other => Failure::Compute(other),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn emit(common: &Common, body: &[u8]) -> Outcome {
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(body).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn emit_json<T: serde::Serialize>(common: &Common, value: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    emit(common, text.as_bytes())
}

fn emit_csv(common: &Common, header: &[&str], rows: Vec<Vec<String>>) -> Outcome {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    emit(common, &bytes)
}

fn json_only(common: &Common, command: &str) -> Outcome {
    if common.format() == Format::Csv {
        return Err(ConfigError::new("format", format!("csv output is not available for {command}")).into());
    }
    Ok(())
}

fn weyl(common: &Common, extra: &Extra) -> Outcome {
    let d = common.datum()?;
    let elements = match extra.element(&d)? {
        Some(w) => vec![w],
        None => {
            let len = extra.big_l.or(extra.max_length).ok_or_else(|| ConfigError::new("L", "give --L or --word"))?;
            enumerate(&d, len)?
        }
    };
    let records = elements.iter().map(|w| ElementJson::new(&d, w)).collect::<kme::Result<Vec<_>>>()?;
    match common.format() {
        Format::Json => emit_json(common, &WeylJson { instance: InstanceJson::new(&d, None, None), elements: records }),
        Format::Csv => {
            let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            let rows = elements
                .iter()
                .zip(&records)
                .map(|(w, r)| vec![w.word().to_string(), r.length.to_string(), join(&r.translation)])
                .collect();
            emit_csv(common, &["word", "length", "translation"], rows)
        }
    }
}

fn cfunc(common: &Common, extra: &Extra) -> Outcome {
    json_only(common, "cfunc")?;
    let d = common.datum()?;
    let chi = common.character(&d, None)?;
    let z = common.zeta()?;
    let w = extra.element(&d)?.ok_or_else(|| ConfigError::new("word", "missing --word"))?;
    let c = c_function(&d, &chi, &w, &z)?;
    let numeric = common.q.map(|q| c.eval(&int(q as i64))).transpose()?;
    emit_json(
        common,
        &CfuncJson {
            instance: InstanceJson::new(&d, Some(chi.values()), Some(z.genus())),
            word: w.word().0,
            length: w.length(),
            roots: w.inverse_inversion_set(&d).iter().map(|a| a.to_string()).collect(),
            c: (&c).into(),
            q: common.q,
            numeric: numeric.as_ref().map(to_f64),
            numeric_exact: numeric.as_ref().map(rational_string),
        },
    )
}

fn cterm(common: &Common, extra: &Extra) -> Outcome {
    let d = common.datum()?;
    let chi = common.character(&d, None)?;
    let z = common.zeta()?;
    let h = common.torus(&d)?;
    let m = common.automorphism()?;
    let max_len = extra.big_l.or(extra.max_length).ok_or_else(|| ConfigError::new("L", "missing --L"))?;
    let mode = extra.mode.unwrap_or(ModeArg::Convergence);
    if common.format() == Format::Csv && common.q.is_none() {
        return Err(ConfigError::new("q", "csv output of partial sums needs --q").into());
    }
    let ct = constant_term(&d, &chi, &h, &m, &z, max_len, common.q, Mode::from(mode))?;
    if common.format() == Format::Csv {
        let rows = ct
            .partial_sums
            .iter()
            .map(|p| {
                vec![
                    p.max_len.to_string(),
                    p.value.render(DECIMAL_DIGITS),
                    p.tail_bound.map(|t| format!("{t:e}")).unwrap_or_default(),
                ]
            })
            .collect();
        return emit_csv(common, &["L", "partial_sum", "tail_bound"], rows);
    }
    let q0 = common.q.map(|q| int(q as i64));
    let terms = ct
        .terms
        .iter()
        .map(|t| {
            let n = q0.as_ref().map(|q| t.value.eval(q)).transpose()?;
            Ok(TermJson::new(t, n.as_ref()))
        })
        .collect::<kme::Result<Vec<_>>>()?;
    emit_json(
        common,
        &CtermJson {
            instance: InstanceJson::new(&d, Some(chi.values()), Some(z.genus())),
            mode: match mode {
                ModeArg::Convergence => "convergence",
                ModeArg::Meromorphic => "meromorphic",
            },
            max_len,
            q: common.q,
            terms,
            partial_sums: ct.partial_sums.iter().map(PartialSumJson::from).collect(),
            theta: ct.theta.as_ref().map(ThetaJson::from),
        },
    )
}

fn gk(common: &Common, extra: &Extra) -> Outcome {
    json_only(common, "gk")?;
    let q = common.q_or(Some(2))?;
    if extra.word.is_some() {
        let d = common.datum()?;
        let chi = common.character(&d, None)?;
        let w = extra.element(&d)?.expect("word present");
        let p = gk_local_product(&d, &chi, &w, q)?;
        return emit_json(
            common,
            &GkProductJson {
                instance: InstanceJson::new(&d, Some(chi.values()), None),
                word: w.word().0,
                q,
                product: rational_string(&p),
                numeric: to_f64(&p),
            },
        );
    }
    let kappa = extra.kappa.ok_or_else(|| ConfigError::new("kappa", "give --kappa or --word"))?;
    let n = extra.big_n.unwrap_or(4);
    let mode = match extra.big_m {
        Some(m) => GkMode::BruteForce { n, m },
        None => GkMode::Shells { n },
    };
    let g = gk_integral(q, kappa, mode)?;
    let agrees = g.total == g.closed_form;
    emit_json(
        common,
        &GkIntegralJson {
            q,
            kappa,
            method: if extra.big_m.is_some() { "brute-force" } else { "shells" },
            n,
            m: extra.big_m,
            truncated: rational_string(&g.truncated),
            tail: rational_string(&g.tail),
            total: rational_string(&g.total),
            closed_form: rational_string(&g.closed_form),
            agrees,
            hypothesis: if g.weak_hypothesis { "convergence only (-2 <= kappa < -1)" } else { "kappa < -2" },
        },
    )?;
    if !agrees {
        return Err(Failure::Verification(format!("integral {} differs from closed form {}", g.total, g.closed_form)));
    }
    Ok(())
}

fn euler(common: &Common, extra: &Extra) -> Outcome {
    json_only(common, "euler")?;
    let q = common.q_or(Some(2))?;
    let max_deg = extra.big_d.unwrap_or(10);
    let record = if extra.word.is_some() {
        let d = common.datum()?;
        let chi = common.character(&d, None)?;
        let w = extra.element(&d)?.expect("word present");
        let e = euler_consistency(&d, &chi, &w, max_deg, q)?;
        EulerJson {
            q,
            max_deg,
            s: None,
            word: Some(w.word().0),
            partial: e.partial,
            target: e.target,
            gap: e.gap,
            tail_bound: e.tail_bound,
            within_bound: e.gap.abs() <= e.tail_bound,
        }
    } else {
        let s = parse_rational("s", extra.s.as_deref().unwrap_or("2"))?;
        let e = euler_partial(q, &s, max_deg)?;
        let gap = e.closed - e.partial;
        EulerJson {
            q,
            max_deg,
            s: Some(rational_string(&s)),
            word: None,
            partial: e.partial,
            target: e.closed,
            gap,
            tail_bound: e.tail_bound,
            within_bound: gap.abs() <= e.tail_bound,
        }
    };
    let ok = record.within_bound;
    emit_json(common, &record)?;
    if !ok {
        return Err(Failure::Verification(format!("gap {} exceeds tail bound {}", record.gap, record.tail_bound)));
    }
    Ok(())
}

fn default_max_len(t: Target) -> usize {
    match t {
        Target::Cocycle | Target::FunctionalEquation => 3,
        Target::ThreeFactor | Target::GkInduction => 5,
        Target::ZetaRatios => 0,
        Target::Inversions => 6,
    }
}

fn verify_cmd(target: Option<&str>, common: &Common, extra: &Extra) -> Outcome {
    json_only(common, "verify")?;
    let targets = match target {
        Some(t) => vec![t.parse::<Target>().map_err(|e| ConfigError::new("target", e.to_string()))?],
        None => Target::ALL.to_vec(),
    };
    let custom = common.kind.is_some() || common.rank.is_some() || common.chi.is_some();
    let (instance_json, reports): (_, Vec<Report>) = if custom {
        let d = common.datum()?;
        let chi = common.character(&d, Some(-3))?;
        let z = common.zeta()?;
        let mut base = Instance::new(d.clone(), chi.clone(), z.clone(), 0);
        if !common.h.is_empty() {
            base.h = common.torus(&d)?;
        }
        if !common.m.is_empty() {
            base.m = common.automorphism()?;
        }
        let reports = targets
            .iter()
            .map(|&t| {
                let inst = Instance { max_len: extra.max_length.unwrap_or(default_max_len(t)), ..base.clone() };
                verify::run_instance(t, &inst)
            })
            .collect::<kme::Result<Vec<_>>>()?;
        (Some(InstanceJson::new(&d, Some(chi.values()), Some(z.genus()))), reports)
    } else {
        (None, targets.iter().map(|&t| verify::run(t)).collect::<kme::Result<Vec<_>>>()?)
    };
    let passed = reports.iter().all(Report::passed);
    emit_json(
        common,
        &VerifyJson { instance: instance_json, passed, reports: reports.iter().map(ReportJson::from).collect() },
    )?;
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(Failure::Verification(format!(
            "{}: {}",
            r.target,
            r.failures.first().map(String::as_str).unwrap_or("no instance could be checked")
        ))),
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify(VerifyArgs { target, mut common, mut extra }) => {
            apply_config_file(&mut common, &mut extra)?;
            verify_cmd(target.as_deref(), &common, &extra)
        }
        cmd => {
            let (run, CmdArgs { mut common, mut extra }): (fn(&Common, &Extra) -> Outcome, CmdArgs) = match cmd {
                Command::Weyl(a) => (weyl, a),
                Command::Cfunc(a) => (cfunc, a),
                Command::Cterm(a) => (cterm, a),
                Command::Gk(a) => (gk, a),
                Command::Euler(a) => (euler, a),
                Command::Verify(_) => unreachable!(),
            };
            apply_config_file(&mut common, &mut extra)?;
            run(&common, &extra)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error [{}]: {}", e.field, e.message);
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(1)
        }
    }
}
