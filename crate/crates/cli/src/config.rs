//! Flag and config-file handling. Every flag may also appear as a key of the
//! JSON file given by `--config`; flags given on the command line win.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Deserialize;

use kme::cterm::{AutPlace, Mode};
use kme::{
    AffineDatum, AutomorphismData, CartanType, Character, LPolynomial, Place, Rational, TorusData, WeylElement,
    ZetaFunction,
};

/// A configuration problem, reported with exit code 2.
#[derive(Debug)]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self { field, message: message.into() }
    }
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Convergence,
    Meromorphic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Convergence => Mode::Convergence,
            ModeArg::Meromorphic => Mode::Meromorphic,
        }
    }
}

/// Instance and output flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct Common {
    /// Finite root system type (A-G); defaults to A
    #[arg(long = "type")]
    #[serde(rename = "type")]
    pub kind: Option<String>,
    /// Rank of the finite root system; defaults to (number of chi values) - 1
    #[arg(long)]
    pub rank: Option<usize>,
    /// Character values on h_1..h_{l+1}, comma separated, e.g. -3,-7/2
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    /// Genus of the function field
    #[arg(long)]
    pub genus: Option<usize>,
    /// L-polynomial coefficients a_1..a_g; the rest follow from the functional equation
    #[arg(long, allow_hyphen_values = true)]
    pub lpoly_half: Option<String>,
    /// Torus place, e.g. deg1:1,0 (repeatable)
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: Vec<String>,
    /// Central automorphism place, e.g. deg1:1 (repeatable)
    #[arg(long = "m")]
    pub m: Vec<String>,
    /// Size of the constant field used for numeric evaluation
    #[arg(long = "q")]
    pub q: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file of defaults for any flag
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// Flags specific to individual subcommands; each reads the ones it needs.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct Extra {
    /// Truncation length
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub big_l: Option<usize>,
    /// Maximal length for enumerations and verification grids
    #[arg(long)]
    pub max_length: Option<usize>,
    /// Word in the simple reflections, e.g. 1,2,1 or 121
    #[arg(long)]
    pub word: Option<String>,
    /// Exponent of the local integral
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<i64>,
    /// Brute force / shell depth: residues below valuation -N
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    /// Brute force resolution: classes modulo pi^M
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub big_m: Option<u32>,
    /// Real argument of the zeta function, e.g. 2 or 5/2
    #[arg(long = "s")]
    pub s: Option<String>,
    /// Largest place degree in Euler products
    #[arg(long = "D")]
    #[serde(rename = "D")]
    pub big_d: Option<u32>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

macro_rules! merge_options {
    ($dst:expr, $src:expr; $($field:ident),*) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )*
    };
}

const KNOWN_KEYS: &[&str] = &[
    "type", "rank", "chi", "genus", "lpoly-half", "h", "m", "q", "format", "out", "L", "max-length", "word", "kappa",
    "N", "M", "s", "D", "mode",
];

/// Fill unset flags from the `--config` file, if any.
pub fn apply_config_file(common: &mut Common, extra: &mut Extra) -> ConfigResult<()> {
    let Some(path) = common.config.clone() else { return Ok(()) };
    let (file_common, file_extra) = read_config(&path)?;
    merge_options!(common, file_common; kind, rank, chi, genus, lpoly_half, q, format, out);
    if common.h.is_empty() {
        common.h = file_common.h;
    }
    if common.m.is_empty() {
        common.m = file_common.m;
    }
    merge_options!(extra, file_extra; big_l, max_length, word, kappa, big_n, big_m, s, big_d, mode);
    Ok(())
}

fn read_config(path: &Path) -> ConfigResult<(Common, Extra)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| ConfigError::new("config", format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| ConfigError::new("config", "expected a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(ConfigError::new("config", format!("unknown key '{k}'")));
    }
    let common = serde_json::from_value(value.clone()).map_err(|e| ConfigError::new("config", e.to_string()))?;
    let extra = serde_json::from_value(value).map_err(|e| ConfigError::new("config", e.to_string()))?;
    Ok((common, extra))
}

fn parse_list<T: FromStr>(field: &'static str, s: &str) -> ConfigResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| ConfigError::new(field, format!("cannot parse '{x}'"))))
        .collect()
}

pub fn parse_rational(field: &'static str, s: &str) -> ConfigResult<Rational> {
    Rational::from_str(s.trim()).map_err(|_| ConfigError::new(field, format!("'{s}' is not a rational number")))
}

/// A word as `1,2,1` or, when every generator is a single digit, `121`.
pub fn parse_word(s: &str) -> ConfigResult<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        return parse_list("word", s);
    }
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| ConfigError::new("word", format!("bad letter '{c}'"))))
        .collect()
}

/// `deg<d>:<values>`.
fn parse_place(field: &'static str, s: &str) -> ConfigResult<(u32, String)> {
    let (deg, rest) = s
        .split_once(':')
        .ok_or_else(|| ConfigError::new(field, format!("'{s}' should look like deg1:...")))?;
    let deg = deg
        .trim()
        .strip_prefix("deg")
        .and_then(|d| d.parse::<u32>().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| ConfigError::new(field, format!("bad degree in '{s}'")))?;
    Ok((deg, rest.to_string()))
}

impl Common {
    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn chi_values(&self) -> ConfigResult<Option<Vec<Rational>>> {
        self.chi.as_deref().map(|c| c.split(',').map(|x| parse_rational("chi", x)).collect()).transpose()
    }

    pub fn datum(&self) -> ConfigResult<AffineDatum> {
        let kind = match &self.kind {
            Some(k) => k.parse::<CartanType>().map_err(|e| ConfigError::new("type", e.to_string()))?,
            None => CartanType::A,
        };
        let rank = match (self.rank, self.chi_values()?) {
            (Some(r), _) => r,
            (None, Some(v)) if v.len() >= 2 => v.len() - 1,
            _ => return Err(ConfigError::new("rank", "give --rank or --chi")),
        };
        AffineDatum::build(kind, rank).map_err(|e| ConfigError::new("type", e.to_string()))
    }

    /// The character, or `(default, ..., default)` when `--chi` is absent.
    pub fn character(&self, d: &AffineDatum, default: Option<i64>) -> ConfigResult<Character> {
        let n = d.num_generators();
        let values = match (self.chi_values()?, default) {
            (Some(v), _) => v,
            (None, Some(x)) => vec![Rational::from_integer(x.into()); n],
            (None, None) => return Err(ConfigError::new("chi", "missing --chi")),
        };
        if values.len() != n {
            return Err(ConfigError::new("chi", format!("expected {n} values, got {}", values.len())));
        }
        Ok(Character::new(values))
    }

    pub fn zeta(&self) -> ConfigResult<ZetaFunction> {
        let half: Vec<i64> = match &self.lpoly_half {
            Some(s) => parse_list("lpoly-half", s)?,
            None => Vec::new(),
        };
        let genus = self.genus.unwrap_or(half.len());
        if half.len() != genus {
            return Err(ConfigError::new(
                "lpoly-half",
                format!("genus {genus} needs {genus} coefficients a_1..a_g, got {}", half.len()),
            ));
        }
        Ok(ZetaFunction::new(LPolynomial::from_half(&half)))
    }

    pub fn torus(&self, d: &AffineDatum) -> ConfigResult<TorusData> {
        let mut places = Vec::new();
        for s in &self.h {
            let (degree, rest) = parse_place("h", s)?;
            let ord: Vec<i64> = parse_list("h", &rest)?;
            if ord.len() != d.num_generators() {
                return Err(ConfigError::new("h", format!("'{s}' needs {} orders", d.num_generators())));
            }
            places.push(Place { degree, ord });
        }
        TorusData::new(places).map_err(|e| ConfigError::new("h", e.to_string()))
    }

    pub fn automorphism(&self) -> ConfigResult<AutomorphismData> {
        let mut places = Vec::new();
        for s in &self.m {
            let (degree, rest) = parse_place("m", s)?;
            let m = rest.trim().parse::<i64>().map_err(|_| ConfigError::new("m", format!("bad exponent in '{s}'")))?;
            places.push(AutPlace { degree, m });
        }
        AutomorphismData::new(places).map_err(|e| ConfigError::new("m", e.to_string()))
    }

    pub fn q_or(&self, default: Option<u64>) -> ConfigResult<u64> {
        let q = self.q.or(default).ok_or_else(|| ConfigError::new("q", "missing --q"))?;
        if q < 2 {
            return Err(ConfigError::new("q", "must be at least 2"));
        }
        Ok(q)
    }
}

impl Extra {
    pub fn element(&self, d: &AffineDatum) -> ConfigResult<Option<WeylElement>> {
        self.word
            .as_deref()
            .map(|w| WeylElement::reduce(d, &parse_word(w)?).map_err(|e| ConfigError::new("word", e.to_string())))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("121").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_word("1,12").unwrap(), vec![1, 12]);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("1x").is_err());
    }

    #[test]
    fn places_parse() {
        let c = Common { h: vec!["deg2:1,-1".into()], m: vec!["deg1:3".into()], ..Default::default() };
        let d = AffineDatum::build(CartanType::A, 1).unwrap();
        assert_eq!(c.torus(&d).unwrap().places()[0], Place { degree: 2, ord: vec![1, -1] });
        assert_eq!(c.automorphism().unwrap().total(), 3);
        let bad = Common { h: vec!["deg0:1,0".into()], ..Default::default() };
        assert!(bad.torus(&d).is_err());
    }

    #[test]
    fn rank_defaults_from_chi() {
        let c = Common { chi: Some("-3,-3,-5/2".into()), ..Default::default() };
        assert_eq!(c.datum().unwrap().rank(), 2);
        assert_eq!(c.character(&c.datum().unwrap(), None).unwrap().values()[2], Rational::new((-5).into(), 2.into()));
    }

    #[test]
    fn genus_needs_coefficients() {
        let c = Common { genus: Some(1), ..Default::default() };
        assert!(c.zeta().is_err());
        let c = Common { lpoly_half: Some("-2".into()), ..Default::default() };
        assert_eq!(c.zeta().unwrap().genus(), 1);
    }
}
