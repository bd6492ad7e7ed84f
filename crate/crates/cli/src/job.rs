//! Command-line arguments turned into validated families.

use clap::{Args, ValueEnum};
use xoppak::classical_families::MeixnerParams;
use xoppak::exact_core::parse_rational;
use xoppak::exceptional_laguerre::LaguerreExcFamily;
use xoppak::exceptional_meixner::MeixnerExcFamily;
use xoppak::pair_combinatorics::PairSpec;
use xoppak::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Meixner,
    Laguerre,
    /// Meixner with a -> -a and c -> 1 - N; exact checks only.
    Krawtchouk,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Meixner => "meixner",
            Kind::Laguerre => "laguerre",
            Kind::Krawtchouk => "krawtchouk",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Comma-separated elements of F1 (may be empty).
    #[arg(long = "F1", default_value = "", allow_hyphen_values = true)]
    pub f1: String,
    /// Comma-separated elements of F2 (may be empty).
    #[arg(long = "F2", default_value = "", allow_hyphen_values = true)]
    pub f2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Krawtchouk size parameter.
    #[arg(long = "N")]
    pub big_n: Option<i64>,
    /// A degree or an inclusive range lo..hi.
    #[arg(long)]
    pub n: Option<String>,
}

pub enum Family {
    Meixner(MeixnerExcFamily),
    Laguerre(LaguerreExcFamily),
}

/// A parsed job: the family plus everything needed to rebuild it.
pub struct Job {
    pub kind: Kind,
    pub pair: PairSpec,
    pub params: Vec<(&'static str, String)>,
    pub family: Family,
    pub n_range: Option<(i64, i64)>,
}

pub fn parse_set(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parameter(format!("not an integer: {t:?}"))))
        .collect()
}

pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parameter(format!("bad degree range {s:?}; expected n or lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo < 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn required(v: &Option<String>, name: &str, kind: Kind) -> Result<Rational> {
    let s = v.as_deref().ok_or_else(|| Error::Parameter(format!("--{name} is required for --kind {}", kind.as_str())))?;
    parse_rational(s)
}

pub fn parse_pair(f1: &str, f2: &str) -> Result<PairSpec> {
    PairSpec::from_vecs(parse_set(f1)?, parse_set(f2)?)
}

impl FamilyArgs {
    pub fn job(&self) -> Result<Job> {
        let pair = parse_pair(&self.f1, &self.f2)?;
        let n_range = self.n.as_deref().map(parse_range).transpose()?;
        let (family, params) = match self.kind {
            Kind::Meixner => {
                let a = required(&self.a, "a", self.kind)?;
                let c = required(&self.c, "c", self.kind)?;
                let p = MeixnerParams::new(a.clone(), c.clone())?;
                (Family::Meixner(MeixnerExcFamily::new(p, pair.clone())?), vec![("a", a.to_string()), ("c", c.to_string())])
            }
            Kind::Krawtchouk => {
                let a = required(&self.a, "a", self.kind)?;
                let big_n = self.big_n.ok_or_else(|| Error::Parameter("--N is required for --kind krawtchouk".into()))?;
                if big_n < 1 {
                    return Err(Error::Parameter(format!("N = {big_n} must be positive")));
                }
                let p = MeixnerParams::formal(-&a, Rational::from_integer((1 - big_n).into()))?;
                (Family::Meixner(MeixnerExcFamily::new(p, pair.clone())?), vec![("a", a.to_string()), ("N", big_n.to_string())])
            }
            Kind::Laguerre => {
                let alpha = required(&self.alpha, "alpha", self.kind)?;
                (Family::Laguerre(LaguerreExcFamily::new(alpha.clone(), pair.clone())?), vec![("alpha", alpha.to_string())])
            }
        };
        Ok(Job { kind: self.kind, pair, params, family, n_range })
    }
}

impl Job {
    pub fn u(&self) -> i64 {
        self.pair.u()
    }

    /// Requested degrees, or u..=u+4.
    pub fn degrees(&self) -> (i64, i64) {
        self.n_range.unwrap_or((self.u(), self.u() + 4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_and_ranges() {
        assert_eq!(parse_set("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_set("1, 3,4").unwrap(), vec![1, 3, 4]);
        assert!(parse_set("1,x").is_err());
        assert_eq!(parse_range("0..4").unwrap(), (0, 4));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("-1").is_err());
    }
}
