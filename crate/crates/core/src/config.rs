//! Plain-text parameter files.
//!
//! One `key = value` pair per line, `#` starts a comment. Keys: `g`, `n`,
//! `N` (ambient vertex count), `r`, `alpha` (list), `p` (list), `seed`,
//! `star` (edge list like `1-3,3-5,5-2,2-4,4-1`). Lists accept comma or
//! whitespace separators. Later assignments override earlier ones.

use crate::error::Error;
use crate::model::ModelParams;
use crate::pattern::StarPattern;
use serde::Serialize;

/// Parsed parameter file; every field optional so that partial files and
/// command-line overrides can be merged.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ParamFile {
    pub g: Option<u32>,
    pub n: Option<u64>,
    /// Ambient vertex count, the file key `N`.
    pub ambient: Option<usize>,
    pub r: Option<usize>,
    pub alpha: Option<Vec<f64>>,
    /// Explicit probabilities, the file key `p`.
    pub probs: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub star: Option<StarPattern>,
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {value:?} for key {key}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, Error> {
    let items: Result<Vec<f64>, Error> = value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_scalar(key, s))
        .collect();
    let items = items?;
    if items.is_empty() {
        return Err(Error::Parse(format!("key {key} needs at least one number")));
    }
    Ok(items)
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<ParamFile, Error> {
        let mut out = ParamFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value, got {raw:?}", idx + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "g" => out.g = Some(parse_scalar(key, value)?),
                "n" => out.n = Some(parse_scalar(key, value)?),
                "N" => out.ambient = Some(parse_scalar(key, value)?),
                "r" => out.r = Some(parse_scalar(key, value)?),
                "alpha" => out.alpha = Some(parse_list(key, value)?),
                "p" => out.probs = Some(parse_list(key, value)?),
                "seed" => out.seed = Some(parse_scalar(key, value)?),
                "star" => out.star = Some(value.parse()?),
                other => {
                    return Err(Error::Parse(format!("line {}: unknown key {other:?}", idx + 1)))
                }
            }
        }
        Ok(out)
    }

    /// Field-wise override: anything set in `overrides` wins.
    pub fn merge(self, overrides: ParamFile) -> ParamFile {
        ParamFile {
            g: overrides.g.or(self.g),
            n: overrides.n.or(self.n),
            ambient: overrides.ambient.or(self.ambient),
            r: overrides.r.or(self.r),
            alpha: overrides.alpha.or(self.alpha),
            probs: overrides.probs.or(self.probs),
            seed: overrides.seed.or(self.seed),
            star: overrides.star.or(self.star),
        }
    }

    /// Assembles model parameters; `g` is mandatory, everything else
    /// defaults as in [`ModelParams::builder`].
    pub fn build_params(&self) -> Result<ModelParams, Error> {
        let g = self
            .g
            .ok_or_else(|| Error::InvalidParams("the genus g is required".into()))?;
        let mut builder = ModelParams::builder(g);
        if let Some(n) = self.n {
            builder = builder.n(n);
        }
        if let Some(ambient) = self.ambient {
            builder = builder.ambient(ambient);
        }
        if let Some(r) = self.r {
            builder = builder.r(r);
        }
        if let Some(alpha) = &self.alpha {
            builder = builder.alpha(alpha.clone());
        }
        if let Some(probs) = &self.probs {
            builder = builder.probs(probs.clone());
        }
        builder.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_file() {
        let text = "\
# model point
g = 2
n = 16
N = 20     # ambient
r = 3
alpha = 0.5, 0.25 0 0
seed = 42
star = 1-3,3-5,5-2,2-4,4-1
";
        let pf = ParamFile::parse(text).unwrap();
        assert_eq!(pf.g, Some(2));
        assert_eq!(pf.n, Some(16));
        assert_eq!(pf.ambient, Some(20));
        assert_eq!(pf.r, Some(3));
        assert_eq!(pf.alpha, Some(vec![0.5, 0.25, 0.0, 0.0]));
        assert_eq!(pf.seed, Some(42));
        assert_eq!(pf.star, Some(StarPattern::default()));
        assert_eq!(pf.probs, None);

        let params = pf.build_params().unwrap();
        assert_eq!(params.n(), 16);
        assert_eq!(params.ambient(), 20);
        assert_eq!(params.r(), 3);
    }

    #[test]
    fn later_lines_override_earlier_ones() {
        let pf = ParamFile::parse("g = 1\ng = 4\n").unwrap();
        assert_eq!(pf.g, Some(4));
    }

    #[test]
    fn rejects_junk() {
        assert!(ParamFile::parse("g 2").is_err());
        assert!(ParamFile::parse("bogus = 1").is_err());
        assert!(ParamFile::parse("g = two").is_err());
        assert!(ParamFile::parse("alpha = ").is_err());
        assert!(ParamFile::parse("star = 9-9").is_err());
    }

    #[test]
    fn merge_prefers_overrides() {
        let base = ParamFile::parse("g = 2\nn = 8\nseed = 1\n").unwrap();
        let over = ParamFile { seed: Some(9), r: Some(2), ..ParamFile::default() };
        let merged = base.merge(over);
        assert_eq!(merged.g, Some(2));
        assert_eq!(merged.n, Some(8));
        assert_eq!(merged.seed, Some(9));
        assert_eq!(merged.r, Some(2));
    }

    #[test]
    fn build_needs_genus_and_probabilities() {
        assert!(ParamFile::parse("n = 8").unwrap().build_params().is_err());
        // defaults kick in for everything but alpha/p
        let pf = ParamFile::parse("g = 2\nalpha = 0 0 0 0").unwrap();
        let params = pf.build_params().unwrap();
        assert_eq!(params.n(), 4);
        assert_eq!(params.r(), 3);
    }
}
