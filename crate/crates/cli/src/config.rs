//! `key = value` configuration files and the small value grammars shared
//! with command-line flags.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::Path;

use num_bigint::BigInt;
use tangent_forge::{Assignment, VarId};

use crate::CliError;

/// Parsed configuration: keys in file order are irrelevant, later duplicates win.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        ConfigFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<ConfigFile, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Rejects keys outside `allowed`; keys with an allowed prefix (e.g. `range.`) pass.
    pub fn check_keys(&self, allowed: &[&str], prefixes: &[&str]) -> Result<(), CliError> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str()) && !prefixes.iter().any(|p| k.starts_with(p)))
        {
            Some(k) => Err(CliError::Usage(format!("unknown config key `{k}`"))),
            None => Ok(()),
        }
    }

    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries.iter().filter_map(move |(k, v)| k.strip_prefix(prefix).map(|rest| (rest, v.as_str())))
    }

    /// The flag value if given, else the parsed config value.
    pub fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`"))))
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<Option<bool>, CliError> {
        self.pick(None, key)
    }
}

pub fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("`{s}` is not an integer")))
}

pub fn parse_ints(s: &str) -> Result<Vec<BigInt>, CliError> {
    let values = s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_int).collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Usage("empty integer list".into()));
    }
    Ok(values)
}

pub fn parse_var(s: &str) -> Result<VarId, CliError> {
    s.trim().parse::<VarId>().map_err(|e| CliError::Usage(e.to_string()))
}

/// `p1=4,q1=-1,m=2`
pub fn parse_assignment(s: &str) -> Result<Assignment, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let (var, value) =
                pair.split_once('=').ok_or_else(|| CliError::Usage(format!("expected var=value, got `{pair}`")))?;
            Ok((parse_var(var)?, parse_int(value)?))
        })
        .collect()
}

/// `lo..hi`, inclusive on both ends.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("expected a range lo..hi, got `{s}`"));
    let (lo, hi) = s.trim().split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse::<i64>().map_err(|_| bad())?;
    let hi = hi.trim().trim_start_matches('=').parse::<i64>().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("range `{s}` is empty")));
    }
    Ok(lo..=hi)
}

/// `p1=-3..3`
pub fn parse_var_range(s: &str) -> Result<(VarId, RangeInclusive<i64>), CliError> {
    let (var, range) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("expected var=lo..hi, got `{s}`")))?;
    Ok((parse_var(var)?, parse_range(range)?))
}
