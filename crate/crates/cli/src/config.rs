//! `key = value` job files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::Failure;

const KEYS: &[&str] = &[
    "genus", "e", "curve", "weil", "rank", "c1", "order", "flag", "tf", "gerbe", "betti", "format", "output",
    "polarization", "normalization", "m", "theta", "h", "h-prime",
];

#[derive(Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let k = k.trim().replace('_', "-");
            if !KEYS.contains(&k.as_str()) {
                return Err(format!("line {}: unknown key {k:?}", i + 1));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if given, else the parsed file value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| v.parse().map_err(|_| Failure::Usage(format!("config {key} = {v:?} is not valid"))))
            .transpose()
    }

    pub fn pick_str(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.get(key).map(str::to_string))
    }

    pub fn flag_set(&self, key: &str) -> Result<bool, Failure> {
        match self.get(key) {
            None | Some("false") | Some("no") | Some("0") => Ok(false),
            Some("true") | Some("yes") | Some("1") => Ok(true),
            Some(v) => Err(Failure::Usage(format!("config {key} = {v:?} is not a boolean"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines() {
        let c = ConfigFile::parse("# job\ngenus = 1\nc1 = 0, 1  # comment\n\ntf = yes\nh_prime = 0,1\n").unwrap();
        assert_eq!(c.get("genus"), Some("1"));
        assert_eq!(c.get("c1"), Some("0, 1"));
        assert_eq!(c.get("h-prime"), Some("0,1"));
        assert!(c.flag_set("tf").unwrap());
        assert!(!c.flag_set("gerbe").unwrap());
        assert_eq!(c.pick(Some(3u32), "genus").unwrap(), Some(3));
        assert_eq!(c.pick::<u32>(None, "genus").unwrap(), Some(1));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(ConfigFile::parse("genus 1").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
    }
}
