use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::EvalError;

/// `key = value` settings, one per line. `#` starts a comment line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, EvalError> {
        fs::read_to_string(path)?.parse()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, EvalError> {
        self.get(key)
            .map(|v| {
                v.parse().map_err(|_| {
                    EvalError::Usage(format!("config key `{}` has invalid value `{}`", key, v))
                })
            })
            .transpose()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

impl FromStr for Config {
    type Err = EvalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut values = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| EvalError::Config {
                line: idx + 1,
                message: "expected key = value".to_owned(),
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(EvalError::Config {
                    line: idx + 1,
                    message: "empty key".to_owned(),
                });
            }
            values.insert(key.to_owned(), value.trim().to_owned());
        }
        Ok(Config { values })
    }
}
