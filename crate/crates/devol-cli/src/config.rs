//! Optional `key=value` defaults file.  Flags always win; the file only fills
//! in parameters the command line left unset.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Default)]
pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<ConfigFile, CliError> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Input(format!(
                    "config {} line {}: expected key=value, got `{raw}`",
                    path.display(),
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.values.get(key).cloned()
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.values.get(key).map(PathBuf::from)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<f64>().map_err(|_| {
                    CliError::Input(format!("config key `{key}`: `{v}` is not a number"))
                })
            })
            .transpose()
    }

    pub fn usize_list(&self, key: &str) -> Result<Option<Vec<usize>>, CliError> {
        self.values.get(key).map(|v| parse_usize_list(v, key)).transpose()
    }
}

pub fn parse_usize_list(v: &str, what: &str) -> Result<Vec<usize>, CliError> {
    v.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("{what}: `{p}` is not a positive integer")))
        })
        .collect()
}

/// Flag value if given, else the config-file value, else an error naming both
/// spellings.
pub fn require<T>(flag: Option<T>, from_config: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(from_config).ok_or_else(|| {
        CliError::Input(format!("missing parameter `{name}` (flag --{name} or config key {name})"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_comments_and_whitespace() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# material\nE = 210000\nnu=0.3  # steel\n\nscheme = vol-reduced").unwrap();
        let cfg = ConfigFile::load(Some(f.path())).unwrap();
        assert_eq!(cfg.f64("E").unwrap(), Some(210000.0));
        assert_eq!(cfg.f64("nu").unwrap(), Some(0.3));
        assert_eq!(cfg.string("scheme").as_deref(), Some("vol-reduced"));
        assert_eq!(cfg.f64("tol").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "E 210000").unwrap();
        assert!(ConfigFile::load(Some(f.path())).is_err());
    }

    #[test]
    fn flag_wins_over_config() {
        assert_eq!(require(Some(1.0), Some(2.0), "E").unwrap(), 1.0);
        assert_eq!(require(None, Some(2.0), "E").unwrap(), 2.0);
        assert!(require::<f64>(None, None, "E").is_err());
    }
}
