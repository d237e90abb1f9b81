//! Run settings: command-line flags override the TOML file named by
//! EICHLER_CONFIG, which overrides the built-in defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use eichler_core::cgraph::Format;

pub const ENV_VAR: &str = "EICHLER_CONFIG";

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub q: Option<u8>,
    pub depth: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn from_env() -> Result<FileConfig> {
        match std::env::var_os(ENV_VAR) {
            Some(p) => FileConfig::load(Path::new(&p)),
            None => Ok(FileConfig::default()),
        }
    }
}

/// Flag values as parsed; `None` means not given.
#[derive(Debug, Default, Clone)]
pub struct Flags {
    pub q: Option<u8>,
    pub depth: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub q: u8,
    pub depth: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn parse_format(s: &str) -> Result<Format> {
    match s {
        "dot" => Ok(Format::Dot),
        "json" => Ok(Format::Json),
        _ => bail!("unknown format {s:?} (expected dot or json)"),
    }
}

pub fn resolve(flags: &Flags, file: &FileConfig, default_depth: usize) -> Result<RunConfig> {
    let q = flags.q.or(file.q).unwrap_or(2);
    eichler_core::funcfield::fq::check_q(q)?;
    let format = flags
        .format
        .as_deref()
        .or(file.format.as_deref())
        .map(parse_format)
        .transpose()?
        .unwrap_or(Format::Dot);
    Ok(RunConfig {
        q,
        depth: flags.depth.or(file.depth).unwrap_or(default_depth),
        format,
        out: flags.out.clone().or_else(|| file.out.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file_over_defaults() {
        let file = FileConfig {
            q: Some(3),
            depth: Some(7),
            format: Some("json".into()),
            out: None,
        };
        let none = Flags::default();
        let c = resolve(&none, &FileConfig::default(), 4).unwrap();
        assert_eq!((c.q, c.depth, c.format), (2, 4, Format::Dot));
        let c = resolve(&none, &file, 4).unwrap();
        assert_eq!((c.q, c.depth, c.format), (3, 7, Format::Json));
        let flags = Flags {
            q: Some(5),
            depth: Some(1),
            format: Some("dot".into()),
            out: None,
        };
        let c = resolve(&flags, &file, 4).unwrap();
        assert_eq!((c.q, c.depth, c.format), (5, 1, Format::Dot));
    }

    #[test]
    fn bad_values_are_rejected() {
        let flags = Flags {
            q: Some(6),
            ..Flags::default()
        };
        assert!(resolve(&flags, &FileConfig::default(), 4).is_err());
        assert!(parse_format("svg").is_err());
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
