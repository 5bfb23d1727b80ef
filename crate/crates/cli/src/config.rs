//! `key = value` configuration files. Keys are long flag names; command-line flags win.

use std::ffi::OsString;
use std::path::Path;

use clap::CommandFactory;

use crate::{Cli, CliError};

/// The `--config` path and the subcommand name, read without a full parse.
fn scan(argv: &[OsString]) -> (Option<OsString>, Option<String>) {
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let mut config = None;
    let mut sub = None;
    let mut it = argv.iter().skip(1);
    while let Some(tok) = it.next() {
        let s = tok.to_string_lossy();
        if s == "--config" {
            config = it.next().cloned();
        } else if let Some(v) = s.strip_prefix("--config=") {
            config = Some(v.into());
        } else if sub.is_none() && names.iter().any(|n| *n == s) {
            sub = Some(s.into_owned());
        }
    }
    (config, sub)
}

fn present(argv: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    argv.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefix)
    })
}

fn scalar(path: &Path, key: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(f.to_string()),
        _ => Err(CliError::Config { path: path.display().to_string(), msg: format!("`{key}` has an unsupported value") }),
    }
}

/// Appends the config entries the subcommand understands and the command line lacks.
pub fn apply(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let (config, sub) = scan(&argv);
    let (Some(config), Some(sub)) = (config, sub) else {
        return Ok(argv);
    };
    let path = Path::new(&config);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config { path: path.display().to_string(), msg: e.to_string() })?;
    let table: toml::Table =
        text.parse().map_err(|e: toml::de::Error| CliError::Config { path: path.display().to_string(), msg: e.message().to_string() })?;

    let cmd = Cli::command();
    let known = |c: &clap::Command, key: &str| c.get_arguments().any(|a| a.get_long() == Some(key));
    let target = cmd.find_subcommand(&sub).expect("scanned name");
    let mut out = argv.clone();
    for (key, value) in &table {
        if key == "config" {
            continue;
        }
        if !known(target, key) {
            if cmd.get_subcommands().any(|c| known(c, key)) {
                continue;
            }
            return Err(CliError::Config { path: path.display().to_string(), msg: format!("unknown key `{key}`") });
        }
        if present(&argv, key) {
            continue;
        }
        match value {
            toml::Value::Boolean(true) => out.push(format!("--{key}").into()),
            toml::Value::Boolean(false) => {}
            toml::Value::Array(items) => {
                out.push(format!("--{key}").into());
                for v in items {
                    out.push(scalar(path, key, v)?.into());
                }
            }
            v => out.push(format!("--{key}={}", scalar(path, key, v)?).into()),
        }
    }
    Ok(out)
}
