//! Flat `key = value` configuration files.
//!
//! Every key names a long command-line flag of the subcommand being run. The
//! file's entries are spliced into the argument list right after the
//! subcommand, so flags given on the command line come later and win. A value
//! of `true` turns into a bare flag, `false` drops it.

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(ConfigError::Syntax { line: i + 1 });
        }
        entries.push((key.replace('_', "-"), value.trim().to_string()));
    }
    Ok(entries)
}

pub fn config_args(entries: &[(String, String)]) -> Vec<String> {
    let mut args = Vec::new();
    for (key, value) in entries {
        match value.as_str() {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.clone());
            }
        }
    }
    args
}

/// Removes `--config PATH` (or `--config=PATH`) from `args`, returning the path.
pub fn take_config_flag(args: &mut Vec<String>) -> Option<String> {
    let pos = args.iter().position(|a| a == "--config" || a.starts_with("--config="))?;
    let flag = args.remove(pos);
    match flag.strip_prefix("--config=") {
        Some(path) => Some(path.to_string()),
        None if pos < args.len() => Some(args.remove(pos)),
        None => None,
    }
}

/// Splices the config entries in after the subcommand (the first argument
/// after the program name).
pub fn splice(args: &mut Vec<String>, entries: &[(String, String)]) {
    let at = 2.min(args.len());
    let extra = config_args(entries);
    args.splice(at..at, extra);
}
