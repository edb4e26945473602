//! Flat `key = value` config files, merged into the argument list as long
//! options placed right after the subcommand. Keys given on the command line
//! are dropped from the file, so flags always win.

use std::ffi::OsString;
use std::path::Path;

/// Options taking a value that may appear before the subcommand.
const GLOBAL_VALUED: [&str; 3] = ["--config", "--workers", "--out"];

pub fn parse_file(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value, got '{raw}'", i + 1))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key '{}'", i + 1, k.trim()));
        }
        out.push((key, v.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

fn given(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Index of the subcommand token, skipping values of global options.
pub fn subcommand_index(args: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if GLOBAL_VALUED.contains(&a.as_str()) {
            i += 2;
            continue;
        }
        if !a.starts_with('-') {
            return Some(i);
        }
        i += 1;
    }
    None
}

pub fn expand(args: Vec<OsString>) -> Result<Vec<String>, String> {
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into_string().map_err(|a| format!("argument is not valid UTF-8: {a:?}")))
        .collect::<Result<_, _>>()?;
    let Some(path) = config_path(&args) else { return Ok(args) };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let entries = parse_file(&text)?;
    let Some(at) = subcommand_index(&args) else { return Ok(args) };
    let mut extra = Vec::new();
    for (key, value) in entries {
        if given(&args, &key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => {
                extra.push(format!("--{key}"));
                extra.push(value);
            }
        }
    }
    let mut out = args[..=at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at + 1..]);
    Ok(out)
}
