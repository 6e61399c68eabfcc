use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::error::CliError;

/// Run record written next to every command's outputs: the command line
/// (as indexed `argv.N` keys, so a run can be replayed verbatim), the tool
/// version, the resolved configuration, every output path, result summary
/// values, and the wall-clock duration.
///
/// The format is flat `key = value` text. Everything except `duration_ms`
/// is deterministic; replaying the recorded argv reproduces the data files
/// byte for byte.
#[derive(Debug)]
pub struct Manifest {
    entries: Vec<(String, String)>,
    started: Instant,
}

impl Manifest {
    /// Starts a manifest for a command invocation. `argv` is the full
    /// argument vector after the program name.
    pub fn new(argv: &[String]) -> Self {
        let mut command = argv.first().cloned().unwrap_or_default();
        if let Some(sub) = argv.get(1) {
            if !sub.starts_with('-') {
                command.push(' ');
                command.push_str(sub);
            }
        }
        let mut entries = vec![
            ("command".to_string(), command),
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ];
        for (i, arg) in argv.iter().enumerate() {
            entries.push((format!("argv.{i}"), arg.clone()));
        }
        Manifest {
            entries,
            started: Instant::now(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        assert!(
            !value.contains('\n'),
            "manifest values are single-line: {key}"
        );
        self.entries.push((key.to_string(), value));
    }

    pub fn push_path(&mut self, key: &str, path: &Path) {
        self.push(key, path.display());
    }

    /// Appends the duration and writes `key = value` lines.
    pub fn write(mut self, path: &Path) -> Result<(), CliError> {
        self.push("duration_ms", self.started.elapsed().as_millis());
        let mut text = String::new();
        for (key, value) in &self.entries {
            text.push_str(key);
            text.push_str(" = ");
            text.push_str(value);
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| CliError::io("write", path, e))
    }
}

/// Parses a manifest back into key/value pairs, in file order.
pub fn read_manifest(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(" = ") else {
            return Err(CliError::Usage(format!(
                "{} line {}: expected `key = value`",
                path.display(),
                lineno + 1
            )));
        };
        entries.push((key.to_string(), value.to_string()));
    }
    Ok(entries)
}

/// Reassembles the recorded argument vector from `argv.N` keys.
pub fn manifest_argv(entries: &[(String, String)]) -> Result<Vec<String>, CliError> {
    let mut indexed: Vec<(usize, String)> = Vec::new();
    for (key, value) in entries {
        if let Some(suffix) = key.strip_prefix("argv.") {
            let idx: usize = suffix.parse().map_err(|_| {
                CliError::Usage(format!("bad manifest key {key:?}: index is not a number"))
            })?;
            indexed.push((idx, value.clone()));
        }
    }
    if indexed.is_empty() {
        return Err(CliError::Usage(
            "manifest records no argv.N keys to replay".to_string(),
        ));
    }
    indexed.sort_by_key(|(idx, _)| *idx);
    for (expect, (idx, _)) in indexed.iter().enumerate() {
        if *idx != expect {
            return Err(CliError::Usage(format!(
                "manifest argv indices are not contiguous: missing argv.{expect}"
            )));
        }
    }
    Ok(indexed.into_iter().map(|(_, value)| value).collect())
}

/// Looks up a single key's value.
pub fn manifest_value<'a>(entries: &'a [(String, String)], key: &str) -> Option<&'a str> {
    entries
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn scratch(name: &str) -> PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!(
            "glass-anneal-manifest-{}-{name}",
            std::process::id()
        ));
        path
    }

    #[test]
    fn records_and_replays_argv() {
        let argv: Vec<String> = ["glass", "descend", "--n", "8"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut manifest = Manifest::new(&argv);
        manifest.push("seed", 7);
        manifest.push_path("output.csv", Path::new("runs/a.csv"));
        let path = scratch("roundtrip.manifest");
        manifest.write(&path).unwrap();

        let entries = read_manifest(&path).unwrap();
        assert_eq!(manifest_value(&entries, "command"), Some("glass descend"));
        assert_eq!(manifest_value(&entries, "seed"), Some("7"));
        assert_eq!(manifest_value(&entries, "output.csv"), Some("runs/a.csv"));
        assert!(manifest_value(&entries, "duration_ms").is_some());
        assert_eq!(manifest_argv(&entries).unwrap(), argv);
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn rejects_gapped_argv() {
        let entries = vec![
            ("argv.0".to_string(), "theory".to_string()),
            ("argv.2".to_string(), "--constants".to_string()),
        ];
        assert!(manifest_argv(&entries).is_err());
    }
}
