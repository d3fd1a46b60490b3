use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const TOOL: &str = concat!("zchan ", env!("CARGO_PKG_VERSION"));

/// Input, configuration or I/O problem; maps to exit code 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<zchan_core::Error> for InputError {
    fn from(e: zchan_core::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(format!("invalid JSON: {e}"))
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Oracle(String),
    Statistical(String),
}

impl Verdict {
    pub fn code(&self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Oracle(_) => 3,
            Verdict::Statistical(_) => 4,
        }
    }

    /// Keeps the more severe of the two, oracle mismatches first.
    pub fn and(self, other: Verdict) -> Verdict {
        match (&self, &other) {
            (Verdict::Oracle(_), _) => self,
            (_, Verdict::Oracle(_)) => other,
            (Verdict::Statistical(_), _) => self,
            _ => other,
        }
    }
}

pub type CmdResult = Result<Verdict, InputError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub subcommand: String,
    pub args: Vec<String>,
    pub cwd: String,
    pub config: Value,
    pub seeds: Vec<u64>,
    pub duration_secs: f64,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub exit_code: u8,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, InputError> {
    fs::read(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    let bytes = read_file(path)?;
    serde_json::from_slice(&bytes).map_err(|e| InputError(format!("{} is not valid JSON: {e}", path.display())))
}

pub fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>, InputError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s.into_bytes())
}

/// Book-keeping for one command run: inputs read, outputs written and the
/// manifest describing them.
pub struct Run {
    subcommand: String,
    args: Vec<String>,
    config: Value,
    seeds: Vec<u64>,
    start: Instant,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl Run {
    pub fn new(subcommand: &str, args: &[String]) -> Self {
        Run {
            subcommand: subcommand.into(),
            args: args.to_vec(),
            config: Value::Null,
            seeds: Vec::new(),
            start: Instant::now(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn config(&mut self, config: Value, seeds: &[u64]) {
        self.config = config;
        self.seeds = seeds.to_vec();
    }

    pub fn input_json(&mut self, path: &Path) -> Result<Value, InputError> {
        let v = read_json(path)?;
        let bytes = read_file(path)?;
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        Ok(v)
    }

    pub fn write(&mut self, path: &Path, bytes: &[u8]) -> Result<(), InputError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| InputError(format!("cannot create {}: {e}", dir.display())))?;
        }
        fs::write(path, bytes).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(bytes) });
        Ok(())
    }

    /// Writes to `path` or prints to stdout when no path is given.
    pub fn emit(&mut self, path: Option<&Path>, bytes: &[u8]) -> Result<(), InputError> {
        match path {
            Some(p) => self.write(p, bytes),
            None => {
                print!("{}", String::from_utf8_lossy(bytes));
                Ok(())
            }
        }
    }

    /// Writes the manifest to `path`, or next to the first output file when
    /// no path is given. Nothing is written when output went to stdout only.
    pub fn finish(self, path: Option<&Path>, verdict: &Verdict) -> Result<Option<PathBuf>, InputError> {
        let target = match path {
            Some(p) => p.to_path_buf(),
            None => match self.outputs.first() {
                Some(f) => Path::new(&f.path).with_extension("manifest.json"),
                None => return Ok(None),
            },
        };
        let manifest = RunManifest {
            tool: TOOL.into(),
            subcommand: self.subcommand,
            args: self.args,
            cwd: std::env::current_dir().map(|d| d.display().to_string()).unwrap_or_default(),
            config: self.config,
            seeds: self.seeds,
            duration_secs: self.start.elapsed().as_secs_f64(),
            inputs: self.inputs,
            outputs: self.outputs,
            exit_code: verdict.code(),
        };
        let bytes = json_bytes(&manifest)?;
        fs::write(&target, bytes).map_err(|e| InputError(format!("cannot write {}: {e}", target.display())))?;
        Ok(Some(target))
    }
}

/// Reads back a manifest.
pub fn load_manifest(path: &Path) -> Result<RunManifest, InputError> {
    serde_json::from_value(read_json(path)?).map_err(|e| InputError(format!("{} is not a run manifest: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_severity() {
        let o = Verdict::Oracle("x".into());
        let s = Verdict::Statistical("y".into());
        assert_eq!(Verdict::Pass.and(s.clone()), s);
        assert_eq!(s.clone().and(o.clone()), o);
        assert_eq!(o.clone().and(Verdict::Pass).code(), 3);
    }

    #[test]
    fn digest_of_empty() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
