use std::path::Path;

use crate::output::{load_manifest, read_file, sha256_hex, CmdResult, InputError, Verdict};

/// Re-runs the recorded arguments from the recorded working directory and
/// compares every output digest with the manifest.
pub fn run(path: &Path, exec: fn(&[String]) -> u8) -> CmdResult {
    let path = path
        .canonicalize()
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let manifest = load_manifest(&path)?;
    std::env::set_current_dir(&manifest.cwd)
        .map_err(|e| InputError(format!("cannot enter recorded directory {}: {e}", manifest.cwd)))?;
    let mut argv = vec!["zchan".to_string()];
    argv.extend(manifest.args.iter().cloned());
    let code = exec(&argv);
    if code == 2 {
        return Err(InputError("replayed command failed on its inputs".into()));
    }
    let mut mismatched = Vec::new();
    for f in &manifest.outputs {
        let now = read_file(Path::new(&f.path)).map(|b| sha256_hex(&b))?;
        if now != f.sha256 {
            mismatched.push(f.path.clone());
        }
    }
    if !mismatched.is_empty() {
        return Ok(Verdict::Oracle(format!("outputs differ from the manifest: {}", mismatched.join(", "))));
    }
    if code != manifest.exit_code {
        return Ok(Verdict::Oracle(format!("exit code {code} differs from recorded {}", manifest.exit_code)));
    }
    println!("{} outputs match {}", manifest.outputs.len(), path.display());
    Ok(Verdict::Pass)
}
