use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        write!(s, "{b:02x}").unwrap();
    }
    s
}

/// Flat `key=value` record written next to every output file.
pub struct Manifest {
    command: String,
    seed: Option<u64>,
    params: Vec<(String, String)>,
    inputs: Vec<(String, String)>,
    outputs: Vec<(String, String)>,
    started: Instant,
    clock: bool,
}

impl Manifest {
    pub fn new(command: &str, seed: Option<u64>, clock: bool) -> Manifest {
        Manifest {
            command: command.to_string(),
            seed,
            params: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
            clock,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.display().to_string(), sha256_hex(bytes)));
    }

    /// Writes `bytes` to `path` and records its digest.
    pub fn write_output(&mut self, path: &Path, bytes: &[u8]) -> Result<(), String> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        }
        fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()))?;
        self.outputs.push((path.display().to_string(), sha256_hex(bytes)));
        Ok(())
    }

    /// Writes the manifest beside the first output, as `<output>.manifest`.
    pub fn finish(self, outcome: &str) -> Result<(), String> {
        let Some((first, _)) = self.outputs.first() else {
            return Ok(());
        };
        let path = PathBuf::from(format!("{first}.manifest"));
        let mut s = String::new();
        writeln!(s, "command={}", self.command).unwrap();
        writeln!(s, "seed={}", self.seed.map_or("-".to_string(), |x| x.to_string())).unwrap();
        for (k, v) in &self.params {
            writeln!(s, "param.{k}={v}").unwrap();
        }
        for (p, d) in &self.inputs {
            writeln!(s, "input.{p}=sha256:{d}").unwrap();
        }
        for (p, d) in &self.outputs {
            writeln!(s, "output.{p}=sha256:{d}").unwrap();
        }
        let clock = if self.clock {
            self.started.elapsed().as_millis().to_string()
        } else {
            "-".to_string()
        };
        writeln!(s, "wall_clock_ms={clock}").unwrap();
        writeln!(s, "outcome={}", outcome.replace('\n', " ")).unwrap();
        fs::write(&path, s).map_err(|e| format!("{}: {e}", path.display()))
    }
}
