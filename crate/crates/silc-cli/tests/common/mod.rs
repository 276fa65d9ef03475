#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Job {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn jobs() -> Vec<Job> {
    let text = std::fs::read_to_string(golden_dir().join("jobs.txt")).expect("jobs.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split(" | ").collect();
            assert_eq!(parts.len(), 3, "bad job line {l:?}");
            Job {
                name: parts[0].trim().to_string(),
                exit: parts[1].trim().parse().expect("exit code"),
                args: parts[2].split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the golden directory with `SILC_CACHE` set to `cache`.
pub fn silc(args: &[String], cache: &Path) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_silc"))
        .args(args)
        .current_dir(golden_dir())
        .env("SILC_CACHE", cache)
        .output()
        .expect("spawn silc");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

pub fn with_flag(args: &[String], flag: &str) -> Vec<String> {
    let mut v = args.to_vec();
    v.push(flag.to_string());
    v
}

/// Each job three times: cold cache, warm cache, `--no-cache`. Every stdout
/// must equal the stored golden file byte for byte. With `UPDATE_GOLDEN` set
/// the golden files are rewritten from the cold run instead.
pub fn check_goldens() -> Result<usize, String> {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    let all = jobs();
    for job in &all {
        let path = golden_dir().join(format!("{}.out", job.name));
        let cold = silc(&job.args, cache.path());
        let warm = silc(&job.args, cache.path());
        let bare = silc(&with_flag(&job.args, "--no-cache"), cache.path());
        if update {
            std::fs::write(&path, &cold.stdout).map_err(|e| e.to_string())?;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        for (label, o) in [("cold", &cold), ("warm", &warm), ("no-cache", &bare)] {
            if o.code != job.exit {
                failures.push(format!("{} ({label}): exit {} != {}: {}", job.name, o.code, job.exit, o.stderr.trim()));
            } else if o.stdout != want {
                failures.push(format!("{} ({label}): stdout differs from {}", job.name, path.display()));
            }
        }
        if job.exit == 0 && !warm.stderr.contains("\"cached\":true") {
            failures.push(format!("{}: second run not served from cache", job.name));
        }
    }
    if failures.is_empty() {
        Ok(all.len())
    } else {
        Err(failures.join("\n"))
    }
}
