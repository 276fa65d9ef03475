mod args;
mod cache;
mod job;
mod render;

use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;
use serde_json::{json, Value};
use silc::CartanMatrix;

use args::{Cli, Global};
use cache::{key_of, Cache, CacheEntry, Lookup, CODE_VERSION};
use job::{envelope, load_data, run, JobError, JobSpec};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => return clap_failure(e),
    };
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("values serialize"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn clap_failure(e: clap::Error) -> ExitCode {
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
        let _ = e.print();
        return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        };
    }
    let field = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => Some(s.clone()),
        Some(ContextValue::Strings(v)) => Some(v.join(" ")),
        _ => None,
    };
    let message = e.kind().as_str().map(str::to_string).unwrap_or_else(|| e.to_string());
    let err = JobError::Usage { field, message };
    println!("{}", serde_json::to_string_pretty(&err.to_json()).expect("values serialize"));
    eprint!("{}", e.render());
    ExitCode::from(2)
}

fn cartan_of(g: &Global) -> Result<Option<Vec<Vec<i64>>>, JobError> {
    if let Some(path) = &g.cartan {
        if g.kind.is_some() || g.rank.is_some() {
            return Err(JobError::usage("--cartan", "give either --cartan or --type/--rank"));
        }
        let text = std::fs::read_to_string(path).map_err(|e| JobError::usage("--cartan", format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| JobError::usage("--cartan", e.to_string()))?;
        let m = v.get("cartan").unwrap_or(&v);
        let rows: Vec<Vec<i64>> =
            serde_json::from_value(m.clone()).map_err(|e| JobError::usage("--cartan", e.to_string()))?;
        let c = CartanMatrix::new(rows).map_err(|e| JobError::usage("--cartan", e.to_string()))?;
        return Ok(Some(c.entries().to_vec()));
    }
    match (&g.kind, g.rank) {
        (None, None) => Ok(None),
        (Some(k), Some(r)) => {
            let c = CartanMatrix::of_type(k, r).map_err(|e| JobError::usage("--type", e.to_string()))?;
            Ok(Some(c.entries().to_vec()))
        }
        (Some(_), None) => Err(JobError::usage("--rank", "--type needs --rank")),
        (None, Some(_)) => Err(JobError::usage("--type", "--rank needs --type")),
    }
}

fn execute(cli: Cli) -> Result<String, JobError> {
    let cartan = cartan_of(&cli.global)?;
    let (command, action, mut params) = args::flatten(cli.cmd);
    if let Some(d) = params.get_mut("data") {
        // the cache key must follow the data, not the file name
        *d = load_data(d)?.to_string();
    }
    let spec = JobSpec { command, action, cartan, params, format: cli.global.format };
    job::validate(&spec)?;

    let cache = if cli.global.no_cache {
        None
    } else {
        let dir = Cache::default_dir();
        match Cache::open(&dir) {
            Ok(c) => Some(c),
            Err(e) => {
                warn(&format!("cache directory {} unusable ({e}); continuing without cache", dir.display()));
                None
            }
        }
    };
    let key = key_of(&spec.identity(CODE_VERSION));
    let mut status = if cache.is_some() { "miss" } else { "disabled" };
    if let Some(c) = &cache {
        match c.get(&key) {
            Lookup::Hit(payload) => match serde_json::from_str::<Value>(&payload) {
                Ok(env) => {
                    report(&key, "hit", true);
                    return Ok(render::render(spec.format, &env));
                }
                Err(_) => status = "replaced",
            },
            Lookup::Corrupt => status = "replaced",
            Lookup::Miss => {}
        }
    }
    let env = envelope(&spec, run(&spec)?);
    if let Some(c) = &cache {
        if let Err(e) = c.put(&CacheEntry::new(key.clone(), env.to_string())) {
            warn(&format!("could not write cache entry ({e}); result not cached"));
            status = "unwritable";
        }
    }
    report(&key, status, false);
    Ok(render::render(spec.format, &env))
}

/// Cache status goes to stderr so that stdout is identical with and without the cache.
fn report(key: &str, status: &str, cached: bool) {
    eprintln!("{}", json!({ "cache": { "key": key, "status": status, "cached": cached } }));
}

fn warn(msg: &str) {
    eprintln!("{}", json!({ "warning": msg }));
}
