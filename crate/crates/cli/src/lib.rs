//! Command-line front end: configuration, dispatch and report emission.

mod commands;
pub mod config;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Arg, ArgAction, Command};

use config::{keys, read_config_file, resolve, ConfigError, OutputFormat, Resolved, RunConfig, Subcommand};
use report::{render_csv, render_json, write_atomic, Outcome, Status};

pub const CONFIG_ERROR_EXIT: i32 = 3;

pub fn command() -> Command {
    let mut cmd = Command::new("vortexq")
        .version(vortexq::VERSION)
        .about("Abelian vortices on flat tori and quantization of their moduli spaces")
        .subcommand_required(true);
    for sub in Subcommand::ALL {
        let mut c = Command::new(sub.name())
            .about(sub.about())
            .allow_negative_numbers(true)
            .arg(
                Arg::new("config")
                    .long("config")
                    .value_name("FILE")
                    .help("key = value file; flags take precedence"),
            );
        for k in keys(sub) {
            let mut help = k.help.to_string();
            if let Some(d) = k.default {
                help.push_str(&format!(" [default: {d}]"));
            }
            c = c.arg(
                Arg::new(k.name)
                    .long(k.name)
                    .value_name("VALUE")
                    .action(ArgAction::Set)
                    .help(help),
            );
        }
        cmd = cmd.subcommand(c);
    }
    cmd
}

fn clap_error(e: clap::Error, subcommand: &str) -> ConfigError {
    use clap::error::{ContextKind, ContextValue, ErrorKind};
    let arg = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => Some(
            s.trim_start_matches('-')
                .split([' ', '='])
                .next()
                .unwrap_or("")
                .to_string(),
        ),
        _ => None,
    };
    let sub = match e.get(ContextKind::InvalidSubcommand) {
        Some(ContextValue::String(s)) => Some(s.clone()),
        _ => None,
    };
    match (e.kind(), arg, sub) {
        (ErrorKind::UnknownArgument, Some(key), _) => ConfigError::UnknownKey {
            key,
            subcommand: subcommand.into(),
        },
        (_, Some(key), _) => ConfigError::Invalid {
            key,
            reason: e.kind().to_string(),
        },
        (_, None, Some(sub)) => ConfigError::Usage(format!("unknown subcommand `{sub}`")),
        _ => ConfigError::Usage(e.to_string()),
    }
}

/// Parse arguments into a raw configuration.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let hint = args
        .get(1)
        .map(|a| a.to_string_lossy().into_owned())
        .unwrap_or_default();
    let matches = command().try_get_matches_from(args).map_err(|e| clap_error(e, &hint))?;
    let (name, sub_m) = matches.subcommand().expect("subcommand required");
    let sub: Subcommand = name.parse()?;
    let file = match sub_m.get_one::<String>("config") {
        Some(p) => Some(read_config_file(&PathBuf::from(p))?),
        None => None,
    };
    let flags: Vec<(String, String)> = keys(sub)
        .iter()
        .filter_map(|k| sub_m.get_one::<String>(k.name).map(|v| (k.name.to_string(), v.clone())))
        .collect();
    RunConfig::from_sources(sub, file, flags)
}

/// Resolve and dispatch; no I/O.
pub fn execute(cfg: &RunConfig) -> Result<(Resolved, Outcome), ConfigError> {
    let r = resolve(cfg)?;
    let out = commands::dispatch(&r);
    Ok((r, out))
}

pub fn render(r: &Resolved, out: &Outcome) -> String {
    match r.format {
        OutputFormat::Json => render_json(r, out),
        OutputFormat::Csv => render_csv(r, out),
    }
}

/// Full run: report to `output` (atomically) or stdout. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cfg = match command().try_get_matches_from(args.clone()) {
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = write!(std::io::stdout(), "{e}");
            return 0;
        }
        _ => parse_args(args),
    };
    let outcome = cfg.and_then(|c| execute(&c));
    let (r, out) = match outcome {
        Ok(x) => x,
        Err(e) => {
            match e.key() {
                Some(k) => eprintln!("config error [{k}]: {e}"),
                None => eprintln!("config error: {e}"),
            }
            return CONFIG_ERROR_EXIT;
        }
    };
    let text = render(&r, &out);
    match r.output() {
        Some(path) => {
            if let Err(e) = write_atomic(&path, text.as_bytes()) {
                eprintln!("cannot write {}: {e}", path.display());
                return Status::Internal.exit_code();
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return Status::Internal.exit_code();
            }
        }
    }
    if let Some(f) = &out.error {
        eprintln!("{}: {}", f.kind, f.message);
    }
    out.status.exit_code()
}
