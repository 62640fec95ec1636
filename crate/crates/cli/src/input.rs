//! Turning command-line arguments into instances and allocations.

use std::fs;
use std::path::Path;

use graphfair::format::{parse_allocation, parse_instance};
use graphfair::instances::{catalog, named_graph};
use graphfair::{Allocation, Error, Graph, Instance};

/// A failure to report. Exit code 2 for bad input, 3 when a valid input
/// cannot be handled (precondition, cap, missing guarantee).
#[derive(Debug)]
pub struct CliError {
    pub malformed: bool,
    pub message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        CliError {
            malformed: true,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.malformed {
            2
        } else {
            3
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.malformed {
            "malformed-input"
        } else {
            "unsupported"
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let malformed = matches!(
            e,
            Error::Format(_)
                | Error::UnknownInstance(_)
                | Error::InvalidParams(_)
                | Error::InvalidGraph(_)
        );
        CliError {
            malformed,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::malformed(format!("cannot read {path}: {e}")))
}

/// Splits `key=value` pairs. A piece without `=` continues the previous
/// value, so `graph=kab:2,3` survives comma splitting.
pub fn parse_params<'a>(
    pieces: impl IntoIterator<Item = &'a str>,
) -> CliResult<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for piece in pieces {
        match piece.split_once('=') {
            Some((k, v)) => out.push((k.to_string(), v.to_string())),
            None => match out.last_mut() {
                Some((_, v)) => {
                    v.push(',');
                    v.push_str(piece);
                }
                None => {
                    return Err(CliError::malformed(format!(
                        "expected key=value, got \"{piece}\""
                    )))
                }
            },
        }
    }
    Ok(out)
}

pub fn catalog_from(name: &str, params: &[(String, String)]) -> CliResult<Instance> {
    let refs: Vec<(&str, &str)> = params
        .iter()
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .collect();
    Ok(catalog(name, &refs)?)
}

/// An existing file is parsed as an instance; anything else is read as
/// `name` or `name:key=value,...` from the catalog.
pub fn load_instance(arg: &str) -> CliResult<Instance> {
    if Path::new(arg).is_file() {
        return Ok(parse_instance(&read(arg)?).map_err(Error::from)?);
    }
    let (name, rest) = arg.split_once(':').unwrap_or((arg, ""));
    if !graphfair::instances::CATALOG.contains(&name)
        && (arg.contains('/') || arg.ends_with(".json"))
    {
        return Err(CliError::malformed(format!("no such file: {arg}")));
    }
    let params = parse_params(rest.split(',').filter(|s| !s.is_empty()))?;
    catalog_from(name, &params)
}

pub fn load_allocation(path: &str) -> CliResult<Allocation> {
    Ok(parse_allocation(&read(path)?).map_err(Error::from)?)
}

/// A named graph, or the graph of an instance file.
pub fn load_graph(arg: &str) -> CliResult<Graph> {
    if Path::new(arg).is_file() {
        return Ok(parse_instance(&read(arg)?).map_err(Error::from)?.graph);
    }
    Ok(named_graph(arg)?)
}

pub fn write_or_print(path: Option<&str>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::malformed(format!("cannot write {p}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
