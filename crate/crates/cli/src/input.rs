use std::io::Read;
use std::path::Path;

use cocircuit::generators::{cyclic, from_matrix, mutate, random_c0c2, u2n, Mutation, VectorConfiguration};
use cocircuit::SignSystem;

use crate::{CliError, InputArgs, RunConfig};

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
    }
}

fn with_path<T>(path: &Path, result: cocircuit::Result<T>) -> Result<T, CliError> {
    result.map_err(|e| match e {
        cocircuit::Error::Parse { .. } => CliError::Input(format!("{}: {e}", path.display())),
        other => CliError::Core(other),
    })
}

pub fn read_system(path: &Path) -> Result<SignSystem, CliError> {
    let text = read_text(path)?;
    with_path(path, SignSystem::parse(&text))
}

fn number(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Input(format!("invalid {what} {s:?}")))
}

/// Builds a system from a generator spec such as `cyclic:3:6`.
pub fn generate(spec: &str, seed: u64) -> Result<SignSystem, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let system = match parts.as_slice() {
        ["u2n", n] => u2n(number(n, "n")?)?,
        ["cyclic", r, n] => cyclic(number(r, "rank")?, number(n, "n")?)?,
        ["random", n, pairs] => random_c0c2(number(n, "n")?, number(pairs, "pair count")?, seed)?,
        ["matrix", path @ ..] if !path.is_empty() => {
            let path = Path::new(&path.join(":")).to_path_buf();
            let config = with_path(&path, VectorConfiguration::parse(&read_text(&path)?))?;
            from_matrix(&config)?
        }
        ["mutate", kind, path @ ..] if !path.is_empty() => {
            let kind: Mutation = kind.parse()?;
            let base = read_system(Path::new(&path.join(":")))?;
            mutate(&base, kind, seed)?
        }
        _ => {
            return Err(CliError::Input(format!(
            "unknown generator {spec:?}; expected u2n:N, cyclic:R:N, random:N:PAIRS, matrix:PATH or mutate:KIND:PATH"
        )))
        }
    };
    Ok(system)
}

/// Resolves the single input source of a command.
pub fn load(input: &InputArgs, config: &RunConfig) -> Result<SignSystem, CliError> {
    match (&input.input, &input.generator) {
        (Some(path), None) => read_system(path),
        (None, Some(spec)) => generate(spec, config.seed),
        _ => Err(CliError::Input("give exactly one input: a file, `-` for standard input, or --gen SPEC".into())),
    }
}
