//! Integer q-expansion fixture files: `E2`, `E4`, `E6`, `Delta` and `j`.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};

use qdelta_core::modforms::{delta_coeffs, eisenstein_coeffs, j_coeffs};

use crate::error::{CliError, CliResult};
use crate::format::to_canonical;

/// Environment variable overriding the fixture directory.
pub const FIXTURE_DIR_VAR: &str = "QDELTA_FIXTURE_DIR";

/// Default order of the stored expansions.
pub const DEFAULT_ORDER: usize = 200;

/// Explicit directory, else `$QDELTA_FIXTURE_DIR`, else `./fixtures`.
pub fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(FIXTURE_DIR_VAR).map_or_else(|| PathBuf::from("fixtures"), PathBuf::from),
    }
}

fn file(name: &str, lowest: i64, coeffs: &[BigInt]) -> (String, String) {
    let strings: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
    let order = lowest + coeffs.len() as i64 - 1;
    let v: Value = json!({ "name": name, "lowest": lowest, "order": order, "coeffs": strings });
    (format!("{}.json", name.to_lowercase()), to_canonical(&v))
}

/// File names and canonical contents of every fixture to `q^order`.
pub fn generate(order: usize) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for k in [2u32, 4, 6] {
        out.push(file(&format!("E{k}"), 0, &eisenstein_coeffs(k, order)?));
    }
    out.push(file("Delta", 0, &delta_coeffs(order)));
    out.push(file("j", -1, &j_coeffs(order)));
    Ok(out)
}

pub fn write_all(dir: &Path, order: usize) -> CliResult<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (name, text) in generate(order)? {
        fs::write(dir.join(&name), text)?;
        names.push(name);
    }
    Ok(names)
}

/// Names of fixture files that are missing or differ from a fresh
/// computation.
pub fn check_all(dir: &Path, order: usize) -> CliResult<Vec<String>> {
    let mut bad = Vec::new();
    for (name, text) in generate(order)? {
        match fs::read_to_string(dir.join(&name)) {
            Ok(found) if found == text => {}
            _ => bad.push(name),
        }
    }
    Ok(bad)
}

/// Reads the integer coefficients and lowest exponent of a fixture file.
pub fn load(dir: &Path, name: &str) -> CliResult<(i64, Vec<BigInt>)> {
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.join(format!("{}.json", name.to_lowercase())))?)?;
    let lowest = v["lowest"].as_i64().ok_or_else(|| CliError::usage("fixture lacks `lowest`"))?;
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| CliError::usage("fixture lacks `coeffs`"))?
        .iter()
        .map(|c| c.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| CliError::usage("bad fixture coefficient")))
        .collect::<CliResult<Vec<BigInt>>>()?;
    Ok((lowest, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_check() {
        let dir = tempfile::tempdir().unwrap();
        write_all(dir.path(), 12).unwrap();
        assert!(check_all(dir.path(), 12).unwrap().is_empty());
        let (lowest, j) = load(dir.path(), "j").unwrap();
        assert_eq!(lowest, -1);
        assert_eq!(j[1], BigInt::from(744));
        fs::write(dir.path().join("e4.json"), "{}").unwrap();
        assert_eq!(check_all(dir.path(), 12).unwrap(), vec!["e4.json".to_string()]);
    }
}
