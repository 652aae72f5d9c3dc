//! Corpus manifests: one [`GeneratorSpec`] per line, `#` comments allowed.
//!
//! ```text
//! # kind n <n> [p <p/q>] [plant <s> plant_density <p/q>] seed <u64>
//! gnp n 200 p 1/2 seed 7
//! cograph n 1000 seed 3
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::rational::parse_rational;

use super::generate::{GeneratorKind, GeneratorSpec};

pub fn parse_manifest(text: &str) -> Result<Vec<GeneratorSpec>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().expect("non-empty line");
        let kind = GeneratorKind::from_tag(tag)
            .ok_or_else(|| Error::parse(line_no, format!("unknown generator kind {tag:?}")))?;
        let mut spec = GeneratorSpec::gnp(0, crate::rational::ratio(1, 2), 0);
        spec.kind = kind;
        let (mut have_n, mut have_seed) = (false, false);
        while let Some(key) = tokens.next() {
            let value = tokens
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("`{key}` needs a value")))?;
            let uint = |v: &str| -> Result<u64> {
                v.parse()
                    .map_err(|_| Error::parse(line_no, format!("bad integer {v:?}")))
            };
            let rat = |v: &str| parse_rational(v).map_err(|e| Error::parse(line_no, e.to_string()));
            match key {
                "n" => {
                    spec.n = uint(value)? as usize;
                    have_n = true;
                }
                "seed" => {
                    spec.seed = uint(value)?;
                    have_seed = true;
                }
                "p" => spec.p = rat(value)?,
                "plant" => spec.plant_size = uint(value)? as usize,
                "plant_density" => spec.plant_density = rat(value)?,
                other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
            }
        }
        if !(have_n && have_seed) {
            return Err(Error::parse(line_no, "every record needs `n` and `seed`"));
        }
        out.push(spec);
    }
    Ok(out)
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<GeneratorSpec>> {
    parse_manifest(&std::fs::read_to_string(path)?)
}

pub fn write_manifest(specs: &[GeneratorSpec]) -> String {
    specs.iter().map(|s| format!("{s}\n")).collect()
}
