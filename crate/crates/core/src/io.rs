//! Group input: JSON group files and inline family specs.
//!
//! ```json
//! {"kind": "cayley", "n": 2, "table": [[0, 1], [1, 0]]}
//! {"kind": "perm", "degree": 3, "gens": ["(1 2 3)", "(1 2)"]}
//! {"kind": "family", "spec": "dihedral:8"}
//! ```
//!
//! Cayley tables are 0-based; permutations use 1-based points.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::group_from_family;
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::perm::{group_from_permutations, parse_permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupFile {
    Cayley { n: usize, table: Vec<Vec<u32>> },
    Perm { degree: usize, gens: Vec<String> },
    Family { spec: String },
}

impl GroupFile {
    pub fn build(&self, label: &str) -> Result<FiniteGroup> {
        match self {
            GroupFile::Cayley { n, table } => {
                if table.len() != *n || table.iter().any(|row| row.len() != *n) {
                    return Err(Error::not_a_group(format!("table is not {n} x {n}")));
                }
                Ok(FiniteGroup::from_table(table.clone())?.with_label(label))
            }
            GroupFile::Perm { degree, gens } => {
                let perms = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        parse_permutation(g, *degree).map_err(|e| match e {
                            Error::Parse { position, message } => Error::Parse {
                                position,
                                message: format!("generator {}: {message}", i + 1),
                            },
                            e => e,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(group_from_permutations(*degree, &perms, DEFAULT_ORDER_CAP)?.with_label(label))
            }
            GroupFile::Family { spec } => group_from_family(spec),
        }
    }
}

/// Parse a group file; JSON errors report their byte offset.
pub fn parse_group_json(text: &str, label: &str) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| {
        let position = text
            .split_inclusive('\n')
            .take(e.line().saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Error::parse(position, e.to_string())
    })?;
    file.build(label)
}

/// Errors while loading a named input, carrying the file name.
#[derive(Debug, thiserror::Error)]
#[error("{source_name}: {error}")]
pub struct InputError {
    pub source_name: String,
    pub error: Error,
}

/// Resolve `--group` arguments: an existing path is read as a group file,
/// anything else is taken as a family spec (optionally `family:`-prefixed).
pub fn load_group(arg: &str) -> std::result::Result<FiniteGroup, InputError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| InputError {
            source_name: arg.to_string(),
            error: Error::Invalid(e.to_string()),
        })?;
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return parse_group_json(&text, label).map_err(|error| InputError {
            source_name: arg.to_string(),
            error,
        });
    }
    group_from_family(arg).map_err(|error| InputError {
        source_name: arg.to_string(),
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_kinds() {
        let c2 =
            parse_group_json(r#"{"kind":"cayley","n":2,"table":[[0,1],[1,0]]}"#, "c2").unwrap();
        assert_eq!((c2.order(), c2.label()), (2, "c2"));
        let s3 = parse_group_json(
            r#"{"kind":"perm","degree":3,"gens":["(1 2 3)","(1 2)"]}"#,
            "s3",
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        let d8 = parse_group_json(r#"{"kind":"family","spec":"dihedral:8"}"#, "x").unwrap();
        assert_eq!((d8.order(), d8.label()), (8, "dihedral:8"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_group_json("{\"kind\":\"cayley\",\n \"n\": x}", "bad").unwrap_err();
        assert!(
            matches!(err, Error::Parse { position, .. } if position >= 18),
            "{err:?}"
        );
        let err = parse_group_json(r#"{"kind":"perm","degree":3,"gens":["(1 2 4)"]}"#, "bad")
            .unwrap_err();
        assert!(
            matches!(&err, Error::Parse { message, .. } if message.contains("generator 1")),
            "{err:?}"
        );
        let err = parse_group_json(r#"{"kind":"cayley","n":2,"table":[[0,1],[0,1]]}"#, "bad")
            .unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
        assert!(parse_group_json(r#"{"kind":"lie"}"#, "bad").is_err());
    }

    #[test]
    fn family_fallback() {
        assert_eq!(load_group("family:quaternion:8").unwrap().order(), 8);
        let err = load_group("no-such-file.json").unwrap_err();
        assert_eq!(err.source_name, "no-such-file.json");
    }
}
