//! `TowerFileV1`: the JSON form of a [`TowerResult`].
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "space": { "family": "K", "group": "Z", "n": 4 },
//!   "coefficients": "Z",
//!   "reliable_up_to": 12,
//!   "groups": [
//!     { "degree": 0, "status": "Determined", "free_rank": 1, "torsion": [], "trace": "..." }
//!   ]
//! }
//! ```
//!
//! `free_rank` and `torsion` are `null` unless the status is `Determined`;
//! `candidates` appears only for `Ambiguous`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::tower::{DegreeRecord, Status, TowerResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileV1 {
    format_version: u32,
    space: Space,
    coefficients: String,
    reliable_up_to: usize,
    groups: Vec<GroupEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Space {
    family: String,
    group: String,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupEntry {
    degree: usize,
    status: String,
    free_rank: Option<usize>,
    torsion: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    candidates: Option<Vec<Invariants>>,
    trace: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Invariants {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl From<&FgAbGroup> for Invariants {
    fn from(g: &FgAbGroup) -> Self {
        Invariants {
            free_rank: g.free_rank(),
            torsion: g.torsion().to_vec(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline; byte-identical for equal
/// inputs.
pub fn to_json(result: &TowerResult) -> String {
    let file = FileV1 {
        format_version: FORMAT_VERSION,
        space: Space {
            family: "K".into(),
            group: "Z".into(),
            n: result.n,
        },
        coefficients: "Z".into(),
        reliable_up_to: result.reliable_up_to,
        groups: result
            .degrees
            .iter()
            .map(|r| {
                let (free_rank, torsion) = match &r.status {
                    Status::Determined(g) => (Some(g.free_rank()), Some(g.torsion().to_vec())),
                    _ => (None, None),
                };
                let candidates = match &r.status {
                    Status::Ambiguous(c) => Some(c.iter().map(Invariants::from).collect()),
                    _ => None,
                };
                GroupEntry {
                    degree: r.degree,
                    status: r.status.name().into(),
                    free_rank,
                    torsion,
                    candidates,
                    trace: r.trace.clone(),
                }
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses and validates a `TowerFileV1` document. Syntax errors carry the
/// byte offset; semantic errors name the offending field.
pub fn from_json(text: &str) -> Result<TowerResult> {
    let file: FileV1 = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let bad = |path: String, msg: String| Error::TowerFile(format!("{path}: {msg}"));
    if file.format_version != FORMAT_VERSION {
        return Err(bad(
            "format_version".into(),
            format!("unsupported version {}", file.format_version),
        ));
    }
    if file.space.family != "K" || file.space.group != "Z" {
        return Err(bad(
            "space".into(),
            format!(
                "only K(Z, n) is supported, got {}({}, n)",
                file.space.family, file.space.group
            ),
        ));
    }
    if file.coefficients != "Z" {
        return Err(bad(
            "coefficients".into(),
            format!("expected \"Z\", got {:?}", file.coefficients),
        ));
    }
    if file.reliable_up_to.checked_add(1) != Some(file.groups.len()) {
        return Err(bad(
            "groups".into(),
            format!(
                "expected one entry per degree 0..={}, found {}",
                file.reliable_up_to,
                file.groups.len()
            ),
        ));
    }
    let mut degrees = Vec::with_capacity(file.groups.len());
    for (i, e) in file.groups.into_iter().enumerate() {
        let at = |field: &str| format!("groups[{i}].{field}");
        if e.degree != i {
            return Err(bad(
                at("degree"),
                format!("expected {i}, found {}", e.degree),
            ));
        }
        let group = |free: usize, torsion: Vec<u64>, path: String| {
            FgAbGroup::new(free, torsion).map_err(|err| bad(path, err.to_string()))
        };
        let status = match e.status.as_str() {
            "Determined" => {
                let (Some(free), Some(torsion)) = (e.free_rank, e.torsion) else {
                    return Err(bad(
                        at("free_rank"),
                        "Determined needs free_rank and torsion".into(),
                    ));
                };
                Status::Determined(group(free, torsion, at("torsion"))?)
            }
            other => {
                if e.free_rank.is_some() || e.torsion.is_some() {
                    return Err(bad(
                        at("free_rank"),
                        format!("must be null for status {other}"),
                    ));
                }
                match other {
                    "Ambiguous" => {
                        let Some(cands) = &e.candidates else {
                            return Err(bad(at("candidates"), "Ambiguous needs candidates".into()));
                        };
                        if cands.len() < 2 {
                            return Err(bad(at("candidates"), "needs at least two groups".into()));
                        }
                        let mut gs = Vec::with_capacity(cands.len());
                        for (j, c) in cands.iter().enumerate() {
                            gs.push(group(
                                c.free_rank,
                                c.torsion.clone(),
                                at(&format!("candidates[{j}]")),
                            )?);
                        }
                        Status::Ambiguous(gs)
                    }
                    "Underdetermined" => Status::Underdetermined,
                    "Inconsistent" => Status::Inconsistent,
                    _ => return Err(bad(at("status"), format!("unknown status {other:?}"))),
                }
            }
        };
        if !matches!(status, Status::Ambiguous(_)) && e.candidates.is_some() {
            return Err(bad(at("candidates"), "only allowed for Ambiguous".into()));
        }
        degrees.push(DegreeRecord {
            degree: i,
            status,
            trace: e.trace,
        });
    }
    Ok(TowerResult {
        n: file.space.n,
        reliable_up_to: file.reliable_up_to,
        degrees,
    })
}

/// serde_json reports 1-based line and column.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn sample() -> TowerResult {
        let statuses = [
            Status::Determined(g("Z")),
            Status::Determined(g("0")),
            Status::Determined(g("Z_2 + Z_6")),
            Status::Ambiguous(vec![g("Z_4"), g("Z_2 + Z_2")]),
            Status::Underdetermined,
            Status::Inconsistent,
        ];
        TowerResult {
            n: 3,
            reliable_up_to: 5,
            degrees: statuses
                .into_iter()
                .enumerate()
                .map(|(d, status)| DegreeRecord {
                    degree: d,
                    status,
                    trace: format!("degree {d}"),
                })
                .collect(),
        }
    }

    #[test]
    fn round_trip() {
        let r = sample();
        let text = to_json(&r);
        assert_eq!(from_json(&text).unwrap(), r);
        assert_eq!(to_json(&from_json(&text).unwrap()), text);
        assert!(text.contains("\"format_version\": 1"));
        assert!(!text.contains("\"candidates\": null"));
    }

    #[test]
    fn syntax_error_offset() {
        let text = "{\n  \"format_version\": 1,\n  oops\n}";
        match from_json(text) {
            Err(Error::Parse { offset, .. }) => assert_eq!(&text[offset..offset + 1], "o"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let text = to_json(&sample());
        let broken = text.replacen(
            "\"torsion\": [\n        2,\n        6\n      ]",
            "\"torsion\": [6, 2]",
            1,
        );
        assert_ne!(broken, text);
        match from_json(&broken) {
            Err(Error::TowerFile(m)) => assert!(m.starts_with("groups[2].torsion"), "{m}"),
            other => panic!("{other:?}"),
        }
        let broken = text.replacen("\"format_version\": 1", "\"format_version\": 2", 1);
        assert!(
            matches!(from_json(&broken), Err(Error::TowerFile(m)) if m.starts_with("format_version"))
        );
        let broken = text.replacen(
            "\"status\": \"Underdetermined\"",
            "\"status\": \"Maybe\"",
            1,
        );
        assert!(
            matches!(from_json(&broken), Err(Error::TowerFile(m)) if m.starts_with("groups[4].status"))
        );
    }
}
