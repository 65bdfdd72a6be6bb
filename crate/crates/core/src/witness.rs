//! The `.seq` witness file format.
//!
//! Line 1 is `# group: <canonical spec>`, then one element tuple per line in
//! canonical coordinates, repeated per multiplicity; `#` lines are comments.
//!
//! ```text
//! # group: 6^2
//! (1,0)
//! (1,0)
//! (0,1)
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupSequence};

pub fn witness_to_string(s: &GroupSequence) -> String {
    let mut out = format!("# group: {}\n", s.group().spec_string());
    for (e, m) in s.iter_elements() {
        for _ in 0..m {
            out.push_str(&e.to_string());
            out.push('\n');
        }
    }
    out
}

pub fn write_witness_file(path: impl AsRef<Path>, s: &GroupSequence) -> Result<()> {
    fs::write(path, witness_to_string(s))?;
    Ok(())
}

/// Parse a witness. When `expect` is given, a `# group:` header must agree
/// with it (after canonicalization); without `expect`, the header is
/// required to know the group at all.
pub fn parse_witness(text: &str, expect: Option<&AbelianGroup>) -> Result<GroupSequence> {
    let mut group: Option<AbelianGroup> = expect.cloned();
    let mut seq: Option<GroupSequence> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(spec) = comment.trim().strip_prefix("group:") {
                let declared =
                    AbelianGroup::parse_spec(spec.trim()).map_err(|e| Error::Parse {
                        line: line_no,
                        detail: format!("bad group header: {e}"),
                    })?;
                match &group {
                    Some(g) if *g != declared => {
                        return Err(Error::Parse {
                            line: line_no,
                            detail: format!(
                                "file declares group {} but {} was expected",
                                declared.spec_string(),
                                g.spec_string()
                            ),
                        });
                    }
                    _ => group = Some(declared),
                }
            }
            continue;
        }
        let g = group.as_ref().ok_or_else(|| Error::Parse {
            line: line_no,
            detail: "element before any `# group:` header and no group given".into(),
        })?;
        if seq.is_none() {
            seq = Some(GroupSequence::new(g));
        }
        let elem = g.parse_element(line).map_err(|e| match e {
            Error::Parse { detail, .. } => Error::Parse {
                line: line_no,
                detail,
            },
            other => Error::Parse {
                line: line_no,
                detail: other.to_string(),
            },
        })?;
        seq.as_mut().expect("created above").push(&elem, 1)?;
    }
    match (seq, group) {
        (Some(s), _) => Ok(s),
        (None, Some(g)) => Ok(GroupSequence::new(&g)),
        (None, None) => Err(Error::Parse {
            line: 1,
            detail: "empty witness with no group header".into(),
        }),
    }
}

pub fn read_witness_file(
    path: impl AsRef<Path>,
    expect: Option<&AbelianGroup>,
) -> Result<GroupSequence> {
    let text = fs::read_to_string(path)?;
    parse_witness(&text, expect)
}
