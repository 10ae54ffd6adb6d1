//! OEIS b-file reading and the table of sequences we can check.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: u64,
    pub value: u64,
}

#[derive(Debug, Error)]
pub enum BFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}: {text:?}")]
    Malformed {
        line: usize,
        reason: &'static str,
        text: String,
    },
}

/// `<index> <value>` per line; `#` comments and blank lines are skipped.
/// Indices must be strictly increasing.
pub fn parse(text: &str) -> Result<Vec<BFileEntry>, BFileError> {
    let mut out: Vec<BFileEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason| BFileError::Malformed {
            line: i + 1,
            reason,
            text: raw.to_string(),
        };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed("expected two fields"));
        };
        let index = idx.parse().map_err(|_| malformed("bad index"))?;
        let value = val.parse().map_err(|_| malformed("bad value"))?;
        if out.last().is_some_and(|prev| prev.index >= index) {
            return Err(malformed("index not increasing"));
        }
        out.push(BFileEntry { index, value });
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<BFileEntry>, BFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| BFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// The function a sequence id stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    G,
    MinLength,
    GBar,
    F,
    SequenceCount,
    Nullity,
}

#[derive(Debug, Clone, Copy)]
pub struct SequenceDef {
    pub id: &'static str,
    pub function: Function,
    /// Argument is `index + shift`.
    pub shift: i64,
    /// Smallest argument the function is defined for.
    pub min_arg: u64,
}

pub const SEQUENCES: &[SequenceDef] = &[
    SequenceDef { id: "A006255", function: Function::G, shift: 0, min_arg: 0 },
    SequenceDef { id: "A066400", function: Function::MinLength, shift: 0, min_arg: 0 },
    SequenceDef { id: "A067565", function: Function::GBar, shift: 0, min_arg: 0 },
    SequenceDef { id: "A072905", function: Function::F, shift: 0, min_arg: 1 },
    SequenceDef { id: "A259527", function: Function::SequenceCount, shift: 0, min_arg: 0 },
    SequenceDef { id: "A260510", function: Function::Nullity, shift: 0, min_arg: 0 },
];

pub fn lookup(id: &str) -> Option<&'static SequenceDef> {
    let id = id.trim();
    SEQUENCES.iter().find(|s| s.id.eq_ignore_ascii_case(id))
}

impl SequenceDef {
    pub fn argument(&self, index: u64) -> Option<u64> {
        let arg = index as i128 + self.shift as i128;
        (arg >= self.min_arg as i128).then_some(arg as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# A260510\n\n1 0\n2 1\n  3\t1  \n";
        let e = parse(text).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[2], BFileEntry { index: 3, value: 1 });
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("1 0\n2\n").unwrap_err();
        assert!(matches!(err, BFileError::Malformed { line: 2, .. }), "{err}");
        let err = parse("1 0\n# c\n2 x\n").unwrap_err();
        assert!(matches!(err, BFileError::Malformed { line: 3, reason: "bad value", .. }));
        let err = parse("2 0\n2 1\n").unwrap_err();
        assert!(matches!(err, BFileError::Malformed { line: 2, reason: "index not increasing", .. }));
        assert!(parse("1 2 3\n").is_err());
    }

    #[test]
    fn empty_file_is_empty() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# nothing\n").unwrap().is_empty());
    }

    #[test]
    fn table_lookup() {
        assert_eq!(lookup("a006255").unwrap().function, Function::G);
        assert!(lookup("A000045").is_none());
        let f = lookup("A072905").unwrap();
        assert_eq!(f.argument(0), None);
        assert_eq!(f.argument(5), Some(5));
    }
}
