use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite word over a byte alphabet.
///
/// The algorithms only ever compare symbols for equality, so any byte is a
/// valid symbol; the external (CLI and file) form restricts words to
/// printable ASCII. The empty word is valid everywhere.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Self {
        Word(symbols.into())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses the external form: printable ASCII only (0x20..=0x7e).
    pub fn parse_printable(s: &str) -> Result<Self> {
        match s.bytes().find(|b| !(0x20..=0x7e).contains(b)) {
            Some(b) => Err(Error::InvalidArgument(format!(
                "word contains non-printable byte 0x{b:02x}"
            ))),
            None => Ok(Word(s.as_bytes().to_vec())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.as_bytes().to_vec())
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl PartialEq<&str> for Word {
    fn eq(&self, other: &&str) -> bool {
        self.0 == other.as_bytes()
    }
}

impl PartialEq<&[u8]> for Word {
    fn eq(&self, other: &&[u8]) -> bool {
        self.0 == *other
    }
}

impl fmt::Display for Word {
    /// Printable bytes as-is, anything else as \xNN.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            if (0x20..=0x7e).contains(&b) {
                write!(f, "{}", b as char)?;
            } else {
                write!(f, "\\x{b:02x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printable_parsing() {
        assert_eq!(Word::parse_printable("adbad").unwrap(), "adbad");
        assert_eq!(Word::parse_printable("").unwrap(), Word::empty());
        assert!(Word::parse_printable("a\tb").is_err());
        assert!(Word::parse_printable("a\u{fc}b").is_err());
    }

    #[test]
    fn display_escapes_raw_bytes() {
        assert_eq!(Word::new(vec![b'a', 0x01]).to_string(), "a\\x01");
    }
}
