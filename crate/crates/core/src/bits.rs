use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// A measurement outcome. Character `j` of the display form is qubit `j`.
///
/// When converted to a basis index, qubit 0 is the most significant bit, so
/// `"01"` is index 1 and `"10"` is index 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitString {
    bits: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit string {0:?}: expected only '0' and '1'")]
pub struct ParseBitsError(pub String);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        Self { bits: alloc::vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Builds an `n`-bit string from a basis index (qubit 0 is the MSB).
    pub fn from_index(index: usize, n: usize) -> Self {
        let bits = (0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, qubit: usize) -> bool {
        self.bits[qubit]
    }

    pub fn set(&mut self, qubit: usize, value: bool) {
        self.bits[qubit] = value;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Basis index with qubit 0 as the most significant bit.
    pub fn to_index(&self) -> usize {
        self.bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }

    /// Bitwise negation.
    pub fn negated(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect() }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseBitsError(s.into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { bits })
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        alloc::format!("{b}")
    }
}

impl TryFrom<String> for BitString {
    type Error = ParseBitsError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn index_is_big_endian() {
        let b: BitString = "10".parse().unwrap();
        assert_eq!(b.to_index(), 2);
        assert_eq!(BitString::from_index(2, 2), b);
        assert_eq!(BitString::from_index(5, 4).to_string(), "0101");
    }

    #[test]
    fn rejects_other_characters() {
        assert!("012".parse::<BitString>().is_err());
    }
}
