//! Binary state vectors over the vertex set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A length-`n` binary state vector. Vertex `v` is bit `v`; the text form
/// writes vertex 0 leftmost.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl Configuration {
    pub fn zeros(n: usize) -> Self {
        Configuration {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut c = Self::zeros(n);
        for v in 0..n {
            c.set(v, true);
        }
        c
    }

    /// Configuration whose 1-vertices are exactly `active`.
    pub fn from_active(n: usize, active: &[usize]) -> Result<Self> {
        let mut c = Self::zeros(n);
        for &v in active {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            c.set(v, true);
        }
        Ok(c)
    }

    /// The `index`-th configuration in enumeration order: vertex `v` takes
    /// bit `v` of `index`. Requires `n <= 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        debug_assert!(n <= 64);
        let mut c = Self::zeros(n);
        if n > 0 {
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            c.words[0] = index & mask;
        }
        c
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut c = Self::zeros(bits.len());
        for (v, &b) in bits.iter().enumerate() {
            c.set(v, b);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, v: usize, state: bool) {
        debug_assert!(v < self.n);
        let bit = 1u64 << (v % 64);
        if state {
            self.words[v / 64] |= bit;
        } else {
            self.words[v / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, v: usize) {
        let s = self.get(v);
        self.set(v, !s);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Vertices in state 1, ascending.
    pub fn active(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.get(v)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |v| self.get(v))
    }

    /// Bitwise `self <= other`.
    pub fn le_bitwise(&self, other: &Configuration) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Number of vertices in `vertex_set` that are in state 1.
    pub fn score(&self, vertex_set: &[usize]) -> Result<usize> {
        if let Some(&v) = vertex_set.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.score_unchecked(vertex_set))
    }

    #[inline]
    pub(crate) fn score_unchecked(&self, vertex_set: &[usize]) -> usize {
        vertex_set.iter().filter(|&&v| self.get(v)).count()
    }

    /// Projection onto the listed vertices, in the given order.
    pub fn project(&self, vertices: &[usize]) -> Vec<bool> {
        vertices.iter().map(|&v| self.get(v)).collect()
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Clears bits above `n` after bulk word writes.
    pub(crate) fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Parses a bitstring, requiring exactly `n` characters.
    pub fn parse_with_len(text: &str, n: usize) -> Result<Self> {
        let c: Configuration = text.parse()?;
        if c.n != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: c.n,
            });
        }
        Ok(c)
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut c = Configuration::zeros(s.len());
        for (v, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(v, true),
                other => return Err(Error::invalid(format!("bitstring contains '{other}' at position {v}"))),
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

/// Iterates all `2^n` configurations in index order. Requires `n <= 63`.
pub fn all_configurations(n: usize) -> impl Iterator<Item = Configuration> {
    assert!(n < 64, "cannot enumerate 2^{n} configurations");
    (0..(1u64 << n)).map(move |i| Configuration::from_index(n, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn score_examples() {
        assert_eq!(c("0000").score(&[0, 1, 2]).unwrap(), 0);
        assert_eq!(c("1111").score(&[1, 3]).unwrap(), 2);
        assert_eq!(c("1010").score(&[0, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn score_rejects_out_of_range() {
        assert_eq!(
            c("101").score(&[0, 3]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn text_round_trip_and_orientation() {
        let x = c("1000110");
        assert!(x.get(0));
        assert!(!x.get(1));
        assert_eq!(x.to_string(), "1000110");
        assert_eq!(x.active(), vec![0, 4, 5]);
    }

    #[test]
    fn wide_configurations() {
        let mut x = Configuration::zeros(130);
        x.set(129, true);
        x.set(64, true);
        assert_eq!(x.count_ones(), 2);
        assert_eq!(x.to_string().len(), 130);
        assert_eq!(x.to_string().parse::<Configuration>().unwrap(), x);
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x".parse::<Configuration>().is_err());
        assert!(Configuration::parse_with_len("010", 4).is_err());
    }

    #[test]
    fn bitwise_order() {
        assert!(c("0100").le_bitwise(&c("0110")));
        assert!(!c("1000").le_bitwise(&c("0110")));
    }
}
