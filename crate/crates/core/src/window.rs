//! Bounded mode boxes standing in for the completed spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mode box `[lo, hi]^N`: monomials `z^{-m}` with every `m_j` in range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Config(format!("empty window {lo}..{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, m: &[i32]) -> bool {
        m.iter().all(|&x| self.lo <= x && x <= self.hi)
    }

    /// All mode vectors of length `n` in the box, lexicographic.
    pub fn modes(&self, n: usize) -> Vec<Vec<i32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (self.lo..=self.hi).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Largest total degree `d = -Σm` whose whole slice lies in the box.
    pub fn complete_degree(&self) -> Option<u32> {
        if self.hi < 0 || self.lo > 0 {
            None
        } else {
            Some((-self.lo) as u32)
        }
    }

    /// Shrinks the box by `margin` on the low side.
    pub fn inner(&self, margin: i32) -> Result<Self> {
        if self.lo + margin > self.hi {
            return Err(Error::WindowUnderflow { need: margin as i64, have: (self.hi - self.lo) as i64 });
        }
        Ok(Window { lo: self.lo + margin, hi: self.hi })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once("..").ok_or_else(|| Error::Config(format!("window `{s}` is not LO..HI")))?;
        let p = |t: &str| t.trim().parse::<i32>().map_err(|_| Error::Config(format!("bad window bound `{t}`")));
        Window::new(p(a)?, p(b)?)
    }
}

impl TryFrom<String> for Window {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Window> for String {
    fn from(w: Window) -> String {
        w.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_enumerates() {
        let w: Window = "-2..0".parse().unwrap();
        assert_eq!(w.modes(2).len(), 9);
        assert_eq!(w.complete_degree(), Some(2));
        assert!("1..0".parse::<Window>().is_err());
    }
}
