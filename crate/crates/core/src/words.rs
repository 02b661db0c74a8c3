//! Parameter words `(p_n, p_n', q_n, …, p_1, p_1', q_1)` and the shift/flip action.
//!
//! The leftmost triple is block `n`: it is the factor applied last as a map.
//! Text form is `"1,0,1;0,1,1"`, triples separated by semicolons.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct Block {
    pub p: u64,
    pub pp: u64,
    pub q: u64,
}

impl Block {
    pub fn new(p: u64, pp: u64, q: u64) -> Self {
        Block { p, pp, q }
    }

    pub fn width(&self) -> u64 {
        self.p + self.pp
    }

    pub fn flipped(&self) -> Self {
        Block::new(self.pp, self.p, self.q)
    }
}

impl From<[u64; 3]> for Block {
    fn from(t: [u64; 3]) -> Self {
        Block::new(t[0], t[1], t[2])
    }
}

impl From<Block> for [u64; 3] {
    fn from(b: Block) -> Self {
        [b.p, b.pp, b.q]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Block>", into = "Vec<Block>")]
pub struct ParamWord {
    blocks: Vec<Block>,
}

impl ParamWord {
    pub fn from_blocks(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::NotInIn("empty word".into()));
        }
        let n = blocks.len();
        for (k, b) in blocks.iter().enumerate() {
            let i = n - k;
            if b.width() == 0 {
                return Err(Error::NotInIn(format!("p_{i} + p_{i}' = 0")));
            }
            if b.q == 0 {
                return Err(Error::NotInIn(format!("q_{i} = 0")));
            }
        }
        if !blocks.iter().any(|b| b.p > 0) {
            return Err(Error::NotInIn("no j with p_j > 0".into()));
        }
        if !blocks.iter().any(|b| b.pp > 0) {
            return Err(Error::NotInIn("no k with p_k' > 0".into()));
        }
        Ok(ParamWord { blocks })
    }

    /// Validates a flat list `(p_n, p_n', q_n, …)`.
    pub fn validate(raw: &[u64]) -> Result<Self> {
        if raw.is_empty() || !raw.len().is_multiple_of(3) {
            return Err(Error::NotInIn(format!(
                "length {} is not a positive multiple of 3",
                raw.len()
            )));
        }
        Self::from_blocks(
            raw.chunks(3)
                .map(|t| Block::new(t[0], t[1], t[2]))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in word order, block `n` first.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block `i`, 1-based, counted from the right.
    pub fn block(&self, i: usize) -> Block {
        assert!((1..=self.n()).contains(&i), "block index {i} out of range");
        self.blocks[self.n() - i]
    }

    pub fn flatten(&self) -> Vec<u64> {
        self.blocks.iter().flat_map(|b| [b.p, b.pp, b.q]).collect()
    }

    /// `T(p)`: rotates block `n` to the end.
    pub fn shift(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.rotate_left(1);
        ParamWord { blocks }
    }

    pub fn shift_by(&self, k: usize) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.rotate_left(k % self.n());
        ParamWord { blocks }
    }

    pub fn flip(&self) -> Self {
        ParamWord {
            blocks: self.blocks.iter().map(Block::flipped).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.blocks.iter().all(|b| b.p == b.pp)
    }

    /// Per-block `(p_i + p_i', q_i)`, which determines the dilatation.
    pub fn profile(&self) -> Vec<(u64, u64)> {
        self.blocks.iter().map(|b| (b.width(), b.q)).collect()
    }

    fn orbit(&self) -> impl Iterator<Item = (usize, bool, ParamWord)> + '_ {
        let f = self.flip();
        (0..self.n()).flat_map(move |k| [(k, false, self.shift_by(k)), (k, true, f.shift_by(k))])
    }

    pub fn canonical_form(&self) -> Self {
        self.orbit()
            .map(|(_, _, w)| w)
            .min_by(|x, y| x.flatten().cmp(&y.flatten()))
            .expect("orbit is nonempty")
    }

    /// `(k, flipped)` with `T^k(self) = other` or `T^k(self) = f(other)`.
    pub fn equivalence_certificate(&self, other: &Self) -> Option<(usize, bool)> {
        if self.n() != other.n() {
            return None;
        }
        let of = other.flip();
        (0..self.n()).find_map(|k| {
            let t = self.shift_by(k);
            if t == *other {
                Some((k, false))
            } else if t == of {
                Some((k, true))
            } else {
                None
            }
        })
    }

    pub fn are_equivalent(&self, other: &Self) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }

    pub fn concatenate(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        ParamWord { blocks }
    }

    /// Parses the text form; `reverse` reads the triples as block 1 first.
    pub fn parse_with(s: &str, reverse: bool) -> Result<Self> {
        let s = s.trim();
        let nums = s
            .split([',', ';'])
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if s.contains(';') && s.split(';').any(|t| t.split(',').count() != 3) {
            return Err(Error::Parse(format!(
                "word {s:?} has a triple without 3 entries"
            )));
        }
        let w = Self::validate(&nums)?;
        Ok(if reverse {
            let mut blocks = w.blocks;
            blocks.reverse();
            ParamWord { blocks }
        } else {
            w
        })
    }

    /// A random element of `I_n` with `1 <= n <= max_n` and entries at most `max_entry`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_entry: u64) -> Self {
        assert!(max_n >= 1 && max_entry >= 1);
        let n = rng.gen_range(1..=max_n);
        loop {
            let blocks = (0..n)
                .map(|_| {
                    Block::new(
                        rng.gen_range(0..=max_entry),
                        rng.gen_range(0..=max_entry),
                        rng.gen_range(1..=max_entry),
                    )
                })
                .collect();
            if let Ok(w) = Self::from_blocks(blocks) {
                return w;
            }
        }
    }
}

impl TryFrom<Vec<Block>> for ParamWord {
    type Error = Error;
    fn try_from(blocks: Vec<Block>) -> Result<Self> {
        Self::from_blocks(blocks)
    }
}

impl From<ParamWord> for Vec<Block> {
    fn from(w: ParamWord) -> Self {
        w.blocks
    }
}

impl FromStr for ParamWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, false)
    }
}

impl fmt::Display for ParamWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{},{},{}", b.p, b.pp, b.q))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}
