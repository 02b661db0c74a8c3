//! Closed-form Agol cycles: splitting type words, cycle length `ℓ` and total splitting number `N`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cfrac;
use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::words::{Block, ParamWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Torus,
    Sphere,
}

impl Surface {
    pub const ALL: [Surface; 2] = [Surface::Torus, Surface::Sphere];

    /// Label of the start track the closed forms are stated for.
    pub fn start_label(self) -> &'static str {
        match self {
            Surface::Torus => "b",
            Surface::Sphere => "b_L",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Torus => "torus",
            Surface::Sphere => "sphere",
        })
    }
}

impl FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "torus" | "t" => Ok(Surface::Torus),
            "sphere" | "s" => Ok(Surface::Sphere),
            _ => Err(Error::Parse(format!("unknown surface {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    L,
    R,
    /// mixed: some splits left, some right
    M,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::L => 'L',
            Step::R => 'R',
            Step::M => 'M',
        }
    }
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.letter())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SplitWord(pub Vec<Step>);

impl SplitWord {
    fn push_run(&mut self, s: Step, k: u64) {
        self.0.extend(std::iter::repeat_n(s, k as usize));
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, s: Step) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    /// Run-length form such as `R L^2 R L^2`.
    pub fn powers(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let s = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == s {
                j += 1;
            }
            out.push(match j - i {
                1 => s.letter().to_string(),
                k => format!("{}^{k}", s.letter()),
            });
            i = j;
        }
        out.join(" ")
    }
}

impl fmt::Display for SplitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|s| s.letter()).collect();
        f.write_str(&s)
    }
}

impl FromStr for SplitWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' => Ok(Step::L),
                'R' => Ok(Step::R),
                'M' => Ok(Step::M),
                _ => Err(Error::Parse(format!("bad split letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SplitWord)
    }
}

impl Serialize for SplitWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SplitWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockType {
    A,
    APrime,
    B,
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockType::A => "A",
            BlockType::APrime => "A'",
            BlockType::B => "B",
        })
    }
}

pub fn block_type(b: &Block) -> BlockType {
    if b.pp == 0 {
        BlockType::A
    } else if b.p == 0 {
        BlockType::APrime
    } else {
        BlockType::B
    }
}

/// `S_i = p_i + 2`.
pub fn sphere_s(b: &Block) -> u64 {
    b.p + 2
}

/// `A_i`: `2p_i`, `2p_i'` or `p_i + p_i' + 2` by block type.
pub fn sphere_a(b: &Block) -> u64 {
    match block_type(b) {
        BlockType::A => 2 * b.p,
        BlockType::APrime => 2 * b.pp,
        BlockType::B => b.p + b.pp + 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDescriptor {
    pub surface: Surface,
    pub word: ParamWord,
    pub length: usize,
    pub total: u64,
    pub split_word: SplitWord,
    pub dilatation: QuadExt,
    pub eigenvector: [QuadExt; 3],
    pub start_track: String,
}

pub fn split_word(surface: Surface, p: &ParamWord) -> SplitWord {
    let mut w = SplitWord::default();
    let sym = p.is_symmetric();
    for b in p.blocks() {
        match (surface, sym) {
            (Surface::Torus, true) => {
                w.push_run(Step::R, b.p);
                w.push_run(Step::L, 2 * b.q);
            }
            (Surface::Torus, false) => {
                w.push_run(Step::R, b.width());
                w.push_run(Step::L, 3 * b.q);
            }
            (Surface::Sphere, true) => {
                // R L R^{p-1} L R L^{2q-1}
                w.push_run(Step::R, 1);
                w.push_run(Step::L, 1);
                w.push_run(Step::R, b.p - 1);
                w.push_run(Step::L, 1);
                w.push_run(Step::R, 1);
                w.push_run(Step::L, 2 * b.q - 1);
            }
            (Surface::Sphere, false) => match block_type(b) {
                BlockType::A | BlockType::APrime => {
                    w.push_run(Step::M, 1);
                    w.push_run(Step::R, sphere_a(b) - 1);
                    w.push_run(Step::L, 3 * b.q);
                }
                BlockType::B => {
                    // R L R^{p+p'-2} L^2 R L^{3q-1}
                    w.push_run(Step::R, 1);
                    w.push_run(Step::L, 1);
                    w.push_run(Step::R, b.width() - 2);
                    w.push_run(Step::L, 2);
                    w.push_run(Step::R, 1);
                    w.push_run(Step::L, 3 * b.q - 1);
                }
            },
        }
    }
    w
}

pub fn total_splitting_number(surface: Surface, p: &ParamWord) -> u64 {
    p.blocks()
        .iter()
        .map(|b| match surface {
            Surface::Torus => b.width() + 4 * b.q,
            Surface::Sphere => sphere_a(b) + 4 * b.q,
        })
        .sum()
}

pub fn cycle(surface: Surface, p: &ParamWord) -> CycleDescriptor {
    let r = cfrac::rectangle_data(p);
    let split_word = split_word(surface, p);
    CycleDescriptor {
        surface,
        word: p.clone(),
        length: split_word.len(),
        total: total_splitting_number(surface, p),
        split_word,
        eigenvector: cfrac::eigenvector_of(&r),
        dilatation: r.dilatation,
        start_track: surface.start_label().to_string(),
    }
}

pub fn torus_cycle(p: &ParamWord) -> CycleDescriptor {
    cycle(Surface::Torus, p)
}

pub fn sphere_cycle(p: &ParamWord) -> CycleDescriptor {
    cycle(Surface::Sphere, p)
}

/// `N(pt) = N(p) + N(t)` on both surfaces.
pub fn check_additivity(p: &ParamWord, t: &ParamWord) -> bool {
    let pt = p.concatenate(t);
    Surface::ALL.iter().all(|&s| {
        total_splitting_number(s, &pt)
            == total_splitting_number(s, p) + total_splitting_number(s, t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> ParamWord {
        s.parse().unwrap()
    }

    #[test]
    fn torus_examples() {
        let c = torus_cycle(&w("1,1,1"));
        assert_eq!(
            (c.length, c.total, c.split_word.to_string()),
            (3, 6, "RLL".into())
        );
        let c = torus_cycle(&w("1,2,1"));
        assert_eq!(
            (c.length, c.total, c.split_word.to_string()),
            (6, 7, "RRRLLL".into())
        );
        let c = torus_cycle(&w("1,0,1;0,1,1"));
        assert_eq!(
            (c.length, c.total, c.split_word.to_string()),
            (8, 10, "RLLLRLLL".into())
        );
    }

    #[test]
    fn sphere_examples() {
        let c = sphere_cycle(&w("1,2,1"));
        assert_eq!(
            (c.length, c.total, c.split_word.to_string()),
            (8, 9, "RLRLLRLL".into())
        );
        let c = sphere_cycle(&w("1,0,1;0,1,1"));
        assert_eq!(
            (c.length, c.total, c.split_word.to_string()),
            (10, 12, "MRLLLMRLLL".into())
        );
        let c = sphere_cycle(&w("1,1,1"));
        assert_eq!((c.length, c.split_word.to_string()), (5, "RLLRL".into()));
        // A_1 = p + p' + 2 = 4
        assert_eq!(c.total, 8);
        assert_eq!(c.split_word.powers(), "R L^2 R L");
    }

    #[test]
    fn block_types() {
        assert_eq!(block_type(&Block::new(1, 0, 1)), BlockType::A);
        assert_eq!(block_type(&Block::new(0, 1, 1)), BlockType::APrime);
        assert_eq!(block_type(&Block::new(1, 2, 1)), BlockType::B);
        assert_eq!(BlockType::APrime.to_string(), "A'");
    }

    #[test]
    fn additivity_examples() {
        let (p, t) = (w("1,1,1"), w("1,2,1"));
        assert_eq!(
            total_splitting_number(Surface::Torus, &p.concatenate(&t)),
            13
        );
        assert_eq!(
            total_splitting_number(Surface::Torus, &p.concatenate(&p)),
            12
        );
        assert!(check_additivity(&p, &t));
        assert_eq!(
            total_splitting_number(Surface::Sphere, &p.concatenate(&t)),
            8 + 9
        );
    }

    #[test]
    fn descriptor_json() {
        let c = sphere_cycle(&w("1,0,1;0,1,1"));
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["surface"], "sphere");
        assert_eq!(j["split_word"], "MRLLLMRLLL");
        assert_eq!(j["word"], serde_json::json!([[1, 0, 1], [0, 1, 1]]));
        let back: CycleDescriptor = serde_json::from_value(j).unwrap();
        assert_eq!(back, c);
    }

    fn word() -> impl Strategy<Value = ParamWord> {
        proptest::collection::vec((0u64..4, 0u64..4, 1u64..4), 1..5).prop_filter_map(
            "not in I_n",
            |v| {
                ParamWord::from_blocks(v.into_iter().map(|(a, b, c)| Block::new(a, b, c)).collect())
                    .ok()
            },
        )
    }

    proptest! {
        #[test]
        fn letter_counts(p in word()) {
            let tw = split_word(Surface::Torus, &p);
            let sum = |f: &dyn Fn(&Block) -> u64| p.blocks().iter().map(f).sum::<u64>() as usize;
            if p.is_symmetric() {
                prop_assert_eq!(tw.count(Step::R), sum(&|b| b.p));
                prop_assert_eq!(tw.count(Step::L), sum(&|b| 2 * b.q));
            } else {
                prop_assert_eq!(tw.count(Step::R), sum(&|b| b.width()));
                prop_assert_eq!(tw.count(Step::L), sum(&|b| 3 * b.q));
                let sw = split_word(Surface::Sphere, &p);
                let ab = p.blocks().iter().filter(|b| block_type(b) != BlockType::B).count();
                prop_assert_eq!(sw.count(Step::M), ab);
                prop_assert_eq!(sw.len(), sum(&|b| sphere_a(b) + 3 * b.q));
            }
            for s in Surface::ALL {
                let n = total_splitting_number(s, &p);
                let l = split_word(s, &p).len();
                prop_assert!(n as usize >= l);
                prop_assert_eq!(total_splitting_number(s, &p.shift()), n);
                prop_assert_eq!(total_splitting_number(s, &p.flip()), n);
                prop_assert_eq!(split_word(s, &p.shift()).len(), l);
                prop_assert_eq!(split_word(s, &p.flip()).len(), l);
            }
        }

        #[test]
        fn additivity(p in word(), t in word()) {
            prop_assert!(check_additivity(&p, &t));
        }
    }
}
