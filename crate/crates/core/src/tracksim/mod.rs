//! Measured train tracks as ribbon graphs, maximal splitting and cycle detection.
//!
//! This is an independent check on [`crate::cycles`]: it starts from the stored
//! start track weighted by `λv` and splits until the track comes back to itself
//! rescaled by `λ⁻¹`.

pub mod encoding;
pub mod iso;
pub mod track;

use std::sync::Arc;

use serde::Serialize;

pub use encoding::{build_start_track, TrackEncoding, TrackLibrary};
pub use iso::{automorphisms, iso_measured, isomorphisms};
pub use track::{Face, RibbonTrack, StepRecord};

use crate::cfrac;
use crate::cycles::{self, SplitWord, Surface};
use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::words::ParamWord;

/// Iterator over successive maximal splittings.
pub struct Splitter {
    current: Arc<RibbonTrack>,
    step: usize,
    stopped: bool,
}

impl Splitter {
    pub fn new(start: RibbonTrack) -> Self {
        Splitter {
            current: Arc::new(start),
            step: 0,
            stopped: false,
        }
    }

    pub fn current(&self) -> &Arc<RibbonTrack> {
        &self.current
    }
}

impl Iterator for Splitter {
    type Item = Result<(StepRecord, Arc<RibbonTrack>)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.stopped {
            return None;
        }
        match self.current.maximal_split() {
            Ok((next, mut rec)) => {
                self.step += 1;
                rec.step = self.step;
                self.current = Arc::new(next);
                Some(Ok((rec, Arc::clone(&self.current))))
            }
            Err(e) => {
                self.stopped = true;
                Some(Err(e))
            }
        }
    }
}

/// Steps and snapshots; `snapshots[0]` is the start, `snapshots[i]` follows step `i`.
#[derive(Clone, Debug)]
pub struct Trace {
    pub steps: Vec<StepRecord>,
    pub snapshots: Vec<Arc<RibbonTrack>>,
}

pub fn run(track: &RibbonTrack, max_steps: usize) -> Result<Trace> {
    let mut trace = Trace {
        steps: Vec::new(),
        snapshots: vec![Arc::new(track.clone())],
    };
    for item in Splitter::new(track.clone()).take(max_steps) {
        let (rec, snap) = item?;
        trace.steps.push(rec);
        trace.snapshots.push(snap);
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleFound {
    pub length: usize,
    pub scale: QuadExt,
}

/// Smallest `m` such that the track after `m` maximal splittings is isomorphic to the start up to scale.
pub fn find_cycle(track: &RibbonTrack, max_steps: usize) -> Result<CycleFound> {
    for item in Splitter::new(track.clone()).take(max_steps) {
        let (rec, snap) = item?;
        if let Some(scale) = iso_measured(track, &snap) {
            return Ok(CycleFound {
                length: rec.step,
                scale,
            });
        }
    }
    Err(Error::NoCycleFound(max_steps))
}

#[derive(Clone, Debug, Serialize)]
pub struct AgolCycle {
    /// steps up to and including the first return at scale `λ⁻¹`
    pub steps: Vec<StepRecord>,
    pub length: usize,
    pub scale: QuadExt,
    /// first return at any scale; shorter than `length` when the word has a rotational symmetry
    pub primitive: CycleFound,
}

impl AgolCycle {
    pub fn split_word(&self) -> SplitWord {
        SplitWord(self.steps.iter().map(|r| r.kind).collect())
    }

    pub fn total(&self) -> usize {
        self.steps.iter().map(|r| r.splitting_number).sum()
    }
}

/// Splits until the track returns rescaled by exactly `scale`.
pub fn agol_cycle(track: &RibbonTrack, scale: &QuadExt, max_steps: usize) -> Result<AgolCycle> {
    let mut steps = Vec::new();
    let mut primitive = None;
    for item in Splitter::new(track.clone()).take(max_steps) {
        let (rec, snap) = item?;
        steps.push(rec);
        if let Some(c) = iso_measured(track, &snap) {
            let m = steps.len();
            let first = primitive.get_or_insert_with(|| CycleFound {
                length: m,
                scale: c.clone(),
            });
            if c == *scale {
                let primitive = first.clone();
                return Ok(AgolCycle {
                    steps,
                    length: m,
                    scale: c,
                    primitive,
                });
            }
        }
    }
    Err(Error::NoCycleFound(max_steps))
}

/// The start track of `surface` weighted by `λ_p v_p`.
pub fn start_track(lib: &TrackLibrary, surface: Surface, p: &ParamWord) -> Result<RibbonTrack> {
    let r = cfrac::rectangle_data(p);
    let v = cfrac::eigenvector_of(&r).map(|x| x * &r.dilatation);
    lib.build_start(surface, &v)
}

#[derive(Clone, Debug, Serialize)]
pub struct Simulation {
    pub surface: Surface,
    pub word: ParamWord,
    pub cycle: AgolCycle,
    pub split_word: SplitWord,
    pub total: usize,
    pub dilatation: QuadExt,
}

pub fn simulate(
    lib: &TrackLibrary,
    surface: Surface,
    p: &ParamWord,
    max_steps: usize,
) -> Result<Simulation> {
    let track = start_track(lib, surface, p)?;
    let lambda = cfrac::dilatation(p);
    let cycle = agol_cycle(&track, &lambda.inverse()?, max_steps)?;
    Ok(Simulation {
        surface,
        word: p.clone(),
        split_word: cycle.split_word(),
        total: cycle.total(),
        cycle,
        dilatation: lambda,
    })
}

/// Default step budget: four times the closed-form cycle length.
pub fn default_max_steps(surface: Surface, p: &ParamWord) -> usize {
    4 * cycles::split_word(surface, p).len()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub expected: String,
    pub found: String,
}

/// Closed form against simulator: type word, `ℓ`, `N`, rescale `λ⁻¹`, and the exact eigenpair.
pub fn verify(lib: &TrackLibrary, surface: Surface, p: &ParamWord) -> Result<Vec<Check>> {
    verify_with_budget(lib, surface, p, default_max_steps(surface, p))
}

pub fn verify_with_budget(
    lib: &TrackLibrary,
    surface: Surface,
    p: &ParamWord,
    max_steps: usize,
) -> Result<Vec<Check>> {
    let closed = cycles::cycle(surface, p);
    let sim = simulate(lib, surface, p, max_steps)?;
    let check = |name, expected: String, found: String| Check {
        name,
        pass: expected == found,
        expected,
        found,
    };
    Ok(vec![
        check(
            "split_word",
            closed.split_word.to_string(),
            sim.split_word.to_string(),
        ),
        check(
            "length",
            closed.length.to_string(),
            sim.cycle.length.to_string(),
        ),
        check("total", closed.total.to_string(), sim.total.to_string()),
        check(
            "scale",
            closed.dilatation.inverse()?.to_string(),
            sim.cycle.scale.to_string(),
        ),
        check(
            "eigenpair",
            "true".into(),
            crate::matrices::verify_eigenpair(p).to_string(),
        ),
    ])
}
