//! Track encoding files.
//!
//! A file lists ribbon graphs by switch slots and branch half-edge pairs, plus the
//! three branches carrying the parameters `x, y, z`. The remaining branch weights
//! are solved from the switch conditions once, as integer linear forms.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::track::{expected_surface_type, surface_type, validate_topology, RibbonTrack};
use crate::cycles::Surface;
use crate::error::{Error, Result};
use crate::quad::QuadExt;

pub const FORMAT: &str = "agol-tracks";
pub const VERSION: u32 = 1;
pub const ENV_VAR: &str = "AGOL_TRACKS";

const BUILTIN: &str = include_str!("../../data/tracks.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// a start track: weights must be nonnegative combinations of the parameters
    Start,
    Auxiliary,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub id: usize,
    pub single: usize,
    pub double: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchSpec {
    pub id: usize,
    pub half_edges: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Parameters {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrackSpec {
    pub label: String,
    pub surface: Surface,
    pub role: Role,
    #[serde(default)]
    pub note: String,
    pub switches: Vec<SwitchSpec>,
    pub branches: Vec<BranchSpec>,
    pub parameters: Parameters,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrackFile {
    pub format: String,
    pub version: u32,
    #[serde(default)]
    pub conventions: String,
    pub tracks: Vec<TrackSpec>,
}

/// A validated encoding: internal switch slots and per-branch weight coefficients on `(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackEncoding {
    pub label: String,
    pub surface: Surface,
    pub role: Role,
    pub switches: Vec<[usize; 3]>,
    pub coefficients: Vec<[BigInt; 3]>,
    pub parameter_branches: [usize; 3],
}

impl TrackEncoding {
    pub fn compile(spec: &TrackSpec) -> Result<Self> {
        let label = &spec.label;
        let err = |m: String| Error::EncodingError(format!("{label}: {m}"));
        let e = spec.branches.len();
        if spec.switches.len() * 3 != e * 2 {
            return Err(err(format!(
                "{} switches and {e} branches cannot form a trivalent graph",
                spec.switches.len()
            )));
        }
        let mut branch_index = HashMap::new();
        let mut half_index = HashMap::new();
        for (k, b) in spec.branches.iter().enumerate() {
            if branch_index.insert(b.id, k).is_some() {
                return Err(err(format!("duplicate branch id {}", b.id)));
            }
            for (end, &h) in b.half_edges.iter().enumerate() {
                if half_index.insert(h, 2 * k + end).is_some() {
                    return Err(err(format!("half-edge {h} used by two branches")));
                }
            }
        }
        let mut seen_ids = std::collections::HashSet::new();
        let mut switches = Vec::with_capacity(spec.switches.len());
        for s in &spec.switches {
            if !seen_ids.insert(s.id) {
                return Err(err(format!("duplicate switch id {}", s.id)));
            }
            let mut slots = [0; 3];
            for (k, h) in [s.single, s.double[0], s.double[1]].into_iter().enumerate() {
                slots[k] = *half_index
                    .get(&h)
                    .ok_or_else(|| err(format!("switch {} names unknown half-edge {h}", s.id)))?;
            }
            switches.push(slots);
        }
        let param = |id: usize| {
            branch_index
                .get(&id)
                .copied()
                .ok_or_else(|| err(format!("parameter on unknown branch {id}")))
        };
        let parameter_branches = [
            param(spec.parameters.x)?,
            param(spec.parameters.y)?,
            param(spec.parameters.z)?,
        ];
        validate_topology(label, &switches)?;
        let coefficients = solve_weights(&switches, parameter_branches, e).map_err(err)?;
        if spec.role == Role::Start {
            if let Some(b) = coefficients
                .iter()
                .position(|c| c.iter().any(|x| x.is_negative()))
            {
                return Err(err(format!("branch {b} has a negative coefficient")));
            }
        }
        let got = surface_type(&switches);
        let want = expected_surface_type(spec.surface);
        if got != want {
            return Err(err(format!(
                "ribbon graph has genus {} with {} faces, expected genus {} with {} for the {}",
                got.0, got.1, want.0, want.1, spec.surface
            )));
        }
        Ok(TrackEncoding {
            label: label.clone(),
            surface: spec.surface,
            role: spec.role,
            switches,
            coefficients,
            parameter_branches,
        })
    }

    /// Places `(x, y, z)` and fills in the remaining weights.
    pub fn build(&self, xyz: &[QuadExt; 3]) -> Result<RibbonTrack> {
        if let Some(k) = xyz.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight {
                label: self.label.clone(),
                branch: self.parameter_branches[k],
                weight: xyz[k].to_string(),
            });
        }
        RibbonTrack::new(
            self.label.clone(),
            self.switches.clone(),
            evaluate(&self.coefficients, xyz),
        )
    }

    /// Weight of `branch` as text, e.g. `x+y`.
    pub fn describe(&self, branch: usize) -> String {
        let mut out = String::new();
        for (c, v) in self.coefficients[branch].iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = if c.abs().is_one() {
                String::new()
            } else {
                c.abs().to_string()
            };
            out.push_str(&format!("{sign}{mag}{v}"));
        }
        out
    }
}

fn evaluate(coefficients: &[[BigInt; 3]], xyz: &[QuadExt; 3]) -> Vec<QuadExt> {
    coefficients
        .iter()
        .map(|c| (0..3).fold(QuadExt::zero(), |acc, k| acc + xyz[k].mul_int(&c[k])))
        .collect()
}

/// Solves switch conditions plus `w[x] = X, w[y] = Y, w[z] = Z` by exact elimination.
fn solve_weights(
    switches: &[[usize; 3]],
    params: [usize; 3],
    branches: usize,
) -> std::result::Result<Vec<[BigInt; 3]>, String> {
    let cols = branches + 3;
    let zero = BigRational::zero;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for [a, l, r] in switches {
        let mut row = vec![zero(); cols];
        row[a / 2] += BigRational::one();
        row[l / 2] -= BigRational::one();
        row[r / 2] -= BigRational::one();
        rows.push(row);
    }
    for (k, &b) in params.iter().enumerate() {
        let mut row = vec![zero(); cols];
        row[b] = BigRational::one();
        row[branches + k] = BigRational::one();
        rows.push(row);
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..branches {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(format!(
                "branch {col} weight is not determined by the switch conditions"
            ));
        };
        rows.swap(pivot_row, r);
        let p = rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x /= p.clone();
        }
        let pr = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..]
        .iter()
        .any(|r| r[branches..].iter().any(|x| !x.is_zero()))
    {
        return Err("switch conditions are inconsistent with the parameter placement".into());
    }
    pivots
        .into_iter()
        .enumerate()
        .map(|(b, r)| {
            let mut c: [BigInt; 3] = Default::default();
            for k in 0..3 {
                let v = &rows[r][branches + k];
                if !v.is_integer() {
                    return Err(format!("branch {b} has non-integer coefficient {v}"));
                }
                c[k] = v.to_integer();
            }
            Ok(c)
        })
        .collect()
}

/// All encodings of a track file, looked up by label.
#[derive(Clone, Debug)]
pub struct TrackLibrary {
    encodings: Vec<TrackEncoding>,
}

impl TrackLibrary {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TrackFile = serde_json::from_str(text)
            .map_err(|e| Error::EncodingError(format!("bad track file: {e}")))?;
        if file.format != FORMAT || file.version != VERSION {
            return Err(Error::EncodingError(format!(
                "unsupported track file {} v{} (want {FORMAT} v{VERSION})",
                file.format, file.version
            )));
        }
        let encodings = file
            .tracks
            .iter()
            .map(TrackEncoding::compile)
            .collect::<Result<Vec<_>>>()?;
        Ok(TrackLibrary { encodings })
    }

    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled track file is valid")
    }

    pub fn builtin_json() -> &'static str {
        BUILTIN
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The file named by `AGOL_TRACKS` if set, else the bundled encodings.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(ENV_VAR) {
            Some(p) if !p.is_empty() => Self::from_path(p),
            _ => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, label: &str) -> Result<&TrackEncoding> {
        self.encodings
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::EncodingError(format!("no track labelled {label:?}")))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.encodings.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn start(&self, surface: Surface) -> Result<&TrackEncoding> {
        let enc = self.get(surface.start_label())?;
        if enc.surface != surface || enc.role != Role::Start {
            return Err(Error::EncodingError(format!(
                "track {} is not a {surface} start track",
                enc.label
            )));
        }
        Ok(enc)
    }

    pub fn build_start(&self, surface: Surface, xyz: &[QuadExt; 3]) -> Result<RibbonTrack> {
        self.start(surface)?.build(xyz)
    }
}

/// The start track `𝔟` (torus) or `𝔟_L` (sphere) from the bundled encodings.
pub fn build_start_track(surface: Surface, xyz: &[QuadExt; 3]) -> Result<RibbonTrack> {
    TrackLibrary::builtin().build_start(surface, xyz)
}
