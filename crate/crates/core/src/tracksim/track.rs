use std::cmp::Ordering;

use serde::Serialize;

use crate::cycles::{Step, Surface};
use crate::error::{Error, Result};
use crate::quad::QuadExt;

pub const SINGLE: usize = 0;
pub const LEFT: usize = 1;
pub const RIGHT: usize = 2;

/// Next slot in counterclockwise order around a switch: single, right, left.
fn ccw(slot: usize) -> usize {
    match slot {
        SINGLE => RIGHT,
        RIGHT => LEFT,
        _ => SINGLE,
    }
}

/// Half-edges `2b` and `2b + 1` are the two ends of branch `b`.
pub fn partner(h: usize) -> usize {
    h ^ 1
}

/// A complementary region: number of sides and number of cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub sides: usize,
    pub cusps: usize,
}

/// Boundary walks of the ribbon structure.
///
/// From an outgoing half-edge, cross its branch and turn to the next slot
/// counterclockwise. Turning from a right slot to a left slot is a cusp.
pub fn faces_of(switches: &[[usize; 3]]) -> Vec<Face> {
    let n = switches.len() * 3;
    let mut loc = vec![(0, 0); n];
    for (s, slots) in switches.iter().enumerate() {
        for (k, &h) in slots.iter().enumerate() {
            loc[h] = (s, k);
        }
    }
    let mut seen = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Face { sides: 0, cusps: 0 };
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            face.sides += 1;
            let (s, k) = loc[partner(h)];
            if k == RIGHT {
                face.cusps += 1;
            }
            h = switches[s][ccw(k)];
        }
        faces.push(face);
    }
    faces.sort();
    faces
}

/// `(genus, punctures)` of the surface carried by the ribbon graph, one puncture per face.
pub fn surface_type(switches: &[[usize; 3]]) -> (i64, usize) {
    let v = switches.len() as i64;
    let e = v * 3 / 2;
    let f = faces_of(switches).len();
    let chi = v - e + f as i64;
    ((2 - chi) / 2, f)
}

pub fn expected_surface_type(surface: Surface) -> (i64, usize) {
    match surface {
        Surface::Torus => (1, 2),
        Surface::Sphere => (0, 5),
    }
}

/// Checks that every half-edge `0..3V` fills exactly one slot and that the graph
/// is connected; returns the `(switch, slot)` of each half-edge.
pub fn validate_topology(label: &str, switches: &[[usize; 3]]) -> Result<Vec<(usize, usize)>> {
    let n = switches.len() * 3;
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::EncodingError(format!(
            "{label}: {} trivalent switches cannot close up",
            switches.len()
        )));
    }
    let mut loc = vec![None; n];
    for (s, slots) in switches.iter().enumerate() {
        for (k, &h) in slots.iter().enumerate() {
            match loc.get_mut(h) {
                Some(slot @ None) => *slot = Some((s, k)),
                _ => {
                    return Err(Error::EncodingError(format!(
                        "{label}: half-edge {h} is out of range or used twice"
                    )))
                }
            }
        }
    }
    let loc: Vec<(usize, usize)> = loc
        .into_iter()
        .map(|x| x.expect("all slots filled"))
        .collect();
    let mut seen = vec![false; switches.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for &h in &switches[s] {
            let (t, _) = loc[partner(h)];
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    if seen.contains(&false) {
        return Err(Error::EncodingError(format!(
            "{label}: graph is disconnected"
        )));
    }
    Ok(loc)
}

/// A measured trivalent train track stored as a ribbon graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonTrack {
    label: String,
    /// half-edges in slots `[single, left, right]`
    switches: Vec<[usize; 3]>,
    weights: Vec<QuadExt>,
    #[serde(skip)]
    loc: Vec<(usize, usize)>,
}

impl RibbonTrack {
    pub fn new(
        label: impl Into<String>,
        switches: Vec<[usize; 3]>,
        weights: Vec<QuadExt>,
    ) -> Result<Self> {
        let label = label.into();
        let loc = validate_topology(&label, &switches)?;
        if weights.len() * 2 != loc.len() {
            return Err(Error::EncodingError(format!(
                "{label}: {} branches need {} weights, got {}",
                loc.len() / 2,
                loc.len() / 2,
                weights.len()
            )));
        }
        if let Some((b, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::NonPositiveWeight {
                label,
                branch: b,
                weight: w.to_string(),
            });
        }
        let t = RibbonTrack {
            label,
            switches,
            weights,
            loc,
        };
        t.check_switch_conditions()?;
        Ok(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn switches(&self) -> &[[usize; 3]] {
        &self.switches
    }

    pub fn weights(&self) -> &[QuadExt] {
        &self.weights
    }

    pub fn weight(&self, branch: usize) -> &QuadExt {
        &self.weights[branch]
    }

    pub fn branch_count(&self) -> usize {
        self.weights.len()
    }

    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    /// `(switch, slot)` of a half-edge.
    pub fn location(&self, h: usize) -> (usize, usize) {
        self.loc[h]
    }

    fn half_weight(&self, h: usize) -> &QuadExt {
        &self.weights[h / 2]
    }

    pub fn check_switch_conditions(&self) -> Result<()> {
        for (s, [a, l, r]) in self.switches.iter().enumerate() {
            if *self.half_weight(*a) != self.half_weight(*l) + self.half_weight(*r) {
                return Err(Error::SwitchCondition(s));
            }
        }
        Ok(())
    }

    pub fn faces(&self) -> Vec<Face> {
        faces_of(&self.switches)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.switch_count() as i64 - self.branch_count() as i64 + self.faces().len() as i64
    }

    pub fn surface_type(&self) -> (i64, usize) {
        surface_type(&self.switches)
    }

    /// Branches whose both ends sit in single slots.
    pub fn large_branches(&self) -> Vec<usize> {
        (0..self.branch_count())
            .filter(|&b| self.loc[2 * b].1 == SINGLE && self.loc[2 * b + 1].1 == SINGLE)
            .collect()
    }

    /// Splits one large branch in place.
    ///
    /// With `u` and `v` the ends of `e`, the four flanking corners are
    /// `A = u.right`, `B = u.left`, `C = v.left`, `D = v.right`.
    /// `C > A` gives a left split, `A > C` a right split.
    pub fn split_branch(&mut self, e: usize) -> Result<Step> {
        let (h0, h1) = (2 * e, 2 * e + 1);
        let ((u, ku), (v, kv)) = (self.loc[h0], self.loc[h1]);
        assert!(ku == SINGLE && kv == SINGLE, "branch {e} is not large");
        let [_, hb, ha] = self.switches[u];
        let [_, hc, hd] = self.switches[v];
        let (wa, wc) = (self.half_weight(ha).clone(), self.half_weight(hc).clone());
        let (step, nu, nv, we) = match wc.try_cmp(&wa)? {
            Ordering::Greater => (Step::L, [hc, h0, ha], [hb, h1, hd], &wc - &wa),
            Ordering::Less => (Step::R, [ha, hc, h0], [hd, hb, h1], &wa - &wc),
            Ordering::Equal => return Err(Error::DegenerateSplit(e)),
        };
        self.switches[u] = nu;
        self.switches[v] = nv;
        for s in [u, v] {
            for k in 0..3 {
                self.loc[self.switches[s][k]] = (s, k);
            }
        }
        self.weights[e] = we;
        // the two rebuilt switches carry the standard split weights
        for s in [u, v] {
            let [a, l, r] = self.switches[s];
            assert_eq!(
                *self.half_weight(a),
                self.half_weight(l) + self.half_weight(r),
                "weight not conserved splitting branch {e}"
            );
        }
        Ok(step)
    }

    /// Splits every large branch of maximal weight.
    pub fn maximal_split(&self) -> Result<(RibbonTrack, StepRecord)> {
        let large = self.large_branches();
        let mut max: Option<&QuadExt> = None;
        for &b in &large {
            let w = &self.weights[b];
            if max.is_none_or(|m| {
                w.try_cmp(m)
                    .map(|o| o == Ordering::Greater)
                    .unwrap_or(false)
            }) {
                max = Some(w);
            }
        }
        let max = max.ok_or(Error::NoLargeBranch)?.clone();
        let argmax: Vec<usize> = large
            .into_iter()
            .filter(|&b| self.weights[b] == max)
            .collect();
        let mut next = self.clone();
        let mut kinds = Vec::with_capacity(argmax.len());
        for &b in &argmax {
            kinds.push(next.split_branch(b)?);
        }
        next.check_switch_conditions()?;
        let kind = if kinds.iter().all(|&k| k == Step::L) {
            Step::L
        } else if kinds.iter().all(|&k| k == Step::R) {
            Step::R
        } else {
            Step::M
        };
        let record = StepRecord {
            step: 0,
            kind,
            splitting_number: argmax.len(),
            max_weight: max,
            branches: argmax,
        };
        Ok((next, record))
    }

    /// The same ribbon graph with weights moved along a half-edge automorphism.
    pub fn permuted(&self, half_edge_map: &[usize]) -> RibbonTrack {
        let mut weights = self.weights.clone();
        for b in 0..self.branch_count() {
            weights[half_edge_map[2 * b] / 2] = self.weights[b].clone();
        }
        let mut t = self.clone();
        t.weights = weights;
        t
    }

    pub fn scaled(&self, c: &QuadExt) -> RibbonTrack {
        let mut t = self.clone();
        t.weights = self.weights.iter().map(|w| w * c).collect();
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(rename = "type")]
    pub kind: Step,
    pub splitting_number: usize,
    pub max_weight: QuadExt,
    pub branches: Vec<usize>,
}
