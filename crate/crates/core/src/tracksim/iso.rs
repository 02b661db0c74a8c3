//! Orientation-preserving ribbon-graph isomorphisms, optionally up to rescaling weights.

use super::track::{partner, RibbonTrack};
use crate::quad::QuadExt;

/// Half-edge map `t1 → t2` extending `switch 0 ↦ target` slot by slot, if one exists.
fn extend_from(t1: &RibbonTrack, t2: &RibbonTrack, target: usize) -> Option<Vec<usize>> {
    let n = t1.switch_count();
    let mut sw = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut half = vec![usize::MAX; n * 3];
    sw[0] = target;
    used[target] = true;
    let mut stack = vec![0];
    while let Some(s) = stack.pop() {
        let s2 = sw[s];
        for k in 0..3 {
            let h = t1.switches()[s][k];
            let h2 = t2.switches()[s2][k];
            half[h] = h2;
            let (a, ka) = t1.location(partner(h));
            let (b, kb) = t2.location(partner(h2));
            if ka != kb {
                return None;
            }
            if sw[a] == usize::MAX {
                if used[b] {
                    return None;
                }
                sw[a] = b;
                used[b] = true;
                stack.push(a);
            } else if sw[a] != b {
                return None;
            }
        }
    }
    Some(half)
}

/// All slot-preserving half-edge bijections `t1 → t2`, ignoring weights.
pub fn isomorphisms(t1: &RibbonTrack, t2: &RibbonTrack) -> Vec<Vec<usize>> {
    if t1.switch_count() != t2.switch_count() {
        return Vec::new();
    }
    (0..t2.switch_count())
        .filter_map(|j| extend_from(t1, t2, j))
        .collect()
}

pub fn automorphisms(t: &RibbonTrack) -> Vec<Vec<usize>> {
    isomorphisms(t, t)
}

/// Common ratio `w2(φ(b)) / w1(b)` if `map` carries `t1`'s weights to a multiple of `t2`'s.
pub fn scale_under(t1: &RibbonTrack, t2: &RibbonTrack, map: &[usize]) -> Option<QuadExt> {
    let w1 = t1.weights();
    let w2 = |b: usize| t2.weight(map[2 * b] / 2);
    let (a0, b0) = (&w1[0], w2(0));
    // cross-multiplied to avoid a division per branch
    for (b, w) in w1.iter().enumerate().skip(1) {
        if w * b0 != w2(b) * a0 {
            return None;
        }
    }
    Some(b0 / a0)
}

/// Scale `c` such that some isomorphism carries `t1` to `(t2` with weights `c·μ1)`.
pub fn iso_measured(t1: &RibbonTrack, t2: &RibbonTrack) -> Option<QuadExt> {
    isomorphisms(t1, t2)
        .into_iter()
        .find_map(|m| scale_under(t1, t2, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::Surface;
    use crate::tracksim::encoding::{build_start_track, TrackLibrary};

    fn int3(v: [i64; 3]) -> [QuadExt; 3] {
        v.map(QuadExt::from_int)
    }

    #[test]
    fn identity_and_scaling() {
        let t = build_start_track(Surface::Sphere, &int3([2, 3, 5])).unwrap();
        assert_eq!(iso_measured(&t, &t), Some(QuadExt::one()));
        let two = QuadExt::from_int(2);
        assert_eq!(iso_measured(&t, &t.scaled(&two)), Some(two));
        let other = build_start_track(Surface::Sphere, &int3([2, 4, 5])).unwrap();
        assert_eq!(iso_measured(&t, &other), None);
        let torus = build_start_track(Surface::Torus, &int3([2, 3, 5])).unwrap();
        assert_eq!(iso_measured(&t, &torus), None);
    }

    #[test]
    fn symmetries_of_start_tracks() {
        // the torus track has the rotation swapping its two large branches
        let t = build_start_track(Surface::Torus, &int3([1, 2, 3])).unwrap();
        assert!(automorphisms(&t).len() >= 2);
        // on the sphere track some symmetry exchanges the x and z branches
        let s = build_start_track(Surface::Sphere, &int3([2, 3, 5])).unwrap();
        let flipped = build_start_track(Surface::Sphere, &int3([5, 3, 2])).unwrap();
        assert_eq!(iso_measured(&s, &flipped), Some(QuadExt::one()));
    }

    #[test]
    fn mirror_tracks_differ() {
        let lib = TrackLibrary::builtin();
        let l = lib.get("b_L").unwrap().build(&int3([1, 1, 1])).unwrap();
        let r = lib.get("b_R").unwrap().build(&int3([1, 1, 1])).unwrap();
        assert!(isomorphisms(&l, &r).is_empty() || iso_measured(&l, &r).is_none());
    }
}
