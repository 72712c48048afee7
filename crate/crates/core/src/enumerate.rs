//! Exhaustive enumeration of curve classes by taut position size.
//!
//! A reduced drawing with no same-side chords is determined by its vector of
//! chord counts per side pair: non-crossing forces the endpoint order along
//! every side (ends sort by where their partners sit around the polygon, and
//! parallel families nest). Enumerating all balanced vectors supported on
//! pairwise non-interleaving side pairs therefore reaches every isotopy
//! class whose minimal skeleton crossing number is within the cap.

use std::collections::BTreeMap;

use crate::curve::CurveClass;
use crate::drawing::Drawing;
use crate::exec::Exec;
use crate::surface::SurfaceSpec;

/// Side pairs {i, j}, i < j, as chord types; same-side chords never occur in
/// reduced drawings.
fn chord_types(sides: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sides {
        for j in i + 1..sides {
            out.push((i, j));
        }
    }
    out
}

/// Two side pairs force a crossing exactly when they strictly interleave.
fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize| x > a.0 && x < a.1;
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 && (inside(b.0) != inside(b.1))
}

/// All balanced non-crossing chord count vectors with 1..=cap chords.
fn coordinate_vectors(surface: SurfaceSpec, cap: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let sides = surface.sides();
    let types = chord_types(sides);
    let nt = types.len();
    let compat: Vec<Vec<bool>> = (0..nt)
        .map(|i| (0..nt).map(|j| !interleave(types[i], types[j])).collect())
        .collect();
    // Side pairing for the balance condition.
    let partner: Vec<usize> = (0..sides)
        .map(|s| {
            let (e, r) = surface.edge_of_side(s);
            surface.side_of_edge(e, 1 - r)
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new(); // (type index, count)
    let mut side_count = vec![0i64; sides];

    fn balanced(side_count: &[i64], partner: &[usize]) -> bool {
        side_count
            .iter()
            .enumerate()
            .all(|(s, &c)| c == side_count[partner[s]])
    }

    fn imbalance(side_count: &[i64], partner: &[usize]) -> i64 {
        let mut total = 0;
        for s in 0..side_count.len() {
            if s < partner[s] {
                total += (side_count[s] - side_count[partner[s]]).abs();
            }
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        t: usize,
        remaining: usize,
        types: &[(usize, usize)],
        compat: &[Vec<bool>],
        partner: &[usize],
        chosen: &mut Vec<(usize, usize)>,
        side_count: &mut Vec<i64>,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        if !chosen.is_empty() && balanced(side_count, partner) {
            out.push(
                chosen
                    .iter()
                    .map(|&(ti, c)| (types[ti].0, types[ti].1, c))
                    .collect(),
            );
        }
        if t == types.len() || remaining == 0 {
            return;
        }
        // Every chord fixes one unit of imbalance at most twice over.
        if imbalance(side_count, partner) > 2 * remaining as i64 {
            return;
        }
        // Skip this type.
        rec(
            t + 1,
            remaining,
            types,
            compat,
            partner,
            chosen,
            side_count,
            out,
        );
        // Use this type, if compatible with everything chosen.
        if !chosen.iter().all(|&(ti, _)| compat[ti][t]) {
            return;
        }
        for c in 1..=remaining {
            chosen.push((t, c));
            side_count[types[t].0] += c as i64;
            side_count[types[t].1] += c as i64;
            rec(
                t + 1,
                remaining - c,
                types,
                compat,
                partner,
                chosen,
                side_count,
                out,
            );
            side_count[types[t].0] -= c as i64;
            side_count[types[t].1] -= c as i64;
            chosen.pop();
        }
    }

    rec(
        0,
        cap,
        &types,
        &compat,
        &partner,
        &mut chosen,
        &mut side_count,
        &mut out,
    );
    out
}

/// Build the forced drawing of a balanced non-crossing vector; None when the
/// glued components number differently than one.
fn drawing_of_vector(surface: SurfaceSpec, vector: &[(usize, usize, usize)]) -> Option<Drawing> {
    let sides = surface.sides();
    // Chord list: (side a, side b) repeated with multiplicity, with an id.
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for &(a, b, c) in vector {
        for _ in 0..c {
            chords.push((a, b));
        }
    }
    // Ends on each side, sorted by the non-crossing order: the end of a
    // chord to side j sorts by the counterclockwise distance to j, farther
    // first; parallel copies nest (increasing copy index one way, decreasing
    // the other).
    let mut ends: Vec<Vec<(usize, u8)>> = vec![Vec::new(); sides]; // (chord id, which end)
    for s in 0..sides {
        let mut here: Vec<(usize, usize, usize, u8)> = Vec::new(); // (ccw dist, copy rank, id, end)
        let mut copy_rank: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (id, &(a, b)) in chords.iter().enumerate() {
            if a != s && b != s {
                continue;
            }
            let (other, end) = if a == s { (b, 0u8) } else { (a, 1u8) };
            let dist = (other + sides - s) % sides; // ccw distance, 1..sides-1
            let rank = copy_rank.entry((a, b)).or_insert(0);
            here.push((sides - dist, *rank, id, end));
            *rank += 1;
        }
        // Farther other-side first along the ccw side; nested parallels:
        // ranks ascend on the side closer to the gap... consistency of the
        // two ends of a parallel family is fixed by reversing rank on one.
        here.sort();
        ends[s] = here.into_iter().map(|(_, _, id, e)| (id, e)).collect();
    }
    // Parallel family nesting: the order above sorts copies by rank on both
    // sides; reverse the rank order on the second end so families nest.
    for s in 0..sides {
        let list = std::mem::take(&mut ends[s]);
        let mut grouped: Vec<(usize, u8)> = Vec::with_capacity(list.len());
        let mut i = 0;
        while i < list.len() {
            let mut j = i;
            let ty = |k: usize| {
                let (id, _) = list[k];
                chords[id]
            };
            while j < list.len() && ty(j) == ty(i) && list[j].1 == list[i].1 {
                j += 1;
            }
            let mut fam: Vec<(usize, u8)> = list[i..j].to_vec();
            // Reverse the family on the lexicographically larger side so the
            // two ends pair up without crossings.
            if fam[0].1 == 1 {
                fam.reverse();
            }
            grouped.extend(fam);
            i = j;
        }
        ends[s] = grouped;
    }

    // Events: points on primary sides in ccw order; the partner side's ccw
    // list reversed is the same set of surface points.
    let mut dr = Drawing::new(surface);
    // end -> (event, rep)
    let mut attach: BTreeMap<(usize, u8), (usize, u8)> = BTreeMap::new();
    for s in 0..sides {
        let (edge, rep) = surface.edge_of_side(s);
        if rep != 0 {
            continue;
        }
        let n = ends[s].len();
        let partner_side = surface.side_of_edge(edge, 1);
        if ends[partner_side].len() != n {
            return None;
        }
        for i in 0..n {
            let ev = dr.add_event(edge, i, 0);
            attach.insert(ends[s][i], (ev, 0));
            // ccw position i on primary = ccw position n-1-i on partner.
            attach.insert(ends[partner_side][n - 1 - i], (ev, 1));
        }
    }
    for (id, _) in chords.iter().enumerate() {
        let a = attach.get(&(id, 0))?;
        let b = attach.get(&(id, 1))?;
        if a == b {
            return None;
        }
        dr.set_chord(*a, *b);
    }
    dr.validate().ok()?;
    if dr.tag_components(0).len() != 1 {
        return None;
    }
    dr.validate_embedded(0).ok()?;
    Some(dr)
}

/// Enumerate every essential curve class whose minimal crossing number with
/// the 1-skeleton is at most `cap`, deduplicated by canonical key, keeping
/// the smallest realization found. Optionally post-filter by a predicate.
pub fn enumerate_curves(
    surface: SurfaceSpec,
    cap: usize,
    exec: Exec,
    keep: &(dyn Fn(&CurveClass) -> bool + Sync),
) -> Vec<CurveClass> {
    let vectors = coordinate_vectors(surface, cap);
    let classes: Vec<Option<CurveClass>> = exec.map(vectors, |v| {
        let dr = drawing_of_vector(surface, &v)?;
        let c = CurveClass::from_drawing_tag(&dr, 0).ok()?;
        if c.is_essential() && keep(&c) {
            Some(c)
        } else {
            None
        }
    });
    let mut best: BTreeMap<Vec<i32>, CurveClass> = BTreeMap::new();
    for c in classes.into_iter().flatten() {
        match best.get(c.key()) {
            Some(old) if old.complexity() <= c.complexity() => {}
            _ => {
                best.insert(c.key().to_vec(), c);
            }
        }
    }
    best.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{geometric_intersection, neighborhood_boundary};

    fn s2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    #[test]
    fn small_cap_contains_generators() {
        let curves = enumerate_curves(s2(), 2, Exec::Sequential, &|_| true);
        for edge in 0..4 {
            let g = CurveClass::generator(s2(), edge);
            assert!(curves.contains(&g), "missing generator {edge}");
        }
        // All enumerated classes are essential with complexity within cap.
        for c in &curves {
            assert!(c.is_essential());
            assert!(c.complexity() <= 2);
        }
    }

    #[test]
    fn cap_four_contains_handle_boundary() {
        let a1 = CurveClass::generator(s2(), 0);
        let b1 = CurveClass::generator(s2(), 1);
        let l0 = neighborhood_boundary(&[&a1, &b1]).unwrap().remove(0);
        assert!(l0.complexity() <= 4, "separating curve complexity");
        let curves = enumerate_curves(s2(), 4, Exec::Sequential, &|_| true);
        assert!(curves.contains(&l0));
    }

    #[test]
    fn enumeration_monotone_in_cap() {
        let small = enumerate_curves(s2(), 2, Exec::Sequential, &|_| true);
        let large = enumerate_curves(s2(), 3, Exec::Sequential, &|_| true);
        for c in &small {
            assert!(large.contains(c));
        }
        assert!(large.len() > small.len());
    }

    #[test]
    fn enumerated_pairs_have_consistent_intersections() {
        let curves = enumerate_curves(s2(), 2, Exec::Sequential, &|_| true);
        for a in curves.iter().take(6) {
            for b in curves.iter().take(6) {
                let ab = geometric_intersection(a, b).unwrap();
                let ba = geometric_intersection(b, a).unwrap();
                assert_eq!(ab, ba);
            }
        }
    }
}
