//! Isotopy classes of curves: canonical forms, intersection numbers, twists,
//! multicurves and cutting.
//!
//! A `CurveClass` stores a reduced drawing together with the canonical
//! conjugacy key of its crossing word; two classes are equal exactly when the
//! curves are isotopic. Intersection numbers are computed by overlaying two
//! drawings and removing bigons until the pair is taut. Dehn twists reroute
//! every strand through an annular neighborhood of the twisting curve using
//! exact transverse coordinates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{reduce_against, Arrangement};
use crate::drawing::{CurveRecord, Drawing, DrawingFile, EventId, Tag};
use crate::surface::SurfaceSpec;
use crate::word;
use crate::{structural, usage, Error, Result};

#[derive(Clone, Debug)]
pub struct CurveClass {
    surface: SurfaceSpec,
    drawing: Drawing,
    key: Vec<i32>,
    essential: bool,
    separating: bool,
}

impl PartialEq for CurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface && self.key == other.key
    }
}
impl Eq for CurveClass {}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.surface.genus(), &self.key).cmp(&(other.surface.genus(), &other.key))
    }
}
impl std::hash::Hash for CurveClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.surface.genus().hash(state);
        self.key.hash(state);
    }
}

impl CurveClass {
    /// Build from one tag of a joint drawing; the position is slide-reduced
    /// and all invariants are recomputed from scratch.
    pub fn from_drawing_tag(dr: &Drawing, tag: Tag) -> Result<CurveClass> {
        let mut d = dr.extract_tag(tag, 0);
        d.reduce_slides();
        d.validate()?;
        d.validate_embedded(0)?;
        let comps = d.tag_components(0);
        if comps.is_empty() {
            // Collapsed to a trivial loop: representable but inessential.
            let empty = Drawing::new(dr.surface());
            return Ok(CurveClass {
                surface: dr.surface(),
                drawing: empty,
                key: Vec::new(),
                essential: false,
                separating: true,
            });
        }
        if comps.len() != 1 {
            return Err(structural(format!(
                "tag {tag} has {} components, expected one curve",
                comps.len()
            )));
        }
        let w = d.trace_word(&comps[0]);
        let relator = dr.surface().relator();
        let key = word::conjugacy_key(&w, &relator, true);
        let essential = !key.is_empty();
        let sums = word::exponent_sums(&w, dr.surface().edge_classes());
        let separating = sums.iter().all(|s| s % 2 == 0);
        Ok(CurveClass {
            surface: dr.surface(),
            drawing: d,
            key,
            essential,
            separating,
        })
    }

    /// The curve crossing a single edge class once (the dual curve of that
    /// handle generator).
    pub fn generator(surface: SurfaceSpec, edge: usize) -> CurveClass {
        let mut d = Drawing::new(surface);
        let e = d.add_event(edge, 0, 0);
        d.set_chord((e, 0), (e, 1));
        CurveClass::from_drawing_tag(&d, 0).expect("generator curve is valid")
    }

    /// Canonicalize raw crossing data. Structural problems (bad edges,
    /// broken ranks, self-crossing chords) are rejected; inessential input
    /// is accepted and flagged.
    pub fn canonicalize(surface: SurfaceSpec, record: &CurveRecord) -> Result<CurveClass> {
        let file = DrawingFile {
            surface,
            curves: vec![record.clone()],
        };
        let (dr, _) = Drawing::from_file(&file)?;
        CurveClass::from_drawing_tag(&dr, 0)
    }

    pub fn to_record(&self, name: &str) -> CurveRecord {
        let mut names = BTreeMap::new();
        names.insert(0, name.to_string());
        let f = self.drawing.to_file(&names);
        f.curves.into_iter().next().unwrap_or(CurveRecord {
            name: name.to_string(),
            crossings: Vec::new(),
        })
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }
    pub fn drawing(&self) -> &Drawing {
        &self.drawing
    }
    pub fn key(&self) -> &[i32] {
        &self.key
    }
    pub fn is_essential(&self) -> bool {
        self.essential
    }
    pub fn is_separating(&self) -> bool {
        self.separating
    }
    /// Crossing count of the stored reduced position with the 1-skeleton (an
    /// upper bound for the minimal crossing number of the class).
    pub fn complexity(&self) -> usize {
        self.drawing.event_count()
    }
    pub fn word(&self) -> Vec<i32> {
        let comps = self.drawing.tag_components(0);
        if comps.is_empty() {
            Vec::new()
        } else {
            self.drawing.trace_word(&comps[0])
        }
    }

    pub(crate) fn check_same_surface(&self, other: &CurveClass) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch(
                self.surface.genus(),
                other.surface.genus(),
            ));
        }
        Ok(())
    }
}

/// Classification flags (essential and separating, both exact).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub essential: bool,
    pub separating: bool,
}

pub fn classify(c: &CurveClass) -> Classification {
    Classification {
        essential: c.essential,
        separating: c.separating,
    }
}

/// Overlay several curves into one joint drawing with tags 0..n.
pub fn overlay(curves: &[&CurveClass]) -> Drawing {
    let mut dr = curves[0].drawing.clone();
    for (i, c) in curves.iter().enumerate().skip(1) {
        dr.absorb(&c.drawing, i as Tag);
    }
    dr
}

/// Overlay two curves and put the pair in minimal position.
pub fn overlay_taut(a: &CurveClass, b: &CurveClass) -> Result<Drawing> {
    a.check_same_surface(b)?;
    let mut dr = overlay(&[a, b]);
    reduce_against(&mut dr, 1, &|t| t == 0, false);
    Ok(dr)
}

/// Geometric intersection number (minimum over isotopy).
pub fn geometric_intersection(a: &CurveClass, b: &CurveClass) -> Result<usize> {
    a.check_same_surface(b)?;
    if a == b || !a.essential || !b.essential {
        // A curve is disjoint from a parallel copy; trivial loops shrink off.
        return Ok(0);
    }
    let dr = overlay_taut(a, b)?;
    let arr = Arrangement::build(&dr);
    Ok(arr.crossing_count(0, 1))
}

/// Algebraic intersection number (sign depends on the stored orientations).
pub fn algebraic_intersection(a: &CurveClass, b: &CurveClass) -> Result<i64> {
    a.check_same_surface(b)?;
    let dr = overlay(&[a, b]);
    let arr = Arrangement::build(&dr);
    Ok(arr.signed_crossing_sum(0, 1))
}

/// Exact fraction for the twist coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    n: i128,
    d: i128,
}

impl Frac {
    fn new(n: i128, d: i128) -> Frac {
        debug_assert!(d > 0);
        Frac { n, d }
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n * other.d).cmp(&(other.n * self.d))
    }
}

/// The n-fold Dehn twist of `c` about `about`. The twisted curve is built by
/// rerouting each strand of `c` through the annular neighborhood of `about`
/// along sheared lines; strand order at every skeleton crossing is resolved
/// by exact transverse coordinates.
pub fn dehn_twist(c: &CurveClass, about: &CurveClass, n: i64) -> Result<CurveClass> {
    c.check_same_surface(about)?;
    if n == 0 || !about.essential || !c.essential {
        return Ok(c.clone());
    }
    let mut dr = overlay_taut(c, about)?;

    // Planning pass: everything needed from the arrangement, owned.
    struct Plan {
        c_cycle: Vec<(EventId, i8)>,
        /// Crossings (by planning index) along the chord leaving each
        /// passage of c, in host order.
        c_chord_xs: Vec<Vec<usize>>,
        /// Spiral event descriptors per crossing, in traversal order:
        /// (host b-event, passage dir, transverse key).
        spirals: Vec<Vec<(EventId, i8, Frac)>>,
        /// Per b-event: cluster of (transverse key, crossing, seq index),
        /// sorted ascending by the key (ascending = toward b's left).
        clusters: BTreeMap<EventId, Vec<(Frac, usize, usize)>>,
        b_dir: BTreeMap<EventId, i8>,
    }

    let plan: Option<Plan> = {
        let arr = Arrangement::build(&dr);
        if arr.crossing_count(0, 1) == 0 {
            None
        } else {
            let b_comp = dr.tag_components(1);
            debug_assert_eq!(b_comp.len(), 1);
            let b_cycle = &b_comp[0];
            let len = b_cycle.len() as i128;
            let mut b_pos: BTreeMap<EventId, i128> = BTreeMap::new();
            let mut b_dir: BTreeMap<EventId, i8> = BTreeMap::new();
            for (i, p) in b_cycle.iter().enumerate() {
                b_pos.insert(p.event, i as i128);
                b_dir.insert(p.event, p.dir);
            }

            // Crossings of c with b, indexed for planning.
            let nn = n as i128;
            let mut xids: Vec<usize> = Vec::new();
            let mut t_of: Vec<Frac> = Vec::new();
            let mut side_of: Vec<i8> = Vec::new();
            for (xid, x) in arr.crossings.iter().enumerate() {
                let (c1, c2) = x.chords;
                let (cc, cb) = if arr.chords[c1].tag == 0 {
                    (c1, c2)
                } else {
                    (c2, c1)
                };
                if arr.chords[cc].tag != 0 || arr.chords[cb].tag != 1 {
                    continue;
                }
                let j = b_pos[&arr.chords[cb].ends.0 .0];
                let list = &arr.along[cb];
                let r = list.iter().position(|&y| y == xid).unwrap() as i128;
                let cnt = list.len() as i128;
                let t = Frac::new(j * (cnt + 1) + r + 1, cnt + 1);
                // c enters from b's left iff cross(dir_b, dir_c) < 0.
                let side = if arr.pair_cross_sign(cb, cc) < 0 { 1 } else { -1 };
                xids.push(xid);
                t_of.push(t);
                side_of.push(side);
            }
            let plan_index: BTreeMap<usize, usize> =
                xids.iter().enumerate().map(|(i, &x)| (x, i)).collect();

            // Spiral descriptors.
            let mut spirals: Vec<Vec<(EventId, i8, Frac)>> = Vec::new();
            let mut clusters: BTreeMap<EventId, Vec<(Frac, usize, usize)>> = BTreeMap::new();
            for pi in 0..xids.len() {
                let t = t_of[pi];
                let side = side_of[pi];
                let mut entries: Vec<(Frac, EventId, i8)> = Vec::new();
                for (&ev, &k) in &b_pos {
                    for p in -(nn.abs() + 1)..=(nn.abs() + 1) {
                        let theta = Frac::new((k + p * len) * t.d, t.d);
                        let lo = t;
                        let hi = Frac::new(t.n + nn * len * t.d, t.d);
                        let (lo, hi) = if nn > 0 { (lo, hi) } else { (hi, lo) };
                        if theta > lo && theta < hi {
                            let theta_increasing = (nn > 0) == (side < 0);
                            let dir = if theta_increasing {
                                b_dir[&ev]
                            } else {
                                -b_dir[&ev]
                            };
                            entries.push((theta, ev, dir));
                        }
                    }
                }
                debug_assert_eq!(entries.len() as i128, nn.abs() * len);
                let theta_increasing = (nn > 0) == (side < 0);
                entries.sort_by(|a, b| a.0.cmp(&b.0));
                if !theta_increasing {
                    entries.reverse();
                }
                let seq: Vec<(EventId, i8, Frac)> = entries
                    .into_iter()
                    .map(|(theta, ev, dir)| {
                        // Transverse key: monotone in (theta - t)/n.
                        let diff = theta.n - t.n;
                        let w = if nn > 0 {
                            Frac::new(diff, t.d)
                        } else {
                            Frac::new(-diff, t.d)
                        };
                        (ev, dir, w)
                    })
                    .collect();
                for (idx, &(ev, _, w)) in seq.iter().enumerate() {
                    clusters.entry(ev).or_default().push((w, pi, idx));
                }
                spirals.push(seq);
            }
            for cl in clusters.values_mut() {
                cl.sort();
            }

            // c traversal and the crossings along each of its chords.
            let c_comp = dr.tag_components(0);
            debug_assert_eq!(c_comp.len(), 1);
            let c_cycle: Vec<(EventId, i8)> =
                c_comp[0].iter().map(|p| (p.event, p.dir)).collect();
            let mut c_chord_xs = Vec::with_capacity(c_cycle.len());
            for &(e, d) in &c_cycle {
                let exit = (e, if d > 0 { 1u8 } else { 0u8 });
                let chord = arr.chord_of(exit);
                let xs: Vec<usize> = arr.along[chord]
                    .iter()
                    .filter_map(|x| plan_index.get(x).copied())
                    .collect();
                c_chord_xs.push(xs);
            }
            Some(Plan {
                c_cycle,
                c_chord_xs,
                spirals,
                clusters,
                b_dir,
            })
        }
    };

    let Some(plan) = plan else {
        return CurveClass::from_drawing_tag(&dr, 0);
    };

    // Materialize the spiral events and rebuild every edge order. The
    // transverse key ascends toward b's left, which is the ascending edge
    // index side exactly when b crosses the edge with dir +1; the host event
    // sits at the key's zero slot.
    let mut new_ids: BTreeMap<(usize, usize), EventId> = BTreeMap::new();
    for edge in 0..dr.surface().edge_classes() {
        let old = dr.edge_order(edge).to_vec();
        let mut rebuilt: Vec<EventId> = Vec::new();
        for &ev in &old {
            match plan.clusters.get(&ev) {
                None => rebuilt.push(ev),
                Some(cl) => {
                    let d = plan.b_dir[&ev];
                    let mut ordered: Vec<(Frac, EventId)> = Vec::with_capacity(cl.len());
                    for &(w, pi, idx) in cl {
                        let id = dr.add_event_unplaced(edge, 0);
                        new_ids.insert((pi, idx), id);
                        ordered.push((w, id));
                    }
                    let mut neg: Vec<EventId> = ordered
                        .iter()
                        .filter(|(w, _)| w.n < 0)
                        .map(|&(_, id)| id)
                        .collect();
                    let mut pos: Vec<EventId> = ordered
                        .iter()
                        .filter(|(w, _)| w.n > 0)
                        .map(|&(_, id)| id)
                        .collect();
                    if d > 0 {
                        rebuilt.append(&mut neg);
                        rebuilt.push(ev);
                        rebuilt.append(&mut pos);
                    } else {
                        pos.reverse();
                        neg.reverse();
                        rebuilt.append(&mut pos);
                        rebuilt.push(ev);
                        rebuilt.append(&mut neg);
                    }
                }
            }
        }
        dr.set_edge_order(edge, rebuilt);
    }

    // Rebuild the twisted curve's chord cycle.
    let mut seq: Vec<(EventId, i8)> = Vec::new();
    for (i, &(e, d)) in plan.c_cycle.iter().enumerate() {
        seq.push((e, d));
        for &pi in &plan.c_chord_xs[i] {
            for (idx, &(_, dir, _)) in plan.spirals[pi].iter().enumerate() {
                seq.push((new_ids[&(pi, idx)], dir));
            }
        }
    }
    let m2 = seq.len();
    for i in 0..m2 {
        let (e1, d1) = seq[i];
        let (e2, d2) = seq[(i + 1) % m2];
        let exit = (e1, if d1 > 0 { 1u8 } else { 0u8 });
        let entry = (e2, if d2 > 0 { 0u8 } else { 1u8 });
        dr.set_chord(exit, entry);
    }

    dr.validate()?;
    CurveClass::from_drawing_tag(&dr, 0)
}

/// Boundary components of a closed regular neighborhood of the union of the
/// given curves. The curves are put in pairwise minimal position first; each
/// complement-region boundary cycle contributes one push-off component.
pub fn neighborhood_boundary(curves: &[&CurveClass]) -> Result<Vec<CurveClass>> {
    let mut dr = overlay(curves);
    for i in 1..curves.len() as Tag {
        reduce_against(&mut dr, i, &|t| t < i, false);
    }
    let plans = {
        let arr = Arrangement::build(&dr);
        let rs = arr.regions(&|_| true);
        let mut plans = Vec::new();
        for r in &rs.regions {
            for cyc in &r.boundary {
                plans.push(crate::arrangement::push_off_plan(cyc));
            }
        }
        plans
    };
    let tag = curves.len() as Tag;
    let mut out = Vec::new();
    for plan in plans {
        let mut d2 = dr.clone();
        if crate::arrangement::apply_push_off(&mut d2, &plan, tag) {
            out.push(CurveClass::from_drawing_tag(&d2, tag)?);
        }
    }
    Ok(out)
}

/// Construct the curve with the given passage word when it is realizable by
/// one chord per letter (each consecutive pair of passages joined directly).
/// Intended for small explicit seeds like band sums of disjoint generators.
pub fn curve_from_passages(surface: SurfaceSpec, passages: &[i32]) -> Result<CurveClass> {
    if passages.is_empty() {
        return Err(usage("empty passage list"));
    }
    let mut dr = Drawing::new(surface);
    let mut seq = Vec::new();
    for &l in passages {
        if l == 0 || l.unsigned_abs() as usize > surface.edge_classes() {
            return Err(usage(format!("bad letter {l}")));
        }
        let edge = l.unsigned_abs() as usize - 1;
        let slot = dr.edge_order(edge).len();
        let e = dr.add_event(edge, slot, 0);
        seq.push((e, if l > 0 { 1i8 } else { -1 }));
    }
    let k = seq.len();
    for i in 0..k {
        let (e1, d1) = seq[i];
        let (e2, d2) = seq[(i + 1) % k];
        let exit = (e1, if d1 > 0 { 1u8 } else { 0u8 });
        let entry = (e2, if d2 > 0 { 0u8 } else { 1u8 });
        if exit == entry {
            return Err(usage("degenerate single-passage chord"));
        }
        dr.set_chord(exit, entry);
    }
    dr.validate_embedded(0)?;
    CurveClass::from_drawing_tag(&dr, 0)
}

/// Band sums of two disjoint curves along bands following a guide curve
/// that crosses both. One candidate per pair of crossings adjacent along
/// the guide (one on each curve): the walk traverses all of `c1`, runs along
/// the guide to `c2`, traverses all of `c2`, and returns; its push-off is
/// the banded curve.
pub fn band_sum_candidates(
    c1: &CurveClass,
    c2: &CurveClass,
    guide: &CurveClass,
) -> Result<Vec<CurveClass>> {
    c1.check_same_surface(c2)?;
    c1.check_same_surface(guide)?;
    if geometric_intersection(c1, c2)? != 0 {
        return Err(usage("band sum needs disjoint curves"));
    }
    let mut dr = overlay(&[c1, c2, guide]);
    reduce_against(&mut dr, 1, &|t| t == 0, false);
    reduce_against(&mut dr, 2, &|t| t < 2, false);
    let walks = {
        let arr = Arrangement::build(&dr);
        let g_cycle = dr.tag_components(2);
        if g_cycle.is_empty() {
            return Ok(Vec::new());
        }
        let g_cycle = &g_cycle[0];
        let n = g_cycle.len();
        // Crossings along the guide in cyclic order: (slot, tag, head and
        // tail events of the crossed chord on the other curve).
        let mut hits: Vec<(usize, Tag, EventId, EventId)> = Vec::new();
        for (i, p) in g_cycle.iter().enumerate() {
            let exit = (p.event, if p.dir > 0 { 1u8 } else { 0u8 });
            let chord = arr.chord_of(exit);
            for &x in arr.along[chord].iter() {
                let (ca, cb) = arr.crossings[x].chords;
                let other = if arr.chords[ca].tag == 2 { cb } else { ca };
                let t = arr.chords[other].tag;
                if t < 2 {
                    hits.push((
                        i,
                        t,
                        arr.chords[other].ends.1 .0,
                        arr.chords[other].ends.0 .0,
                    ));
                }
            }
        }
        let m = hits.len();
        let mut walks: Vec<Vec<(EventId, i8)>> = Vec::new();
        // The curve's cycle leaving the banding point: forward from the head
        // event of the crossed chord, or backward from its tail. The correct
        // turn orientation at each junction depends on local crossing signs,
        // so both directions are attempted and embeddedness filters them.
        let oriented_cycle = |t: Tag, start: EventId, forward: bool| -> Vec<(EventId, i8)> {
            let cyc = &dr.tag_components(t)[0];
            let k = cyc
                .iter()
                .position(|p| p.event == start)
                .expect("start event on curve");
            (0..cyc.len())
                .map(|i| {
                    if forward {
                        let p = cyc[(k + i) % cyc.len()];
                        (p.event, p.dir)
                    } else {
                        let p = cyc[(k + cyc.len() - i) % cyc.len()];
                        (p.event, -p.dir)
                    }
                })
                .collect()
        };
        for k in 0..m {
            let (s1, t1, head1, tail1) = hits[k];
            let (s2, t2, head2, tail2) = hits[(k + 1) % m];
            if !(t1 == 0 && t2 == 1) {
                continue;
            }
            // Guide run strictly between the two crossings.
            let mut band: Vec<(EventId, i8)> = Vec::new();
            if s1 != s2 {
                let mut i = (s1 + 1) % n;
                loop {
                    let p = g_cycle[i];
                    band.push((p.event, p.dir));
                    if i == s2 {
                        break;
                    }
                    i = (i + 1) % n;
                }
            }
            for fwd1 in [true, false] {
                for fwd2 in [true, false] {
                    let start1 = if fwd1 { head1 } else { tail1 };
                    let start2 = if fwd2 { head2 } else { tail2 };
                    let mut steps: Vec<(EventId, i8)> = Vec::new();
                    steps.extend(oriented_cycle(0, start1, fwd1));
                    steps.extend(band.iter().copied());
                    steps.extend(oriented_cycle(1, start2, fwd2));
                    steps.extend(band.iter().rev().map(|&(e, d)| (e, -d)));
                    walks.push(steps);
                }
            }
        }
        walks
    };
    let mut out = Vec::new();
    for steps in walks {
        let mut d2 = dr.clone();
        let plan = crate::arrangement::PushOffPlan { steps };
        if crate::arrangement::apply_push_off(&mut d2, &plan, 3) {
            if let Ok(c) = CurveClass::from_drawing_tag(&d2, 3) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// A multicurve: pairwise disjoint curves realized simultaneously taut.
#[derive(Clone, Debug)]
pub struct MultiCurve {
    surface: SurfaceSpec,
    drawing: Drawing,
    count: usize,
}

impl MultiCurve {
    pub fn new(components: Vec<CurveClass>) -> Result<MultiCurve> {
        if components.is_empty() {
            return Err(usage("multicurve needs at least one component"));
        }
        let surface = components[0].surface();
        for c in &components {
            if c.surface() != surface {
                return Err(Error::SurfaceMismatch(surface.genus(), c.surface().genus()));
            }
            if !c.is_essential() {
                return Err(usage("multicurve components must be essential"));
            }
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if components[i] == components[j] {
                    return Err(usage("multicurve components must be distinct classes"));
                }
                if geometric_intersection(&components[i], &components[j])? != 0 {
                    return Err(usage("multicurve components must be disjoint"));
                }
            }
        }
        let refs: Vec<&CurveClass> = components.iter().collect();
        let mut dr = overlay(&refs);
        for i in 1..components.len() as Tag {
            reduce_against(&mut dr, i, &|t| t < i, false);
        }
        let arr = Arrangement::build(&dr);
        for i in 0..components.len() as Tag {
            for j in 0..i {
                if arr.crossing_count(i, j) != 0 {
                    return Err(structural("disjoint components failed to realize"));
                }
            }
        }
        drop(arr);
        Ok(MultiCurve {
            surface,
            drawing: dr,
            count: components.len(),
        })
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }
    pub fn len(&self) -> usize {
        self.count
    }
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
    pub fn drawing(&self) -> &Drawing {
        &self.drawing
    }
    pub fn component(&self, i: usize) -> CurveClass {
        CurveClass::from_drawing_tag(&self.drawing, i as Tag).expect("component valid")
    }
}

/// One complement component of a cut surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub genus: i64,
    pub boundary_count: usize,
    pub contains_vertex: bool,
}

/// The surface cut along a multicurve: component census.
#[derive(Clone, Debug)]
pub struct CutSurface {
    pub parent: SurfaceSpec,
    pub components: Vec<CutComponent>,
}

pub fn cut_along(m: &MultiCurve) -> CutSurface {
    let arr = Arrangement::build(m.drawing());
    let rs = arr.regions(&|_| true);
    let components = rs
        .regions
        .iter()
        .map(|r| CutComponent {
            genus: r.genus(),
            boundary_count: r.boundary.len(),
            contains_vertex: r.contains_vertex,
        })
        .collect();
    CutSurface {
        parent: m.surface(),
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    fn a1() -> CurveClass {
        CurveClass::generator(s2(), 0)
    }
    fn b1() -> CurveClass {
        CurveClass::generator(s2(), 1)
    }
    fn a2() -> CurveClass {
        CurveClass::generator(s2(), 2)
    }

    #[test]
    fn generator_flags() {
        let a = a1();
        assert!(a.is_essential());
        assert!(!a.is_separating());
        assert_eq!(a.complexity(), 1);
    }

    #[test]
    fn dual_pair_intersects_once() {
        assert_eq!(geometric_intersection(&a1(), &b1()).unwrap(), 1);
        assert_eq!(geometric_intersection(&a1(), &a2()).unwrap(), 0);
        assert_eq!(geometric_intersection(&a1(), &a1()).unwrap(), 0);
    }

    #[test]
    fn intersection_is_symmetric() {
        for (x, y) in [(a1(), b1()), (a1(), a2()), (b1(), a2())] {
            assert_eq!(
                geometric_intersection(&x, &y).unwrap(),
                geometric_intersection(&y, &x).unwrap()
            );
        }
    }

    #[test]
    fn twist_identity_power() {
        let c = a1();
        let t0 = dehn_twist(&c, &b1(), 0).unwrap();
        assert_eq!(t0, c);
    }

    #[test]
    fn twist_about_disjoint_fixes() {
        let c = a1();
        let t = dehn_twist(&c, &a2(), 5).unwrap();
        assert_eq!(t, c);
    }

    #[test]
    fn twist_once_changes_class() {
        let c = a1();
        let t = dehn_twist(&c, &b1(), 1).unwrap();
        assert_ne!(t, c);
        assert!(t.is_essential());
        assert_eq!(geometric_intersection(&t, &c).unwrap(), 1);
    }

    #[test]
    fn twist_formula_small_powers() {
        let a = a1();
        let b = b1();
        for n in [2i64, 3, 4, -2, -3] {
            let t = dehn_twist(&a, &b, n).unwrap();
            assert_eq!(
                geometric_intersection(&t, &a).unwrap(),
                n.unsigned_abs() as usize,
                "power {n}"
            );
        }
    }

    #[test]
    fn twist_inverse_composition() {
        let a = a1();
        let b = b1();
        let t = dehn_twist(&a, &b, 2).unwrap();
        let back = dehn_twist(&t, &b, -2).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn twist_group_law() {
        let a = a1();
        let b = b1();
        let t2 = dehn_twist(&a, &b, 2).unwrap();
        let t1t1 = dehn_twist(&dehn_twist(&a, &b, 1).unwrap(), &b, 1).unwrap();
        assert_eq!(t2, t1t1);
    }

    #[test]
    fn cut_along_nonseparating() {
        let m = MultiCurve::new(vec![a1()]).unwrap();
        let cut = cut_along(&m);
        assert_eq!(cut.components.len(), 1);
        assert_eq!(cut.components[0].genus, 1);
        assert_eq!(cut.components[0].boundary_count, 2);
    }

    /// The boundary of a regular neighborhood of a handle's dual pair is the
    /// standard separating curve.
    #[test]
    fn handle_neighborhood_boundary_is_separating() {
        let parts = neighborhood_boundary(&[&a1(), &b1()]).unwrap();
        assert_eq!(parts.len(), 1);
        let l0 = &parts[0];
        assert!(l0.is_essential());
        assert!(l0.is_separating());
        assert_eq!(geometric_intersection(l0, &a1()).unwrap(), 0);
        assert_eq!(geometric_intersection(l0, &b1()).unwrap(), 0);
        let m = MultiCurve::new(vec![l0.clone()]).unwrap();
        let cut = cut_along(&m);
        assert_eq!(cut.components.len(), 2);
        for comp in &cut.components {
            assert_eq!(comp.genus, 1);
            assert_eq!(comp.boundary_count, 1);
        }
        // Its class is the handle commutator.
        let relator = s2().relator();
        let comm = word::conjugacy_key(&[1, 2, -1, -2], &relator, true);
        assert_eq!(l0.key(), &comm[..]);
    }

    /// Twist formula at intersection number two: the band sum of the two
    /// handle duals crosses the separating curve twice.
    #[test]
    fn twist_formula_intersection_two() {
        let l0 = neighborhood_boundary(&[&a1(), &b1()]).unwrap().remove(0);
        let band = curve_from_passages(s2(), &[1, 3]).unwrap();
        assert_eq!(geometric_intersection(&band, &l0).unwrap(), 2);
        for n in [2i64, 3] {
            let t = dehn_twist(&band, &l0, n).unwrap();
            assert_eq!(
                geometric_intersection(&t, &band).unwrap(),
                (n.unsigned_abs() as usize) * 4,
                "power {n}"
            );
        }
    }
}
