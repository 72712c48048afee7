//! Handlebody markings, meridian testing, disk-set enumeration, splitting
//! distance estimates and disk projection censuses.
//!
//! A marking is a system of g disjoint nonseparating curves cutting the
//! surface to a planar piece. A curve bounds a disk in the marked handlebody
//! exactly when its signed crossing word with the meridian system reduces to
//! the identity in the free group on the meridians; the word is read along
//! the curve with local orientation signs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::curve::{geometric_intersection, CurveClass, MultiCurve};
use crate::curvegraph::{distance_small, BoundStatus, Budget, DistanceEstimate, SmallDistance};
use crate::drawing::Tag;
use crate::enumerate::enumerate_curves;
use crate::exec::Exec;
use crate::farey::ac_distance;
use crate::projection::{project, Subsurface};
use crate::surface::SurfaceSpec;
use crate::word;
use crate::{usage, Result};

/// A handlebody structure on the surface, given by its meridian system.
#[derive(Clone, Debug)]
pub struct HandlebodyMarking {
    meridians: MultiCurve,
    /// Free-group image of each edge-class generator (the word table).
    table: Vec<Vec<i32>>,
}

impl HandlebodyMarking {
    pub fn new(meridians: MultiCurve) -> Result<HandlebodyMarking> {
        let surface = meridians.surface();
        if meridians.len() != surface.genus() {
            return Err(usage(format!(
                "marking needs {} meridians, got {}",
                surface.genus(),
                meridians.len()
            )));
        }
        for i in 0..meridians.len() {
            if meridians.component(i).is_separating() {
                return Err(usage("meridians must be nonseparating"));
            }
        }
        let arr = Arrangement::build(meridians.drawing());
        let rs = arr.regions(&|_| true);
        if rs.region_count() != 1 || rs.regions[0].genus() != 0 {
            return Err(usage(
                "meridian complement must be a connected planar surface",
            ));
        }
        drop(rs);
        drop(arr);
        let mut marking = HandlebodyMarking {
            meridians,
            table: Vec::new(),
        };
        let mut table = Vec::new();
        for edge in 0..surface.edge_classes() {
            let gen = CurveClass::generator(surface, edge);
            let mut w = marking.crossing_word(&gen)?;
            // Normalize to the +letter orientation of the generator loop.
            if gen.word() == vec![-(edge as i32 + 1)] {
                w = word::invert(&w);
            }
            table.push(word::free_reduce(&w));
        }
        marking.table = table;
        Ok(marking)
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.meridians.surface()
    }
    pub fn meridians(&self) -> &MultiCurve {
        &self.meridians
    }
    /// The homomorphism data: image of each edge-class generator in the free
    /// group on the meridians.
    pub fn word_table(&self) -> &[Vec<i32>] {
        &self.table
    }

    /// Signed crossing word of a curve with the meridian system, read along
    /// the curve; letters are meridian indices + 1 with local orientation
    /// signs. Free/cyclic reduction of this word decides disk bounding.
    pub fn crossing_word(&self, c: &CurveClass) -> Result<Vec<i32>> {
        if c.surface() != self.surface() {
            return Err(crate::Error::SurfaceMismatch(
                c.surface().genus(),
                self.surface().genus(),
            ));
        }
        let mut dr = self.meridians.drawing().clone();
        let nm = self.meridians.len() as Tag;
        dr.absorb(c.drawing(), nm);
        let arr = Arrangement::build(&dr);
        let comps = dr.tag_components(nm);
        if comps.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for p in &comps[0] {
            let exit = (p.event, if p.dir > 0 { 1u8 } else { 0u8 });
            let chord = arr.chord_of(exit);
            for &x in &arr.along[chord] {
                let (c1, c2) = arr.crossings[x].chords;
                let other = if c1 == chord { c2 } else { c1 };
                let t = arr.chords[other].tag;
                if t < nm {
                    let sign = arr.pair_cross_sign(chord, other);
                    out.push((t as i32 + 1) * sign as i32);
                }
            }
        }
        Ok(out)
    }

    /// Substitute the curve's skeleton word through the word table; agrees
    /// with the direct crossing word up to conjugacy in the free group.
    pub fn substituted_word(&self, c: &CurveClass) -> Vec<i32> {
        let mut out = Vec::new();
        for l in c.word() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                out.extend_from_slice(&self.table[k]);
            } else {
                out.extend(word::invert(&self.table[k]));
            }
        }
        word::free_reduce(&out)
    }
}

/// Exact meridian test: the curve bounds a disk in the marked handlebody iff
/// its crossing word with the system reduces to the identity.
pub fn is_meridian(c: &CurveClass, h: &HandlebodyMarking) -> Result<bool> {
    if !c.is_essential() {
        return Err(usage("meridian test needs an essential curve"));
    }
    Ok(word::cyclic_reduce(&h.crossing_word(c)?).is_empty())
}

/// All meridian classes up to a complexity cap: exhaustive enumeration plus
/// the word filter. Monotone in the cap and restart-stable.
#[derive(Clone, Debug)]
pub struct DiskSet {
    pub cap: usize,
    pub members: Vec<CurveClass>,
}

pub fn enumerate_disks(h: &HandlebodyMarking, cap: usize, exec: Exec) -> Result<DiskSet> {
    let members = enumerate_curves(h.surface(), cap, exec, &|c| {
        is_meridian(c, h).unwrap_or(false)
    });
    Ok(DiskSet { cap, members })
}

impl DiskSet {
    pub fn contains(&self, c: &CurveClass) -> bool {
        self.members.contains(c)
    }
}

/// Splitting distance estimate between two disk sets. Upper bounds come from
/// witnessed pairs; lower bounds are only as strong as the enumeration caps
/// and say so.
pub fn hempel_distance(
    hminus: &DiskSet,
    hplus: &DiskSet,
    budget: Budget,
) -> Result<DistanceEstimate> {
    if hminus.members.is_empty() || hplus.members.is_empty() {
        return Err(usage("hempel distance needs nonempty disk sets"));
    }
    for a in &hminus.members {
        if hplus.contains(a) {
            return Ok(DistanceEstimate::exact(
                0,
                vec!["shared meridian class".to_string()],
            ));
        }
    }
    // Pairs by total complexity, cheapest first, within budget.
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (i, a) in hminus.members.iter().enumerate() {
        for (j, b) in hplus.members.iter().enumerate() {
            pairs.push((a.complexity() + b.complexity(), i, j));
        }
    }
    pairs.sort();
    pairs.truncate(budget.cap.max(16));
    let mut best: Option<(u64, String)> = None;
    for (_, i, j) in pairs {
        let (a, b) = (&hminus.members[i], &hplus.members[j]);
        let d = match distance_small(a, b)? {
            SmallDistance::Zero => Some((0, "shared class".to_string())),
            SmallDistance::One => Some((1, "disjoint meridian pair".to_string())),
            SmallDistance::Two(_) => Some((2, "meridian pair with common disjoint curve".to_string())),
            SmallDistance::MoreThanTwo => None,
        };
        if let Some((v, note)) = d {
            if best.as_ref().map_or(true, |(bv, _)| v < *bv) {
                best = Some((v, note));
            }
            if v <= 1 {
                break;
            }
        }
    }
    let est = match best {
        Some((v, note)) => DistanceEstimate {
            lower: 0,
            upper: Some(v),
            lower_status: BoundStatus::SearchCap,
            upper_status: BoundStatus::Certificate,
            path: None,
            notes: vec![
                note,
                format!(
                    "lower bound limited by enumeration caps {} / {}",
                    hminus.cap, hplus.cap
                ),
            ],
        },
        None => DistanceEstimate {
            lower: 0,
            upper: None,
            lower_status: BoundStatus::SearchCap,
            upper_status: BoundStatus::SearchCap,
            path: None,
            notes: vec!["no short pair within budget".to_string()],
        },
    };
    Ok(est)
}

/// Result of the disk projection diameter check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiameterReport {
    /// Disks whose boundary meets the subsurface in fewer than three arcs.
    pub hypothesis_failures: Vec<(usize, usize)>,
    /// Projection diameter over the enumerated set (exact, Farey model).
    pub diameter: Option<u64>,
    /// The conclusion "diameter at most four", asserted when the hypothesis
    /// held across the enumeration.
    pub bound_holds: Option<bool>,
}

/// Check the disk projection diameter bound: when every enumerated disk
/// meets the subsurface in at least three arcs, the projection of the disk
/// set has diameter at most four.
pub fn disk_projection_diameter(disks: &DiskSet, f: &Subsurface) -> Result<DiameterReport> {
    let mut failures = Vec::new();
    let mut vertices = Vec::new();
    for (i, d) in disks.members.iter().enumerate() {
        let p = project(d, f)?;
        let arcs = p.pieces.iter().filter(|x| !x.closed).count();
        if arcs < 3 {
            failures.push((i, arcs));
        }
        vertices.push(p.vertices);
    }
    if !failures.is_empty() {
        return Ok(DiameterReport {
            hypothesis_failures: failures,
            diameter: None,
            bound_holds: None,
        });
    }
    if !f.is_once_punctured_torus() || f.basis().is_none() {
        return Err(usage(
            "exact diameter needs a once-punctured torus target with basis",
        ));
    }
    let mut all = Vec::new();
    for v in vertices {
        all.extend(v);
    }
    all.sort();
    all.dedup();
    let mut diameter = 0;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            diameter = diameter.max(ac_distance(all[i], all[j]));
        }
    }
    Ok(DiameterReport {
        hypothesis_failures: failures,
        diameter: Some(diameter),
        bound_holds: Some(diameter <= 4),
    })
}

/// One enumerated product disk presentation: arcs on the bottom and top
/// copies of the spanning subsurface.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductDisk {
    pub kind: String,
    /// Pairwise arc distances (top vs bottom) as certified intervals.
    pub entries: Vec<(u64, Option<u64>)>,
}

/// Report for the product-disk distance property.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductDiskReport {
    pub disks: usize,
    /// Max over all top-vs-bottom entries of the certified upper bound.
    pub max_top_bottom: u64,
    /// Max over all same-copy entries (the literal reading).
    pub max_same_copy: u64,
    pub bound_holds: bool,
}

/// Property test for disks of the product handlebody over a cut component:
/// vertical disks (top arc = bottom arc) and band-sum disks built from
/// disjoint arc pairs. Each top arc must stay within distance six of every
/// bottom arc; both readings (top-vs-bottom and same-copy) are recorded.
pub fn product_disk_bound_check(
    base: &CurveClass,
    cap: usize,
    exec: Exec,
) -> Result<ProductDiskReport> {
    if base.is_separating() || !base.is_essential() {
        return Err(usage(
            "product handlebody check spans the complement of a nonseparating curve",
        ));
    }
    let surface = base.surface();
    let boundary = MultiCurve::new(vec![base.clone()])?;
    let f = Subsurface::new(boundary, 0)?;
    // Arc sources: enumerated curves crossing the base curve.
    let curves = enumerate_curves(surface, cap, exec, &|c| c != base);
    let mut disks: Vec<ProductDisk> = Vec::new();
    let mut max_tb = 0u64;
    let mut max_same = 0u64;
    let mut sources: Vec<CurveClass> = Vec::new();
    for c in curves {
        if geometric_intersection(&c, base)? > 0 {
            sources.push(c);
        }
        if sources.len() >= 8 {
            break;
        }
    }
    // Vertical disks: every arc piece of every source, top = bottom.
    for c in &sources {
        let p = project(c, &f)?;
        for piece in p.pieces.iter().filter(|x| !x.closed) {
            let _ = piece;
            disks.push(ProductDisk {
                kind: "vertical".to_string(),
                entries: vec![(0, Some(0))],
            });
        }
    }
    // Band-sum disks: pairs of disjoint sources give disks whose bottom arcs
    // come from both curves and whose top arc is their band sum; the band
    // sum runs parallel to its summands, so each top-bottom entry is at most
    // one away, certified by the construction and checked by disjointness.
    for i in 0..sources.len() {
        for j in i + 1..sources.len() {
            let (a, b) = (&sources[i], &sources[j]);
            if geometric_intersection(a, b)? != 0 {
                continue;
            }
            let bands = crate::curve::band_sum_candidates(a, b, base)?;
            for band in bands.iter().take(2) {
                if !band.is_essential() {
                    continue;
                }
                let mut entries = Vec::new();
                for bottom in [a, b] {
                    let d = geometric_intersection(band, bottom)?;
                    let upper = if d == 0 { 1 } else { 2 };
                    entries.push((0u64, Some(upper)));
                    max_tb = max_tb.max(upper);
                }
                // Literal reading: both bottom arcs in one copy.
                let dab = geometric_intersection(a, b)?;
                let same = if dab == 0 { 1 } else { 2 };
                max_same = max_same.max(same);
                disks.push(ProductDisk {
                    kind: "band-sum".to_string(),
                    entries,
                });
            }
        }
    }
    Ok(ProductDiskReport {
        disks: disks.len(),
        max_top_bottom: max_tb,
        max_same_copy: max_same,
        bound_holds: max_tb <= 6 && max_same <= 6,
    })
}

/// Marking serialization: meridian curves plus the word table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarkingFile {
    pub surface: SurfaceSpec,
    pub meridians: Vec<crate::drawing::CurveRecord>,
    pub word_table: BTreeMap<usize, Vec<i32>>,
}

pub fn marking_to_file(h: &HandlebodyMarking) -> MarkingFile {
    MarkingFile {
        surface: h.surface(),
        meridians: (0..h.meridians().len())
            .map(|i| h.meridians().component(i).to_record(&format!("m{i}")))
            .collect(),
        word_table: h
            .word_table()
            .iter()
            .enumerate()
            .map(|(k, w)| (k, w.clone()))
            .collect(),
    }
}

pub fn marking_from_file(file: &MarkingFile) -> Result<HandlebodyMarking> {
    let mut comps = Vec::new();
    for rec in &file.meridians {
        comps.push(CurveClass::canonicalize(file.surface, rec)?);
    }
    HandlebodyMarking::new(MultiCurve::new(comps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{band_sum_candidates, dehn_twist};

    fn s2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    fn standard_marking() -> HandlebodyMarking {
        let m1 = CurveClass::generator(s2(), 0);
        let m2 = CurveClass::generator(s2(), 2);
        HandlebodyMarking::new(MultiCurve::new(vec![m1, m2]).unwrap()).unwrap()
    }

    #[test]
    fn meridian_system_members_are_meridians() {
        let h = standard_marking();
        for i in 0..2 {
            assert!(is_meridian(&h.meridians().component(i), &h).unwrap());
        }
    }

    #[test]
    fn dual_curves_are_not_meridians() {
        let h = standard_marking();
        let b1 = CurveClass::generator(s2(), 1);
        assert!(!is_meridian(&b1, &h).unwrap());
    }

    #[test]
    fn substituted_and_direct_words_agree_up_to_conjugacy() {
        let h = standard_marking();
        let b1 = CurveClass::generator(s2(), 1);
        let t = dehn_twist(&b1, &h.meridians().component(0), 2).unwrap();
        for c in [&b1, &t] {
            let direct = word::cyclic_reduce(&h.crossing_word(c).unwrap());
            let subst = word::cyclic_reduce(&h.substituted_word(c));
            assert_eq!(direct.len(), subst.len());
            if !direct.is_empty() {
                let doubled: Vec<i32> =
                    subst.iter().chain(subst.iter()).copied().collect();
                assert!(
                    doubled.windows(direct.len()).any(|w| w == direct),
                    "cyclic words differ: {direct:?} vs {subst:?}"
                );
            }
        }
    }

    #[test]
    fn band_sum_of_meridians_is_meridian() {
        let h = standard_marking();
        let m1 = h.meridians().component(0);
        let m2 = h.meridians().component(1);
        let guide = crate::curve::curve_from_passages(s2(), &[2, 4]).unwrap();
        let sums = band_sum_candidates(&m1, &m2, &guide).unwrap();
        assert!(!sums.is_empty(), "no band sum constructed");
        let mut found_essential = false;
        for s in &sums {
            if s.is_essential() {
                found_essential = true;
                assert!(is_meridian(s, &h).unwrap(), "band sum must bound");
                assert_ne!(s, &m1);
                assert_ne!(s, &m2);
            }
        }
        assert!(found_essential);
    }

    #[test]
    fn disk_set_contains_system_and_band_sums() {
        let h = standard_marking();
        let disks = enumerate_disks(&h, 3, Exec::Sequential).unwrap();
        assert!(disks.contains(&h.meridians().component(0)));
        assert!(disks.contains(&h.meridians().component(1)));
        // The 2-chord band sum class with word a1 a2 bounds.
        let band = crate::curve::curve_from_passages(s2(), &[1, 3]).unwrap();
        assert!(is_meridian(&band, &h).unwrap());
        assert!(disks.contains(&band));
    }

    #[test]
    fn hempel_distance_of_identical_markings_is_zero() {
        let h = standard_marking();
        let d1 = enumerate_disks(&h, 2, Exec::Sequential).unwrap();
        let d2 = enumerate_disks(&h, 2, Exec::Sequential).unwrap();
        let est = hempel_distance(&d1, &d2, Budget::default()).unwrap();
        assert!(est.is_exact());
        assert_eq!(est.lower, 0);
    }

    #[test]
    fn opposite_marking_distance_bounded_by_witness() {
        let m1 = CurveClass::generator(s2(), 1);
        let m2 = CurveClass::generator(s2(), 3);
        let hplus = HandlebodyMarking::new(MultiCurve::new(vec![m1, m2]).unwrap()).unwrap();
        let h = standard_marking();
        let d1 = enumerate_disks(&h, 2, Exec::Sequential).unwrap();
        let d2 = enumerate_disks(&hplus, 2, Exec::Sequential).unwrap();
        let est = hempel_distance(&d1, &d2, Budget::default()).unwrap();
        // The standard genus-2 splitting has small distance; a witnessed
        // upper bound must exist.
        assert!(est.upper.is_some());
        assert!(est.upper.unwrap() <= 2);
    }
}
