//! Chord drawings: curves in combinatorial position against the cell
//! structure.
//!
//! A drawing records, for every edge class, the ordered list of crossing
//! events along it, and the chords that join event representatives inside the
//! polygon. Each event has two representatives, one on the primary polygon
//! side of its edge class and one on the partner side; a point at parameter t
//! along the primary side is the same surface point as the one at parameter
//! 1-t along the partner side. Several named curves can share one drawing,
//! which fixes their relative position along every edge.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::surface::SurfaceSpec;
use crate::{structural, Result};

pub type EventId = usize;
pub type Tag = u32;

/// A chord endpoint: representative `rep` of event `event`.
pub type RepRef = (EventId, u8);

#[derive(Clone, Debug)]
struct Event {
    alive: bool,
    edge: usize,
    tag: Tag,
    link: [Option<RepRef>; 2],
}

#[derive(Clone, Debug)]
pub struct Drawing {
    surface: SurfaceSpec,
    events: Vec<Event>,
    edge_order: Vec<Vec<EventId>>,
    /// Tags whose component collapsed to nothing during reduction.
    vanished: Vec<Tag>,
}

/// One directed passage of a curve through an event: `dir = +1` crosses from
/// the primary side representative to the partner representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub event: EventId,
    pub dir: i8,
}

impl Drawing {
    pub fn new(surface: SurfaceSpec) -> Self {
        Drawing {
            surface,
            events: Vec::new(),
            edge_order: vec![Vec::new(); surface.edge_classes()],
            vanished: Vec::new(),
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn vanished(&self) -> &[Tag] {
        &self.vanished
    }

    pub fn mark_vanished(&mut self, tag: Tag) {
        if !self.vanished.contains(&tag) {
            self.vanished.push(tag);
        }
    }

    pub fn event_count(&self) -> usize {
        self.events.iter().filter(|e| e.alive).count()
    }

    pub fn tag_event_count(&self, tag: Tag) -> usize {
        self.events.iter().filter(|e| e.alive && e.tag == tag).count()
    }

    pub fn edge_of(&self, e: EventId) -> usize {
        self.events[e].edge
    }

    pub fn tag_of(&self, e: EventId) -> Tag {
        self.events[e].tag
    }

    pub fn is_alive(&self, e: EventId) -> bool {
        self.events.get(e).is_some_and(|ev| ev.alive)
    }

    pub fn edge_order(&self, edge: usize) -> &[EventId] {
        &self.edge_order[edge]
    }

    /// Index of the event along its edge.
    pub fn edge_index(&self, e: EventId) -> usize {
        let edge = self.events[e].edge;
        self.edge_order[edge]
            .iter()
            .position(|&x| x == e)
            .expect("event present in its edge order")
    }

    pub fn add_event(&mut self, edge: usize, index: usize, tag: Tag) -> EventId {
        let id = self.events.len();
        self.events.push(Event {
            alive: true,
            edge,
            tag,
            link: [None, None],
        });
        self.edge_order[edge].insert(index, id);
        id
    }

    /// Create an event whose position will be supplied later through
    /// [`set_edge_order`](Self::set_edge_order).
    pub fn add_event_unplaced(&mut self, edge: usize, tag: Tag) -> EventId {
        let id = self.events.len();
        self.events.push(Event {
            alive: true,
            edge,
            tag,
            link: [None, None],
        });
        id
    }

    /// Replace the full order of one edge. The new order must list exactly
    /// the live events of that edge.
    pub fn set_edge_order(&mut self, edge: usize, order: Vec<EventId>) {
        debug_assert!(order
            .iter()
            .all(|&e| self.events[e].alive && self.events[e].edge == edge));
        self.edge_order[edge] = order;
    }

    pub fn set_chord(&mut self, a: RepRef, b: RepRef) {
        debug_assert!(a != b);
        self.events[a.0].link[a.1 as usize] = Some(b);
        self.events[b.0].link[b.1 as usize] = Some(a);
    }

    pub fn chord_end(&self, r: RepRef) -> RepRef {
        self.events[r.0].link[r.1 as usize].expect("chord set")
    }

    fn remove_event(&mut self, e: EventId) {
        let edge = self.events[e].edge;
        self.events[e].alive = false;
        self.events[e].link = [None, None];
        self.edge_order[edge].retain(|&x| x != e);
    }

    /// Remove an event whose links are about to be rebuilt by the caller
    /// (used by the bigon move machinery).
    pub fn remove_event_public(&mut self, e: EventId) {
        self.remove_event(e);
    }

    /// Polygon side and counterclockwise rank of a representative; the pair
    /// orders all representatives cyclically along the polygon boundary.
    pub fn boundary_key(&self, r: RepRef) -> (usize, usize) {
        let ev = &self.events[r.0];
        let side = self.surface.side_of_edge(ev.edge, r.1);
        let n = self.edge_order[ev.edge].len();
        let i = self.edge_index(r.0);
        let rank = if r.1 == 0 { i } else { n - 1 - i };
        (side, rank)
    }

    /// All chords, each reported once as an ordered representative pair.
    pub fn chords(&self) -> Vec<(RepRef, RepRef)> {
        let mut out = Vec::new();
        for (id, ev) in self.events.iter().enumerate() {
            if !ev.alive {
                continue;
            }
            for rep in 0..2u8 {
                let a = (id, rep);
                if let Some(b) = ev.link[rep as usize] {
                    if a < b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Traverse all components; each is a cyclic passage sequence. The start
    /// of each cycle is canonical (smallest event id, entering at rep 0 when
    /// possible) so traversal is deterministic.
    pub fn components(&self) -> Vec<Vec<Passage>> {
        let mut seen = vec![false; self.events.len()];
        let mut out = Vec::new();
        for start in 0..self.events.len() {
            if !self.events[start].alive || seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            // Enter `start` at rep 0 (crossing with dir +1).
            let mut cur = Passage {
                event: start,
                dir: 1,
            };
            loop {
                seen[cur.event] = true;
                cycle.push(cur);
                // Leave via the far representative's chord.
                let out_rep = if cur.dir > 0 { 1 } else { 0 };
                let (ne, nr) = self.chord_end((cur.event, out_rep));
                cur = Passage {
                    event: ne,
                    dir: if nr == 0 { 1 } else { -1 },
                };
                if cur.event == start && cur.dir == 1 {
                    break;
                }
                debug_assert!(
                    !(seen[cur.event] && cur.event == start),
                    "component re-enters start with flipped direction"
                );
            }
            out.push(cycle);
        }
        out
    }

    /// Components of a single tag.
    pub fn tag_components(&self, tag: Tag) -> Vec<Vec<Passage>> {
        self.components()
            .into_iter()
            .filter(|c| self.tag_of(c[0].event) == tag)
            .collect()
    }

    /// The crossing word of a component in the edge-class letters.
    pub fn trace_word(&self, component: &[Passage]) -> Vec<i32> {
        component
            .iter()
            .map(|p| self.surface.letter(self.events[p.event].edge, p.dir))
            .collect()
    }

    /// Insert an event next to `host` on its geometric left or right, as seen
    /// travelling through `host` in direction `host_dir`.
    pub fn insert_adjacent(
        &mut self,
        host: EventId,
        host_dir: i8,
        left: bool,
        tag: Tag,
    ) -> EventId {
        let edge = self.events[host].edge;
        let i = self.edge_index(host);
        let at = if (host_dir > 0) == left { i + 1 } else { i };
        self.add_event(edge, at, tag)
    }

    /// Remove innermost chords that return to the side they started on; each
    /// removal is an isotopy across the edge and drops two crossings. Runs to
    /// exhaustion; deterministic scan order.
    pub fn reduce_slides(&mut self) {
        loop {
            let mut acted = false;
            'scan: for edge in 0..self.surface.edge_classes() {
                let order = self.edge_order[edge].clone();
                for w in order.windows(2) {
                    let (e1, e2) = (w[0], w[1]);
                    for rep in 0..2u8 {
                        if self.events[e1].link[rep as usize] == Some((e2, rep)) {
                            self.slide_pair(e1, e2, rep);
                            acted = true;
                            break 'scan;
                        }
                    }
                }
            }
            if !acted {
                return;
            }
        }
    }

    fn slide_pair(&mut self, e1: EventId, e2: EventId, rep: u8) {
        let far = 1 - rep;
        let a = self.chord_end((e1, far));
        let b = self.chord_end((e2, far));
        let tag = self.events[e1].tag;
        if a == (e2, far) {
            // Two-event component collapses to a trivial loop.
            debug_assert_eq!(b, (e1, far));
            self.remove_event(e1);
            self.remove_event(e2);
            self.mark_vanished(tag);
            return;
        }
        self.remove_event(e1);
        self.remove_event(e2);
        self.set_chord(a, b);
    }

    /// Structural validation: link involution, edge orders, liveness.
    pub fn validate(&self) -> Result<()> {
        for (id, ev) in self.events.iter().enumerate() {
            if !ev.alive {
                continue;
            }
            for rep in 0..2u8 {
                let Some((e2, r2)) = ev.link[rep as usize] else {
                    return Err(structural(format!("event {id} rep {rep} unlinked")));
                };
                if !self.is_alive(e2) {
                    return Err(structural(format!("event {id} links dead event {e2}")));
                }
                if self.events[e2].link[r2 as usize] != Some((id, rep)) {
                    return Err(structural(format!("link involution broken at {id}/{rep}")));
                }
            }
        }
        for (edge, order) in self.edge_order.iter().enumerate() {
            for &e in order {
                if !self.is_alive(e) || self.events[e].edge != edge {
                    return Err(structural(format!("edge order corrupt on edge {edge}")));
                }
            }
        }
        let listed: usize = self.edge_order.iter().map(|o| o.len()).sum();
        if listed != self.event_count() {
            return Err(structural("edge orders disagree with live events"));
        }
        Ok(())
    }

    /// A curve must be embedded: no two of its own chords may interleave
    /// around the polygon boundary.
    pub fn validate_embedded(&self, tag: Tag) -> Result<()> {
        let chords: Vec<_> = self
            .chords()
            .into_iter()
            .filter(|&(a, _)| self.tag_of(a.0) == tag)
            .map(|(a, b)| (self.boundary_key(a), self.boundary_key(b)))
            .collect();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                if keys_interleave(chords[i], chords[j]) {
                    return Err(structural(format!(
                        "curve {tag} self-crosses: chords {:?} and {:?}",
                        chords[i], chords[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Extract the events of one tag into a fresh single-tag drawing,
    /// preserving the relative order along every edge.
    pub fn extract_tag(&self, tag: Tag, new_tag: Tag) -> Drawing {
        self.extract_tags(&[(tag, new_tag)])
    }

    /// Extract several tags (renaming them), preserving relative positions.
    pub fn extract_tags(&self, keep: &[(Tag, Tag)]) -> Drawing {
        let mut out = Drawing::new(self.surface);
        let mut map: BTreeMap<EventId, EventId> = BTreeMap::new();
        for edge in 0..self.surface.edge_classes() {
            for &e in &self.edge_order[edge] {
                if let Some(&(_, nt)) = keep.iter().find(|&&(t, _)| t == self.tag_of(e)) {
                    let idx = out.edge_order[edge].len();
                    let ne = out.add_event(edge, idx, nt);
                    map.insert(e, ne);
                }
            }
        }
        for (a, b) in self.chords() {
            if let (Some(&na), Some(&nb)) = (map.get(&a.0), map.get(&b.0)) {
                out.set_chord((na, a.1), (nb, b.1));
            }
        }
        out
    }

    /// Merge another drawing's curves into this one, spreading every edge's
    /// events by interleaving their normalized positions. Returns the tag
    /// translation applied to the other drawing (its tags are shifted to stay
    /// distinct).
    pub fn absorb(&mut self, other: &Drawing, tag_offset: Tag) {
        let mut map: BTreeMap<EventId, EventId> = BTreeMap::new();
        for edge in 0..self.surface.edge_classes() {
            let mine = self.edge_order[edge].clone();
            let theirs = other.edge_order[edge].clone();
            // Interleave by fractional position so independently reduced
            // curves start near general position.
            let mut merged: Vec<(u64, u64, bool, usize)> = Vec::new();
            let (nm, nt) = (mine.len() as u64, theirs.len() as u64);
            for (i, _) in mine.iter().enumerate() {
                merged.push(((2 * i as u64 + 1) * nt.max(1), 0, false, i));
            }
            for (i, _) in theirs.iter().enumerate() {
                merged.push(((2 * i as u64 + 1) * nm.max(1), 1, true, i));
            }
            merged.sort();
            let mut order = Vec::with_capacity(merged.len());
            for &(_, _, is_theirs, i) in &merged {
                if is_theirs {
                    let old = theirs[i];
                    let id = self.events.len();
                    self.events.push(Event {
                        alive: true,
                        edge,
                        tag: other.events[old].tag + tag_offset,
                        link: [None, None],
                    });
                    map.insert(old, id);
                    order.push(id);
                } else {
                    order.push(mine[i]);
                }
            }
            self.edge_order[edge] = order;
        }
        for (a, b) in other.chords() {
            self.set_chord((map[&a.0], a.1), (map[&b.0], b.1));
        }
    }
}

/// Cyclic interleaving of two endpoint-key pairs: exactly one endpoint of the
/// second pair lies strictly inside the cyclic interval of the first.
pub fn keys_interleave(
    a: ((usize, usize), (usize, usize)),
    b: ((usize, usize), (usize, usize)),
) -> bool {
    let (p, q) = if a.0 < a.1 { (a.0, a.1) } else { (a.1, a.0) };
    let inside = |x: (usize, usize)| x > p && x < q;
    inside(b.0) != inside(b.1)
}

/// Serialized form of a joint drawing: per curve, its passage list as
/// `[signed edge letter, rank along that edge]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrawingFile {
    pub surface: SurfaceSpec,
    pub curves: Vec<CurveRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveRecord {
    pub name: String,
    pub crossings: Vec<(i32, usize)>,
}

impl Drawing {
    /// Serialize the drawing; tags become names via `names` (fallback `c#`).
    pub fn to_file(&self, names: &BTreeMap<Tag, String>) -> DrawingFile {
        let mut curves = Vec::new();
        for comp in self.components() {
            let tag = self.tag_of(comp[0].event);
            let name = names
                .get(&tag)
                .cloned()
                .unwrap_or_else(|| format!("c{tag}"));
            let crossings = comp
                .iter()
                .map(|p| {
                    let edge = self.edge_of(p.event);
                    (self.surface.letter(edge, p.dir), self.edge_index(p.event))
                })
                .collect();
            curves.push(CurveRecord { name, crossings });
        }
        curves.sort_by(|a, b| a.name.cmp(&b.name));
        DrawingFile {
            surface: self.surface,
            curves,
        }
    }

    /// Rebuild a joint drawing from its file form. Ranks are validated, the
    /// chord structure is rebuilt from traversal order, and embeddedness is
    /// checked per curve. Returns the drawing and the name of each tag.
    pub fn from_file(file: &DrawingFile) -> Result<(Drawing, BTreeMap<Tag, String>)> {
        let surface = file.surface;
        let mut dr = Drawing::new(surface);
        let mut names = BTreeMap::new();
        // First pass: create events with their global ranks per edge.
        let mut by_edge: Vec<Vec<(usize, usize, usize)>> =
            vec![Vec::new(); surface.edge_classes()];
        for (ci, c) in file.curves.iter().enumerate() {
            names.insert(ci as Tag, c.name.clone());
            for (pi, &(letter, rank)) in c.crossings.iter().enumerate() {
                if letter == 0 || letter.unsigned_abs() as usize > surface.edge_classes() {
                    return Err(structural(format!(
                        "curve {}: bad edge letter {letter}",
                        c.name
                    )));
                }
                let edge = letter.unsigned_abs() as usize - 1;
                by_edge[edge].push((rank, ci, pi));
            }
        }
        let mut ids: BTreeMap<(usize, usize), EventId> = BTreeMap::new();
        for (edge, mut list) in by_edge.into_iter().enumerate() {
            list.sort();
            for (slot, &(rank, ci, pi)) in list.iter().enumerate() {
                if rank != slot {
                    return Err(structural(format!(
                        "edge {edge}: ranks must be 0..n-1 without gaps (got {rank} at {slot})"
                    )));
                }
                let id = dr.add_event(edge, slot, ci as Tag);
                ids.insert((ci, pi), id);
            }
        }
        // Second pass: chords from traversal adjacency.
        for (ci, c) in file.curves.iter().enumerate() {
            if c.crossings.is_empty() {
                return Err(structural(format!("curve {}: empty crossing list", c.name)));
            }
            let n = c.crossings.len();
            for pi in 0..n {
                let (l1, _) = c.crossings[pi];
                let (l2, _) = c.crossings[(pi + 1) % n];
                let e1 = ids[&(ci, pi)];
                let e2 = ids[&(ci, (pi + 1) % n)];
                let out_rep = if l1 > 0 { 1 } else { 0 };
                let in_rep = if l2 > 0 { 0 } else { 1 };
                if (e1, out_rep) == (e2, in_rep) {
                    return Err(structural(format!(
                        "curve {}: degenerate chord at passage {pi}",
                        c.name
                    )));
                }
                dr.set_chord((e1, out_rep), (e2, in_rep));
            }
        }
        dr.validate()?;
        for tag in 0..file.curves.len() as Tag {
            dr.validate_embedded(tag)?;
            if dr.tag_components(tag).len() != 1 {
                return Err(structural(format!(
                    "curve {} is not a single closed component",
                    names[&tag]
                )));
            }
        }
        Ok((dr, names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    /// The curve crossing a single edge class once.
    pub(crate) fn one_crossing(surface: SurfaceSpec, edge: usize, tag: Tag) -> Drawing {
        let mut d = Drawing::new(surface);
        let e = d.add_event(edge, 0, tag);
        d.set_chord((e, 0), (e, 1));
        d
    }

    #[test]
    fn one_crossing_traces_generator() {
        let d = one_crossing(s2(), 0, 0);
        d.validate().unwrap();
        let comps = d.components();
        assert_eq!(comps.len(), 1);
        let w = d.trace_word(&comps[0]);
        assert!(w == vec![1] || w == vec![-1]);
    }

    #[test]
    fn slide_reduction_removes_back_and_forth() {
        let mut d = Drawing::new(s2());
        // A curve crossing edge 0 then immediately crossing back, then edge 1.
        let e0 = d.add_event(0, 0, 0);
        let e1 = d.add_event(0, 1, 0);
        let e2 = d.add_event(1, 0, 0);
        // Traversal: through e0 (+), back through e1 (-), through e2 (+).
        d.set_chord((e0, 1), (e1, 1)); // same-side chord on the partner side
        d.set_chord((e1, 0), (e2, 0));
        d.set_chord((e2, 1), (e0, 0));
        d.validate().unwrap();
        d.reduce_slides();
        d.validate().unwrap();
        assert_eq!(d.event_count(), 1);
        let comps = d.components();
        assert_eq!(d.trace_word(&comps[0]).len(), 1);
    }

    #[test]
    fn roundtrip_file() {
        let d = one_crossing(s2(), 2, 0);
        let mut names = BTreeMap::new();
        names.insert(0, "m".to_string());
        let f = d.to_file(&names);
        let (d2, names2) = Drawing::from_file(&f).unwrap();
        assert_eq!(d2.event_count(), 1);
        assert_eq!(names2[&0], "m");
    }
}
